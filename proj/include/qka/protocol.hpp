#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qka/codes.hpp"
#include "qka/logical.hpp"
#include "qka/permutation.hpp"
#include "qka/statevector.hpp"
#include "qka/symbolic.hpp"
#include "qka/transcript.hpp"

namespace qka {

enum class Backend { Symbolic, StateVector };

inline std::string to_string(Backend b) {
  return b == Backend::Symbolic ? "symbolic" : "statevector";
}

inline Backend backend_from_string(std::string_view s) {
  if (s == "symbolic") return Backend::Symbolic;
  if (s == "statevector") return Backend::StateVector;
  throw std::invalid_argument("unknown backend: " + std::string(s));
}

// What the Step-4 permutation moves: whole Bell pairs (original protocol)
// or only the first logical particle of each pair (improved protocol).
enum class PermScope { WholePairs, FirstParticles };

struct ProtocolConfig {
  std::size_t n = 1;                 // Bell-pair count; keys have n dibits
  NoiseModel noise = NoiseModel::Dephasing;
  std::size_t decoy_count = 8;       // delta, per transmission
  double error_threshold = 0.05;     // tau
  Backend backend = Backend::Symbolic;
  std::uint64_t seed = 0x5EEDC0DEULL;
  PermScope perm_scope = PermScope::WholePairs;

  // Test/verification hook: pin the Step-3 measurement results instead of
  // sampling them. Symbolic backend only.
  std::optional<DibitString> forced_m;

  static ProtocolConfig with_defaults(std::size_t n) {
    ProtocolConfig c;
    c.n = n;
    c.decoy_count = n > 8 ? n : 8;
    return c;
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("pair count must be >= 1");
    if (error_threshold < 0.0 || error_threshold > 1.0) {
      throw std::invalid_argument("error threshold must be in [0,1]");
    }
    if (forced_m.has_value()) {
      if (backend != Backend::Symbolic) {
        throw std::invalid_argument("forced M requires the symbolic backend");
      }
      if (forced_m->size() != n) {
        throw std::invalid_argument("forced M must have n dibits");
      }
    }
  }
};

// What the permutation-announcing party knows when she decides what to
// announce: everything after Step 6.
struct AttackContext {
  const DibitString& ka;
  const DibitString& kb;  // derived from Bob's Step-6 announcement
  const DibitString& m;
  const Permutation& used_perm;
};

struct PermAnnouncement {
  Permutation perm;
  // Extra fields recorded in the transcript under the attack stage tag.
  std::vector<std::pair<std::string, std::string>> attack_log;
};

// A batch of logical particles in flight, as seen by a channel adversary.
class TransmissionView {
 public:
  struct Particle {
    bool is_decoy = false;
    LogicalSymbol decoy_symbol = LogicalSymbol::ZeroL;
    // StateVector backend: the register and the particle's 2 qubits in it.
    StateVector* reg = nullptr;
    std::array<int, 2> qubits = {0, 1};
    // Symbolic backend bookkeeping.
    std::optional<LogicalBasis>* sym_eve_basis = nullptr;
    std::uint8_t* sym_tampered = nullptr;
  };

  TransmissionView(Backend backend, NoiseModel model) : backend_(backend), model_(model) {}

  Backend backend() const { return backend_; }
  NoiseModel model() const { return model_; }
  std::size_t size() const { return particles_.size(); }
  std::vector<Particle>& particles() { return particles_; }

  // Measure particle i in the given logical basis and resend the collapsed
  // state. This is the only physical access an in-channel adversary gets.
  void eve_measure(std::size_t i, LogicalBasis basis, RandomStream& rng) {
    Particle& p = particles_.at(i);
    if (backend_ == Backend::StateVector) {
      auto rec = measure_logical(*p.reg, p.qubits, basis, model_, rng);
      *p.reg = std::move(rec.post_state);
    } else {
      if (p.is_decoy) {
        *p.sym_eve_basis = basis;
      } else {
        *p.sym_tampered = 1;
      }
    }
  }

 private:
  Backend backend_;
  NoiseModel model_;
  std::vector<Particle> particles_;
};

using TamperHook = std::function<void(TransmissionView&, RandomStream&)>;
using AnnouncePermHook = std::function<PermAnnouncement(const AttackContext&)>;

struct AdversaryHooks {
  TamperHook tamper_transmission1;
  TamperHook tamper_transmission2;
  AnnouncePermHook announce_perm;  // fake-permutation attack
};

struct DecoyCheckResult {
  std::size_t errors = 0;
  double error_rate = 0.0;
  bool pass = true;
};

// One honest-engine execution of the protocol (Steps 1-8), with optional
// adversarial hooks. Step methods are public so tests can drive single
// steps; run() executes the whole exchange in order and the transcript
// rejects any out-of-order replay.
class ProtocolSession {
 public:
  ProtocolSession(ProtocolConfig cfg, DibitString ka, DibitString kb)
      : cfg_(std::move(cfg)),
        ka_(std::move(ka)),
        kb_(std::move(kb)),
        rng_(cfg_.seed) {
    cfg_.validate();
    if (ka_.size() != cfg_.n || kb_.size() != cfg_.n) {
      throw std::invalid_argument("secret keys must have n dibits");
    }
  }

  RunOutcome run(const AdversaryHooks* hooks = nullptr) {
    step1_prepare();
    transmit1(hooks);
    auto check1 = decoy_check(1);
    if (!check1.pass) return abort_outcome(RunStatus::AbortedAtDecoyCheck1);
    step3_measure();
    step4_encode();
    transmit2(hooks);
    auto check2 = decoy_check(2);
    if (!check2.pass) return abort_outcome(RunStatus::AbortedAtDecoyCheck2);
    step6_announce();
    Permutation announced = step7_announce_perm(hooks);
    DibitString ka_derived = step7_decode(announced);
    return finish(ka_derived);
  }

  // --- step API ---

  // Step 1: 2n Bell pairs in Phi+, decoys drawn and inserted into the
  // transmitted second halves.
  void step1_prepare() {
    const std::size_t pairs = 2 * cfg_.n;
    if (cfg_.backend == Backend::StateVector) {
      pairs1_.clear();
      for (std::size_t i = 0; i < pairs; ++i) {
        pairs1_.push_back(std::make_shared<StateVector>(
            make_logical_bell(BellCode(0), cfg_.noise)));
      }
    } else {
      sym_tampered1_.assign(pairs, 0);
    }
    wire1_.clear();
    for (std::size_t i = 0; i < pairs; ++i) {
      wire1_.push_back({WireItem::Kind::Single, i, 0});
    }
    insert_decoys(wire1_, decoys1_);
    transcript_.add(Stage::QuantumSend1,
                    {{"seq", "SB"},
                     {"len", std::to_string(wire1_.size())},
                     {"decoys", std::to_string(cfg_.decoy_count)}});
  }

  // Channel transit of transmission 1: one collective-noise draw for the
  // whole batch, then any in-channel adversary.
  void transmit1(const AdversaryHooks* hooks) {
    double param = draw_noise_param();
    apply_noise(wire1_, decoys1_, param, /*second_halves=*/true);
    if (hooks && hooks->tamper_transmission1) {
      auto view = make_view(wire1_, decoys1_, /*second_halves=*/true);
      hooks->tamper_transmission1(view, rng_);
    }
  }

  void transmit2(const AdversaryHooks* hooks) {
    double param = draw_noise_param();
    apply_noise(wire2_, decoys2_, param, /*second_halves=*/false);
    if (hooks && hooks->tamper_transmission2) {
      auto view = make_view(wire2_, decoys2_, /*second_halves=*/false);
      hooks->tamper_transmission2(view, rng_);
    }
  }

  // Step 2 / Step 5: the sender announces decoy positions and states, the
  // receiver measures in the announced bases and compares.
  DecoyCheckResult decoy_check(int which) {
    auto& wire = which == 1 ? wire1_ : wire2_;
    auto& decoys = which == 1 ? decoys1_ : decoys2_;
    std::string positions, states;
    for (std::size_t w = 0; w < wire.size(); ++w) {
      if (wire[w].kind != WireItem::Kind::Decoy) continue;
      if (!positions.empty()) { positions += ','; states += ','; }
      positions += std::to_string(w);
      states += to_string(decoys[wire[w].a].symbol);
    }
    transcript_.add(which == 1 ? Stage::DecoyAnnounce1 : Stage::DecoyAnnounce2,
                    {{"positions", positions}, {"states", states}});

    DecoyCheckResult res;
    for (auto& d : decoys) {
      bool error = false;
      if (cfg_.backend == Backend::StateVector) {
        auto rec = measure_logical(*d.reg, basis_of(d.symbol), cfg_.noise, rng_);
        if (rec.leak || rec.symbol != d.symbol) error = true;
      } else {
        if (d.eve_basis.has_value()) {
          // matching basis resends the exact state; a wrong basis leaves a
          // 50% error on the receiver's remeasure
          error = (*d.eve_basis != basis_of(d.symbol)) && rng_.coin();
        }
      }
      if (error) ++res.errors;
    }
    res.error_rate = decoys.empty()
                         ? 0.0
                         : static_cast<double>(res.errors) / decoys.size();
    res.pass = res.error_rate <= cfg_.error_threshold;
    transcript_.add(which == 1 ? Stage::DecoyCheck1 : Stage::DecoyCheck2,
                    {{"errors", std::to_string(res.errors)},
                     {"rate", std::to_string(res.error_rate)},
                     {"pass", res.pass ? "1" : "0"}});
    return res;
  }

  // Step 3: pairwise logical Bell measurement on both sides. Alice measures
  // first; entanglement swapping of two Phi+ pairs guarantees M_A = M_B in
  // any honest run.
  void step3_measure() {
    m_alice_ = DibitString::zeros(cfg_.n);
    m_bob_ = DibitString::zeros(cfg_.n);
    if (cfg_.backend == Backend::Symbolic) {
      for (std::size_t i = 0; i < cfg_.n; ++i) {
        bool tampered = sym_tampered1_[2 * i] || sym_tampered1_[2 * i + 1];
        std::uint8_t ma =
            cfg_.forced_m ? (*cfg_.forced_m)[i]
                          : static_cast<std::uint8_t>(rng_.uniform_int(4));
        std::uint8_t mb =
            tampered ? static_cast<std::uint8_t>(rng_.uniform_int(4)) : ma;
        m_alice_.set(i, ma);
        m_bob_.set(i, mb);
      }
    } else {
      const std::array<int, 4> alice_q = {0, 1, 4, 5};
      const std::array<int, 4> bob_q = {2, 3, 6, 7};
      for (std::size_t i = 0; i < cfg_.n; ++i) {
        StateVector joint = tensor(*pairs1_[2 * i], *pairs1_[2 * i + 1]);
        auto a = measure_logical_bell(joint, alice_q, cfg_.noise, rng_);
        if (a.leak) throw std::logic_error("codespace leak in Step 3");
        auto b = measure_logical_bell(a.post_state, bob_q, cfg_.noise, rng_);
        if (b.leak) throw std::logic_error("codespace leak in Step 3");
        m_alice_.set(i, a.code.bits);
        m_bob_.set(i, b.code.bits);
      }
    }
    transcript_.add(Stage::BellMeasure, {{"alice_m", m_alice_.to_bits()},
                                         {"bob_m", m_bob_.to_bits()}});
  }

  // Step 4 (and Step 4* when perm_scope is FirstParticles): prepare S_C in
  // codes M, encode K_A with the logical unitaries, permute, insert decoys.
  void step4_encode() {
    codes_c_ = m_alice_ ^ ka_;
    if (cfg_.backend == Backend::StateVector) {
      pairs2_.clear();
      for (std::size_t i = 0; i < cfg_.n; ++i) {
        StateVector reg = make_logical_bell(BellCode(m_alice_[i]), cfg_.noise);
        reg = apply_logical_unitary(UnitaryCode(ka_[i]), reg, 0, cfg_.noise);
        pairs2_.push_back(std::make_shared<StateVector>(std::move(reg)));
      }
    } else {
      sym_tampered2_.assign(cfg_.n, 0);
    }
    used_perm_ = Permutation::random(cfg_.n, rng_);
    Permutation inv = used_perm_.inverse();
    wire2_.clear();
    for (std::size_t j = 0; j < cfg_.n; ++j) {
      // slot j: first particle of pair inv(j); second particle of pair
      // inv(j) (whole-pair scope) or pair j (first-particle scope)
      std::size_t first = inv(j);
      std::size_t second = cfg_.perm_scope == PermScope::WholePairs ? inv(j) : j;
      wire2_.push_back({WireItem::Kind::PairSlot, first, second});
    }
    insert_decoys(wire2_, decoys2_);
    transcript_.add(Stage::QuantumSend2,
                    {{"seq", "SC"},
                     {"len", std::to_string(wire2_.size())},
                     {"decoys", std::to_string(cfg_.decoy_count)}});
  }

  // Step 6: Bob announces K_B ^ M; Alice strips her M to recover K_B.
  void step6_announce() {
    announced_kb_m_ = kb_ ^ m_bob_;
    transcript_.add(Stage::KeyAnnounce,
                    {{"kb_xor_m", announced_kb_m_->to_bits()}});
    kb_seen_by_alice_ = *announced_kb_m_ ^ m_alice_;
  }

  // Step 7, Alice's half: announce the permutation (truthfully, unless an
  // attack hook substitutes a fake one).
  Permutation step7_announce_perm(const AdversaryHooks* hooks) {
    Permutation announced = used_perm_;
    if (hooks && hooks->announce_perm) {
      AttackContext ctx{ka_, *kb_seen_by_alice_, m_alice_, used_perm_};
      PermAnnouncement ann = hooks->announce_perm(ctx);
      announced = std::move(ann.perm);
      transcript_.add(Stage::AttackDecision, std::move(ann.attack_log));
    }
    transcript_.add(Stage::PermReveal, {{"perm", announced.to_string()}});
    return announced;
  }

  // Step 7, Bob's half: inverse-permute, Bell-measure, strip M.
  DibitString step7_decode(const Permutation& announced) {
    if (announced.size() != cfg_.n) {
      throw std::invalid_argument("announced permutation has wrong size");
    }
    std::vector<std::uint8_t> measured =
        cfg_.perm_scope == PermScope::WholePairs
            ? decode_whole_pairs(announced)
            : decode_first_particles(announced);
    DibitString result(std::move(measured));
    return result ^ m_bob_;
  }

  // Step 8 plus bookkeeping: both parties derive the final key.
  RunOutcome finish(const DibitString& ka_derived) {
    std::string alice_key = final_key(ka_, *kb_seen_by_alice_, m_alice_);
    std::string bob_key = final_key(ka_derived, kb_, m_bob_);
    transcript_.add(Stage::Derived,
                    {{"bob_ka", ka_derived.to_bits()},
                     {"alice_kb", kb_seen_by_alice_->to_bits()},
                     {"alice_key", alice_key},
                     {"bob_key", bob_key}});
    RunOutcome out;
    out.status = RunStatus::Agreed;
    out.alice_final_key = alice_key;
    out.bob_final_key = bob_key;
    out.transcript = transcript_;
    return out;
  }

  // --- accessors for tests and the attack modules ---
  const DibitString& m_alice() const { return m_alice_; }
  const DibitString& m_bob() const { return m_bob_; }
  const DibitString& codes_before_permutation() const { return codes_c_; }
  const Permutation& used_perm() const { return used_perm_; }
  const Transcript& transcript() const { return transcript_; }
  RandomStream& rng() { return rng_; }

 private:
  struct WireItem {
    enum class Kind { Single, PairSlot, Decoy } kind;
    std::size_t a;  // Single: pair index; PairSlot: pair of first particle;
                    // Decoy: index into the decoy list
    std::size_t b;  // PairSlot: pair of second particle
  };

  struct Decoy {
    LogicalSymbol symbol;
    std::shared_ptr<StateVector> reg;        // StateVector backend
    std::optional<LogicalBasis> eve_basis;   // Symbolic backend
  };

  RunOutcome abort_outcome(RunStatus status) {
    transcript_.add(Stage::Abort, {{"at", to_string(status)}});
    RunOutcome out;
    out.status = status;
    out.transcript = transcript_;
    return out;
  }

  double draw_noise_param() {
    double param = rng_.uniform() * 2.0 * std::numbers::pi;
    return param;
  }

  // Randomly draw delta decoy states and insert them at random positions.
  void insert_decoys(std::vector<WireItem>& wire, std::vector<Decoy>& decoys) {
    decoys.clear();
    static const LogicalSymbol symbols[4] = {
        LogicalSymbol::ZeroL, LogicalSymbol::OneL, LogicalSymbol::PlusL,
        LogicalSymbol::MinusL};
    for (std::size_t k = 0; k < cfg_.decoy_count; ++k) {
      LogicalSymbol s = symbols[rng_.uniform_int(4)];
      Decoy d{s, nullptr, std::nullopt};
      if (cfg_.backend == Backend::StateVector) {
        d.reg = std::make_shared<StateVector>(encode_logical(s, cfg_.noise));
      }
      decoys.push_back(std::move(d));
      std::size_t pos = rng_.uniform_int(wire.size() + 1);
      wire.insert(wire.begin() + static_cast<std::ptrdiff_t>(pos),
                  {WireItem::Kind::Decoy, k, 0});
    }
  }

  // Every logical particle of a wire item, in slot order.
  template <typename Fn>
  void for_each_particle(std::vector<WireItem>& wire, std::vector<Decoy>& decoys,
                         bool second_halves, Fn&& fn) {
    for (auto& item : wire) {
      switch (item.kind) {
        case WireItem::Kind::Decoy: {
          Decoy& d = decoys[item.a];
          fn(TransmissionView::Particle{true, d.symbol, d.reg.get(),
                                        {0, 1}, &d.eve_basis, nullptr});
          break;
        }
        case WireItem::Kind::Single: {
          StateVector* reg =
              cfg_.backend == Backend::StateVector ? pairs1_[item.a].get() : nullptr;
          std::uint8_t* tampered =
              cfg_.backend == Backend::Symbolic ? &sym_tampered1_[item.a] : nullptr;
          fn(TransmissionView::Particle{false, LogicalSymbol::ZeroL, reg,
                                        {2, 3}, nullptr, tampered});
          break;
        }
        case WireItem::Kind::PairSlot: {
          StateVector* reg_a =
              cfg_.backend == Backend::StateVector ? pairs2_[item.a].get() : nullptr;
          StateVector* reg_b =
              cfg_.backend == Backend::StateVector ? pairs2_[item.b].get() : nullptr;
          std::uint8_t* ta =
              cfg_.backend == Backend::Symbolic ? &sym_tampered2_[item.a] : nullptr;
          std::uint8_t* tb =
              cfg_.backend == Backend::Symbolic ? &sym_tampered2_[item.b] : nullptr;
          fn(TransmissionView::Particle{false, LogicalSymbol::ZeroL, reg_a,
                                        {0, 1}, nullptr, ta});
          fn(TransmissionView::Particle{false, LogicalSymbol::ZeroL, reg_b,
                                        {2, 3}, nullptr, tb});
          break;
        }
      }
    }
    (void)second_halves;
  }

  void apply_noise(std::vector<WireItem>& wire, std::vector<Decoy>& decoys,
                   double param, bool second_halves) {
    if (cfg_.backend != Backend::StateVector) return;  // drawn and logged only
    for_each_particle(wire, decoys, second_halves,
                      [&](const TransmissionView::Particle& p) {
                        *p.reg = apply_collective_noise(
                            *p.reg, cfg_.noise, param,
                            std::span<const int>(p.qubits.data(), 2));
                      });
  }

  TransmissionView make_view(std::vector<WireItem>& wire,
                             std::vector<Decoy>& decoys, bool second_halves) {
    TransmissionView view(cfg_.backend, cfg_.noise);
    for_each_particle(wire, decoys, second_halves,
                      [&](const TransmissionView::Particle& p) {
                        view.particles().push_back(p);
                      });
    return view;
  }

  // Original protocol: whole pairs moved together, so reconstructed slot i
  // simply holds pair inv_used(announced(i)) intact.
  std::vector<std::uint8_t> decode_whole_pairs(const Permutation& announced) {
    Permutation sigma = used_perm_.inverse().compose(announced);
    std::vector<std::uint8_t> measured(cfg_.n);
    for (std::size_t i = 0; i < cfg_.n; ++i) {
      std::size_t pair = sigma(i);
      measured[i] = measure_pair_code(pair);
    }
    return measured;
  }

  // Improved protocol: only first particles moved. A wrong announcement
  // cross-pairs particles from different Bell pairs and the slot-wise Bell
  // measurement becomes entanglement swapping.
  std::vector<std::uint8_t> decode_first_particles(const Permutation& announced) {
    // reconstructed slot i holds (first of sigma(i), second of i)
    Permutation sigma = used_perm_.inverse().compose(announced);
    std::vector<std::uint8_t> measured(cfg_.n, 0);
    for (const auto& cycle : sigma.cycles()) {
      if (cycle.size() == 1) {
        measured[cycle[0]] = measure_pair_code(cycle[0]);
        continue;
      }
      std::vector<std::size_t> slots = cycle;
      std::sort(slots.begin(), slots.end());
      if (cfg_.backend == Backend::StateVector && slots.size() <= 3) {
        decode_cycle_statevector(sigma, slots, measured);
      } else {
        // long cycles exceed the 12-qubit register cap; the symbolic swap
        // model is validated against the joint simulation for short cycles
        std::vector<BellCode> cycle_codes;
        for (std::size_t s : slots) cycle_codes.push_back(BellCode(codes_c_[s]));
        auto results = swap_cycle(cycle_codes, rng_);
        for (std::size_t k = 0; k < slots.size(); ++k) {
          measured[slots[k]] = results[k].bits;
          if (cfg_.backend == Backend::Symbolic && sym_tampered2_[slots[k]]) {
            measured[slots[k]] = static_cast<std::uint8_t>(rng_.uniform_int(4));
          }
        }
      }
    }
    return measured;
  }

  void decode_cycle_statevector(const Permutation& sigma,
                                const std::vector<std::size_t>& slots,
                                std::vector<std::uint8_t>& measured) {
    // joint register: pair slots[k] occupies qubits 4k..4k+3
    StateVector joint = *pairs2_[slots[0]];
    for (std::size_t k = 1; k < slots.size(); ++k) {
      joint = tensor(joint, *pairs2_[slots[k]]);
    }
    auto pos_of = [&](std::size_t pair) {
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k] == pair) return static_cast<int>(k);
      }
      throw std::logic_error("pair not in cycle");
    };
    for (std::size_t i : slots) {  // ascending measurement order
      int a = pos_of(sigma(i));    // first particle comes from pair sigma(i)
      int b = pos_of(i);
      const std::array<int, 4> targets = {4 * a, 4 * a + 1, 4 * b + 2,
                                          4 * b + 3};
      auto rec = measure_logical_bell(joint, targets, cfg_.noise, rng_);
      if (rec.leak) throw std::logic_error("codespace leak in Step 7");
      measured[i] = rec.code.bits;
      joint = std::move(rec.post_state);
    }
  }

  std::uint8_t measure_pair_code(std::size_t pair) {
    if (cfg_.backend == Backend::StateVector) {
      auto rec = measure_logical_bell(*pairs2_[pair], cfg_.noise, rng_);
      if (rec.leak) throw std::logic_error("codespace leak in Step 7");
      *pairs2_[pair] = std::move(rec.post_state);
      return rec.code.bits;
    }
    if (sym_tampered2_[pair]) {
      return static_cast<std::uint8_t>(rng_.uniform_int(4));
    }
    return codes_c_[pair];
  }

  ProtocolConfig cfg_;
  DibitString ka_, kb_;
  RandomStream rng_;
  Transcript transcript_;

  std::vector<std::shared_ptr<StateVector>> pairs1_;  // 2n step-1 pairs
  std::vector<std::shared_ptr<StateVector>> pairs2_;  // n S_C pairs
  std::vector<std::uint8_t> sym_tampered1_;
  std::vector<std::uint8_t> sym_tampered2_;
  std::vector<WireItem> wire1_, wire2_;
  std::vector<Decoy> decoys1_, decoys2_;

  DibitString m_alice_, m_bob_, codes_c_;
  Permutation used_perm_;
  std::optional<DibitString> announced_kb_m_;
  std::optional<DibitString> kb_seen_by_alice_;
};

// Honest execution of the original protocol (or improved, per perm_scope).
inline RunOutcome run_protocol(const ProtocolConfig& config,
                               const DibitString& ka, const DibitString& kb,
                               const AdversaryHooks* hooks = nullptr) {
  ProtocolSession session(config, ka, kb);
  return session.run(hooks);
}

}  // namespace qka
