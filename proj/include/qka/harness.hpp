#pragma once

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qka/adversary.hpp"
#include "qka/countermeasure.hpp"
#include "qka/protocol.hpp"
#include "qka/stats.hpp"

namespace qka {

// Crosswise logical Bell measurement of two freshly prepared Bell pairs:
// the physical-layer route to the swap rule, used to cross-check the
// symbolic model.
inline std::pair<BellCode, BellCode> statevector_swap_experiment(
    BellCode is1, BellCode is2, NoiseModel m, RandomStream& rng) {
  StateVector joint =
      tensor(make_logical_bell(is1, m), make_logical_bell(is2, m));
  const std::array<int, 4> first_particles = {0, 1, 4, 5};
  const std::array<int, 4> second_particles = {2, 3, 6, 7};
  auto r1 = measure_logical_bell(joint, first_particles, m, rng);
  auto r2 = measure_logical_bell(r1.post_state, second_particles, m, rng);
  if (r1.leak || r2.leak) throw std::logic_error("codespace leak in swap");
  return {r1.code, r2.code};
}

// Reorder-style attack: Alice announces used_perm o tau, aiming at the key
// the reordered codes would decode to. Under the original protocol this
// succeeds deterministically; under the improved protocol every slot
// displaced by tau decodes randomly.
inline AttackRunResult attack_run_reorder(const ProtocolConfig& config,
                                          const DibitString& ka,
                                          const DibitString& kb,
                                          const Permutation& tau) {
  if (tau.size() != config.n) {
    throw std::invalid_argument("reorder permutation has wrong size");
  }
  AttackRunResult result;
  AdversaryHooks hooks;
  hooks.announce_perm = [&](const AttackContext& ctx) {
    DibitString true_codes = ctx.ka ^ ctx.m;
    DibitString ka_prime = DibitString::zeros(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
      ka_prime.set(i, static_cast<std::uint8_t>(true_codes[tau(i)] ^ ctx.m[i]));
    }
    result.attack.feasible = true;
    result.attack.fake_perm = ctx.used_perm.compose(tau);
    result.attack.ka_prime = ka_prime;
    result.attack.predicted_bob_key = final_key(ka_prime, ctx.kb, ctx.m);
    PermAnnouncement ann;
    ann.perm = *result.attack.fake_perm;
    ann.attack_log = {{"kind", "fake_permutation"},
                      {"feasible", "1"},
                      {"predicted_bob_key", *result.attack.predicted_bob_key},
                      {"ka_prime", ka_prime.to_bits()}};
    return ann;
  };
  result.outcome = run_protocol(config, ka, kb, &hooks);
  return result;
}

enum class Scenario { Honest, Eve, PermAttackOriginal, PermAttackImproved };

inline std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Honest: return "honest";
    case Scenario::Eve: return "eve";
    case Scenario::PermAttackOriginal: return "perm-attack-original";
    case Scenario::PermAttackImproved: return "perm-attack-improved";
  }
  return "?";
}

inline Scenario scenario_from_string(std::string_view s) {
  if (s == "honest") return Scenario::Honest;
  if (s == "eve") return Scenario::Eve;
  if (s == "perm-attack-original") return Scenario::PermAttackOriginal;
  if (s == "perm-attack-improved") return Scenario::PermAttackImproved;
  throw std::invalid_argument("unknown scenario: " + std::string(s));
}

struct Campaign {
  Scenario scenario = Scenario::Honest;
  std::size_t trials = 1;
  ProtocolConfig config;
  std::optional<AttackGoal> goal;     // attack scenarios only
  std::optional<DibitString> ka, kb;  // fixed inputs; random per trial if absent
  std::string output_path;            // directory for reports; empty = stdout only
  bool write_transcripts = false;
  int eve_transmissions = 1;  // bitmask: 1 = first, 2 = second

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    config.validate();
    bool is_attack = scenario == Scenario::PermAttackOriginal ||
                     scenario == Scenario::PermAttackImproved;
    if (goal.has_value() && !is_attack) {
      throw std::invalid_argument("goal only applies to attack scenarios");
    }
    if (goal) goal->validate(config.n);
    if (ka && ka->size() != config.n) {
      throw std::invalid_argument("ka must have n dibits");
    }
    if (kb && kb->size() != config.n) {
      throw std::invalid_argument("kb must have n dibits");
    }
  }
};

struct SummaryReport {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::size_t aborts_decoy1 = 0;
  std::size_t aborts_decoy2 = 0;
  std::size_t attack_success = 0;
  double mean_decoy_error_rate = 0.0;
  double key_uniformity_stat = 0.0;  // chi-square, second-half dibits
  double wall_clock_seconds = 0.0;

  std::string to_table() const {
    std::ostringstream os;
    os << "trials               " << trials << "\n"
       << "agreements           " << agreements << "\n"
       << "aborts@decoy-check-1 " << aborts_decoy1 << "\n"
       << "aborts@decoy-check-2 " << aborts_decoy2 << "\n"
       << "attack successes     " << attack_success << "\n"
       << "mean decoy error     " << mean_decoy_error_rate << "\n"
       << "key uniformity chi2  " << key_uniformity_stat << "\n"
       << "wall clock (s)       " << wall_clock_seconds << "\n";
    return os.str();
  }

  std::string to_json() const {
    std::ostringstream os;
    os << "{\n"
       << "  \"trials\": " << trials << ",\n"
       << "  \"agreements\": " << agreements << ",\n"
       << "  \"aborts_decoy_check_1\": " << aborts_decoy1 << ",\n"
       << "  \"aborts_decoy_check_2\": " << aborts_decoy2 << ",\n"
       << "  \"attack_successes\": " << attack_success << ",\n"
       << "  \"mean_decoy_error_rate\": " << mean_decoy_error_rate << ",\n"
       << "  \"key_uniformity_chi2\": " << key_uniformity_stat << "\n"
       << "}\n";
    return os.str();
  }
};

namespace detail {

inline void accumulate_decoy_stats(const Transcript& tr, double& rate_sum,
                                   std::size_t& rate_count) {
  for (const auto& e : tr.events()) {
    if (e.stage != Stage::DecoyCheck1 && e.stage != Stage::DecoyCheck2) continue;
    for (const auto& [k, v] : e.fields) {
      if (k == "rate") {
        rate_sum += std::stod(v);
        ++rate_count;
      }
    }
  }
}

}  // namespace detail

// Monte-Carlo campaign over one scenario. Each trial derives its own RNG
// stream from (seed, trial_index); aggregation is a deterministic fold in
// trial order.
inline SummaryReport run_campaign(const Campaign& campaign) {
  campaign.validate();
  auto t0 = std::chrono::steady_clock::now();

  namespace fs = std::filesystem;
  if (!campaign.output_path.empty()) {
    fs::create_directories(campaign.output_path);
  }

  SummaryReport report;
  report.trials = campaign.trials;
  double rate_sum = 0.0;
  std::size_t rate_count = 0;
  std::array<std::size_t, 4> second_half_counts = {0, 0, 0, 0};

  for (std::size_t t = 0; t < campaign.trials; ++t) {
    ProtocolConfig cfg = campaign.config;
    cfg.seed = RandomStream::derive(campaign.config.seed, t).next_u64();
    // key material and attack targets come from a separate stream so the
    // protocol run consumes exactly the same draws regardless of them
    RandomStream aux = RandomStream::derive(~campaign.config.seed, t);
    DibitString ka = campaign.ka ? *campaign.ka : DibitString::random(cfg.n, aux);
    DibitString kb = campaign.kb ? *campaign.kb : DibitString::random(cfg.n, aux);

    RunOutcome outcome;
    std::optional<AttackResult> attack;
    switch (campaign.scenario) {
      case Scenario::Honest:
        outcome = run_protocol(cfg, ka, kb);
        break;
      case Scenario::Eve: {
        AdversaryHooks hooks;
        if (campaign.eve_transmissions & 1) {
          hooks.tamper_transmission1 = intercept_resend_hook();
        }
        if (campaign.eve_transmissions & 2) {
          hooks.tamper_transmission2 = intercept_resend_hook();
        }
        outcome = run_protocol(cfg, ka, kb, &hooks);
        break;
      }
      case Scenario::PermAttackOriginal:
      case Scenario::PermAttackImproved: {
        if (campaign.scenario == Scenario::PermAttackImproved) {
          cfg = improved_config(cfg);
        }
        AttackRunResult r =
            campaign.goal ? attack_run(cfg, ka, kb, *campaign.goal)
                          : attack_run_reorder(cfg, ka, kb,
                                               Permutation::random(cfg.n, aux));
        outcome = std::move(r.outcome);
        attack = std::move(r.attack);
        break;
      }
    }

    switch (outcome.status) {
      case RunStatus::Agreed: ++report.agreements; break;
      case RunStatus::AbortedAtDecoyCheck1: ++report.aborts_decoy1; break;
      case RunStatus::AbortedAtDecoyCheck2: ++report.aborts_decoy2; break;
    }
    if (attack && attack->feasible && outcome.status == RunStatus::Agreed &&
        outcome.bob_final_key == attack->predicted_bob_key) {
      ++report.attack_success;
    }
    detail::accumulate_decoy_stats(outcome.transcript, rate_sum, rate_count);
    if (outcome.bob_final_key) {
      const std::string& key = *outcome.bob_final_key;
      DibitString second = DibitString::from_bits(key.substr(key.size() / 2));
      for (std::size_t i = 0; i < second.size(); ++i) {
        ++second_half_counts[second[i]];
      }
    }

    if (campaign.write_transcripts && !campaign.output_path.empty()) {
      char name[32];
      std::snprintf(name, sizeof(name), "trial_%06zu.txt", t);
      std::ofstream f(fs::path(campaign.output_path) / name,
                      std::ios::binary);
      f << outcome.transcript.to_text();
    }
  }

  report.mean_decoy_error_rate = rate_count ? rate_sum / rate_count : 0.0;
  std::size_t key_samples = second_half_counts[0] + second_half_counts[1] +
                            second_half_counts[2] + second_half_counts[3];
  if (key_samples > 0) {
    report.key_uniformity_stat = chi_square_uniform(
        {second_half_counts[0], second_half_counts[1], second_half_counts[2],
         second_half_counts[3]});
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  if (!campaign.output_path.empty()) {
    std::ofstream f(fs::path(campaign.output_path) / "summary.json",
                    std::ios::binary);
    f << report.to_json();
  }
  return report;
}

// The worked two-pair instance: K_A = 0011, K_B = 0110, M pinned to 1110.
// Checks the honest key, the fake key reachable by swapping the two pairs,
// and the K'_A Bob derives under that attack.
inline bool verify_worked_example(std::ostream* log = nullptr) {
  auto say = [&](const std::string& s) {
    if (log) *log << s << "\n";
  };
  ProtocolConfig cfg = ProtocolConfig::with_defaults(2);
  cfg.backend = Backend::Symbolic;
  cfg.forced_m = DibitString::from_bits("1110");
  DibitString ka = DibitString::from_bits("0011");
  DibitString kb = DibitString::from_bits("0110");

  bool ok = true;
  RunOutcome honest = run_protocol(cfg, ka, kb);
  bool honest_ok = honest.status == RunStatus::Agreed &&
                   honest.alice_final_key == honest.bob_final_key &&
                   honest.alice_final_key == "01011011";
  say(std::string(honest_ok ? "ok  " : "FAIL") +
      " honest final key = " + honest.alice_final_key.value_or("<absent>") +
      " (want 01011011)");
  ok = ok && honest_ok;

  AttackRunResult attacked =
      attack_run(cfg, ka, kb, AttackGoal::final_key_goal("11110001"));
  bool fake_ok = attacked.attack.feasible &&
                 attacked.outcome.status == RunStatus::Agreed &&
                 attacked.outcome.bob_final_key == "11110001";
  say(std::string(fake_ok ? "ok  " : "FAIL") + " fake final key = " +
      attacked.outcome.bob_final_key.value_or("<absent>") +
      " (want 11110001)");
  ok = ok && fake_ok;

  bool kap_ok =
      attacked.attack.ka_prime && attacked.attack.ka_prime->to_bits() == "1001";
  say(std::string(kap_ok ? "ok  " : "FAIL") + " Bob-derived K'_A = " +
      (attacked.attack.ka_prime ? attacked.attack.ka_prime->to_bits()
                                : "<absent>") +
      " (want 1001)");
  ok = ok && kap_ok;
  return ok;
}

// Library self-check: transformation-table sweep, swap-rule oracle and DFS
// invariance under both collective channels.
inline bool selftest(std::ostream* log = nullptr) {
  auto say = [&](bool pass, const std::string& s) {
    if (log) *log << (pass ? "ok  " : "FAIL") << " " << s << "\n";
  };
  bool ok = true;
  RandomStream rng(0xC0FFEE);

  // all 16 (unitary, Bell-state) combinations, both noise models
  bool table_ok = true;
  for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Rotation}) {
    for (std::uint8_t u = 0; u < 4; ++u) {
      for (std::uint8_t b = 0; b < 4; ++b) {
        StateVector got = apply_logical_unitary(
            UnitaryCode(u), make_logical_bell(BellCode(b), m), 0, m);
        BellCode want = unitary_action(UnitaryCode(u), BellCode(b));
        if (!got.approx_equal_up_to_phase(make_logical_bell(want, m))) {
          table_ok = false;
        }
      }
    }
  }
  say(table_ok, "unitary transformation table (16 cases, both channels)");
  ok = ok && table_ok;

  // swap rule: crosswise measurement vs the XOR constraint
  bool swap_ok = true;
  for (std::uint8_t a = 0; a < 4 && swap_ok; ++a) {
    for (std::uint8_t b = 0; b < 4 && swap_ok; ++b) {
      std::vector<std::size_t> counts(4, 0);
      for (int trial = 0; trial < 400; ++trial) {
        auto [mr1, mr2] = statevector_swap_experiment(
            BellCode(a), BellCode(b), NoiseModel::Dephasing, rng);
        if (!((mr1 ^ mr2) == (BellCode(a) ^ BellCode(b)))) swap_ok = false;
        ++counts[mr1.bits];
      }
      if (!passes_uniformity_alpha01(counts)) swap_ok = false;
    }
  }
  say(swap_ok, "entanglement swapping rule (16 inputs, XOR + uniformity)");
  ok = ok && swap_ok;

  // DFS invariance under 20 random draws per state
  bool dfs_ok = true;
  for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Rotation}) {
    std::vector<StateVector> states;
    for (LogicalSymbol s : {LogicalSymbol::ZeroL, LogicalSymbol::OneL,
                            LogicalSymbol::PlusL, LogicalSymbol::MinusL}) {
      states.push_back(encode_logical(s, m));
    }
    for (std::uint8_t b = 0; b < 4; ++b) {
      states.push_back(make_logical_bell(BellCode(b), m));
    }
    for (const auto& s : states) {
      for (int k = 0; k < 20; ++k) {
        double p = rng.uniform() * 2.0 * std::numbers::pi;
        if (!apply_collective_noise(s, m, p).approx_equal_up_to_phase(s)) {
          dfs_ok = false;
        }
      }
    }
  }
  say(dfs_ok, "DFS invariance under collective noise");
  ok = ok && dfs_ok;
  return ok;
}

}  // namespace qka
