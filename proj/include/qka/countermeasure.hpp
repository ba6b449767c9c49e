#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "qka/adversary.hpp"
#include "qka/codes.hpp"
#include "qka/logical.hpp"
#include "qka/permutation.hpp"
#include "qka/protocol.hpp"
#include "qka/symbolic.hpp"

namespace qka {

// Improved protocol of Step 4*: identical configuration, but the Step-4
// permutation moves only the first logical particle of each Bell pair.
inline ProtocolConfig improved_config(ProtocolConfig base) {
  base.perm_scope = PermScope::FirstParticles;
  return base;
}

// S_C after Step 4*: pairs in codes M ^ K_A, first particles reordered.
// The pair registers stay indexed in original order; `perm` records where
// each first particle went.
struct EncodedSequence {
  Backend backend = Backend::Symbolic;
  NoiseModel model = NoiseModel::Dephasing;
  DibitString codes;  // true Bell codes, original order (sender's knowledge)
  Permutation perm;
  std::vector<StateVector> pairs;  // StateVector backend only
};

inline EncodedSequence step4_star_encode(const DibitString& ka,
                                         const DibitString& m,
                                         Permutation perm, NoiseModel model,
                                         Backend backend) {
  if (ka.size() != m.size() || perm.size() != ka.size()) {
    throw std::invalid_argument("ka, m and permutation sizes must agree");
  }
  EncodedSequence seq;
  seq.backend = backend;
  seq.model = model;
  seq.codes = ka ^ m;
  seq.perm = std::move(perm);
  if (backend == Backend::StateVector) {
    for (std::size_t i = 0; i < ka.size(); ++i) {
      StateVector reg = make_logical_bell(BellCode(m[i]), model);
      reg = apply_logical_unitary(UnitaryCode(ka[i]), reg, 0, model);
      seq.pairs.push_back(std::move(reg));
    }
  }
  return seq;
}

namespace detail {

// Slot-wise Bell measurement after Bob undoes the announced permutation.
// Reconstructed slot i pairs the first particle of pair sigma(i) with the
// second particle of pair i, sigma = true_perm^-1 o announced. Fixed points
// decode deterministically; each cycle is one entanglement-swapping
// experiment.
inline std::vector<std::uint8_t> measure_cross_paired(
    const EncodedSequence& seq, const Permutation& announced,
    RandomStream& rng) {
  const std::size_t n = seq.codes.size();
  Permutation sigma = seq.perm.inverse().compose(announced);
  std::vector<std::uint8_t> measured(n, 0);
  for (const auto& cycle : sigma.cycles()) {
    std::vector<std::size_t> slots = cycle;
    std::sort(slots.begin(), slots.end());
    if (seq.backend == Backend::StateVector && slots.size() <= 3) {
      StateVector joint = seq.pairs[slots[0]];
      for (std::size_t k = 1; k < slots.size(); ++k) {
        joint = tensor(joint, seq.pairs[slots[k]]);
      }
      auto pos_of = [&](std::size_t pair) {
        return static_cast<int>(
            std::find(slots.begin(), slots.end(), pair) - slots.begin());
      };
      for (std::size_t i : slots) {
        int a = pos_of(sigma(i));
        int b = pos_of(i);
        const std::array<int, 4> targets = {4 * a, 4 * a + 1, 4 * b + 2,
                                            4 * b + 3};
        auto rec = measure_logical_bell(joint, targets, seq.model, rng);
        if (rec.leak) throw std::logic_error("codespace leak in decode");
        measured[i] = rec.code.bits;
        joint = std::move(rec.post_state);
      }
    } else {
      std::vector<BellCode> cycle_codes;
      for (std::size_t s : slots) cycle_codes.push_back(BellCode(seq.codes[s]));
      auto results = swap_cycle(cycle_codes, rng);
      for (std::size_t k = 0; k < slots.size(); ++k) {
        measured[slots[k]] = results[k].bits;
      }
    }
  }
  return measured;
}

}  // namespace detail

// Bob's Step-7 decode under the improved protocol. With the true
// permutation announced this returns K_A exactly; any displaced slot turns
// into entanglement swapping and comes out random.
inline DibitString bob_decode_improved(const EncodedSequence& seq,
                                       const Permutation& announced,
                                       const DibitString& m,
                                       RandomStream& rng) {
  if (announced.size() != seq.codes.size() || m.size() != seq.codes.size()) {
    throw std::invalid_argument("size mismatch in improved decode");
  }
  DibitString measured(detail::measure_cross_paired(seq, announced, rng));
  return measured ^ m;
}

// Full run of the improved protocol with a fake-permutation Alice. The
// attack algebra is unchanged, but displaced slots decode randomly: Alice
// can only disrupt, not steer.
inline AttackRunResult attack_run_improved(const ProtocolConfig& config,
                                           const DibitString& ka,
                                           const DibitString& kb,
                                           const AttackGoal& goal) {
  return attack_run(improved_config(config), ka, kb, goal);
}

}  // namespace qka
