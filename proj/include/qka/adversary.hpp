#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qka/codes.hpp"
#include "qka/permutation.hpp"
#include "qka/protocol.hpp"
#include "qka/symbolic.hpp"

namespace qka {

// What the cheating permutation-announcer wants: either a full fake final
// key or directly the K'_A she wants Bob to derive. Exactly one is set.
struct AttackGoal {
  std::optional<std::string> target_final_key;  // '0'/'1' text, length 4n
  std::optional<DibitString> target_ka_prime;

  static AttackGoal final_key_goal(std::string bits) {
    AttackGoal g;
    g.target_final_key = std::move(bits);
    return g;
  }
  static AttackGoal ka_goal(DibitString ka_prime) {
    AttackGoal g;
    g.target_ka_prime = std::move(ka_prime);
    return g;
  }

  void validate(std::size_t n) const {
    if (target_final_key.has_value() == target_ka_prime.has_value()) {
      throw std::invalid_argument("goal must set exactly one target");
    }
    if (target_final_key && target_final_key->size() != 4 * n) {
      throw std::invalid_argument("target final key must have 4n bits");
    }
    if (target_ka_prime && target_ka_prime->size() != n) {
      throw std::invalid_argument("target K'_A must have n dibits");
    }
  }
};

struct AttackResult {
  bool feasible = false;
  std::optional<Permutation> fake_perm;
  std::optional<std::string> predicted_bob_key;
  std::optional<DibitString> ka_prime;
};

// Resolve the goal into the K'_A Bob must derive. Empty when the goal's
// final-key halves are inconsistent (the second half is forced to
// first-half ^ M, which Alice cannot influence).
inline std::optional<DibitString> goal_ka_prime(const AttackGoal& goal,
                                                const DibitString& kb,
                                                const DibitString& m) {
  if (goal.target_ka_prime) return *goal.target_ka_prime;
  const std::string& bits = *goal.target_final_key;
  DibitString first = DibitString::from_bits(bits.substr(0, bits.size() / 2));
  DibitString second = DibitString::from_bits(bits.substr(bits.size() / 2));
  if (!(second == (first ^ m))) return std::nullopt;
  return first ^ kb;
}

// After Step 6 Alice knows K_B, hence the final key Bob will compute from
// any K'_A. She searches for a fake permutation that reorders the true
// S_C measurement results (K_A ^ M) into (K'_A ^ M). Feasible exactly when
// the two dibit multisets coincide; ties broken lexicographically.
inline AttackResult craft_fake_permutation(const AttackGoal& goal,
                                           const DibitString& ka,
                                           const DibitString& kb,
                                           const DibitString& m,
                                           const Permutation& used_perm) {
  const std::size_t n = ka.size();
  goal.validate(n);
  AttackResult res;
  auto ka_prime = goal_ka_prime(goal, kb, m);
  if (!ka_prime) return res;

  DibitString true_codes = ka ^ m;      // codes of S_C in original order
  DibitString want_codes = *ka_prime ^ m;
  Permutation inv = used_perm.inverse();

  // greedy: the announced map pi'(i) is the smallest unused wire position
  // whose code matches, which is the lexicographically smallest valid pi'
  std::vector<std::size_t> fake(n);
  std::vector<bool> taken(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (taken[v]) continue;
      if (true_codes[inv(v)] == want_codes[i]) {
        fake[i] = v;
        taken[v] = true;
        found = true;
        break;
      }
    }
    if (!found) return res;  // multisets differ: infeasible
  }
  res.feasible = true;
  res.fake_perm = Permutation(std::move(fake));
  res.ka_prime = *ka_prime;
  res.predicted_bob_key = final_key(*ka_prime, kb, m);
  return res;
}

// Intercept-resend eavesdropper: measures every in-flight logical particle
// in a uniformly random logical basis and resends the collapsed state.
inline void intercept_resend(TransmissionView& transmission,
                             RandomStream& rng) {
  for (std::size_t i = 0; i < transmission.size(); ++i) {
    LogicalBasis basis = rng.coin() ? LogicalBasis::ZL : LogicalBasis::XL;
    transmission.eve_measure(i, basis, rng);
  }
}

inline TamperHook intercept_resend_hook() {
  return [](TransmissionView& t, RandomStream& rng) {
    intercept_resend(t, rng);
  };
}

struct AttackRunResult {
  RunOutcome outcome;
  AttackResult attack;
};

// Full run of the original protocol where Alice announces a fake
// permutation in Step 7 when the goal is reachable, and behaves honestly
// otherwise. Works against either permutation scope; under the original
// (whole-pair) scope a feasible attack succeeds deterministically.
inline AttackRunResult attack_run(const ProtocolConfig& config,
                                  const DibitString& ka, const DibitString& kb,
                                  const AttackGoal& goal) {
  goal.validate(config.n);
  AttackRunResult result;
  AdversaryHooks hooks;
  hooks.announce_perm = [&](const AttackContext& ctx) {
    AttackResult attack =
        craft_fake_permutation(goal, ctx.ka, ctx.kb, ctx.m, ctx.used_perm);
    PermAnnouncement ann;
    ann.perm = attack.feasible ? *attack.fake_perm : ctx.used_perm;
    ann.attack_log = {
        {"kind", "fake_permutation"},
        {"feasible", attack.feasible ? "1" : "0"},
    };
    if (attack.feasible) {
      ann.attack_log.emplace_back("predicted_bob_key",
                                  *attack.predicted_bob_key);
      ann.attack_log.emplace_back("ka_prime", attack.ka_prime->to_bits());
    }
    result.attack = std::move(attack);
    return ann;
  };
  result.outcome = run_protocol(config, ka, kb, &hooks);
  return result;
}

}  // namespace qka
