#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "qka/adversary.hpp"
#include "qka/harness.hpp"
#include "qka/logical.hpp"
#include "qka/stats.hpp"

using namespace qka;

namespace {

// brute force over all n! announcements: independent feasibility oracle
bool feasible_by_enumeration(const DibitString& ka, const DibitString& ka_prime,
                             const DibitString& m) {
  DibitString true_codes = ka ^ m;
  DibitString want_codes = ka_prime ^ m;
  std::vector<std::size_t> idx(ka.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < idx.size() && ok; ++i) {
      ok = true_codes[idx[i]] == want_codes[i];
    }
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

// a target that is feasible by construction: a reordering of the true codes
DibitString reordered_target(const DibitString& ka, const DibitString& m,
                             RandomStream& rng) {
  Permutation tau = Permutation::random(ka.size(), rng);
  DibitString codes = ka ^ m;
  DibitString target = DibitString::zeros(ka.size());
  for (std::size_t i = 0; i < ka.size(); ++i) {
    target.set(i, static_cast<std::uint8_t>(codes[tau(i)] ^ m[i]));
  }
  return target;
}

}  // namespace

TEST_CASE("goal validation") {
  CHECK_THROWS_AS(AttackGoal{}.validate(2), std::invalid_argument);

  AttackGoal both = AttackGoal::final_key_goal("11110001");
  both.target_ka_prime = DibitString::from_bits("1001");
  CHECK_THROWS_AS(both.validate(2), std::invalid_argument);

  CHECK_THROWS_AS(AttackGoal::final_key_goal("111100").validate(2),
                  std::invalid_argument);
  CHECK_THROWS_AS(AttackGoal::ka_goal(DibitString::from_bits("10")).validate(2),
                  std::invalid_argument);
  CHECK_NOTHROW(AttackGoal::final_key_goal("11110001").validate(2));
  CHECK_NOTHROW(AttackGoal::ka_goal(DibitString::from_bits("1001")).validate(2));
}

TEST_CASE("resolving a goal to K'_A") {
  DibitString kb = DibitString::from_bits("0110");
  DibitString m = DibitString::from_bits("1110");

  auto kap = goal_ka_prime(AttackGoal::final_key_goal("11110001"), kb, m);
  REQUIRE(kap.has_value());
  CHECK(kap->to_bits() == "1001");

  // a second half that is not first-half ^ M cannot be reached
  CHECK_FALSE(goal_ka_prime(AttackGoal::final_key_goal("11110000"), kb, m)
                  .has_value());

  auto direct = goal_ka_prime(AttackGoal::ka_goal(DibitString::from_bits("01")),
                              kb, DibitString::from_bits("0000"));
  CHECK(direct->to_bits() == "01");
}

TEST_CASE("crafting the fake permutation for the worked instance") {
  DibitString ka = DibitString::from_bits("0011");
  DibitString kb = DibitString::from_bits("0110");
  DibitString m = DibitString::from_bits("1110");
  Permutation used = Permutation::identity(2);

  AttackResult res = craft_fake_permutation(
      AttackGoal::final_key_goal("11110001"), ka, kb, m, used);
  REQUIRE(res.feasible);
  CHECK(res.ka_prime->to_bits() == "1001");
  CHECK(*res.predicted_bob_key == "11110001");
  // true codes are 11, 01; the target needs them in the order 01, 11,
  // so the only valid announcement swaps the two slots
  CHECK(res.fake_perm->mapping() == std::vector<std::size_t>{1, 0});

  SUBCASE("an honest goal reproduces the used permutation's effect") {
    AttackResult hon =
        craft_fake_permutation(AttackGoal::ka_goal(ka), ka, kb, m, used);
    REQUIRE(hon.feasible);
    CHECK(*hon.predicted_bob_key == final_key(ka, kb, m));
  }

  SUBCASE("an inconsistent final-key goal is infeasible, not an error") {
    AttackResult bad = craft_fake_permutation(
        AttackGoal::final_key_goal("11110000"), ka, kb, m, used);
    CHECK_FALSE(bad.feasible);
    CHECK_FALSE(bad.fake_perm.has_value());
  }
}

TEST_CASE("crafted permutations decode to the target") {
  // Bob's slot i ends up holding the pair at wire position fake(i), which
  // is pair used^-1(fake(i)); its code must equal K'_A[i] ^ M[i]
  RandomStream rng(101);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 2 + rng.uniform_int(7);
    DibitString ka = DibitString::random(n, rng);
    DibitString kb = DibitString::random(n, rng);
    DibitString m = DibitString::random(n, rng);
    Permutation used = Permutation::random(n, rng);
    DibitString target = reordered_target(ka, m, rng);

    AttackResult res = craft_fake_permutation(AttackGoal::ka_goal(target), ka,
                                              kb, m, used);
    REQUIRE(res.feasible);
    DibitString true_codes = ka ^ m;
    Permutation inv = used.inverse();
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t pair = inv((*res.fake_perm)(i));
      CHECK(true_codes[pair] == (target[i] ^ m[i]));
    }
  }
}

TEST_CASE("feasibility matches the brute-force oracle") {
  RandomStream rng(111);
  std::size_t feasible_seen = 0, infeasible_seen = 0;
  for (int t = 0; t < 400; ++t) {
    std::size_t n = 2 + rng.uniform_int(4);  // up to 5! enumerations
    DibitString ka = DibitString::random(n, rng);
    DibitString kb = DibitString::random(n, rng);
    DibitString m = DibitString::random(n, rng);
    DibitString target = DibitString::random(n, rng);
    Permutation used = Permutation::random(n, rng);

    AttackResult res =
        craft_fake_permutation(AttackGoal::ka_goal(target), ka, kb, m, used);
    bool want = feasible_by_enumeration(ka, target, m);
    CHECK(res.feasible == want);
    (want ? feasible_seen : infeasible_seen) += 1;
  }
  // the sweep must actually exercise both branches
  CHECK(feasible_seen > 20);
  CHECK(infeasible_seen > 20);
}

TEST_CASE("full attack runs against the original protocol") {
  SUBCASE("worked instance, end to end") {
    ProtocolConfig cfg = ProtocolConfig::with_defaults(2);
    cfg.forced_m = DibitString::from_bits("1110");
    DibitString ka = DibitString::from_bits("0011");
    DibitString kb = DibitString::from_bits("0110");

    AttackRunResult r =
        attack_run(cfg, ka, kb, AttackGoal::final_key_goal("11110001"));
    REQUIRE(r.attack.feasible);
    REQUIRE(r.outcome.status == RunStatus::Agreed);
    CHECK(*r.outcome.bob_final_key == "11110001");
    CHECK(*r.outcome.alice_final_key == "01011011");  // Alice's own view
    CHECK(r.outcome.transcript.has_stage(Stage::AttackDecision));
  }

  SUBCASE("every feasible attack succeeds and nothing ever aborts") {
    RandomStream rng(131);
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
      std::size_t n = 2 + rng.uniform_int(7);  // n <= 8
      ProtocolConfig cfg = ProtocolConfig::with_defaults(n);
      cfg.seed = 7000u + static_cast<std::uint64_t>(t);
      DibitString ka = DibitString::random(n, rng);
      DibitString kb = DibitString::random(n, rng);

      // the target reorders whatever codes the run produces, so it is
      // feasible no matter which M comes out
      Permutation tau = Permutation::random(n, rng);
      AttackRunResult r = attack_run_reorder(cfg, ka, kb, tau);
      REQUIRE(r.attack.feasible);
      REQUIRE(r.outcome.status == RunStatus::Agreed);
      CHECK(r.outcome.bob_final_key == r.attack.predicted_bob_key);
    }
  }

  SUBCASE("feasible attacks succeed on the state-vector backend too") {
    RandomStream rng(141);
    for (int t = 0; t < 50; ++t) {
      ProtocolConfig cfg = ProtocolConfig::with_defaults(3);
      cfg.backend = Backend::StateVector;
      cfg.seed = 8000u + static_cast<std::uint64_t>(t);
      DibitString ka = DibitString::random(3, rng);
      DibitString kb = DibitString::random(3, rng);
      Permutation tau = Permutation::random(3, rng);
      AttackRunResult r = attack_run_reorder(cfg, ka, kb, tau);
      REQUIRE(r.outcome.status == RunStatus::Agreed);
      CHECK(r.outcome.bob_final_key == r.attack.predicted_bob_key);
    }
  }

  SUBCASE("an infeasible goal degrades to an honest run") {
    ProtocolConfig cfg = ProtocolConfig::with_defaults(2);
    cfg.forced_m = DibitString::from_bits("1110");
    DibitString ka = DibitString::from_bits("0011");
    DibitString kb = DibitString::from_bits("0110");
    // codes are {11, 01}; the all-zero K'_A needs codes {11, 10}
    AttackRunResult r = attack_run(
        cfg, ka, kb, AttackGoal::ka_goal(DibitString::from_bits("0000")));
    CHECK_FALSE(r.attack.feasible);
    REQUIRE(r.outcome.status == RunStatus::Agreed);
    CHECK(*r.outcome.bob_final_key == "01011011");
  }
}

TEST_CASE("intercept-resend against single logical states") {
  RandomStream rng(151);

  SUBCASE("a matching basis never disturbs the state") {
    for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Rotation}) {
      for (LogicalSymbol s : {LogicalSymbol::ZeroL, LogicalSymbol::OneL,
                              LogicalSymbol::PlusL, LogicalSymbol::MinusL}) {
        for (int t = 0; t < 20; ++t) {
          StateVector reg = encode_logical(s, m);
          auto eve = measure_logical(reg, basis_of(s), m, rng);
          auto bob = measure_logical(eve.post_state, basis_of(s), m, rng);
          CHECK_FALSE(bob.leak);
          CHECK(bob.symbol == s);
        }
      }
    }
  }

  SUBCASE("a mismatched basis flips the remeasurement half the time") {
    int errors = 0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
      StateVector reg = encode_logical(LogicalSymbol::ZeroL, NoiseModel::Dephasing);
      auto eve = measure_logical(reg, LogicalBasis::XL, NoiseModel::Dephasing, rng);
      auto bob = measure_logical(eve.post_state, LogicalBasis::ZL,
                                 NoiseModel::Dephasing, rng);
      if (bob.symbol != LogicalSymbol::ZeroL) ++errors;
    }
    CHECK(std::abs(errors / double(trials) - 0.5) < 0.03);
  }
}

TEST_CASE("detection probability follows 1 - (3/4)^delta at tau = 0") {
  // delta = 4: 1 - (3/4)^4 = 175/256 ~ 0.6836
  AdversaryHooks hooks;
  hooks.tamper_transmission1 = intercept_resend_hook();
  int aborts = 0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    ProtocolConfig cfg = ProtocolConfig::with_defaults(1);
    cfg.decoy_count = 4;
    cfg.error_threshold = 0.0;
    cfg.seed = 90000u + static_cast<std::uint64_t>(t);
    RunOutcome out = run_protocol(cfg, DibitString::zeros(1),
                                  DibitString::zeros(1), &hooks);
    if (out.status == RunStatus::AbortedAtDecoyCheck1) ++aborts;
  }
  CHECK(std::abs(aborts / double(trials) - 175.0 / 256.0) < 0.03);
}

TEST_CASE("the fake announcement itself is silent") {
  // the permutation attack touches no quantum material, so its decoy
  // statistics are those of an honest run: zero errors, always
  RandomStream rng(161);
  for (int t = 0; t < 200; ++t) {
    ProtocolConfig cfg = ProtocolConfig::with_defaults(3);
    cfg.seed = 95000u + static_cast<std::uint64_t>(t);
    DibitString ka = DibitString::random(3, rng);
    DibitString kb = DibitString::random(3, rng);
    AttackRunResult r =
        attack_run_reorder(cfg, ka, kb, Permutation::random(3, rng));
    REQUIRE(r.outcome.status == RunStatus::Agreed);
    for (const auto& e : r.outcome.transcript.events()) {
      if (e.stage != Stage::DecoyCheck1 && e.stage != Stage::DecoyCheck2) continue;
      for (const auto& [k, v] : e.fields) {
        if (k == "errors") CHECK(v == "0");
      }
    }
  }
}
