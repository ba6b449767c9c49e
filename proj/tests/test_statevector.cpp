#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qka/statevector.hpp"

using namespace qka;

namespace {

StateVector random_state(int nq, RandomStream& rng) {
  std::vector<cplx> amps(std::size_t{1} << nq);
  for (auto& a : amps) a = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  StateVector s(nq, std::move(amps));
  s.normalize();
  return s;
}

// Gram-Schmidt over random columns: a generic unitary with no structure
// shared with the implementation under test.
Matrix random_unitary(std::size_t dim, RandomStream& rng) {
  std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
  for (auto& c : cols) {
    for (auto& x : c) x = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      cplx ip = 0;
      for (std::size_t k = 0; k < dim; ++k) ip += std::conj(cols[j][k]) * cols[i][k];
      for (std::size_t k = 0; k < dim; ++k) cols[i][k] -= ip * cols[j][k];
    }
    double n = 0;
    for (auto& x : cols[i]) n += std::norm(x);
    n = std::sqrt(n);
    for (auto& x : cols[i]) x /= n;
  }
  Matrix u(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) u(r, c) = cols[c][r];
  return u;
}

std::vector<ProjectorOutcome> z_basis(int nq) {
  std::vector<ProjectorOutcome> out;
  std::size_t dim = std::size_t{1} << nq;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<cplx> v(dim);
    v[i] = 1;
    out.push_back({std::to_string(i), {v}});
  }
  return out;
}

}  // namespace

TEST_CASE("computational-basis preparation") {
  StateVector s = prepare(2, 1);  // |01>
  CHECK(s.amplitude(1) == cplx(1, 0));
  CHECK(s.amplitude(0) == cplx(0, 0));

  CHECK(prepare(1, 0).amplitude(0) == cplx(1, 0));

  StateVector t = prepare(4, 5);  // |0101>
  CHECK(t.amplitude(5) == cplx(1, 0));
  CHECK(t.dim() == 16);

  CHECK_THROWS_AS(prepare(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(prepare(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(prepare(13, 0), std::invalid_argument);
}

TEST_CASE("apply_unitary basics") {
  RandomStream rng(11);
  StateVector s = random_state(3, rng);

  SUBCASE("identity leaves the state untouched") {
    StateVector t = apply_unitary(s, Matrix::identity(2), {1});
    for (std::size_t i = 0; i < s.dim(); ++i) {
      CHECK(std::abs(t.amplitude(i) - s.amplitude(i)) < 1e-12);
    }
  }

  SUBCASE("bit flip on qubit 0 of |01> gives |11>") {
    StateVector t = apply_unitary(prepare(2, 1), gates::pauli_x(), {0});
    CHECK(std::abs(t.amplitude(3) - cplx(1, 0)) < 1e-12);
  }

  SUBCASE("Hadamard twice is identity") {
    StateVector t = apply_unitary(
        apply_unitary(prepare(1, 0), gates::hadamard(), {0}),
        gates::hadamard(), {0});
    CHECK(std::abs(t.amplitude(0) - cplx(1, 0)) < 1e-10);
  }

  SUBCASE("validation") {
    Matrix bad(2, 2);
    bad(0, 0) = 2;  // not unitary
    CHECK_THROWS_AS(apply_unitary(s, bad, {0}), std::domain_error);
    CHECK_THROWS_AS(apply_unitary(s, Matrix::identity(4), {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_unitary(s, Matrix::identity(2), {3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_unitary(s, Matrix::identity(4), {0}),
                    std::invalid_argument);
  }
}

TEST_CASE("unitary followed by its adjoint restores the state") {
  RandomStream rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    StateVector s = random_state(4, rng);
    Matrix u = random_unitary(4, rng);
    const std::vector<int> targets = {1, 3};
    StateVector t = apply_unitary(apply_unitary(s, u, targets), u.adjoint(), targets);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      CHECK(std::abs(t.amplitude(i) - s.amplitude(i)) < 1e-10);
    }
  }
}

TEST_CASE("tensor product") {
  StateVector s = tensor(prepare(1, 0), prepare(1, 1));
  CHECK(std::abs(s.amplitude(1) - cplx(1, 0)) < 1e-12);  // |01>

  // physical Phi+ tensored with |0>: amplitudes at 000 and 110
  StateVector phi = superpose(1, prepare(2, 0), 1, prepare(2, 3));
  StateVector t = tensor(phi, prepare(1, 0));
  CHECK(std::abs(t.amplitude(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(t.amplitude(6) - 1.0 / std::sqrt(2.0)) < 1e-12);

  RandomStream rng(5);
  StateVector a = random_state(3, rng), b = random_state(4, rng);
  CHECK(tensor(a, b).norm_sq() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(tensor(random_state(7, rng), random_state(6, rng)),
                  std::length_error);
}

TEST_CASE("projective measurement of eigenstates") {
  RandomStream rng(31);
  auto rec = measure_projective(prepare(1, 0), z_basis(1), rng);
  CHECK(rec.outcome_index == 0);
  CHECK(rec.probability == doctest::Approx(1.0).epsilon(1e-12));

  // physical Bell measurement of a Bell state
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<ProjectorOutcome> bell = {
      {"Phi+", {{h, 0, 0, h}}},
      {"Phi-", {{h, 0, 0, -h}}},
      {"Psi+", {{0, h, h, 0}}},
      {"Psi-", {{0, h, -h, 0}}},
  };
  StateVector phi = superpose(1, prepare(2, 0), 1, prepare(2, 3));
  auto r2 = measure_projective(phi, bell, rng);
  CHECK(r2.outcome_index == 0);
  CHECK(r2.probability == doctest::Approx(1.0).epsilon(1e-10));

  SUBCASE("incomplete projector set is rejected") {
    std::vector<ProjectorOutcome> partial = {bell[0], bell[1]};
    CHECK_THROWS_AS(measure_projective(phi, partial, rng), std::domain_error);
    // but fine when the remainder is allowed
    auto r3 = measure_projective(phi, partial, rng, true);
    CHECK(r3.outcome_index == 0);
  }

  SUBCASE("non-orthogonal projectors are rejected") {
    std::vector<ProjectorOutcome> dup = {bell[0], bell[0], bell[2], bell[3]};
    CHECK_THROWS_AS(measure_projective(phi, dup, rng), std::domain_error);
  }
}

TEST_CASE("|+> measured in Z lands on each side half the time") {
  RandomStream rng(41);
  StateVector plus = apply_unitary(prepare(1, 0), gates::hadamard(), {0});
  int zeros = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    if (measure_projective(plus, z_basis(1), rng).outcome_index == 0) ++zeros;
  }
  CHECK(std::abs(zeros / double(trials) - 0.5) < 0.02);
}

TEST_CASE("measurement statistics follow the Born rule within 3 sigma") {
  RandomStream rng(51);
  StateVector s = random_state(2, rng);
  std::vector<double> expected;
  for (std::size_t i = 0; i < 4; ++i) expected.push_back(std::norm(s.amplitude(i)));

  const int trials = 100000;
  std::vector<int> counts(4, 0);
  auto basis = z_basis(2);
  for (int t = 0; t < trials; ++t) {
    ++counts[measure_projective(s, basis, rng).outcome_index];
  }
  for (std::size_t i = 0; i < 4; ++i) {
    double p = expected[i];
    double sigma = std::sqrt(trials * p * (1 - p));
    CHECK(std::abs(counts[i] - trials * p) <= 3 * sigma + 1);
  }
}

TEST_CASE("norm is preserved through arbitrary operation sequences") {
  RandomStream rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    StateVector s = random_state(3, rng);
    for (int step = 0; step < 8; ++step) {
      switch (rng.uniform_int(3)) {
        case 0: {
          int q = static_cast<int>(rng.uniform_int(3));
          s = apply_unitary(s, random_unitary(2, rng), {q});
          break;
        }
        case 1:
          s = apply_unitary(s, random_unitary(4, rng), {0, 2});
          break;
        default:
          s = measure_projective(s, z_basis(3), rng).post_state;
          break;
      }
      CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("partial measurement leaves the rest of the register coherent") {
  RandomStream rng(71);
  // (|00> + |11>)/sqrt2 (|0><0|, |1><1|) on qubit 0: outcome fixes qubit 1
  StateVector phi = superpose(1, prepare(2, 0), 1, prepare(2, 3));
  std::vector<ProjectorOutcome> z1 = {{"0", {{1, 0}}}, {"1", {{0, 1}}}};
  const std::vector<int> q0 = {0};
  for (int t = 0; t < 50; ++t) {
    auto rec = measure_projective(phi, q0, z1, rng);
    CHECK(rec.probability == doctest::Approx(0.5).epsilon(1e-10));
    std::size_t expect = rec.outcome_index == 0 ? 0 : 3;
    CHECK(std::abs(rec.post_state.amplitude(expect) - cplx(1, 0)) < 1e-10);
  }
}
