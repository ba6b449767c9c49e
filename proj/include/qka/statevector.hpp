#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qka/rng.hpp"

namespace qka {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kGlobalPhaseTol = 1e-10;

// Small dense complex matrix, row-major. Only ever 2x2 .. 16x16 here.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix m(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols_; ++k) {
        cplx a = (*this)(r, k);
        if (a == 0.0) continue;
        for (std::size_t c = 0; c < o.cols_; ++c) m(r, c) += a * o(k, c);
      }
    return m;
  }

  bool is_unitary(double tol = kUnitaryTol) const {
    if (rows_ != cols_) return false;
    Matrix p = adjoint() * (*this);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) {
        cplx want = (r == c) ? 1.0 : 0.0;
        if (std::abs(p(r, c) - want) > tol) return false;
      }
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

// Pure state of a small register of physical qubits.
//
// Index convention: the leftmost ket symbol is qubit 0 and the most
// significant bit of the amplitude index, so |01> on 2 qubits is index 1.
class StateVector {
 public:
  StateVector(int num_qubits, std::size_t basis_index)
      : num_qubits_(check_qubits(num_qubits)),
        amps_(std::size_t{1} << num_qubits) {
    if (basis_index >= amps_.size()) {
      throw std::invalid_argument("basis index out of range");
    }
    amps_[basis_index] = 1.0;
  }

  StateVector(int num_qubits, std::vector<cplx> amplitudes)
      : num_qubits_(check_qubits(num_qubits)), amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << num_qubits)) {
      throw std::invalid_argument("amplitude vector has wrong length");
    }
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::size_t i) const { return amps_.at(i); }

  double norm_sq() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  cplx inner(const StateVector& other) const {
    if (other.num_qubits_ != num_qubits_) {
      throw std::invalid_argument("inner product across different registers");
    }
    cplx s = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      s += std::conj(amps_[i]) * other.amps_[i];
    }
    return s;
  }

  // |<a|b>|: 1 means equal up to global phase.
  double fidelity(const StateVector& other) const {
    return std::abs(inner(other));
  }

  bool approx_equal_up_to_phase(const StateVector& other,
                                double tol = kGlobalPhaseTol) const {
    return fidelity(other) >= 1.0 - tol;
  }

  void normalize() {
    double n = std::sqrt(norm_sq());
    if (n < 1e-300) throw std::domain_error("cannot normalize zero vector");
    for (auto& a : amps_) a /= n;
  }

  // Bit of qubit q within amplitude index i.
  int bit(std::size_t index, int qubit) const {
    return static_cast<int>((index >> (num_qubits_ - 1 - qubit)) & 1u);
  }

 private:
  static int check_qubits(int n) {
    if (n < 1 || n > kMaxQubits) {
      throw std::invalid_argument("qubit count must be in 1.." +
                                  std::to_string(kMaxQubits));
    }
    return n;
  }

  int num_qubits_;
  std::vector<cplx> amps_;
};

// Computational-basis preparation.
inline StateVector prepare(int num_qubits, std::size_t basis_index) {
  return StateVector(num_qubits, basis_index);
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  int n = a.num_qubits() + b.num_qubits();
  if (n > kMaxQubits) {
    throw std::length_error("tensor product exceeds max register size");
  }
  std::vector<cplx> amps(std::size_t{1} << n);
  const std::size_t bd = b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    cplx ai = a.amplitude(i);
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < bd; ++j) amps[i * bd + j] = ai * b.amplitude(j);
  }
  return StateVector(n, std::move(amps));
}

// ca*a + cb*b, normalized.
inline StateVector superpose(cplx ca, const StateVector& a, cplx cb,
                             const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("superpose across different registers");
  }
  std::vector<cplx> amps(a.dim());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = ca * a.amplitude(i) + cb * b.amplitude(i);
  }
  StateVector s(a.num_qubits(), std::move(amps));
  s.normalize();
  return s;
}

namespace detail {

inline void check_targets(const StateVector& s, std::span<const int> targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= s.num_qubits()) {
      throw std::invalid_argument("target qubit out of range");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("duplicate target qubit");
      }
    }
  }
}

// Index of the full register formed by placing `sub` bits on `targets`
// over a base index whose target bits are zero.
inline std::size_t expand_index(std::size_t base, std::size_t sub,
                                std::span<const int> targets, int num_qubits) {
  std::size_t idx = base;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    if ((sub >> (targets.size() - 1 - k)) & 1u) {
      idx |= std::size_t{1} << (num_qubits - 1 - targets[k]);
    }
  }
  return idx;
}

}  // namespace detail

// Apply a unitary on the given target qubits (identity elsewhere).
// The matrix dimension must be 2^|targets|; targets are ordered, i.e. the
// matrix's own qubit 0 is targets[0].
inline StateVector apply_unitary(const StateVector& state, const Matrix& u,
                                 std::span<const int> targets) {
  detail::check_targets(state, targets);
  const std::size_t subdim = std::size_t{1} << targets.size();
  if (u.rows() != subdim || u.cols() != subdim) {
    throw std::invalid_argument("unitary dimension does not match targets");
  }
  if (!u.is_unitary()) throw std::domain_error("matrix is not unitary");

  std::size_t target_mask = 0;
  for (int t : targets) {
    target_mask |= std::size_t{1} << (state.num_qubits() - 1 - t);
  }

  std::vector<cplx> out(state.dim());
  std::vector<cplx> in_block(subdim);
  for (std::size_t base = 0; base < state.dim(); ++base) {
    if (base & target_mask) continue;  // visit each block once
    for (std::size_t sub = 0; sub < subdim; ++sub) {
      in_block[sub] = state.amplitude(
          detail::expand_index(base, sub, targets, state.num_qubits()));
    }
    for (std::size_t r = 0; r < subdim; ++r) {
      cplx acc = 0;
      for (std::size_t c = 0; c < subdim; ++c) acc += u(r, c) * in_block[c];
      out[detail::expand_index(base, r, targets, state.num_qubits())] = acc;
    }
  }
  return StateVector(state.num_qubits(), std::move(out));
}

inline StateVector apply_unitary(const StateVector& state, const Matrix& u,
                                 std::initializer_list<int> targets) {
  return apply_unitary(state, u, std::span<const int>(targets.begin(), targets.size()));
}

// One measurement outcome: a label plus the orthonormal states (over the
// target qubits) spanning its projector.
struct ProjectorOutcome {
  std::string label;
  std::vector<std::vector<cplx>> basis;
};

struct MeasurementRecord {
  int outcome_index;  // index into the outcome list; == size() for remainder
  double probability;
  StateVector post_state;
};

// Projective measurement of the target qubits.
//
// The outcomes' basis vectors must be pairwise orthonormal. If they span the
// whole target subspace the set is complete; otherwise allow_remainder must
// be set and the complement becomes an extra outcome with index
// outcomes.size() (used for codespace-leak detection).
inline MeasurementRecord measure_projective(
    const StateVector& state, std::span<const int> targets,
    const std::vector<ProjectorOutcome>& outcomes, RandomStream& rng,
    bool allow_remainder = false) {
  detail::check_targets(state, targets);
  const std::size_t subdim = std::size_t{1} << targets.size();
  const std::size_t restdim = state.dim() >> targets.size();

  // validate orthonormality and completeness
  std::vector<const std::vector<cplx>*> all;
  for (const auto& o : outcomes) {
    for (const auto& v : o.basis) {
      if (v.size() != subdim) {
        throw std::invalid_argument("projector vector has wrong dimension");
      }
      all.push_back(&v);
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i; j < all.size(); ++j) {
      cplx ip = 0;
      for (std::size_t k = 0; k < subdim; ++k) {
        ip += std::conj((*all[i])[k]) * (*all[j])[k];
      }
      cplx want = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - want) > kUnitaryTol) {
        throw std::domain_error("projector vectors are not orthonormal");
      }
    }
  }
  if (all.size() > subdim || (all.size() < subdim && !allow_remainder)) {
    throw std::domain_error("projector set does not resolve the subspace");
  }

  std::size_t target_mask = 0;
  for (int t : targets) {
    target_mask |= std::size_t{1} << (state.num_qubits() - 1 - t);
  }
  std::vector<std::size_t> rest_bases;
  rest_bases.reserve(restdim);
  for (std::size_t base = 0; base < state.dim(); ++base) {
    if (!(base & target_mask)) rest_bases.push_back(base);
  }

  // phi_v[rest] = <v|_targets psi : the unnormalized component per vector
  auto contract = [&](const std::vector<cplx>& v) {
    std::vector<cplx> phi(restdim);
    for (std::size_t r = 0; r < restdim; ++r) {
      cplx acc = 0;
      for (std::size_t sub = 0; sub < subdim; ++sub) {
        if (v[sub] == 0.0) continue;
        acc += std::conj(v[sub]) *
               state.amplitude(detail::expand_index(rest_bases[r], sub, targets,
                                                    state.num_qubits()));
      }
      phi[r] = acc;
    }
    return phi;
  };

  std::vector<std::vector<std::vector<cplx>>> components(outcomes.size());
  std::vector<double> probs(outcomes.size() + 1, 0.0);
  double total = 0;
  for (std::size_t o = 0; o < outcomes.size(); ++o) {
    for (const auto& v : outcomes[o].basis) {
      auto phi = contract(v);
      double p = 0;
      for (const auto& a : phi) p += std::norm(a);
      probs[o] += p;
      components[o].push_back(std::move(phi));
    }
    total += probs[o];
  }
  probs[outcomes.size()] = std::max(0.0, 1.0 - total);  // remainder

  // sample
  double u = rng.uniform();
  std::size_t chosen = outcomes.size();
  double cum = 0;
  for (std::size_t o = 0; o < outcomes.size(); ++o) {
    cum += probs[o];
    if (u < cum) {
      chosen = o;
      break;
    }
  }
  if (chosen == outcomes.size() && !allow_remainder) {
    // numerically the total should be 1; land on the last nonzero outcome
    for (std::size_t o = outcomes.size(); o-- > 0;) {
      if (probs[o] > 0) {
        chosen = o;
        break;
      }
    }
  }

  // post state
  std::vector<cplx> post(state.dim());
  if (chosen < outcomes.size()) {
    for (std::size_t k = 0; k < outcomes[chosen].basis.size(); ++k) {
      const auto& v = outcomes[chosen].basis[k];
      const auto& phi = components[chosen][k];
      for (std::size_t sub = 0; sub < subdim; ++sub) {
        if (v[sub] == 0.0) continue;
        for (std::size_t r = 0; r < restdim; ++r) {
          post[detail::expand_index(rest_bases[r], sub, targets,
                                    state.num_qubits())] += v[sub] * phi[r];
        }
      }
    }
  } else {
    // remainder = psi minus every listed component
    for (std::size_t i = 0; i < state.dim(); ++i) post[i] = state.amplitude(i);
    for (std::size_t o = 0; o < outcomes.size(); ++o) {
      for (std::size_t k = 0; k < outcomes[o].basis.size(); ++k) {
        const auto& v = outcomes[o].basis[k];
        const auto& phi = components[o][k];
        for (std::size_t sub = 0; sub < subdim; ++sub) {
          if (v[sub] == 0.0) continue;
          for (std::size_t r = 0; r < restdim; ++r) {
            post[detail::expand_index(rest_bases[r], sub, targets,
                                      state.num_qubits())] -= v[sub] * phi[r];
          }
        }
      }
    }
  }
  StateVector post_state(state.num_qubits(), std::move(post));
  post_state.normalize();
  return MeasurementRecord{static_cast<int>(chosen), probs[chosen],
                           std::move(post_state)};
}

// Full-register measurement.
inline MeasurementRecord measure_projective(
    const StateVector& state, const std::vector<ProjectorOutcome>& outcomes,
    RandomStream& rng, bool allow_remainder = false) {
  std::vector<int> targets(static_cast<std::size_t>(state.num_qubits()));
  for (int q = 0; q < state.num_qubits(); ++q) targets[q] = q;
  return measure_projective(state, targets, outcomes, rng, allow_remainder);
}

// Common 2x2 gates.
namespace gates {

inline Matrix identity2() { return Matrix::identity(2); }

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

inline Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m(0, 0) = s;
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 1) = -s;
  return m;
}

// diag(1, e^{i phi})
inline Matrix phase(double phi) {
  Matrix m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = std::exp(cplx(0, phi));
  return m;
}

// Real planar rotation by theta.
inline Matrix rotation(double theta) {
  Matrix m(2, 2);
  m(0, 0) = std::cos(theta);
  m(0, 1) = -std::sin(theta);
  m(1, 0) = std::sin(theta);
  m(1, 1) = std::cos(theta);
  return m;
}

}  // namespace gates

}  // namespace qka
