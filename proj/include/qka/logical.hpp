#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "qka/codes.hpp"
#include "qka/statevector.hpp"

namespace qka {

namespace detail {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// 4-dim amplitude vector of a DFS-encoded logical state.
inline std::vector<cplx> logical_vec(LogicalSymbol s, NoiseModel m) {
  std::vector<cplx> v(4);
  const double h = kInvSqrt2;
  if (m == NoiseModel::Dephasing) {
    switch (s) {
      case LogicalSymbol::ZeroL: v[1] = 1; break;                 // |01>
      case LogicalSymbol::OneL: v[2] = 1; break;                  // |10>
      case LogicalSymbol::PlusL: v[1] = h; v[2] = h; break;
      case LogicalSymbol::MinusL: v[1] = h; v[2] = -h; break;
    }
  } else {
    switch (s) {
      case LogicalSymbol::ZeroL: v[0] = h; v[3] = h; break;       // |00>+|11>
      case LogicalSymbol::OneL: v[1] = h; v[2] = -h; break;       // singlet
      case LogicalSymbol::PlusL: v[0] = 0.5; v[3] = 0.5; v[1] = 0.5; v[2] = -0.5; break;
      case LogicalSymbol::MinusL: v[0] = 0.5; v[3] = 0.5; v[1] = -0.5; v[2] = 0.5; break;
    }
  }
  return v;
}

// Orthonormal complement of the codespace within the 2-qubit space.
inline std::array<std::vector<cplx>, 2> codespace_complement(NoiseModel m) {
  std::array<std::vector<cplx>, 2> e = {std::vector<cplx>(4),
                                        std::vector<cplx>(4)};
  const double h = kInvSqrt2;
  if (m == NoiseModel::Dephasing) {
    e[0][0] = 1;  // |00>
    e[1][3] = 1;  // |11>
  } else {
    e[0][0] = h; e[0][3] = -h;  // (|00>-|11>)/sqrt2
    e[1][1] = h; e[1][2] = h;   // (|01>+|10>)/sqrt2
  }
  return e;
}

// 16-dim amplitude vector of a logical Bell state over 4 physical qubits.
inline std::vector<cplx> logical_bell_vec(BellCode code, NoiseModel m) {
  auto zero = logical_vec(LogicalSymbol::ZeroL, m);
  auto one = logical_vec(LogicalSymbol::OneL, m);
  // code bit 1 (Psi) pairs 0L with 1L; code bit 0 (minus) flips the sign
  const auto& a1 = zero;
  const auto& b1 = (code.bits & 2) ? one : zero;
  const auto& a2 = one;
  const auto& b2 = (code.bits & 2) ? zero : one;
  double sign = (code.bits & 1) ? -1.0 : 1.0;
  std::vector<cplx> v(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      v[i * 4 + j] = kInvSqrt2 * (a1[i] * b1[j] + sign * a2[i] * b2[j]);
    }
  }
  return v;
}

}  // namespace detail

// 2-qubit DFS encoding of a logical symbol.
inline StateVector encode_logical(LogicalSymbol s, NoiseModel m) {
  return StateVector(2, detail::logical_vec(s, m));
}

// 4-qubit logical Bell state; qubits 0-1 are the first logical particle,
// qubits 2-3 the second.
inline StateVector make_logical_bell(BellCode code, NoiseModel m) {
  return StateVector(4, detail::logical_bell_vec(code, m));
}

// Collective dephasing: the same diag(1, e^{i phi}) on every physical qubit.
inline StateVector apply_collective_dephasing(const StateVector& s, double phi) {
  Matrix g = gates::phase(phi);
  StateVector out = s;
  for (int q = 0; q < s.num_qubits(); ++q) out = apply_unitary(out, g, {q});
  return out;
}

// Collective rotation: the same real rotation by theta on every physical qubit.
inline StateVector apply_collective_rotation(const StateVector& s, double theta) {
  Matrix g = gates::rotation(theta);
  StateVector out = s;
  for (int q = 0; q < s.num_qubits(); ++q) out = apply_unitary(out, g, {q});
  return out;
}

// Collective noise restricted to a subset of qubits (a transmitted batch
// that is only part of a larger entangled register).
inline StateVector apply_collective_noise(const StateVector& s, NoiseModel m,
                                          double param,
                                          std::span<const int> qubits) {
  Matrix g = (m == NoiseModel::Dephasing) ? gates::phase(param)
                                          : gates::rotation(param);
  StateVector out = s;
  for (int q : qubits) out = apply_unitary(out, g, {q});
  return out;
}

inline StateVector apply_collective_noise(const StateVector& s, NoiseModel m,
                                          double param) {
  return (m == NoiseModel::Dephasing) ? apply_collective_dephasing(s, param)
                                      : apply_collective_rotation(s, param);
}

struct LogicalMeasurement {
  bool leak;  // state had support outside the DFS codespace
  LogicalSymbol symbol;
  double probability;
  StateVector post_state;
};

// Measure one logical qubit (2 physical qubits, `targets`) in Z_L or X_L.
inline LogicalMeasurement measure_logical(const StateVector& state,
                                          std::span<const int> targets,
                                          LogicalBasis basis, NoiseModel m,
                                          RandomStream& rng) {
  if (targets.size() != 2) {
    throw std::invalid_argument("logical qubit spans exactly 2 physical qubits");
  }
  LogicalSymbol lo = (basis == LogicalBasis::ZL) ? LogicalSymbol::ZeroL
                                                 : LogicalSymbol::PlusL;
  LogicalSymbol hi = (basis == LogicalBasis::ZL) ? LogicalSymbol::OneL
                                                 : LogicalSymbol::MinusL;
  std::vector<ProjectorOutcome> outcomes = {
      {to_string(lo), {detail::logical_vec(lo, m)}},
      {to_string(hi), {detail::logical_vec(hi, m)}},
  };
  auto rec = measure_projective(state, targets, outcomes, rng, true);
  bool leak = rec.outcome_index >= 2;
  return LogicalMeasurement{leak, rec.outcome_index == 0 ? lo : hi,
                            rec.probability, std::move(rec.post_state)};
}

inline LogicalMeasurement measure_logical(const StateVector& state,
                                          LogicalBasis basis, NoiseModel m,
                                          RandomStream& rng) {
  if (state.num_qubits() != 2) {
    throw std::invalid_argument("expected a 2-qubit register");
  }
  const std::array<int, 2> t = {0, 1};
  return measure_logical(state, t, basis, m, rng);
}

struct BellMeasurement {
  bool leak;
  BellCode code;
  double probability;
  StateVector post_state;
};

// Logical Bell measurement of two logical qubits. `targets` lists the 4
// physical qubits, first logical particle first.
inline BellMeasurement measure_logical_bell(const StateVector& state,
                                            std::span<const int> targets,
                                            NoiseModel m, RandomStream& rng) {
  if (targets.size() != 4) {
    throw std::invalid_argument("logical Bell measurement spans 4 physical qubits");
  }
  std::vector<ProjectorOutcome> outcomes;
  outcomes.reserve(4);
  for (std::uint8_t b = 0; b < 4; ++b) {
    BellCode c(b);
    outcomes.push_back({c.name(), {detail::logical_bell_vec(c, m)}});
  }
  auto rec = measure_projective(state, targets, outcomes, rng, true);
  bool leak = rec.outcome_index >= 4;
  return BellMeasurement{leak,
                         BellCode(static_cast<std::uint8_t>(
                             leak ? 0 : rec.outcome_index)),
                         rec.probability, std::move(rec.post_state)};
}

inline BellMeasurement measure_logical_bell(const StateVector& state,
                                            NoiseModel m, RandomStream& rng) {
  if (state.num_qubits() != 4) {
    throw std::invalid_argument("expected a 4-qubit register");
  }
  const std::array<int, 4> t = {0, 1, 2, 3};
  return measure_logical_bell(state, t, m, rng);
}

// Physical 4x4 realization of the logical unitary U_code on one logical
// qubit: the logical Pauli set {I, Z, X, XZ} on the codespace, identity on
// the complement. Acting on the first logical particle of a Bell pair this
// maps code b to b XOR code.
inline Matrix logical_unitary_matrix(UnitaryCode code, NoiseModel m) {
  // logical-level 2x2 action
  Matrix a(2, 2);
  switch (code.bits) {
    case 0: a(0, 0) = 1; a(1, 1) = 1; break;            // I
    case 1: a(0, 0) = 1; a(1, 1) = -1; break;           // Z
    case 2: a(0, 1) = 1; a(1, 0) = 1; break;            // X
    case 3: a(0, 1) = -1; a(1, 0) = 1; break;           // XZ
    default: throw std::invalid_argument("unitary code out of range");
  }
  std::array<std::vector<cplx>, 2> c = {
      detail::logical_vec(LogicalSymbol::ZeroL, m),
      detail::logical_vec(LogicalSymbol::OneL, m)};
  auto e = detail::codespace_complement(m);
  Matrix u(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col) {
      cplx acc = 0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          acc += a(i, j) * c[i][r] * std::conj(c[j][col]);
        }
      }
      for (int k = 0; k < 2; ++k) acc += e[k][r] * std::conj(e[k][col]);
      u(r, col) = acc;
    }
  }
  return u;
}

// Apply U_code to the logical qubit occupying physical qubits
// (2*target_logical, 2*target_logical+1).
inline StateVector apply_logical_unitary(UnitaryCode code,
                                         const StateVector& state,
                                         int target_logical, NoiseModel m) {
  int q0 = 2 * target_logical;
  if (q0 < 0 || q0 + 1 >= state.num_qubits()) {
    throw std::invalid_argument("target logical qubit out of range");
  }
  return apply_unitary(state, logical_unitary_matrix(code, m), {q0, q0 + 1});
}

}  // namespace qka
