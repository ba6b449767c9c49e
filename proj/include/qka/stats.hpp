#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qka {

// Pearson chi-square statistic against a uniform distribution over the
// given category counts.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (counts.empty() || total == 0) {
    throw std::invalid_argument("empty sample");
  }
  double expected = static_cast<double>(total) / counts.size();
  double stat = 0;
  for (auto c : counts) {
    double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// Upper critical value of the chi-square distribution at alpha = 0.01.
inline double chi_square_critical_alpha01(std::size_t dof) {
  // Wilson-Hilferty approximation; within ~0.1 of table values for the
  // degrees of freedom used here (3 and 15 give 11.34 and 30.58).
  const double z99 = 2.3263478740408408;
  double k = static_cast<double>(dof);
  double t = 1.0 - 2.0 / (9.0 * k) + z99 * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

inline bool passes_uniformity_alpha01(const std::vector<std::size_t>& counts) {
  return chi_square_uniform(counts) <=
         chi_square_critical_alpha01(counts.size() - 1);
}

// Two-sample chi-square homogeneity statistic over matched category counts.
inline double chi_square_homogeneity(const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("mismatched category counts");
  }
  double na = 0, nb = 0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  if (na == 0 || nb == 0) throw std::invalid_argument("empty sample");
  double stat = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double pooled = (a[i] + b[i]) / (na + nb);
    if (pooled == 0) continue;
    double ea = na * pooled, eb = nb * pooled;
    stat += (a[i] - ea) * (a[i] - ea) / ea;
    stat += (b[i] - eb) * (b[i] - eb) / eb;
  }
  return stat;
}

inline bool passes_homogeneity_alpha01(const std::vector<std::size_t>& a,
                                       const std::vector<std::size_t>& b) {
  std::size_t dof = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] + b[i] > 0) ++dof;
  }
  if (dof < 2) return true;
  return chi_square_homogeneity(a, b) <= chi_square_critical_alpha01(dof - 1);
}

}  // namespace qka
