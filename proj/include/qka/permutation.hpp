#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qka/rng.hpp"

namespace qka {

// Bijection on {0..n-1}. map(i) is the position element i moves to.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> mapping)
      : map_(std::move(mapping)) {
    std::vector<bool> seen(map_.size(), false);
    for (auto v : map_) {
      if (v >= map_.size() || seen[v]) {
        throw std::invalid_argument("mapping is not a bijection");
      }
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
  }

  // Fisher-Yates draw from the given stream.
  static Permutation random(std::size_t n, RandomStream& rng) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(m[i - 1], m[rng.uniform_int(i)]);
    }
    return Permutation(std::move(m));
  }

  std::size_t size() const { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_.at(i); }
  const std::vector<std::size_t>& mapping() const { return map_; }

  Permutation inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
  }

  // (*this) after `other`: result(i) = this(other(i)).
  Permutation compose(const Permutation& other) const {
    if (other.size() != size()) {
      throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<std::size_t> m(size());
    for (std::size_t i = 0; i < size(); ++i) m[i] = map_[other(i)];
    return Permutation(std::move(m));
  }

  // permuted[map(i)] = v[i]
  template <typename T>
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != size()) {
      throw std::invalid_argument("sequence size mismatch");
    }
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[map_[i]] = v[i];
    return out;
  }

  // Cycle decomposition; fixed points come back as 1-cycles.
  std::vector<std::vector<std::size_t>> cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::vector<std::size_t> cyc;
      std::size_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        cyc.push_back(j);
        j = map_[j];
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (map_[i] != i) return false;
    }
    return true;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.map_ == b.map_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < map_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(map_[i]);
    }
    return s + "]";
  }

 private:
  std::vector<std::size_t> map_;
};

}  // namespace qka
