#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qka/rng.hpp"

namespace qka {

// Which collective channel the logical encoding defends against.
enum class NoiseModel : std::uint8_t {
  Dephasing,  // 'dp'
  Rotation,   // 'r'
};

inline std::string to_string(NoiseModel m) {
  return m == NoiseModel::Dephasing ? "dp" : "r";
}

inline NoiseModel noise_model_from_string(std::string_view s) {
  if (s == "dp") return NoiseModel::Dephasing;
  if (s == "r") return NoiseModel::Rotation;
  throw std::invalid_argument("unknown noise model: " + std::string(s));
}

// The four logical single-qubit states. Zero/One span the Z_L basis,
// Plus/Minus the X_L basis.
enum class LogicalSymbol : std::uint8_t { ZeroL, OneL, PlusL, MinusL };

enum class LogicalBasis : std::uint8_t { ZL, XL };

inline LogicalBasis basis_of(LogicalSymbol s) {
  return (s == LogicalSymbol::ZeroL || s == LogicalSymbol::OneL)
             ? LogicalBasis::ZL
             : LogicalBasis::XL;
}

inline std::string to_string(LogicalSymbol s) {
  switch (s) {
    case LogicalSymbol::ZeroL: return "0L";
    case LogicalSymbol::OneL: return "1L";
    case LogicalSymbol::PlusL: return "+L";
    case LogicalSymbol::MinusL: return "-L";
  }
  return "?";
}

// 2-bit label of a logical Bell state: 00=Phi+, 01=Phi-, 10=Psi+, 11=Psi-.
struct BellCode {
  std::uint8_t bits = 0;

  constexpr BellCode() = default;
  constexpr explicit BellCode(std::uint8_t b) : bits(b) {
    // callers pass 0..3; anything else is a programming error
  }

  friend constexpr BellCode operator^(BellCode a, BellCode b) {
    return BellCode(static_cast<std::uint8_t>(a.bits ^ b.bits));
  }
  friend constexpr bool operator==(BellCode a, BellCode b) {
    return a.bits == b.bits;
  }

  std::string name() const {
    static const char* names[4] = {"Phi+", "Phi-", "Psi+", "Psi-"};
    return names[bits & 3];
  }

  std::string to_bit_string() const {
    return {static_cast<char>('0' + ((bits >> 1) & 1)),
            static_cast<char>('0' + (bits & 1))};
  }

  static BellCode random(RandomStream& rng) {
    return BellCode(static_cast<std::uint8_t>(rng.uniform_int(4)));
  }
};

// 2-bit label selecting one of the four logical unitary operations.
struct UnitaryCode {
  std::uint8_t bits = 0;

  constexpr UnitaryCode() = default;
  constexpr explicit UnitaryCode(std::uint8_t b) : bits(b) {}

  friend constexpr bool operator==(UnitaryCode a, UnitaryCode b) {
    return a.bits == b.bits;
  }
};

// Key material: a sequence of 2-bit symbols.
class DibitString {
 public:
  DibitString() = default;
  explicit DibitString(std::vector<std::uint8_t> dibits)
      : dibits_(std::move(dibits)) {
    for (auto d : dibits_) {
      if (d > 3) throw std::invalid_argument("dibit out of range");
    }
  }

  // Parse from '0'/'1' text, two characters per dibit, most significant first.
  static DibitString from_bits(std::string_view bits) {
    if (bits.size() % 2 != 0) {
      throw std::invalid_argument("bit string length must be even");
    }
    std::vector<std::uint8_t> d;
    d.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
      std::uint8_t hi = bit_at(bits, i), lo = bit_at(bits, i + 1);
      d.push_back(static_cast<std::uint8_t>(hi << 1 | lo));
    }
    return DibitString(std::move(d));
  }

  static DibitString random(std::size_t n, RandomStream& rng) {
    std::vector<std::uint8_t> d(n);
    for (auto& x : d) x = static_cast<std::uint8_t>(rng.uniform_int(4));
    return DibitString(std::move(d));
  }

  static DibitString zeros(std::size_t n) {
    return DibitString(std::vector<std::uint8_t>(n, 0));
  }

  std::size_t size() const { return dibits_.size(); }
  bool empty() const { return dibits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return dibits_.at(i); }
  void set(std::size_t i, std::uint8_t v) {
    if (v > 3) throw std::invalid_argument("dibit out of range");
    dibits_.at(i) = v;
  }
  const std::vector<std::uint8_t>& dibits() const { return dibits_; }

  std::string to_bits() const {
    std::string s;
    s.reserve(2 * dibits_.size());
    for (auto d : dibits_) {
      s.push_back(static_cast<char>('0' + ((d >> 1) & 1)));
      s.push_back(static_cast<char>('0' + (d & 1)));
    }
    return s;
  }

  friend DibitString operator^(const DibitString& a, const DibitString& b) {
    if (a.size() != b.size()) {
      throw std::invalid_argument("dibit string length mismatch");
    }
    std::vector<std::uint8_t> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      d[i] = static_cast<std::uint8_t>(a.dibits_[i] ^ b.dibits_[i]);
    }
    return DibitString(std::move(d));
  }

  friend bool operator==(const DibitString& a, const DibitString& b) {
    return a.dibits_ == b.dibits_;
  }

 private:
  static std::uint8_t bit_at(std::string_view bits, std::size_t i) {
    char c = bits[i];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string must contain only 0/1");
    }
    return static_cast<std::uint8_t>(c - '0');
  }

  std::vector<std::uint8_t> dibits_;
};

}  // namespace qka
