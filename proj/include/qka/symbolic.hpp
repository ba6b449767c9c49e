#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qka/codes.hpp"
#include "qka/rng.hpp"

namespace qka {

// Classical shadow of the encoding table: U_u maps Bell code b to b XOR u.
inline BellCode unitary_action(UnitaryCode u, BellCode b) {
  return BellCode(static_cast<std::uint8_t>(b.bits ^ u.bits));
}

struct SwapResult {
  BellCode mr1, mr2;
};

// Entanglement swapping of two logical Bell pairs: crosswise Bell
// measurement yields MR1 uniform with MR1 ^ MR2 = IS1 ^ IS2.
inline SwapResult entanglement_swap(BellCode is1, BellCode is2,
                                    RandomStream& rng) {
  BellCode mr1 = BellCode::random(rng);
  BellCode mr2 = mr1 ^ is1 ^ is2;
  return {mr1, mr2};
}

// Slot-wise Bell measurement of a cycle of cross-paired Bell states
// (slot j holds the first particle of pair sigma(j) and the second particle
// of pair j, sigma a single cycle over the given codes). Results are
// uniform subject to one constraint: their XOR equals the XOR of the input
// codes. Slots are measured in ascending index order, so the last entry
// carries the constraint.
inline std::vector<BellCode> swap_cycle(const std::vector<BellCode>& codes,
                                        RandomStream& rng) {
  std::vector<BellCode> out(codes.size());
  BellCode acc(0);
  for (const auto& c : codes) acc = acc ^ c;
  for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
    out[i] = BellCode::random(rng);
    acc = acc ^ out[i];
  }
  if (!codes.empty()) out.back() = acc;
  return out;
}

// dibit_xor lives on DibitString itself (operator^); kept as a named
// function for symmetry with the protocol announcements.
inline DibitString dibit_xor(const DibitString& a, const DibitString& b) {
  return a ^ b;
}

// Final shared key (K_A ^ K_B) || (K_A ^ K_B ^ M) as a '0'/'1' string of
// length 4n, most significant dibit first.
inline std::string final_key(const DibitString& ka, const DibitString& kb,
                             const DibitString& m) {
  DibitString h = ka ^ kb;
  return h.to_bits() + (h ^ m).to_bits();
}

}  // namespace qka
