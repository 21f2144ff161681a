#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <stdexcept>

namespace mvc {

/// Element of GF(2^16) under the reduction polynomial
/// x^16 + x^12 + x^3 + x + 1 (0x1100B). Addition is XOR; multiplication
/// goes through log/antilog tables built from the primitive element x.
struct Gf16 {
  std::uint16_t value = 0;

  constexpr Gf16() = default;
  constexpr explicit Gf16(std::uint16_t v) : value(v) {}

  friend constexpr bool operator==(Gf16 a, Gf16 b) { return a.value == b.value; }
  friend constexpr bool operator!=(Gf16 a, Gf16 b) { return a.value != b.value; }
};

namespace gf16_detail {

constexpr std::uint32_t kReductionPoly = 0x1100B;  // x^16+x^12+x^3+x+1
constexpr std::uint32_t kGroupOrder = 65535;

struct Tables {
  // exp is doubled so exp[log a + log b] needs no reduction mod 65535.
  std::array<std::uint16_t, 65536> log{};
  std::array<std::uint16_t, 2 * kGroupOrder> exp{};

  Tables() {
    std::uint32_t b = 1;
    for (std::uint32_t l = 0; l < kGroupOrder; ++l) {
      exp[l] = static_cast<std::uint16_t>(b);
      exp[l + kGroupOrder] = static_cast<std::uint16_t>(b);
      log[b] = static_cast<std::uint16_t>(l);
      b <<= 1;
      if (b & 0x10000u) b ^= kReductionPoly;
    }
    assert(b == 1 && "x must generate the full multiplicative group");
  }
};

inline const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace gf16_detail

inline Gf16 operator+(Gf16 a, Gf16 b) {
  return Gf16(static_cast<std::uint16_t>(a.value ^ b.value));
}

inline Gf16 operator-(Gf16 a, Gf16 b) { return a + b; }  // characteristic 2

inline Gf16 operator*(Gf16 a, Gf16 b) {
  if (a.value == 0 || b.value == 0) return Gf16(0);
  const auto& t = gf16_detail::tables();
  return Gf16(t.exp[static_cast<std::uint32_t>(t.log[a.value]) + t.log[b.value]]);
}

/// Multiplicative inverse; the zero element has none.
inline Gf16 inv(Gf16 a) {
  if (a.value == 0) throw std::domain_error("gf16: zero has no inverse");
  const auto& t = gf16_detail::tables();
  return Gf16(t.exp[gf16_detail::kGroupOrder - t.log[a.value]]);
}

inline Gf16 operator/(Gf16 a, Gf16 b) { return a * inv(b); }

}  // namespace mvc
