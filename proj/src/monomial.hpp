#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace gkoszul {

// Exponent vector for 2*nv variables. Slots [0, nv) hold z-exponents,
// slots [nv, 2nv) hold w-exponents (the formal conjugate variables).
struct Monomial {
  static constexpr int kMaxSlots = 16;

  std::array<std::uint16_t, kMaxSlots> e{};
  std::uint8_t slots = 0;

  explicit Monomial(int num_slots = 0) {
    if (num_slots < 0 || num_slots > kMaxSlots)
      throw std::invalid_argument("variable count out of range");
    slots = static_cast<std::uint8_t>(num_slots);
  }

  int degree() const {
    int d = 0;
    for (int i = 0; i < slots; ++i) d += e[i];
    return d;
  }

  bool is_constant() const {
    for (int i = 0; i < slots; ++i)
      if (e[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(slots);
    for (int i = 0; i < slots; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
    return r;
  }

  bool divides(const Monomial& o) const {
    for (int i = 0; i < slots; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  // Componentwise quotient; caller checks divisibility.
  Monomial quotient(const Monomial& den) const {
    Monomial r(slots);
    for (int i = 0; i < slots; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - den.e[i]);
    return r;
  }

  static Monomial componentwise_min(const Monomial& a, const Monomial& b) {
    Monomial r(a.slots);
    for (int i = 0; i < a.slots; ++i) r.e[i] = a.e[i] < b.e[i] ? a.e[i] : b.e[i];
    return r;
  }
};

// Graded lexicographic order: total degree first, then the exponent vector
// lexicographically. The map's largest element is the leading monomial.
inline bool operator<(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (int i = 0; i < a.slots; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

inline bool operator==(const Monomial& a, const Monomial& b) {
  if (a.slots != b.slots) return false;
  for (int i = 0; i < a.slots; ++i)
    if (a.e[i] != b.e[i]) return false;
  return true;
}

inline bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

}  // namespace gkoszul
