#pragma once

/**
 * @file modring.hpp
 * @brief Residues modulo m and prime-power factorization of the modulus.
 *
 * Alphabet moduli are small (well below 2^32), so trial division is the
 * factorization method and products of two residues are formed in 128-bit
 * arithmetic before reduction.
 */

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hoca/error.hpp"

namespace hoca {

using residue_t = std::int64_t;

struct PrimePower {
  std::int64_t prime;
  int exponent;

  [[nodiscard]] std::int64_t value() const {
    std::int64_t v = 1;
    for (int i = 0; i < exponent; ++i) v *= prime;
    return v;
  }

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// m together with its prime factorization; primes strictly increasing.
struct Modulus {
  std::int64_t m = 0;
  std::vector<PrimePower> factors;

  [[nodiscard]] bool is_prime_power() const { return factors.size() == 1; }

  friend bool operator==(const Modulus&, const Modulus&) = default;
};

inline void require_modulus(std::int64_t m) {
  if (m < 2) throw error(errc::invalid_modulus, "modulus must be >= 2, got " + std::to_string(m));
}

/// Canonical residue of x in [0, m).
constexpr residue_t mod_reduce(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

constexpr residue_t add_mod(residue_t a, residue_t b, std::int64_t m) {
  const auto s = static_cast<unsigned __int128>(a) + static_cast<unsigned __int128>(b);
  return static_cast<residue_t>(s % static_cast<unsigned __int128>(m));
}

constexpr residue_t mul_mod(residue_t a, residue_t b, std::int64_t m) {
  const auto p = static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  return static_cast<residue_t>(p % static_cast<unsigned __int128>(m));
}

constexpr residue_t neg_mod(residue_t a, std::int64_t m) { return a == 0 ? 0 : m - a; }

/// Trial-division primality; the domain never needs more.
constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline Modulus factorize(std::int64_t m) {
  require_modulus(m);
  Modulus out{m, {}};
  std::int64_t rest = m;
  for (std::int64_t d = 2; d <= rest / d; ++d) {
    if (rest % d != 0) continue;
    int e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    out.factors.push_back({d, e});
  }
  if (rest > 1) out.factors.push_back({rest, 1});
  return out;
}

/// p^k for p^k < 2^62; throws on overflow.
inline std::int64_t checked_pow(std::int64_t base, int exponent) {
  std::int64_t v = 1;
  for (int i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(v, base, &v)) throw error(errc::overflow, "power overflows 64 bits");
  }
  return v;
}

/// Exponent k with m == p^k, or 0 when m is not a power of p.
inline int prime_power_exponent(std::int64_t m, std::int64_t p) {
  if (p < 2) return 0;
  int k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return m == 1 ? k : 0;
}

/// The degree calculus is defined over Z_{p^k} only: p must be prime and m a
/// power of it.
inline int require_prime_power(std::int64_t m, std::int64_t p) {
  if (!is_prime(p)) throw error(errc::invalid_prime, std::to_string(p) + " is not prime");
  if (m % p != 0) {
    throw error(errc::invalid_prime, std::to_string(p) + " does not divide " + std::to_string(m));
  }
  const int k = prime_power_exponent(m, p);
  if (k == 0) {
    throw error(errc::invalid_prime,
                "modulus " + std::to_string(m) + " is not a power of " + std::to_string(p) +
                    "; reduce modulo each prime power first");
  }
  return k;
}

}  // namespace hoca
