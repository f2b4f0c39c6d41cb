#pragma once

/**
 * @file lmatrix.hpp
 * @brief Square matrices over Z_m[X, X^-1] and the companion ("Frobenius")
 *        shape used to present linear higher-order automata.
 *
 * A Frobenius matrix has ones on the superdiagonal, an arbitrary bottom row
 * (m_0(X), ..., m_{n-1}(X)) and zeros elsewhere. Most of the sensitivity
 * machinery only looks at that bottom row, so it is carried around as a
 * FrobeniusSpec and expanded to a full LaurentMatrix on demand.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoca/error.hpp"
#include "hoca/laurent.hpp"
#include "hoca/modring.hpp"
#include "hoca/rational.hpp"

namespace hoca {

class LaurentMatrix {
 public:
  LaurentMatrix(std::size_t n, std::int64_t modulus)
      : n_(n), modulus_(modulus), entries_(n * n, LaurentPoly(modulus)) {
    if (n == 0) throw error(errc::shape_mismatch, "matrix dimension must be >= 1");
  }

  static LaurentMatrix identity(std::size_t n, std::int64_t modulus) {
    LaurentMatrix out(n, modulus);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = LaurentPoly::constant(modulus, 1);
    return out;
  }

  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::int64_t modulus() const { return modulus_; }

  [[nodiscard]] const LaurentPoly& at(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }

  /// Mutable access; the assigned polynomial must share the matrix modulus.
  LaurentPoly& at(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }

  void set(std::size_t row, std::size_t col, LaurentPoly value) {
    if (value.modulus() != modulus_) throw error(errc::modulus_mismatch, "entry modulus differs from matrix");
    entries_[row * n_ + col] = std::move(value);
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
  }

  [[nodiscard]] LaurentMatrix transpose() const {
    LaurentMatrix out(n_, modulus_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) out.at(c, r) = at(r, c);
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (std::size_t r = 0; r < n_; ++r) {
      s += "[";
      for (std::size_t c = 0; c < n_; ++c) {
        if (c) s += ", ";
        s += at(r, c).to_string();
      }
      s += "]\n";
    }
    return s;
  }

  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

 private:
  std::size_t n_;
  std::int64_t modulus_;
  std::vector<LaurentPoly> entries_;
};

inline void require_compatible(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.n() != b.n()) throw error(errc::shape_mismatch, "matrix dimensions differ");
  if (a.modulus() != b.modulus()) throw error(errc::modulus_mismatch, "matrix moduli differ");
}

inline LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
  require_compatible(a, b);
  LaurentMatrix out(a.n(), a.modulus());
  for (std::size_t r = 0; r < a.n(); ++r)
    for (std::size_t c = 0; c < a.n(); ++c) out.at(r, c) = a.at(r, c) + b.at(r, c);
  return out;
}

inline LaurentMatrix mat_mul(const LaurentMatrix& a, const LaurentMatrix& b) {
  require_compatible(a, b);
  const std::size_t n = a.n();
  LaurentMatrix out(n, a.modulus());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const LaurentPoly& left = a.at(r, k);
      if (left.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const LaurentPoly& right = b.at(k, c);
        if (!right.is_zero()) out.at(r, c) += left * right;
      }
    }
  }
  return out;
}

inline LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) { return mat_mul(a, b); }

/// Single power by repeated squaring.
inline LaurentMatrix mat_pow(LaurentMatrix base, std::uint64_t t) {
  LaurentMatrix result = LaurentMatrix::identity(base.n(), base.modulus());
  while (t > 0) {
    if (t & 1U) result = result * base;
    t >>= 1U;
    if (t > 0) base = base * base;
  }
  return result;
}

/// M^0, M^1, ..., M^T by iterated multiplication.
inline std::vector<LaurentMatrix> power_trajectory(const LaurentMatrix& m, std::size_t horizon) {
  std::vector<LaurentMatrix> out;
  out.reserve(horizon + 1);
  out.push_back(LaurentMatrix::identity(m.n(), m.modulus()));
  for (std::size_t t = 1; t <= horizon; ++t) out.push_back(out.back() * m);
  return out;
}

/// Entrywise reduction modulo a divisor q of the modulus.
inline LaurentMatrix reduce_mod(const LaurentMatrix& a, std::int64_t q) {
  LaurentMatrix out(a.n(), q);
  for (std::size_t r = 0; r < a.n(); ++r)
    for (std::size_t c = 0; c < a.n(); ++c) out.at(r, c) = reduce_mod(a.at(r, c), q);
  return out;
}

/// (min exponent, max exponent) over every stored term; (0, 0) when empty.
inline std::pair<exponent_t, exponent_t> degree_span(const LaurentMatrix& a) {
  bool seen = false;
  exponent_t lo = 0;
  exponent_t hi = 0;
  for (std::size_t r = 0; r < a.n(); ++r) {
    for (std::size_t c = 0; c < a.n(); ++c) {
      const LaurentPoly& p = a.at(r, c);
      if (p.is_zero()) continue;
      lo = seen ? std::min(lo, p.min_exponent()) : p.min_exponent();
      hi = seen ? std::max(hi, p.max_exponent()) : p.max_exponent();
      seen = true;
    }
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Determinant

/// Laplace expansion along rows, memoized on the set of used columns:
/// minor[mask] is the determinant of the first popcount(mask) rows restricted
/// to the columns in mask. No division is needed, which Z_m lacks.
inline LaurentPoly determinant(const LaurentMatrix& a) {
  const std::size_t n = a.n();
  if (n > 20) throw error(errc::unsupported, "determinant limited to n <= 20");
  const std::int64_t m = a.modulus();
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<LaurentPoly> minor(full + 1, LaurentPoly(m));
  minor[0] = LaurentPoly::constant(m, 1);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    LaurentPoly acc(m);
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      const LaurentPoly& entry = a.at(row, col);
      const LaurentPoly& rest = minor[mask & ~(std::size_t{1} << col)];
      if (entry.is_zero() || rest.is_zero()) continue;
      // Sign of moving column `col` past the larger used columns.
      const auto above = __builtin_popcountll(mask >> (col + 1));
      const LaurentPoly term = entry * rest;
      acc += (above % 2 == 0) ? term : -term;
    }
    minor[mask] = std::move(acc);
  }
  return minor[full];
}

// ---------------------------------------------------------------------------
// Frobenius (companion) presentation

struct FrobeniusSpec {
  std::int64_t modulus;
  std::vector<LaurentPoly> row;  // m_0(X) ... m_{n-1}(X)

  FrobeniusSpec(std::int64_t m, std::vector<LaurentPoly> bottom) : modulus(m), row(std::move(bottom)) {
    require_modulus(m);
    if (row.empty()) throw error(errc::shape_mismatch, "Frobenius row must be nonempty");
    for (const auto& p : row) {
      if (p.modulus() != m) throw error(errc::modulus_mismatch, "row entry modulus differs from spec");
    }
  }

  [[nodiscard]] std::size_t n() const { return row.size(); }

  friend bool operator==(const FrobeniusSpec&, const FrobeniusSpec&) = default;
};

inline LaurentMatrix frobenius_to_matrix(const FrobeniusSpec& f) {
  const std::size_t n = f.n();
  LaurentMatrix out(n, f.modulus);
  for (std::size_t r = 0; r + 1 < n; ++r) out.at(r, r + 1) = LaurentPoly::constant(f.modulus, 1);
  for (std::size_t c = 0; c < n; ++c) out.at(n - 1, c) = f.row[c];
  return out;
}

/// Recognizes the companion shape; returns the bottom row when it matches.
inline std::optional<FrobeniusSpec> matrix_to_frobenius(const LaurentMatrix& a) {
  const std::size_t n = a.n();
  const LaurentPoly one = LaurentPoly::constant(a.modulus(), 1);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const LaurentPoly& e = a.at(r, c);
      if (c == r + 1 ? e != one : !e.is_zero()) return std::nullopt;
    }
  }
  std::vector<LaurentPoly> row;
  row.reserve(n);
  for (std::size_t c = 0; c < n; ++c) row.push_back(a.at(n - 1, c));
  return FrobeniusSpec(a.modulus(), std::move(row));
}

inline bool is_frobenius(const LaurentMatrix& a) { return matrix_to_frobenius(a).has_value(); }

inline FrobeniusSpec reduce_mod(const FrobeniusSpec& f, std::int64_t q) {
  std::vector<LaurentPoly> row;
  row.reserve(f.n());
  for (const auto& p : f.row) row.push_back(reduce_mod(p, q));
  return FrobeniusSpec(q, std::move(row));
}

/// Per-entry speeds d_i = deg[m_i] / (n - i) and their extremes.
struct SpeedTable {
  std::vector<DegreeReport> degrees;
  std::vector<Fraction> plus;
  std::vector<Fraction> minus;
  Fraction d_plus;
  Fraction d_minus;
};

inline SpeedTable speed_table(const FrobeniusSpec& f, std::int64_t prime) {
  require_prime_power(f.modulus, prime);
  const auto n = static_cast<std::int64_t>(f.n());
  SpeedTable s;
  for (std::int64_t i = 0; i < n; ++i) {
    DegreeReport r = degrees(f.row[static_cast<std::size_t>(i)], prime);
    s.plus.emplace_back(r.deg_plus, n - i);
    s.minus.emplace_back(r.deg_minus, n - i);
    s.degrees.push_back(std::move(r));
  }
  s.d_plus = *std::max_element(s.plus.begin(), s.plus.end());
  s.d_minus = *std::min_element(s.minus.begin(), s.minus.end());
  return s;
}

struct UpperLower {
  FrobeniusSpec upper;  // U(X): fastest right-moving witnesses
  FrobeniusSpec lower;  // L(X): fastest left-moving witnesses
};

/// u_i is the positive-degree witness monomial of m_i when its speed reaches
/// d+, and 0 otherwise; l_i symmetrically. An entry without a witness
/// (degree 0) contributes 0 on that side.
inline UpperLower extract_UL(const FrobeniusSpec& f, std::int64_t prime) {
  const SpeedTable s = speed_table(f, prime);
  std::vector<LaurentPoly> up;
  std::vector<LaurentPoly> down;
  for (std::size_t i = 0; i < f.n(); ++i) {
    const DegreeReport& r = s.degrees[i];
    up.push_back(r.witness_plus && s.plus[i] == s.d_plus
                     ? LaurentPoly::monomial(f.modulus, r.witness_plus->exponent, r.witness_plus->coefficient)
                     : LaurentPoly(f.modulus));
    down.push_back(r.witness_minus && s.minus[i] == s.d_minus
                       ? LaurentPoly::monomial(f.modulus, r.witness_minus->exponent, r.witness_minus->coefficient)
                       : LaurentPoly(f.modulus));
  }
  return {FrobeniusSpec(f.modulus, std::move(up)), FrobeniusSpec(f.modulus, std::move(down))};
}

/// (hat, bar) of the bottom row; the superdiagonal belongs to hat.
inline std::pair<FrobeniusSpec, FrobeniusSpec> hat_bar_matrix(const FrobeniusSpec& f, std::int64_t prime) {
  std::vector<LaurentPoly> hat;
  std::vector<LaurentPoly> bar;
  for (const auto& p : f.row) {
    auto [h, b] = hat_bar(p, prime);
    hat.push_back(std::move(h));
    bar.push_back(std::move(b));
  }
  return {FrobeniusSpec(f.modulus, std::move(hat)), FrobeniusSpec(f.modulus, std::move(bar))};
}

/// M - M_hat as a full matrix: the p-multiple remainder in the bottom row only.
inline LaurentMatrix bar_matrix(const FrobeniusSpec& f, std::int64_t prime) {
  const auto bar_row = hat_bar_matrix(f, prime).second;
  LaurentMatrix out(f.n(), f.modulus);
  for (std::size_t c = 0; c < f.n(); ++c) out.at(f.n() - 1, c) = bar_row.row[c];
  return out;
}

/// Bottom-right entries of M^0 ... M^T through the linear recurrence
///   c(t) = sum_i m_i(X) * c(t - n + i),   c(0) = 1,  c(l < 0) = 0,
/// which follows from Cayley-Hamilton on the companion shape.
inline std::vector<LaurentPoly> corner_sequence(const FrobeniusSpec& f, std::size_t horizon) {
  const auto n = static_cast<std::int64_t>(f.n());
  std::vector<LaurentPoly> seq;
  seq.reserve(horizon + 1);
  seq.push_back(LaurentPoly::constant(f.modulus, 1));
  for (std::int64_t t = 1; t <= static_cast<std::int64_t>(horizon); ++t) {
    LaurentPoly acc(f.modulus);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::int64_t back = t - n + i;
      if (back < 0) continue;
      const LaurentPoly& coeff = f.row[static_cast<std::size_t>(i)];
      if (!coeff.is_zero()) acc += coeff * seq[static_cast<std::size_t>(back)];
    }
    seq.push_back(std::move(acc));
  }
  return seq;
}

}  // namespace hoca
