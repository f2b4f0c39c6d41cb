#pragma once

/**
 * @file laurent.hpp
 * @brief Sparse Laurent polynomials over Z_m and the degree calculus on them.
 *
 * A polynomial is kept as a list of (exponent, coefficient) terms sorted by
 * exponent, with every coefficient a nonzero canonical residue. Two
 * polynomials are equal exactly when their term lists are equal.
 *
 * The degree calculus (positive/negative degree, the sensitive predicate and
 * the split into a unit-coefficient part and a p-multiple remainder) is only
 * meaningful over Z_{p^k}; those functions reject any other modulus.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hoca/error.hpp"
#include "hoca/modring.hpp"

namespace hoca {

using exponent_t = std::int64_t;

struct Term {
  exponent_t exponent;
  residue_t coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

inline exponent_t checked_add(exponent_t a, exponent_t b) {
  exponent_t out;
  if (__builtin_add_overflow(a, b, &out)) throw error(errc::overflow, "exponent overflow");
  return out;
}

inline exponent_t checked_mul(exponent_t a, exponent_t b) {
  exponent_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw error(errc::overflow, "exponent overflow");
  return out;
}

class LaurentPoly {
 public:
  /// The zero polynomial over Z_m.
  explicit LaurentPoly(std::int64_t modulus) : modulus_(modulus) { require_modulus(modulus); }

  /// Arbitrary integer terms; duplicates are summed and coefficients reduced.
  LaurentPoly(std::int64_t modulus, std::vector<std::pair<exponent_t, std::int64_t>> raw)
      : LaurentPoly(modulus) {
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [e, c] : raw) {
      const residue_t r = mod_reduce(c, modulus_);
      if (!terms_.empty() && terms_.back().exponent == e) {
        terms_.back().coefficient = add_mod(terms_.back().coefficient, r, modulus_);
      } else {
        terms_.push_back({e, r});
      }
    }
    drop_zeros();
  }

  static LaurentPoly constant(std::int64_t modulus, std::int64_t c) { return monomial(modulus, 0, c); }

  static LaurentPoly monomial(std::int64_t modulus, exponent_t e, std::int64_t c) {
    LaurentPoly p(modulus);
    const residue_t r = mod_reduce(c, modulus);
    if (r != 0) p.terms_.push_back({e, r});
    return p;
  }

  [[nodiscard]] std::int64_t modulus() const { return modulus_; }
  [[nodiscard]] std::span<const Term> terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }

  /// No term with a nonzero exponent.
  [[nodiscard]] bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent == 0);
  }

  [[nodiscard]] residue_t coefficient(exponent_t e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, exponent_t x) { return t.exponent < x; });
    return (it != terms_.end() && it->exponent == e) ? it->coefficient : 0;
  }

  [[nodiscard]] exponent_t min_exponent() const { return terms_.empty() ? 0 : terms_.front().exponent; }
  [[nodiscard]] exponent_t max_exponent() const { return terms_.empty() ? 0 : terms_.back().exponent; }

  /// Sum of coefficients mod m, i.e. the polynomial evaluated at X = 1.
  [[nodiscard]] residue_t at_one() const {
    residue_t s = 0;
    for (const auto& t : terms_) s = add_mod(s, t.coefficient, modulus_);
    return s;
  }

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other) { return *this += -other; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly operator-() const {
    LaurentPoly out(modulus_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.exponent, neg_mod(t.coefficient, modulus_)});
    return out;
  }

  [[nodiscard]] LaurentPoly scaled(std::int64_t c) const {
    const residue_t r = mod_reduce(c, modulus_);
    LaurentPoly out(modulus_);
    for (const auto& t : terms_) {
      const residue_t v = mul_mod(t.coefficient, r, modulus_);
      if (v != 0) out.terms_.push_back({t.exponent, v});
    }
    return out;
  }

  /// Multiplication by X^shift.
  [[nodiscard]] LaurentPoly shifted(exponent_t shift) const {
    LaurentPoly out = *this;
    for (auto& t : out.terms_) t.exponent = checked_add(t.exponent, shift);
    return out;
  }

  /// Builds from terms already sorted, unique and canonical; used internally.
  static LaurentPoly from_canonical(std::int64_t modulus, std::vector<Term> terms) {
    LaurentPoly p(modulus);
    p.terms_ = std::move(terms);
    return p;
  }

 private:
  void drop_zeros() {
    std::erase_if(terms_, [](const Term& t) { return t.coefficient == 0; });
  }

  std::int64_t modulus_;
  std::vector<Term> terms_;
};

inline void require_same_modulus(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.modulus() != b.modulus()) {
    throw error(errc::modulus_mismatch,
                "Z_" + std::to_string(a.modulus()) + " vs Z_" + std::to_string(b.modulus()));
  }
}

inline LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  require_same_modulus(*this, other);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exponent < b->exponent)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->exponent < a->exponent) {
      merged.push_back(*b++);
    } else {
      const residue_t c = add_mod(a->coefficient, b->coefficient, modulus_);
      if (c != 0) merged.push_back({a->exponent, c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_modulus(a, b);
  const std::int64_t m = a.modulus();
  if (a.is_zero() || b.is_zero()) return LaurentPoly(m);

  const exponent_t lo = checked_add(a.min_exponent(), b.min_exponent());
  const exponent_t hi = checked_add(a.max_exponent(), b.max_exponent());
  const auto products = static_cast<__int128>(a.size()) * static_cast<__int128>(b.size());
  const __int128 width = static_cast<__int128>(hi) - lo + 1;

  std::vector<Term> out;
  if (width <= 4 * products + 64) {
    // Dense accumulation over the result's exponent window.
    std::vector<residue_t> acc(static_cast<std::size_t>(width), 0);
    for (const auto& x : a.terms()) {
      for (const auto& y : b.terms()) {
        auto& slot = acc[static_cast<std::size_t>(x.exponent + y.exponent - lo)];
        slot = add_mod(slot, mul_mod(x.coefficient, y.coefficient, m), m);
      }
    }
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] != 0) out.push_back({lo + static_cast<exponent_t>(i), acc[i]});
    }
  } else {
    // Large exponent gaps: collect products and merge.
    std::vector<Term> raw;
    raw.reserve(static_cast<std::size_t>(products));
    for (const auto& x : a.terms()) {
      for (const auto& y : b.terms()) {
        raw.push_back({checked_add(x.exponent, y.exponent), mul_mod(x.coefficient, y.coefficient, m)});
      }
    }
    std::sort(raw.begin(), raw.end(), [](const Term& s, const Term& t) { return s.exponent < t.exponent; });
    for (const auto& t : raw) {
      if (!out.empty() && out.back().exponent == t.exponent) {
        out.back().coefficient = add_mod(out.back().coefficient, t.coefficient, m);
      } else {
        out.push_back(t);
      }
    }
    std::erase_if(out, [](const Term& t) { return t.coefficient == 0; });
  }
  return LaurentPoly::from_canonical(m, std::move(out));
}

inline std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    if (t.exponent == 0) {
      s += std::to_string(t.coefficient);
      continue;
    }
    if (t.coefficient != 1) s += std::to_string(t.coefficient);
    s += "X";
    if (t.exponent != 1) s += "^" + std::to_string(t.exponent);
  }
  return s;
}

inline LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

inline LaurentPoly poly_pow(LaurentPoly base, std::uint64_t e) {
  LaurentPoly result = LaurentPoly::constant(base.modulus(), 1);
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

/// Coefficients reduced modulo a divisor q of m, as a polynomial over Z_q.
inline LaurentPoly reduce_mod(const LaurentPoly& p, std::int64_t q) {
  require_modulus(q);
  if (p.modulus() % q != 0) {
    throw error(errc::invalid_modulus, std::to_string(q) + " does not divide " + std::to_string(p.modulus()));
  }
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    const residue_t r = t.coefficient % q;
    if (r != 0) out.push_back({t.exponent, r});
  }
  return LaurentPoly::from_canonical(q, std::move(out));
}

// ---------------------------------------------------------------------------
// Degree calculus over Z_{p^k}

struct DegreeReport {
  exponent_t deg_plus = 0;
  exponent_t deg_minus = 0;
  std::optional<Term> witness_plus;
  std::optional<Term> witness_minus;

  friend bool operator==(const DegreeReport&, const DegreeReport&) = default;
};

/// Largest positive / smallest negative exponent whose coefficient is not a
/// multiple of `prime`; 0 when no such term exists.
inline DegreeReport degrees(const LaurentPoly& p, std::int64_t prime) {
  require_prime_power(p.modulus(), prime);
  DegreeReport r;
  for (const auto& t : p.terms()) {
    if (t.coefficient % prime == 0) continue;
    if (t.exponent < 0 && !r.witness_minus) {
      r.deg_minus = t.exponent;
      r.witness_minus = t;
    }
    if (t.exponent > 0) {
      r.deg_plus = t.exponent;
      r.witness_plus = t;
    }
  }
  return r;
}

inline bool is_sensitive(const LaurentPoly& p, std::int64_t prime) {
  const DegreeReport r = degrees(p, prime);
  return r.deg_plus > 0 || r.deg_minus < 0;
}

/// (hat, bar): hat keeps the terms whose coefficient is not a multiple of
/// `prime`, bar = p - hat keeps the rest.
inline std::pair<LaurentPoly, LaurentPoly> hat_bar(const LaurentPoly& p, std::int64_t prime) {
  require_prime_power(p.modulus(), prime);
  std::vector<Term> hat;
  std::vector<Term> bar;
  for (const auto& t : p.terms()) (t.coefficient % prime == 0 ? bar : hat).push_back(t);
  return {LaurentPoly::from_canonical(p.modulus(), std::move(hat)),
          LaurentPoly::from_canonical(p.modulus(), std::move(bar))};
}

}  // namespace hoca
