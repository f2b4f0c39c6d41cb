#pragma once

/**
 * @file decide.hpp
 * @brief Decision procedures for sensitivity / equicontinuity and for
 *        injectivity / surjectivity of linear automata.
 *
 * Sensitivity of a Frobenius LCA over Z_m is decided prime power by prime
 * power: the automaton over Z_m is conjugate to the product of its
 * reductions modulo each p^k dividing m, and over Z_{p^k} it is sensitive
 * exactly when some bottom-row entry m_i(X) has a term of nonzero degree
 * whose coefficient is not a multiple of p.
 */

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hoca/error.hpp"
#include "hoca/laurent.hpp"
#include "hoca/lmatrix.hpp"
#include "hoca/models.hpp"
#include "hoca/modring.hpp"

namespace hoca {

enum class Side { deg_plus, deg_minus };

inline std::string_view to_string(Side s) { return s == Side::deg_plus ? "deg+" : "deg-"; }

struct SensitivityWitness {
  std::size_t row_index;
  Term monomial;
  Side side;

  friend bool operator==(const SensitivityWitness&, const SensitivityWitness&) = default;
};

struct FactorVerdict {
  std::int64_t prime;
  int exponent;
  bool sensitive = false;
  std::optional<SensitivityWitness> witness;

  friend bool operator==(const FactorVerdict&, const FactorVerdict&) = default;
};

struct SensitivityVerdict {
  bool sensitive = false;
  bool equicontinuous = true;
  std::vector<FactorVerdict> factors;

  friend bool operator==(const SensitivityVerdict&, const SensitivityVerdict&) = default;
};

/// Over Z_{p^k}. Witness: lowest sensitive row index, deg+ side first.
inline FactorVerdict decide_sensitivity_pk(const FrobeniusSpec& f, std::int64_t p, int k) {
  if (!is_prime(p)) throw error(errc::invalid_prime, std::to_string(p) + " is not prime");
  if (k < 1 || checked_pow(p, k) != f.modulus) {
    throw error(errc::invalid_modulus, "modulus " + std::to_string(f.modulus) + " is not " + std::to_string(p) + "^" +
                                           std::to_string(k));
  }
  FactorVerdict v{p, k, false, std::nullopt};
  for (std::size_t i = 0; i < f.n(); ++i) {
    const DegreeReport r = degrees(f.row[i], p);
    if (r.witness_plus) {
      v.sensitive = true;
      v.witness = SensitivityWitness{i, *r.witness_plus, Side::deg_plus};
      break;
    }
    if (r.witness_minus) {
      v.sensitive = true;
      v.witness = SensitivityWitness{i, *r.witness_minus, Side::deg_minus};
      break;
    }
  }
  return v;
}

inline SensitivityVerdict join(std::vector<FactorVerdict> factors) {
  SensitivityVerdict v;
  for (const auto& f : factors) v.sensitive = v.sensitive || f.sensitive;
  v.equicontinuous = !v.sensitive;
  v.factors = std::move(factors);
  return v;
}

inline SensitivityVerdict decide_sensitivity(const FrobeniusSpec& f) {
  const Modulus mod = factorize(f.modulus);
  std::vector<FactorVerdict> factors;
  for (const auto& pk : mod.factors) {
    factors.push_back(decide_sensitivity_pk(reduce_mod(f, pk.value()), pk.prime, pk.exponent));
  }
  return join(std::move(factors));
}

/// Classical criterion for n = 1: sensitive iff some prime p | m does not
/// divide every non-central coefficient. `coeffs[i + r]` is the coefficient
/// at offset i (odd length 2r + 1).
inline SensitivityVerdict decide_1d(const std::vector<residue_t>& coeffs, std::int64_t modulus) {
  require_modulus(modulus);
  if (coeffs.size() % 2 == 0) throw error(errc::shape_mismatch, "1D rule needs 2r+1 coefficients");
  const auto r = static_cast<std::int64_t>(coeffs.size() / 2);
  std::int64_t g = 0;
  for (std::int64_t i = -r; i <= r; ++i) {
    if (i != 0) g = std::gcd(g, mod_reduce(coeffs[static_cast<std::size_t>(i + r)], modulus));
  }
  std::vector<FactorVerdict> factors;
  for (const auto& pk : factorize(modulus).factors) {
    FactorVerdict v{pk.prime, pk.exponent, false, std::nullopt};
    v.sensitive = g % pk.prime != 0;
    if (v.sensitive) {
      // Offset i shows up as exponent -i; report the largest positive
      // exponent first, then the most negative one.
      const std::int64_t q = pk.value();
      for (std::int64_t i = -r; i < 0 && !v.witness; ++i) {
        const residue_t a = mod_reduce(coeffs[static_cast<std::size_t>(i + r)], modulus);
        if (a % pk.prime != 0) v.witness = SensitivityWitness{0, {-i, a % q}, Side::deg_plus};
      }
      for (std::int64_t i = r; i > 0 && !v.witness; --i) {
        const residue_t a = mod_reduce(coeffs[static_cast<std::size_t>(i + r)], modulus);
        if (a % pk.prime != 0) v.witness = SensitivityWitness{0, {-i, a % q}, Side::deg_minus};
      }
    }
    factors.push_back(std::move(v));
  }
  return join(std::move(factors));
}

// ---------------------------------------------------------------------------
// Sensitivity for arbitrary LCA

enum class Decidability { decided, undecided_non_frobenius };

inline std::string_view to_string(Decidability d) {
  return d == Decidability::decided ? "decided" : "undecided-non-frobenius";
}

struct LcaSensitivity {
  Decidability status = Decidability::decided;
  std::optional<SensitivityVerdict> verdict;
};

/// n = 1 goes through the classical criterion, companion-shaped fps through
/// the Frobenius procedure; anything else is reported as undecided.
inline LcaSensitivity decide_lca_sensitivity(const LcaRule& rule) {
  rule.validate();
  if (rule.n == 1) {
    std::vector<residue_t> coeffs;
    for (const auto& g : rule.matrices) coeffs.push_back(g[0][0]);
    return {Decidability::decided, decide_1d(coeffs, rule.modulus)};
  }
  if (auto f = lca_to_frobenius(rule)) return {Decidability::decided, decide_sensitivity(*f)};
  return {Decidability::undecided_non_frobenius, std::nullopt};
}

// ---------------------------------------------------------------------------
// Injectivity / surjectivity

struct PrimeEvidence {
  std::int64_t prime;
  std::size_t unit_coefficients;  // coefficients of det not divisible by prime

  friend bool operator==(const PrimeEvidence&, const PrimeEvidence&) = default;
};

struct InjSurjVerdict {
  bool injective = false;
  bool surjective = false;
  LaurentPoly det;
  std::vector<PrimeEvidence> primes;
};

/// The LCA is injective (surjective) iff the 1D LCA whose fps is det M(X)
/// is. For a 1D LCA over Z_m: surjective iff gcd(m, coefficients) = 1;
/// injective iff for every prime p | m exactly one coefficient is a unit
/// mod p.
inline InjSurjVerdict decide_inj_surj(const LaurentMatrix& fps) {
  InjSurjVerdict v{false, false, determinant(fps), {}};
  v.injective = true;
  v.surjective = true;
  for (const auto& pk : factorize(fps.modulus()).factors) {
    std::size_t units = 0;
    for (const auto& t : v.det.terms()) units += t.coefficient % pk.prime != 0 ? 1 : 0;
    v.primes.push_back({pk.prime, units});
    v.surjective = v.surjective && units >= 1;
    v.injective = v.injective && units == 1;
  }
  if (v.injective && !v.surjective) throw std::logic_error("injective but not surjective verdict");
  return v;
}

inline InjSurjVerdict decide_inj_surj(const LcaRule& rule) { return decide_inj_surj(lca_to_fps(rule)); }

}  // namespace hoca
