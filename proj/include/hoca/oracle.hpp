#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force checks that run alongside the decision procedures.
 *
 * None of these decide anything on their own. A power census either finds
 * M^q == M^{q+period} (the automaton is equicontinuous), sees the degree
 * reach of M^t pass a threshold (evidence of sensitivity), or reports that
 * its step budget ran out.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoca/error.hpp"
#include "hoca/laurent.hpp"
#include "hoca/lmatrix.hpp"
#include "hoca/models.hpp"
#include "hoca/modring.hpp"
#include "hoca/rational.hpp"

namespace hoca {

// ---------------------------------------------------------------------------
// Power census

enum class CensusOutcome { cycle, growth, inconclusive };

inline std::string_view to_string(CensusOutcome o) {
  switch (o) {
    case CensusOutcome::cycle: return "cycle";
    case CensusOutcome::growth: return "growth";
    case CensusOutcome::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct ReachCheckpoint {
  std::uint64_t t;
  std::int64_t reach;  // largest |exponent| over all entries of M^t
};

struct PowerCensus {
  CensusOutcome outcome = CensusOutcome::inconclusive;
  std::uint64_t q = 0;       // cycle: M^q == M^{q + period}
  std::uint64_t period = 0;
  std::vector<ReachCheckpoint> reaches;  // every time the reach hit a new maximum
  std::uint64_t powers_examined = 0;
  std::uint64_t max_steps = 0;
  std::int64_t growth_threshold = 0;
};

namespace detail {

inline std::vector<std::int64_t> serialize(const LaurentMatrix& a) {
  std::vector<std::int64_t> out;
  for (std::size_t r = 0; r < a.n(); ++r) {
    for (std::size_t c = 0; c < a.n(); ++c) {
      const LaurentPoly& p = a.at(r, c);
      out.push_back(static_cast<std::int64_t>(p.size()));
      for (const auto& t : p.terms()) {
        out.push_back(t.exponent);
        out.push_back(t.coefficient);
      }
    }
  }
  return out;
}

/// max |exponent|. The width hi - lo would miss shifts, whose powers stay
/// monomials while drifting off to infinity.
inline std::int64_t reach(const LaurentMatrix& a) {
  const auto [lo, hi] = degree_span(a);
  return std::max(-lo, hi);
}

}  // namespace detail

/// Examines M^0 ... M^T. Powers are kept in a map keyed by their full
/// canonical serialization, so a repeat is an exact equality.
inline PowerCensus power_census(const LaurentMatrix& m, std::uint64_t max_steps = 2048,
                                std::int64_t growth_threshold = 64) {
  if (max_steps < 1) throw error(errc::invalid_argument, "max_steps must be >= 1");
  if (growth_threshold < 1) throw error(errc::invalid_argument, "growth_threshold must be >= 1");
  PowerCensus census;
  census.max_steps = max_steps;
  census.growth_threshold = growth_threshold;

  std::map<std::vector<std::int64_t>, std::uint64_t> seen;
  LaurentMatrix power = LaurentMatrix::identity(m.n(), m.modulus());
  seen.emplace(detail::serialize(power), 0);
  census.reaches.push_back({0, 0});
  census.powers_examined = 1;

  for (std::uint64_t t = 1; t <= max_steps; ++t) {
    power = power * m;
    ++census.powers_examined;
    auto key = detail::serialize(power);
    if (auto it = seen.find(key); it != seen.end()) {
      census.outcome = CensusOutcome::cycle;
      census.q = it->second;
      census.period = t - it->second;
      return census;
    }
    const std::int64_t r = detail::reach(power);
    if (r > census.reaches.back().reach) census.reaches.push_back({t, r});
    if (r > growth_threshold) {
      census.outcome = CensusOutcome::growth;
      return census;
    }
    seen.emplace(std::move(key), t);
  }
  return census;
}

// ---------------------------------------------------------------------------
// Recurrence b_l = sum_i alpha_i b_{l - lag_i} over Z_{p^k}

struct RecurrenceReport {
  std::vector<residue_t> sequence;           // b_0 ... b_H
  std::vector<std::uint64_t> nonzero_mod_p;  // positions l with b_l != 0 mod p
  std::uint64_t horizon = 0;

  /// Some l in (H/2, H] with b_l coprime to p.
  [[nodiscard]] bool nonvanishing_beyond_half() const {
    return std::any_of(nonzero_mod_p.begin(), nonzero_mod_p.end(),
                       [&](std::uint64_t l) { return 2 * l > horizon; });
  }
};

inline RecurrenceReport recurrence_nonvanishing(const std::vector<residue_t>& alphas,
                                                const std::vector<std::uint64_t>& lags, std::int64_t prime,
                                                int exponent, std::uint64_t horizon) {
  if (!is_prime(prime)) throw error(errc::invalid_prime, std::to_string(prime) + " is not prime");
  if (exponent < 1) throw error(errc::invalid_argument, "exponent must be >= 1");
  const std::int64_t q = checked_pow(prime, exponent);
  if (alphas.empty() || alphas.size() != lags.size()) throw error(errc::invalid_argument, "need matching alphas and lags");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] < 1 || alphas[i] >= q || alphas[i] % prime == 0) {
      throw error(errc::invalid_argument, "alpha " + std::to_string(alphas[i]) + " must be a unit of Z_" +
                                              std::to_string(q));
    }
    if (lags[i] < 1 || (i > 0 && lags[i] <= lags[i - 1])) {
      throw error(errc::invalid_argument, "lags must be positive and strictly increasing");
    }
  }
  RecurrenceReport rep;
  rep.horizon = horizon;
  rep.sequence.reserve(horizon + 1);
  rep.sequence.push_back(1);
  for (std::uint64_t l = 1; l <= horizon; ++l) {
    residue_t b = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      if (lags[i] <= l) b = add_mod(b, mul_mod(alphas[i], rep.sequence[l - lags[i]], q), q);
    }
    rep.sequence.push_back(b);
  }
  for (std::uint64_t l = 0; l <= horizon; ++l) {
    if (rep.sequence[l] % prime != 0) rep.nonzero_mod_p.push_back(l);
  }
  return rep;
}

/// (a + p b) mod p^k != 0 for a unit a in [1, p^k).
inline bool piup_holds(std::int64_t a, std::int64_t b, std::int64_t prime, int exponent) {
  const std::int64_t q = checked_pow(prime, exponent);
  return mod_reduce(a + prime * b, q) != 0;
}

// ---------------------------------------------------------------------------
// Corner-entry monomial check

struct MonomialCheckReport {
  bool ok = true;
  Fraction d_plus;
  Fraction d_minus;
  std::vector<LaurentPoly> upper;  // u^(0..H)
  std::vector<LaurentPoly> lower;  // l^(0..H)
  std::string failure;
};

namespace detail {

inline bool corner_has_speed(const std::vector<LaurentPoly>& seq, const Fraction& speed, std::int64_t prime,
                             std::string& failure) {
  const auto horizon = static_cast<std::int64_t>(seq.size()) - 1;
  for (std::int64_t t = 0; t <= horizon; ++t) {
    const LaurentPoly& u = seq[static_cast<std::size_t>(t)];
    if (u.is_zero()) continue;
    if (!u.is_monomial()) {
      failure = "t=" + std::to_string(t) + ": not a monomial: " + u.to_string();
      return false;
    }
    if (!speed.scaled_is_integer(t) || u.terms()[0].exponent != t * speed.num() / speed.den()) {
      failure = "t=" + std::to_string(t) + ": degree " + std::to_string(u.terms()[0].exponent) + " != t*" +
                speed.to_string();
      return false;
    }
  }
  if (speed != Fraction(0) && horizon >= 2) {
    bool late = false;
    for (std::int64_t t = horizon / 2; t <= horizon && !late; ++t) {
      const LaurentPoly& u = seq[static_cast<std::size_t>(t)];
      late = !u.is_zero() && u.terms()[0].coefficient % prime != 0;
    }
    if (!late) {
      failure = "no unit-coefficient corner entry in [H/2, H]";
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// For a spec equal to its own hat part: every corner entry of U^t (L^t) is
/// null or a monomial of degree t d+ (t d-), and, when the speed is nonzero,
/// one of them in [H/2, H] has a unit coefficient.
inline MonomialCheckReport monomial_check_report(const FrobeniusSpec& f, std::int64_t prime, std::size_t horizon) {
  if (hat_bar_matrix(f, prime).first != f) throw error(errc::invalid_argument, "spec is not hat-pure");
  const SpeedTable speeds = speed_table(f, prime);
  const UpperLower ul = extract_UL(f, prime);
  MonomialCheckReport rep;
  rep.d_plus = speeds.d_plus;
  rep.d_minus = speeds.d_minus;
  rep.upper = corner_sequence(ul.upper, horizon);
  rep.lower = corner_sequence(ul.lower, horizon);
  rep.ok = detail::corner_has_speed(rep.upper, rep.d_plus, prime, rep.failure);
  if (rep.ok) rep.ok = detail::corner_has_speed(rep.lower, rep.d_minus, prime, rep.failure);
  return rep;
}

inline bool monomial_check(const FrobeniusSpec& f, std::int64_t prime, std::size_t horizon) {
  return monomial_check_report(f, prime, horizon).ok;
}

// ---------------------------------------------------------------------------
// Periodic configurations

struct PeriodicMap {
  std::size_t period;
  std::int64_t modulus;
  std::vector<std::vector<residue_t>> matrix;  // nL x nL over Z_m
  std::vector<residue_t> diagonal;             // after diagonalization
  std::vector<std::int64_t> kernel_factors;    // gcd(d_j, m); kernel size is their product
  bool injective = false;
  bool surjective = false;

  /// |kernel| when it fits in 64 bits.
  [[nodiscard]] std::optional<std::uint64_t> kernel_size() const {
    std::uint64_t s = 1;
    for (auto f : kernel_factors) {
      if (__builtin_mul_overflow(s, static_cast<std::uint64_t>(f), &s)) return std::nullopt;
    }
    return s;
  }
};

namespace detail {

/// Reduces an integer matrix to diagonal form by unimodular row and column
/// operations, with every entry kept reduced mod m. The operations stay
/// invertible over Z_m, so the kernel over Z_m has size prod gcd(d_j, m).
inline std::vector<residue_t> diagonalize_mod(std::vector<std::vector<residue_t>> a, std::int64_t m) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<residue_t> diag;
  for (std::size_t d = 0; d < std::min(rows, cols); ++d) {
    for (;;) {
      // Smallest nonzero representative in the trailing block becomes the pivot.
      std::size_t pr = rows;
      std::size_t pc = cols;
      for (std::size_t r = d; r < rows; ++r)
        for (std::size_t c = d; c < cols; ++c)
          if (a[r][c] != 0 && (pr == rows || a[r][c] < a[pr][pc])) {
            pr = r;
            pc = c;
          }
      if (pr == rows) break;
      std::swap(a[d], a[pr]);
      for (auto& row : a) std::swap(row[d], row[pc]);

      const residue_t pivot = a[d][d];
      bool clean = true;
      for (std::size_t r = d + 1; r < rows; ++r) {
        if (a[r][d] == 0) continue;
        const std::int64_t factor = a[r][d] / pivot;
        for (std::size_t c = d; c < cols; ++c) {
          a[r][c] = mod_reduce(a[r][c] - mul_mod(factor, a[d][c], m), m);
        }
        clean = clean && a[r][d] == 0;
      }
      for (std::size_t c = d + 1; c < cols; ++c) {
        if (a[d][c] == 0) continue;
        const std::int64_t factor = a[d][c] / pivot;
        for (std::size_t r = d; r < rows; ++r) {
          a[r][c] = mod_reduce(a[r][c] - mul_mod(factor, a[r][d], m), m);
        }
        clean = clean && a[d][c] == 0;
      }
      if (clean) break;
    }
    diag.push_back(a[d][d]);
  }
  return diag;
}

}  // namespace detail

/// The LCA restricted to configurations of period L, as an nL x nL linear
/// map over Z_m (neighbourhoods wrap around modulo L).
inline PeriodicMap periodic_map(const LcaRule& rule, std::size_t period) {
  rule.validate();
  if (period < 1) throw error(errc::invalid_argument, "period must be >= 1");
  const auto n = static_cast<std::size_t>(rule.n);
  const std::size_t dim = n * period;
  const std::int64_t m = rule.modulus;
  PeriodicMap pm{period, m, std::vector<std::vector<residue_t>>(dim, std::vector<residue_t>(dim, 0)), {}, {}};
  const auto L = static_cast<std::int64_t>(period);
  for (std::int64_t x = 0; x < L; ++x) {
    for (int i = -rule.radius; i <= rule.radius; ++i) {
      const auto src = static_cast<std::size_t>(mod_reduce(x + i, L));
      const Grid& g = rule.matrix(i);
      for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t k = 0; k < n; ++k) {
          auto& slot = pm.matrix[static_cast<std::size_t>(x) * n + h][src * n + k];
          slot = add_mod(slot, g[h][k], m);
        }
      }
    }
  }
  pm.diagonal = detail::diagonalize_mod(pm.matrix, m);
  pm.injective = true;
  for (residue_t d : pm.diagonal) {
    const std::int64_t g = std::gcd(d, m);  // gcd(0, m) = m
    pm.kernel_factors.push_back(g);
    pm.injective = pm.injective && g == 1;
  }
  // An endomorphism of a finite group is onto exactly when it is one-to-one.
  pm.surjective = pm.injective;
  return pm;
}

}  // namespace hoca
