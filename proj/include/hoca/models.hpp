#pragma once

/**
 * @file models.hpp
 * @brief Linear rule representations and the conversions between them.
 *
 *  - HocaRule: linear higher-order CA over Z_m with memory k and radius r;
 *    coeffs[j][i + r] holds the coefficient of layer j+1 at offset i.
 *  - LcaRule: linear CA over Z_m^n given by matrices M_{-r} ... M_r;
 *    matrices[i + r] is M_i, acting on the neighbour at offset i.
 *  - FrobeniusSpec (lmatrix.hpp): bottom row of a companion-shaped fps.
 *  - PnuCaRule: linear non-uniform CA whose local rules repeat with a
 *    structural period; rules[j][i + r] is a_{j,i}.
 *
 * The fps of an LCA is M(X) = sum_i M_i X^{-i}: the neighbour at offset i
 * contributes X^{-i}, so a configuration's polynomial is multiplied by M(X)
 * to advance one step.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hoca/error.hpp"
#include "hoca/laurent.hpp"
#include "hoca/lmatrix.hpp"
#include "hoca/modring.hpp"

namespace hoca {

using Grid = std::vector<std::vector<residue_t>>;

namespace detail {

inline void require_table(const Grid& g, std::size_t rows, std::size_t cols, std::int64_t m, const char* what) {
  if (g.size() != rows) throw error(errc::shape_mismatch, std::string(what) + ": wrong number of rows");
  for (const auto& row : g) {
    if (row.size() != cols) throw error(errc::shape_mismatch, std::string(what) + ": wrong number of columns");
    for (residue_t v : row) {
      if (v < 0 || v >= m) throw error(errc::invalid_argument, std::string(what) + ": residue outside [0, m)");
    }
  }
}

inline Grid zero_grid(std::size_t rows, std::size_t cols) { return Grid(rows, std::vector<residue_t>(cols, 0)); }

}  // namespace detail

struct HocaRule {
  std::int64_t modulus;
  int memory;
  int radius;
  Grid coeffs;  // memory x (2 radius + 1)

  void validate() const {
    require_modulus(modulus);
    if (memory < 1) throw error(errc::invalid_argument, "memory must be >= 1");
    if (radius < 0) throw error(errc::invalid_argument, "radius must be >= 0");
    detail::require_table(coeffs, static_cast<std::size_t>(memory), static_cast<std::size_t>(2 * radius + 1),
                          modulus, "hoca coeffs");
  }

  [[nodiscard]] residue_t coefficient(int layer, int offset) const {
    return coeffs[static_cast<std::size_t>(layer)][static_cast<std::size_t>(offset + radius)];
  }

  friend bool operator==(const HocaRule&, const HocaRule&) = default;
};

struct LcaRule {
  std::int64_t modulus;
  int n;
  int radius;
  std::vector<Grid> matrices;  // 2 radius + 1 grids, each n x n

  void validate() const {
    require_modulus(modulus);
    if (n < 1) throw error(errc::invalid_argument, "n must be >= 1");
    if (radius < 0) throw error(errc::invalid_argument, "radius must be >= 0");
    if (matrices.size() != static_cast<std::size_t>(2 * radius + 1)) {
      throw error(errc::shape_mismatch, "lca needs 2r+1 matrices");
    }
    for (const auto& g : matrices) {
      detail::require_table(g, static_cast<std::size_t>(n), static_cast<std::size_t>(n), modulus, "lca matrix");
    }
  }

  [[nodiscard]] const Grid& matrix(int offset) const { return matrices[static_cast<std::size_t>(offset + radius)]; }

  friend bool operator==(const LcaRule&, const LcaRule&) = default;
};

struct PnuCaRule {
  std::int64_t modulus;
  int period;
  int radius;
  Grid rules;  // period x (2 radius + 1)

  void validate() const {
    require_modulus(modulus);
    if (period < 1) throw error(errc::invalid_argument, "period must be >= 1");
    if (radius < 0) throw error(errc::invalid_argument, "radius must be >= 0");
    detail::require_table(rules, static_cast<std::size_t>(period), static_cast<std::size_t>(2 * radius + 1),
                          modulus, "pnuca rules");
  }

  /// a_{j,i}, zero outside the radius.
  [[nodiscard]] residue_t coefficient(int position, int offset) const {
    if (offset < -radius || offset > radius) return 0;
    return rules[static_cast<std::size_t>(position)][static_cast<std::size_t>(offset + radius)];
  }

  friend bool operator==(const PnuCaRule&, const PnuCaRule&) = default;
};

// ---------------------------------------------------------------------------
// HOCA <-> Frobenius

/// m_j(X) = sum_i a_i^{j+1} X^{-i}.
inline FrobeniusSpec hoca_to_frobenius(const HocaRule& h) {
  h.validate();
  std::vector<LaurentPoly> row;
  row.reserve(static_cast<std::size_t>(h.memory));
  for (int j = 0; j < h.memory; ++j) {
    std::vector<std::pair<exponent_t, std::int64_t>> terms;
    for (int i = -h.radius; i <= h.radius; ++i) terms.emplace_back(-i, h.coefficient(j, i));
    row.emplace_back(h.modulus, std::move(terms));
  }
  return FrobeniusSpec(h.modulus, std::move(row));
}

/// Smallest radius able to hold every exponent of the row.
inline int frobenius_radius(const FrobeniusSpec& f) {
  exponent_t r = 0;
  for (const auto& p : f.row) {
    if (p.is_zero()) continue;
    r = std::max({r, -p.min_exponent(), p.max_exponent()});
  }
  if (r > 1'000'000) throw error(errc::unsupported, "radius too large for a coefficient table");
  return static_cast<int>(r);
}

/// Inverse of hoca_to_frobenius. Without `radius` the minimal one is used.
inline HocaRule frobenius_to_hoca(const FrobeniusSpec& f, std::optional<int> radius = std::nullopt) {
  const int needed = frobenius_radius(f);
  const int r = radius.value_or(needed);
  if (r < needed) throw error(errc::invalid_argument, "radius too small for the row's exponents");
  HocaRule h{f.modulus, static_cast<int>(f.n()), r, detail::zero_grid(f.n(), static_cast<std::size_t>(2 * r + 1))};
  for (std::size_t j = 0; j < f.n(); ++j) {
    for (const auto& t : f.row[j].terms()) h.coeffs[j][static_cast<std::size_t>(-t.exponent + r)] = t.coefficient;
  }
  return h;
}

/// Same rule with zero outer columns trimmed to the minimal radius.
inline HocaRule canonical(const HocaRule& h) { return frobenius_to_hoca(hoca_to_frobenius(h)); }

// ---------------------------------------------------------------------------
// LCA <-> fps

inline LaurentMatrix lca_to_fps(const LcaRule& rule) {
  rule.validate();
  const auto n = static_cast<std::size_t>(rule.n);
  LaurentMatrix out(n, rule.modulus);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::pair<exponent_t, std::int64_t>> terms;
      for (int i = -rule.radius; i <= rule.radius; ++i) terms.emplace_back(-i, rule.matrix(i)[h][k]);
      out.at(h, k) = LaurentPoly(rule.modulus, std::move(terms));
    }
  }
  return out;
}

inline LcaRule fps_to_lca(const LaurentMatrix& a) {
  exponent_t r = 0;
  for (std::size_t h = 0; h < a.n(); ++h) {
    for (std::size_t k = 0; k < a.n(); ++k) {
      const LaurentPoly& p = a.at(h, k);
      if (!p.is_zero()) r = std::max({r, -p.min_exponent(), p.max_exponent()});
    }
  }
  if (r > 100'000) throw error(errc::unsupported, "radius too large for matrix list");
  const int radius = static_cast<int>(r);
  LcaRule rule{a.modulus(), static_cast<int>(a.n()), radius,
               std::vector<Grid>(static_cast<std::size_t>(2 * radius + 1), detail::zero_grid(a.n(), a.n()))};
  for (std::size_t h = 0; h < a.n(); ++h) {
    for (std::size_t k = 0; k < a.n(); ++k) {
      for (const auto& t : a.at(h, k).terms()) {
        rule.matrices[static_cast<std::size_t>(-t.exponent + radius)][h][k] = t.coefficient;
      }
    }
  }
  return rule;
}

inline LcaRule frobenius_to_lca(const FrobeniusSpec& f) { return fps_to_lca(frobenius_to_matrix(f)); }

/// The Frobenius row of an LCA whose fps has companion shape.
inline std::optional<FrobeniusSpec> lca_to_frobenius(const LcaRule& rule) {
  return matrix_to_frobenius(lca_to_fps(rule));
}

// ---------------------------------------------------------------------------
// Periodic non-uniform CA -> LCA

struct PnuCaConjugacy {
  LcaRule lca;
  int block_size;  // cell i of the LCA holds cells [i*n, i*n + n) of the non-uniform CA
};

/// Radius s = ceil(r / n) and (M_l)[j][c] = a_{j, l*n + c - j}.
inline PnuCaConjugacy pnuca_to_lca(const PnuCaRule& rule) {
  rule.validate();
  const int n = rule.period;
  const int s = (rule.radius + n - 1) / n;
  LcaRule lca{rule.modulus, n, s,
              std::vector<Grid>(static_cast<std::size_t>(2 * s + 1),
                                detail::zero_grid(static_cast<std::size_t>(n), static_cast<std::size_t>(n)))};
  for (int l = -s; l <= s; ++l) {
    Grid& g = lca.matrices[static_cast<std::size_t>(l + s)];
    for (int j = 0; j < n; ++j) {
      for (int c = 0; c < n; ++c) {
        g[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = rule.coefficient(j, l * n + c - j);
      }
    }
  }
  return {std::move(lca), n};
}

}  // namespace hoca
