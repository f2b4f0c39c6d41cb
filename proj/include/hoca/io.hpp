#pragma once

/**
 * @file io.hpp
 * @brief JSON forms of rules, configurations, verdicts and oracle reports.
 *
 * Rule files:
 *   {"kind":"hoca","m":2,"memory":3,"radius":1,"coeffs":[[a_{-r}..a_r], ...]}
 *   {"kind":"lca","m":4,"n":2,"radius":1,"matrices":[M_{-r}, ..., M_r]}
 *   {"kind":"frobenius","m":49,"n":4,"row":[[[exp,coef],...], ...]}
 *   {"kind":"pnuca","m":2,"period":2,"radius":1,"rules":[[a_{j,-r}..a_{j,r}], ...]}
 * Coefficient tables are indexed by offset + radius. A polynomial is a list
 * of [exponent, coefficient] pairs sorted by exponent.
 *
 * Configuration: {"m":2,"n":1,"cells":{"0":[1]}}.
 */

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hoca/decide.hpp"
#include "hoca/dynamics.hpp"
#include "hoca/error.hpp"
#include "hoca/laurent.hpp"
#include "hoca/lmatrix.hpp"
#include "hoca/models.hpp"
#include "hoca/oracle.hpp"

namespace hoca::io {

using json = nlohmann::ordered_json;

using RuleFile = std::variant<HocaRule, LcaRule, FrobeniusSpec, PnuCaRule>;

inline std::string_view kind_of(const RuleFile& r) {
  switch (r.index()) {
    case 0: return "hoca";
    case 1: return "lca";
    case 2: return "frobenius";
    default: return "pnuca";
  }
}

// ---------------------------------------------------------------------------
// Writing

inline json to_json(const Term& t) { return json::array({t.exponent, t.coefficient}); }

inline json to_json(const LaurentPoly& p) {
  json out = json::array();
  for (const auto& t : p.terms()) out.push_back(to_json(t));
  return out;
}

inline json to_json(const FrobeniusSpec& f) {
  json row = json::array();
  for (const auto& p : f.row) row.push_back(to_json(p));
  return {{"kind", "frobenius"}, {"m", f.modulus}, {"n", f.n()}, {"row", row}};
}

inline json to_json(const HocaRule& h) {
  return {{"kind", "hoca"}, {"m", h.modulus}, {"memory", h.memory}, {"radius", h.radius}, {"coeffs", h.coeffs}};
}

inline json to_json(const LcaRule& r) {
  return {{"kind", "lca"}, {"m", r.modulus}, {"n", r.n}, {"radius", r.radius}, {"matrices", r.matrices}};
}

inline json to_json(const PnuCaRule& r) {
  return {{"kind", "pnuca"}, {"m", r.modulus}, {"period", r.period}, {"radius", r.radius}, {"rules", r.rules}};
}

inline json to_json(const RuleFile& r) {
  return std::visit([](const auto& v) { return to_json(v); }, r);
}

inline json to_json(const LaurentMatrix& a) {
  json rows = json::array();
  for (std::size_t r = 0; r < a.n(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < a.n(); ++c) row.push_back(to_json(a.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const Configuration& c) {
  json cells = json::object();
  for (const auto& [cell, v] : c.cells()) cells[std::to_string(cell)] = v;
  return {{"m", c.modulus()}, {"n", c.n()}, {"cells", cells}};
}

inline json to_json(const FactorVerdict& f) {
  json out = {{"p", f.prime}, {"k", f.exponent}, {"sensitive", f.sensitive}};
  if (f.witness) {
    out["witness"] = {{"i", f.witness->row_index},
                      {"monomial", to_json(f.witness->monomial)},
                      {"side", std::string(to_string(f.witness->side))}};
  }
  return out;
}

inline json to_json(const SensitivityVerdict& v) {
  json factors = json::array();
  for (const auto& f : v.factors) factors.push_back(to_json(f));
  return {{"sensitive", v.sensitive}, {"equicontinuous", v.equicontinuous}, {"factors", factors}};
}

inline json to_json(const InjSurjVerdict& v) {
  json primes = json::array();
  for (const auto& e : v.primes) primes.push_back({{"p", e.prime}, {"unit_coefficients", e.unit_coefficients}});
  return {{"injective", v.injective}, {"surjective", v.surjective}, {"det", to_json(v.det)}, {"primes", primes}};
}

inline json to_json(const PowerCensus& c) {
  json out = {{"outcome", std::string(to_string(c.outcome))}};
  if (c.outcome == CensusOutcome::cycle) {
    out["q"] = c.q;
    out["period"] = c.period;
  }
  json reaches = json::array();
  for (const auto& s : c.reaches) reaches.push_back(json::array({s.t, s.reach}));
  out["reaches"] = reaches;
  out["powers_examined"] = c.powers_examined;
  out["max_steps"] = c.max_steps;
  out["growth_threshold"] = c.growth_threshold;
  return out;
}

inline json to_json(const PeriodicMap& pm) {
  json out = {{"L", pm.period}, {"injective", pm.injective}, {"surjective", pm.surjective},
              {"kernel_factors", pm.kernel_factors}};
  if (auto s = pm.kernel_size()) out["kernel_size"] = *s;
  return out;
}

// ---------------------------------------------------------------------------
// Reading

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& what) { throw error(errc::schema, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::int64_t integer(const json& j, const char* what) {
  if (!j.is_number_integer()) schema_fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

inline std::int64_t int_field(const json& j, const char* key) { return integer(field(j, key), key); }

inline std::int64_t modulus_field(const json& j) {
  const std::int64_t m = int_field(j, "m");
  if (m < 2 || m >= (std::int64_t{1} << 32)) schema_fail("m must be in [2, 2^32)");
  return m;
}

inline residue_t residue(const json& j, std::int64_t m, const char* what) {
  const std::int64_t v = integer(j, what);
  if (v < 0 || v >= m) schema_fail(std::string(what) + " residue " + std::to_string(v) + " outside [0, m)");
  return v;
}

inline Grid grid(const json& j, std::size_t rows, std::size_t cols, std::int64_t m, const char* what) {
  if (!j.is_array() || j.size() != rows) schema_fail(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  Grid g;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) {
      schema_fail(std::string(what) + ": expected rows of length " + std::to_string(cols));
    }
    std::vector<residue_t> out;
    for (const auto& v : row) out.push_back(residue(v, m, what));
    g.push_back(std::move(out));
  }
  return g;
}

inline int small_nonneg(const json& j, const char* key, std::int64_t lo, std::int64_t hi) {
  const std::int64_t v = int_field(j, key);
  if (v < lo || v > hi) schema_fail(std::string(key) + " out of range");
  return static_cast<int>(v);
}

}  // namespace detail

inline LaurentPoly poly_from_json(const json& j, std::int64_t m) {
  if (!j.is_array()) detail::schema_fail("polynomial must be an array of [exp, coef] pairs");
  std::vector<Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) detail::schema_fail("term must be [exp, coef]");
    const std::int64_t e = detail::integer(t[0], "exponent");
    const residue_t c = detail::residue(t[1], m, "coefficient");
    if (!terms.empty() && e <= terms.back().exponent) detail::schema_fail("terms must be sorted by strictly increasing exponent");
    if (c != 0) terms.push_back({e, c});
  }
  return LaurentPoly::from_canonical(m, std::move(terms));
}

inline FrobeniusSpec frobenius_from_json(const json& j) {
  const std::int64_t m = detail::modulus_field(j);
  const json& row = detail::field(j, "row");
  if (!row.is_array() || row.empty()) detail::schema_fail("row must be a nonempty array");
  if (j.contains("n") && detail::int_field(j, "n") != static_cast<std::int64_t>(row.size())) {
    detail::schema_fail("n does not match row length");
  }
  std::vector<LaurentPoly> polys;
  for (const auto& p : row) polys.push_back(poly_from_json(p, m));
  return FrobeniusSpec(m, std::move(polys));
}

inline HocaRule hoca_from_json(const json& j) {
  const std::int64_t m = detail::modulus_field(j);
  const int k = detail::small_nonneg(j, "memory", 1, 64);
  const int r = detail::small_nonneg(j, "radius", 0, 4096);
  HocaRule h{m, k, r,
             detail::grid(detail::field(j, "coeffs"), static_cast<std::size_t>(k), static_cast<std::size_t>(2 * r + 1), m,
                          "coeffs")};
  return h;
}

inline LcaRule lca_from_json(const json& j) {
  const std::int64_t m = detail::modulus_field(j);
  const int n = detail::small_nonneg(j, "n", 1, 64);
  const int r = detail::small_nonneg(j, "radius", 0, 4096);
  const json& mats = detail::field(j, "matrices");
  if (!mats.is_array() || mats.size() != static_cast<std::size_t>(2 * r + 1)) {
    detail::schema_fail("matrices must hold 2*radius+1 entries");
  }
  LcaRule rule{m, n, r, {}};
  for (const auto& g : mats) {
    rule.matrices.push_back(detail::grid(g, static_cast<std::size_t>(n), static_cast<std::size_t>(n), m, "matrix"));
  }
  return rule;
}

inline PnuCaRule pnuca_from_json(const json& j) {
  const std::int64_t m = detail::modulus_field(j);
  const int period = detail::small_nonneg(j, "period", 1, 4096);
  const int r = detail::small_nonneg(j, "radius", 0, 4096);
  return {m, period, r,
          detail::grid(detail::field(j, "rules"), static_cast<std::size_t>(period), static_cast<std::size_t>(2 * r + 1),
                       m, "rules")};
}

inline RuleFile rule_from_json(const json& j) {
  const json& kind = detail::field(j, "kind");
  if (!kind.is_string()) detail::schema_fail("kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "hoca") return hoca_from_json(j);
  if (k == "lca") return lca_from_json(j);
  if (k == "frobenius") return frobenius_from_json(j);
  if (k == "pnuca") return pnuca_from_json(j);
  detail::schema_fail("unknown kind '" + k + "'");
}

inline Configuration config_from_json(const json& j) {
  const std::int64_t m = detail::modulus_field(j);
  const int n = detail::small_nonneg(j, "n", 1, 64);
  const json& cells = detail::field(j, "cells");
  if (!cells.is_object()) detail::schema_fail("cells must be an object keyed by cell index");
  Configuration c(m, static_cast<std::size_t>(n));
  for (const auto& [key, value] : cells.items()) {
    std::size_t used = 0;
    cell_t cell = 0;
    try {
      cell = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty()) detail::schema_fail("cell key '" + key + "' is not an integer");
    if (!value.is_array() || value.size() != static_cast<std::size_t>(n)) {
      detail::schema_fail("cell " + key + " must hold " + std::to_string(n) + " components");
    }
    State s;
    for (const auto& v : value) s.push_back(detail::residue(v, m, "state"));
    c.set(cell, std::move(s));
  }
  return c;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw error(errc::schema, path + ": " + e.what());
  }
}

inline RuleFile load_rule(const std::string& path) { return rule_from_json(read_json_file(path)); }
inline Configuration load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

}  // namespace hoca::io
