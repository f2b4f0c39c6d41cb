// hoca_lab: analyze, simulate, convert and cross-check linear (higher-order)
// cellular automata given as JSON rule files.
//
// Exit codes: 0 ok, 2 schema or input error, 3 unsupported query,
// 4 oracle contradicts the decision procedure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hoca/hoca.hpp"
#include "hoca/io.hpp"

namespace {

using namespace hoca;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_unsupported = 3;
constexpr int exit_contradiction = 4;

int exit_code_for(errc code) {
  switch (code) {
    case errc::unsupported:
    case errc::overflow:
      return exit_unsupported;
    default:
      return exit_input;
  }
}

void print(const json& j) { std::cout << j.dump() << '\n'; }

void report_error(std::string_view code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
}

// Every rule kind reduces to an LCA; HOCA and Frobenius files also carry
// their companion row directly.
struct Loaded {
  io::RuleFile rule;
  LcaRule lca;
  LaurentMatrix fps;
  std::optional<FrobeniusSpec> frobenius;
  std::optional<int> block_size;  // pnuca only
};

Loaded load(const std::string& path) {
  io::RuleFile rule = io::load_rule(path);
  return std::visit(
      [&](const auto& r) -> Loaded {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, HocaRule>) {
          FrobeniusSpec f = hoca_to_frobenius(r);
          LaurentMatrix M = frobenius_to_matrix(f);
          return {rule, fps_to_lca(M), M, f, std::nullopt};
        } else if constexpr (std::is_same_v<T, FrobeniusSpec>) {
          LaurentMatrix M = frobenius_to_matrix(r);
          return {rule, fps_to_lca(M), M, r, std::nullopt};
        } else if constexpr (std::is_same_v<T, LcaRule>) {
          LaurentMatrix M = lca_to_fps(r);
          return {rule, r, M, matrix_to_frobenius(M), std::nullopt};
        } else {
          PnuCaConjugacy conj = pnuca_to_lca(r);
          LaurentMatrix M = lca_to_fps(conj.lca);
          return {rule, conj.lca, M, matrix_to_frobenius(M), conj.block_size};
        }
      },
      rule);
}

LcaSensitivity sensitivity_of(const Loaded& l) {
  if (l.frobenius) return {Decidability::decided, decide_sensitivity(*l.frobenius)};
  return decide_lca_sensitivity(l.lca);
}

// ---------------------------------------------------------------------------
// analyze

json analyze(const Loaded& l, bool require_sensitivity) {
  const LcaSensitivity s = sensitivity_of(l);
  if (require_sensitivity && s.status != Decidability::decided) {
    throw error(errc::unsupported, "sensitivity is undecided for a non-Frobenius LCA with n >= 2");
  }
  json out = json::object();
  out["sensitivity_status"] = std::string(to_string(s.status));
  if (s.verdict) out.update(io::to_json(*s.verdict));
  out.update(io::to_json(decide_inj_surj(l.fps)));
  return out;
}

// ---------------------------------------------------------------------------
// convert

json convert(const Loaded& l, const std::string& target) {
  const std::string_view source = io::kind_of(l.rule);
  if (target == "lca") return io::to_json(fps_to_lca(l.fps));
  if (target == "pnuca") {
    if (source == "pnuca") return io::to_json(l.rule);
    throw error(errc::unsupported, "conversion to pnuca is not implemented");
  }
  if (!l.frobenius) {
    throw error(errc::unsupported, "the fps of this " + std::string(source) + " rule is not in Frobenius form");
  }
  if (target == "frobenius") return io::to_json(*l.frobenius);
  if (target == "hoca") {
    if (const auto* h = std::get_if<HocaRule>(&l.rule)) return io::to_json(canonical(*h));
    return io::to_json(frobenius_to_hoca(*l.frobenius));
  }
  throw error(errc::unsupported, "unknown target kind '" + target + "'");
}

// ---------------------------------------------------------------------------
// simulate

Window parse_window(const std::string& text) {
  const auto colon = text.find(':', 1);
  try {
    if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo_text = text.substr(0, colon);
    const std::string hi_text = text.substr(colon + 1);
    const Window w{std::stoll(lo_text, &used_lo), std::stoll(hi_text, &used_hi)};
    if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument("trailing characters");
    if (w.lo > w.hi) throw std::invalid_argument("lo > hi");
    return w;
  } catch (const std::exception&) {
    throw error(errc::invalid_argument, "window must be lo:hi with lo <= hi, got '" + text + "'");
  }
}

std::optional<std::pair<cell_t, cell_t>> union_support(const std::vector<Configuration>& configs) {
  std::optional<std::pair<cell_t, cell_t>> out;
  for (const auto& c : configs) {
    const auto s = c.support();
    if (!s) continue;
    out = out ? std::make_pair(std::min(out->first, s->first), std::max(out->second, s->second)) : *s;
  }
  return out;
}

json simulate(const Loaded& l, const std::vector<std::string>& config_paths, std::size_t steps,
              const std::optional<std::string>& window_text, const std::string& format,
              const std::optional<std::string>& out_path) {
  std::vector<Configuration> seeds;
  for (const auto& p : config_paths) seeds.push_back(io::load_config(p));
  if (seeds.empty()) throw error(errc::invalid_argument, "at least one configuration file is required");
  for (const auto& s : seeds) {
    if (s.modulus() != l.fps.modulus()) throw error(errc::modulus_mismatch, "configuration modulus differs from rule");
  }

  std::vector<Configuration> history;
  exponent_t reach = 0;
  if (const auto* h = std::get_if<HocaRule>(&l.rule)) {
    // k single-layer files form the stack e^1..e^k; one k-component file is
    // the stacked configuration itself.
    Stack e;
    if (seeds.size() == 1 && seeds[0].n() == static_cast<std::size_t>(h->memory)) {
      e = config_to_stack(seeds[0]);
    } else if (seeds.size() == static_cast<std::size_t>(h->memory)) {
      e = seeds;
    } else {
      throw error(errc::shape_mismatch, "hoca with memory " + std::to_string(h->memory) + " needs " +
                                            std::to_string(h->memory) + " layer files or one stacked file");
    }
    reach = h->radius;
    history.push_back(stack_to_config(e));
    for (std::size_t t = 0; t < steps; ++t) {
      e = hoca_step(*h, e);
      history.push_back(stack_to_config(e));
    }
  } else if (const auto* p = std::get_if<PnuCaRule>(&l.rule)) {
    if (seeds.size() != 1) throw error(errc::shape_mismatch, "pnuca simulation takes one configuration");
    reach = p->radius;
    history.push_back(seeds[0]);
    for (std::size_t t = 0; t < steps; ++t) history.push_back(pnuca_step(*p, history.back()));
  } else {
    if (seeds.size() != 1) throw error(errc::shape_mismatch, "lca simulation takes one configuration");
    const auto [lo, hi] = degree_span(l.fps);
    reach = std::max(-lo, hi);
    history = orbit(l.fps, seeds[0], steps);
  }

  Window w{0, 0};
  if (window_text) {
    w = parse_window(*window_text);
  } else {
    const auto seed = union_support({history.front()});
    const exponent_t grow = checked_mul(static_cast<exponent_t>(steps), reach);
    w = seed ? Window{seed->first - grow, seed->second + grow} : Window{-grow, grow};
  }

  json out = {{"kind", std::string(io::kind_of(l.rule))},
              {"steps", steps},
              {"window", json::array({w.lo, w.hi})},
              {"format", format}};
  json files = json::array();
  if (out_path) {
    for (const auto& f : write_trace(history, w, format == "csv" ? TraceFormat::csv : TraceFormat::pgm, *out_path)) {
      files.push_back(f);
    }
  }
  out["files"] = files;
  json support = json::array();
  for (const auto& c : history) {
    const auto s = c.support();
    support.push_back(s ? json::array({s->first, s->second}) : json(nullptr));
  }
  out["support"] = support;
  return out;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleResult {
  json report;
  bool contradiction = false;
};

OracleResult oracle(const Loaded& l, std::uint64_t max_steps, std::int64_t growth_threshold, std::size_t periods) {
  OracleResult res;
  std::vector<std::string> contradictions;
  bool inconclusive = false;

  const PowerCensus census = power_census(l.fps, max_steps, growth_threshold);
  const LcaSensitivity s = sensitivity_of(l);
  json decision = {{"sensitivity_status", std::string(to_string(s.status))}};
  if (s.verdict) {
    decision["sensitive"] = s.verdict->sensitive;
    if (census.outcome == CensusOutcome::cycle && s.verdict->sensitive) {
      contradictions.emplace_back("power cycle found but the decision says sensitive");
    } else if (census.outcome == CensusOutcome::growth && !s.verdict->sensitive) {
      contradictions.emplace_back("degree growth found but the decision says equicontinuous");
    }
  }
  if (census.outcome == CensusOutcome::inconclusive || !s.verdict) inconclusive = true;

  const InjSurjVerdict inj = decide_inj_surj(l.fps);
  decision["injective"] = inj.injective;
  decision["surjective"] = inj.surjective;
  json maps = json::array();
  bool any_singular = false;
  for (std::size_t L = 1; L <= periods; ++L) {
    const PeriodicMap pm = periodic_map(l.lca, L);
    json entry = {{"L", L}, {"injective", pm.injective}};
    if (auto k = pm.kernel_size()) entry["kernel_size"] = *k;
    maps.push_back(entry);
    any_singular = any_singular || !pm.injective;
    if (inj.injective && !pm.injective) {
      contradictions.push_back("decision says injective but the period-" + std::to_string(L) + " map is not");
    }
  }
  if (periods > 0 && !inj.surjective && !any_singular) {
    contradictions.push_back("decision says not surjective but every periodic map up to L=" + std::to_string(periods) +
                             " is bijective");
  }

  res.contradiction = !contradictions.empty();
  res.report = {{"census", io::to_json(census)}, {"decision", decision}, {"periodic", maps}};
  res.report["agreement"] = res.contradiction ? "contradiction" : (inconclusive ? "inconclusive" : "ok");
  if (res.contradiction) res.report["contradictions"] = contradictions;
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear (higher-order) cellular automata: decisions, simulation and oracles"};
  app.require_subcommand(1);

  std::string rule_path;
  bool require_sensitivity = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Decide sensitivity, equicontinuity, injectivity, surjectivity");
  analyze_cmd->add_option("rule", rule_path, "Rule file (hoca, lca, frobenius or pnuca)")->required();
  analyze_cmd->add_flag("--require-sensitivity", require_sensitivity,
                        "Exit 3 when sensitivity cannot be decided for this rule");

  std::vector<std::string> config_paths;
  std::size_t steps = 16;
  std::optional<std::string> window;
  std::string format = "pgm";
  std::optional<std::string> out_path;
  auto* simulate_cmd = app.add_subcommand("simulate", "Iterate a rule from seed configurations");
  simulate_cmd->add_option("rule", rule_path, "Rule file")->required();
  simulate_cmd->add_option("config", config_paths, "Configuration file(s); a hoca rule takes one per memory layer")
      ->required();
  simulate_cmd->add_option("--steps", steps, "Number of steps T")->capture_default_str();
  simulate_cmd->add_option("--window", window, "Cell window lo:hi (default: seed support dilated by T * reach)");
  simulate_cmd->add_option("--format", format, "Trace format")
      ->check(CLI::IsMember({"pgm", "csv"}))
      ->capture_default_str();
  simulate_cmd->add_option("--out", out_path, "Trace output path; PGM gets one file per component when n > 1");

  std::string target;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between rule representations");
  convert_cmd->add_option("rule", rule_path, "Rule file")->required();
  convert_cmd->add_option("--to", target, "Target kind: hoca, frobenius, lca")->required();

  std::uint64_t max_steps = 2048;
  std::int64_t growth_threshold = 64;
  std::size_t periods = 8;
  auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check the decisions against brute-force evidence");
  oracle_cmd->add_option("rule", rule_path, "Rule file")->required();
  oracle_cmd->add_option("--max-steps", max_steps, "Powers of M(X) to examine")->capture_default_str();
  oracle_cmd->add_option("--growth-threshold", growth_threshold, "Largest |exponent| of M^t that counts as growth")
      ->capture_default_str();
  oracle_cmd->add_option("--periods", periods, "Check periodic maps for L = 1..periods")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_input;
  }

  try {
    const Loaded rule = load(rule_path);
    if (*analyze_cmd) {
      print(analyze(rule, require_sensitivity));
    } else if (*simulate_cmd) {
      print(simulate(rule, config_paths, steps, window, format, out_path));
    } else if (*convert_cmd) {
      print(convert(rule, target));
    } else if (*oracle_cmd) {
      const OracleResult res = oracle(rule, max_steps, growth_threshold, periods);
      print(res.report);
      if (res.contradiction) {
        report_error("oracle-contradiction", "oracle evidence contradicts the decision procedure");
        return exit_contradiction;
      }
    }
  } catch (const error& e) {
    report_error(to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 1;
  }
  return exit_ok;
}
