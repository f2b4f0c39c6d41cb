#pragma once

/**
 * @file dynamics.hpp
 * @brief Finite-support configurations and the global maps acting on them.
 *
 * A configuration assigns a vector of Z_m^n to every integer cell; only cells
 * holding a nonzero vector are stored. Its fps is the vector of polynomials
 * P_c(X) = sum_i c_i X^i, and one LCA step is P -> M(X) P.
 */

#include <algorithm>
#include <cstdint>
#include <fstream>
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

namespace hoca {

using cell_t = std::int64_t;
using State = std::vector<residue_t>;

class Configuration {
 public:
  Configuration(std::int64_t modulus, std::size_t n) : modulus_(modulus), n_(n) {
    require_modulus(modulus);
    if (n == 0) throw error(errc::shape_mismatch, "state dimension must be >= 1");
  }

  [[nodiscard]] std::int64_t modulus() const { return modulus_; }
  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] const std::map<cell_t, State>& cells() const { return cells_; }
  [[nodiscard]] bool is_zero() const { return cells_.empty(); }

  [[nodiscard]] State at(cell_t cell) const {
    auto it = cells_.find(cell);
    return it == cells_.end() ? State(n_, 0) : it->second;
  }

  [[nodiscard]] residue_t at(cell_t cell, std::size_t component) const {
    auto it = cells_.find(cell);
    return it == cells_.end() ? 0 : it->second[component];
  }

  /// Stores the reduced vector; the zero vector erases the cell.
  void set(cell_t cell, State value) {
    if (value.size() != n_) throw error(errc::shape_mismatch, "state vector has wrong length");
    bool zero = true;
    for (auto& v : value) {
      v = mod_reduce(v, modulus_);
      zero = zero && v == 0;
    }
    if (zero) {
      cells_.erase(cell);
    } else {
      cells_[cell] = std::move(value);
    }
  }

  void set(cell_t cell, std::size_t component, std::int64_t value) {
    State s = at(cell);
    s[component] = mod_reduce(value, modulus_);
    set(cell, std::move(s));
  }

  /// Smallest and largest nonzero cell.
  [[nodiscard]] std::optional<std::pair<cell_t, cell_t>> support() const {
    if (cells_.empty()) return std::nullopt;
    return std::make_pair(cells_.begin()->first, cells_.rbegin()->first);
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

  friend Configuration operator+(const Configuration& a, const Configuration& b) {
    if (a.modulus_ != b.modulus_ || a.n_ != b.n_) throw error(errc::shape_mismatch, "configuration mismatch");
    Configuration out = a;
    for (const auto& [cell, v] : b.cells_) {
      State s = out.at(cell);
      for (std::size_t j = 0; j < s.size(); ++j) s[j] = add_mod(s[j], v[j], a.modulus_);
      out.set(cell, std::move(s));
    }
    return out;
  }

 private:
  std::int64_t modulus_;
  std::size_t n_;
  std::map<cell_t, State> cells_;
};

inline std::vector<LaurentPoly> config_to_fps(const Configuration& c) {
  std::vector<std::vector<Term>> comps(c.n());
  for (const auto& [cell, v] : c.cells()) {
    for (std::size_t j = 0; j < c.n(); ++j) {
      if (v[j] != 0) comps[j].push_back({cell, v[j]});
    }
  }
  std::vector<LaurentPoly> out;
  out.reserve(c.n());
  for (auto& terms : comps) out.push_back(LaurentPoly::from_canonical(c.modulus(), std::move(terms)));
  return out;
}

inline Configuration fps_to_config(const std::vector<LaurentPoly>& fps) {
  if (fps.empty()) throw error(errc::shape_mismatch, "empty fps vector");
  Configuration c(fps.front().modulus(), fps.size());
  for (std::size_t j = 0; j < fps.size(); ++j) {
    if (fps[j].modulus() != c.modulus()) throw error(errc::modulus_mismatch, "fps components disagree on modulus");
    for (const auto& t : fps[j].terms()) c.set(t.exponent, j, t.coefficient);
  }
  return c;
}

inline std::vector<LaurentPoly> apply_matrix(const LaurentMatrix& m, const std::vector<LaurentPoly>& v) {
  if (v.size() != m.n()) throw error(errc::shape_mismatch, "vector length differs from matrix dimension");
  std::vector<LaurentPoly> out(m.n(), LaurentPoly(m.modulus()));
  for (std::size_t r = 0; r < m.n(); ++r) {
    for (std::size_t k = 0; k < m.n(); ++k) {
      if (v[k].modulus() != m.modulus()) throw error(errc::modulus_mismatch, "vector modulus differs from matrix");
      if (!m.at(r, k).is_zero() && !v[k].is_zero()) out[r] += m.at(r, k) * v[k];
    }
  }
  return out;
}

inline void require_compatible(const LaurentMatrix& m, const Configuration& c) {
  if (m.n() != c.n()) throw error(errc::shape_mismatch, "configuration dimension differs from matrix");
  if (m.modulus() != c.modulus()) throw error(errc::modulus_mismatch, "configuration modulus differs from matrix");
}

/// One application of the LCA whose fps is `m`.
inline Configuration step(const LaurentMatrix& m, const Configuration& c) {
  require_compatible(m, c);
  return fps_to_config(apply_matrix(m, config_to_fps(c)));
}

/// t successive steps.
inline Configuration iterate(const LaurentMatrix& m, Configuration c, std::uint64_t t) {
  require_compatible(m, c);
  for (std::uint64_t i = 0; i < t; ++i) c = step(m, c);
  return c;
}

/// F^t(c) through a single multiplication by M(X)^t.
inline Configuration iterate_by_power(const LaurentMatrix& m, const Configuration& c, std::uint64_t t) {
  require_compatible(m, c);
  return fps_to_config(apply_matrix(mat_pow(m, t), config_to_fps(c)));
}

// ---------------------------------------------------------------------------
// Higher-order stepping

/// e^1 ... e^k, each a single-component configuration over Z_m.
using Stack = std::vector<Configuration>;

/// H(e)^j = e^{j+1} for j < k, and the new top layer is
/// H(e)^k_x = sum_j sum_i a_i^j e^j_{x+i}.
inline Stack hoca_step(const HocaRule& h, const Stack& e) {
  h.validate();
  if (e.size() != static_cast<std::size_t>(h.memory)) throw error(errc::shape_mismatch, "stack size differs from memory");
  for (const auto& layer : e) {
    if (layer.n() != 1 || layer.modulus() != h.modulus) throw error(errc::shape_mismatch, "stack layer must be over Z_m");
  }
  const std::int64_t m = h.modulus;
  std::map<cell_t, residue_t> top;
  for (int j = 0; j < h.memory; ++j) {
    for (const auto& [cell, v] : e[static_cast<std::size_t>(j)].cells()) {
      // e^j_cell feeds the cells x = cell - i.
      for (int i = -h.radius; i <= h.radius; ++i) {
        const residue_t a = h.coefficient(j, i);
        if (a == 0) continue;
        auto& slot = top[cell - i];
        slot = add_mod(slot, mul_mod(a, v[0], m), m);
      }
    }
  }
  Stack out(e.begin() + 1, e.end());
  Configuration last(m, 1);
  for (const auto& [cell, v] : top) last.set(cell, State{v});
  out.push_back(std::move(last));
  return out;
}

/// Component j+1 of cell x holds e^{j+1}_x.
inline Configuration stack_to_config(const Stack& e) {
  if (e.empty()) throw error(errc::shape_mismatch, "empty stack");
  Configuration c(e.front().modulus(), e.size());
  for (std::size_t j = 0; j < e.size(); ++j) {
    for (const auto& [cell, v] : e[j].cells()) c.set(cell, j, v[0]);
  }
  return c;
}

inline Stack config_to_stack(const Configuration& c) {
  Stack e(c.n(), Configuration(c.modulus(), 1));
  for (const auto& [cell, v] : c.cells()) {
    for (std::size_t j = 0; j < c.n(); ++j) e[j].set(cell, 0, v[j]);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Periodic non-uniform CA

/// F(c)_x = sum_i a_{x mod n, i} c_{x+i}, evaluated cell by cell.
inline Configuration pnuca_step(const PnuCaRule& rule, const Configuration& c) {
  rule.validate();
  if (c.n() != 1 || c.modulus() != rule.modulus) throw error(errc::shape_mismatch, "pnuca acts on Z_m configurations");
  const std::int64_t m = rule.modulus;
  std::map<cell_t, residue_t> next;
  for (const auto& [cell, v] : c.cells()) {
    for (int i = -rule.radius; i <= rule.radius; ++i) {
      const cell_t x = cell - i;
      const residue_t a = rule.coefficient(static_cast<int>(mod_reduce(x, rule.period)), i);
      if (a == 0) continue;
      auto& slot = next[x];
      slot = add_mod(slot, mul_mod(a, v[0], m), m);
    }
  }
  Configuration out(m, 1);
  for (const auto& [cell, v] : next) out.set(cell, State{v});
  return out;
}

/// phi(c)_i^{j+1} = c_{i n + j}.
inline Configuration block_config(const Configuration& c, int block) {
  if (c.n() != 1 || block < 1) throw error(errc::shape_mismatch, "blocking needs a Z_m configuration and block >= 1");
  Configuration out(c.modulus(), static_cast<std::size_t>(block));
  for (const auto& [cell, v] : c.cells()) {
    const cell_t r = mod_reduce(cell, block);
    out.set((cell - r) / block, static_cast<std::size_t>(r), v[0]);
  }
  return out;
}

inline Configuration unblock_config(const Configuration& c) {
  const auto block = static_cast<cell_t>(c.n());
  Configuration out(c.modulus(), 1);
  for (const auto& [cell, v] : c.cells()) {
    for (std::size_t j = 0; j < c.n(); ++j) out.set(cell * block + static_cast<cell_t>(j), 0, v[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cantor metric

/// Exact value of d(c, c'): 0, or 2^-exponent.
struct CantorDistance {
  bool zero = true;
  std::int64_t exponent = 0;

  [[nodiscard]] std::string to_string() const {
    return zero ? "0" : (exponent == 0 ? "1" : "1/2^" + std::to_string(exponent));
  }

  friend bool operator==(const CantorDistance&, const CantorDistance&) = default;
};

/// d(c, c') = 2^-k where k is the smallest |x| with c_x != c'_x.
inline CantorDistance cantor_distance(const Configuration& a, const Configuration& b) {
  if (a.modulus() != b.modulus() || a.n() != b.n()) throw error(errc::shape_mismatch, "configuration mismatch");
  std::optional<std::int64_t> best;
  auto consider = [&](cell_t cell) {
    if (a.at(cell) == b.at(cell)) return;
    const std::int64_t k = cell < 0 ? -cell : cell;
    if (!best || k < *best) best = k;
  };
  for (const auto& [cell, v] : a.cells()) consider(cell);
  for (const auto& [cell, v] : b.cells()) consider(cell);
  if (!best) return {};
  return {false, *best};
}

// ---------------------------------------------------------------------------
// Space-time traces

enum class TraceFormat { pgm, csv };

struct Window {
  cell_t lo;
  cell_t hi;
};

/// Writes history rows over the window. CSV: one file with a header of cell
/// indices and one row per time step (vector states joined by ':'). PGM:
/// binary P5, one image per component, gray = value * 255 / (m - 1).
/// Returns the paths written.
inline std::vector<std::string> write_trace(const std::vector<Configuration>& history, Window w, TraceFormat format,
                                            const std::string& path) {
  if (history.empty()) throw error(errc::invalid_argument, "empty history");
  if (w.lo > w.hi) throw error(errc::invalid_argument, "window lo > hi");
  const std::size_t n = history.front().n();
  const std::int64_t m = history.front().modulus();
  const auto width = static_cast<std::size_t>(w.hi - w.lo + 1);
  std::vector<std::string> written;

  if (format == TraceFormat::csv) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::io, "cannot open " + path);
    out << "t";
    for (cell_t x = w.lo; x <= w.hi; ++x) out << ',' << x;
    out << '\n';
    for (std::size_t t = 0; t < history.size(); ++t) {
      out << t;
      for (cell_t x = w.lo; x <= w.hi; ++x) {
        out << ',';
        for (std::size_t j = 0; j < n; ++j) {
          if (j) out << ':';
          out << history[t].at(x, j);
        }
      }
      out << '\n';
    }
    if (!out) throw error(errc::io, "write failed for " + path);
    written.push_back(path);
    return written;
  }

  for (std::size_t j = 0; j < n; ++j) {
    std::string target = path;
    if (n > 1) {
      const auto dot = path.find_last_of('.');
      const auto slash = path.find_last_of('/');
      const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
      const std::string suffix = "_c" + std::to_string(j);
      target = has_ext ? path.substr(0, dot) + suffix + path.substr(dot) : path + suffix;
    }
    std::ofstream out(target, std::ios::binary);
    if (!out) throw error(errc::io, "cannot open " + target);
    out << "P5\n" << width << ' ' << history.size() << "\n255\n";
    std::vector<unsigned char> row(width);
    for (const auto& c : history) {
      for (std::size_t x = 0; x < width; ++x) {
        const residue_t v = c.at(w.lo + static_cast<cell_t>(x), j);
        row[x] = static_cast<unsigned char>(v * 255 / (m - 1));
      }
      out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(width));
    }
    if (!out) throw error(errc::io, "write failed for " + target);
    written.push_back(target);
  }
  return written;
}

/// c, F(c), ..., F^T(c) for the LCA with fps `m`.
inline std::vector<Configuration> orbit(const LaurentMatrix& m, Configuration c, std::size_t steps) {
  std::vector<Configuration> out;
  out.reserve(steps + 1);
  out.push_back(c);
  for (std::size_t t = 0; t < steps; ++t) out.push_back(step(m, out.back()));
  return out;
}

inline std::vector<std::string> export_trace(const LaurentMatrix& m, const Configuration& c, std::size_t steps,
                                             Window w, TraceFormat format, const std::string& path) {
  return write_trace(orbit(m, c, steps), w, format, path);
}

}  // namespace hoca
