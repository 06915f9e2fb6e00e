#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "buncat/error.hpp"
#include "buncat/poly.hpp"
#include "buncat/rational.hpp"
#include "buncat/report.hpp"

namespace buncat {

inline std::vector<std::string> base_variable_names(std::size_t m) {
  if (m == 0) fail("DimensionMismatch", "base dimension must be positive");
  if (m == 1) return {"x"};
  if (m == 2) return {"x", "y"};
  if (m == 3) return {"x", "y", "z"};
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

/// Every section and fibre map accepts both the display names (x, y, z for
/// small dimension) and the numbered spellings x1..xm.
inline std::map<std::string, std::size_t> base_variable_aliases(std::size_t m) {
  std::map<std::string, std::size_t> aliases;
  const std::vector<std::string> display = base_variable_names(m);
  for (std::size_t i = 0; i < m; ++i) {
    aliases[display[i]] = i;
    aliases["x" + std::to_string(i + 1)] = i;
  }
  return aliases;
}

/// A polynomial section x ↦ (x, value(x)) of the trivial scalar bundle over
/// ℚ^m.
struct PolySection {
  std::size_t base_dim = 0;
  Poly value;

  friend bool operator==(const PolySection&, const PolySection&) = default;
};

inline PolySection make_section(std::size_t m, Poly value) {
  if (value.variables() != base_variable_names(m))
    fail("VariableMismatch", "section value must use the base variables");
  return PolySection{m, std::move(value)};
}

inline PolySection parse_section(std::size_t m, const std::string& text) {
  PolyParser parser(base_variable_names(m), base_variable_aliases(m));
  return make_section(m, parser.parse(text));
}

inline std::string derivative_name(const MultiIndex& a, const std::vector<std::string>& vars) {
  if (total_degree(a) == 0) return "u";
  std::string out = "u_";
  for (std::size_t i = 0; i < a.size(); ++i)
    for (unsigned k = 0; k < a[i]; ++k) out += vars[i];
  return out;
}

inline std::vector<MultiIndex> multi_indices_up_to(std::size_t m, unsigned k) {
  std::vector<MultiIndex> out;
  MultiIndex a(m, 0);
  while (true) {
    if (total_degree(a) <= k) out.push_back(a);
    std::size_t pos = m;
    while (pos-- > 0) {
      if (a[pos] < k) {
        ++a[pos];
        for (std::size_t q = pos + 1; q < m; ++q) a[q] = 0;
        break;
      }
      if (pos == 0) {
        std::sort(out.begin(), out.end(), GradedLess{});
        return out;
      }
    }
  }
}

/// The order-k Taylor data of a section at a point: one exact rational per
/// derivative multi-index |α| ≤ k, zeros included.
struct Jet {
  std::vector<Rational> base_point;
  unsigned order = 0;
  std::map<MultiIndex, Rational, GradedLess> coeffs;

  std::size_t base_dim() const { return base_point.size(); }

  friend bool operator==(const Jet&, const Jet&) = default;
};

inline Jet jet_of(const PolySection& phi, const std::vector<Rational>& x, unsigned k) {
  if (x.size() != phi.base_dim) fail("DimensionMismatch", "point of wrong dimension");
  Jet jet;
  jet.base_point = x;
  jet.order = k;
  for (const MultiIndex& a : multi_indices_up_to(phi.base_dim, k))
    jet.coeffs[a] = phi.value.derivative(a).eval(x);
  return jet;
}

inline Jet project(const Jet& j, unsigned l) {
  if (l > j.order) fail("OrderTooHigh", "cannot project order " + std::to_string(j.order) +
                                            " to order " + std::to_string(l));
  Jet out;
  out.base_point = j.base_point;
  out.order = l;
  for (const auto& [a, c] : j.coeffs)
    if (total_degree(a) <= l) out.coeffs[a] = c;
  return out;
}

inline bool equivalent_to_order(const PolySection& phi, const PolySection& psi,
                                const std::vector<Rational>& x, unsigned k) {
  if (phi.base_dim != psi.base_dim) fail("DimensionMismatch", "sections over different bases");
  return jet_of(phi, x, k) == jet_of(psi, x, k);
}

/// A bundle morphism (f, f̄) with affine invertible base map f̄(x) = Ax + b
/// and polynomial fibre component f(x, u) = (f̄(x), fibre_map(x, u)). The
/// inverse matrix is derived once, exactly.
struct MorphismSpec {
  std::size_t base_dim = 0;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<std::vector<Rational>> a_inverse;
  Poly fibre_map;  // over base variables plus "u"
};

inline std::vector<std::string> fibre_variable_names(std::size_t m) {
  std::vector<std::string> names = base_variable_names(m);
  names.push_back("u");
  return names;
}

inline std::map<std::string, std::size_t> fibre_variable_aliases(std::size_t m) {
  std::map<std::string, std::size_t> aliases = base_variable_aliases(m);
  aliases["u"] = m;
  return aliases;
}

inline Poly parse_fibre_map(std::size_t m, const std::string& text) {
  PolyParser parser(fibre_variable_names(m), fibre_variable_aliases(m));
  return parser.parse(text);
}

namespace detail {

inline std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> a) {
  const std::size_t m = a.size();
  std::vector<std::vector<Rational>> inv(m, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < m; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) fail("NotInvertible", "base matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational d = a[col][col];
    for (std::size_t j = 0; j < m; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col];
      for (std::size_t j = 0; j < m; ++j) {
        a[row][j] -= factor * a[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

inline MorphismSpec make_spec(std::size_t m, std::vector<std::vector<Rational>> a,
                              std::vector<Rational> b, Poly fibre_map) {
  if (a.size() != m || b.size() != m) fail("DimensionMismatch", "affine data of wrong shape");
  for (const auto& row : a)
    if (row.size() != m) fail("DimensionMismatch", "base matrix is not square");
  if (fibre_map.variables() != fibre_variable_names(m))
    fail("VariableMismatch", "fibre map must use the base variables and u");
  MorphismSpec spec;
  spec.base_dim = m;
  spec.a_inverse = detail::invert_matrix(a);
  spec.a = std::move(a);
  spec.b = std::move(b);
  spec.fibre_map = std::move(fibre_map);

  const std::vector<std::string> vars = base_variable_names(m);
  for (std::size_t i = 0; i < m; ++i) {
    Poly roundtrip(vars);
    for (std::size_t j = 0; j < m; ++j) {
      // f̄_j(x) - b_j, fed through the inverse matrix
      Poly inner(vars);
      for (std::size_t q = 0; q < m; ++q)
        inner = inner + spec.a[j][q] * Poly::variable(vars, q);
      roundtrip = roundtrip + spec.a_inverse[i][j] * inner;
    }
    if (roundtrip != Poly::variable(vars, i))
      fail("NotInvertible", "inverse does not undo the base map on coordinate " +
                                std::to_string(i));
  }
  return spec;
}

inline MorphismSpec identity_spec(std::size_t m) {
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < m; ++i) a[i][i] = 1;
  return make_spec(m, std::move(a), std::vector<Rational>(m, 0),
                   Poly::variable(fibre_variable_names(m), m));
}

inline std::vector<Rational> base_map_apply(const MorphismSpec& spec,
                                            const std::vector<Rational>& x) {
  if (x.size() != spec.base_dim) fail("DimensionMismatch", "point of wrong dimension");
  std::vector<Rational> y(spec.base_dim, 0);
  for (std::size_t i = 0; i < spec.base_dim; ++i) {
    y[i] = spec.b[i];
    for (std::size_t j = 0; j < spec.base_dim; ++j) y[i] += spec.a[i][j] * x[j];
  }
  return y;
}

/// Diagrammatic composition: first covers s1's base map, then s2's.
inline MorphismSpec compose_specs(const MorphismSpec& s1, const MorphismSpec& s2) {
  if (s1.base_dim != s2.base_dim) fail("DimensionMismatch", "specs over different dimensions");
  const std::size_t m = s1.base_dim;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, 0));
  std::vector<Rational> b = s2.b;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) a[i][j] += s2.a[i][k] * s1.a[k][j];
      b[i] += s2.a[i][j] * s1.b[j];
    }
  const std::vector<std::string> vars = fibre_variable_names(m);
  std::vector<Poly> into_second;
  for (std::size_t i = 0; i < m; ++i) {
    Poly coord = Poly::constant(vars, s1.b[i]);
    for (std::size_t j = 0; j < m; ++j) coord = coord + s1.a[i][j] * Poly::variable(vars, j);
    into_second.push_back(coord);
  }
  into_second.push_back(s1.fibre_map);
  return make_spec(m, std::move(a), std::move(b), s2.fibre_map.compose(into_second));
}

/// f̃(φ): y ↦ fibre_map(f̄⁻¹(y), φ(f̄⁻¹(y))), by exact substitution.
inline PolySection transform_section(const MorphismSpec& spec, const PolySection& phi) {
  if (phi.base_dim != spec.base_dim) fail("DimensionMismatch", "section over the wrong base");
  const std::size_t m = spec.base_dim;
  const std::vector<std::string> vars = base_variable_names(m);
  std::vector<Poly> inverse_coords;
  for (std::size_t i = 0; i < m; ++i) {
    Poly coord(vars);
    for (std::size_t j = 0; j < m; ++j) {
      coord = coord + spec.a_inverse[i][j] * Poly::variable(vars, j);
      coord = coord + Poly::constant(vars, -spec.a_inverse[i][j] * spec.b[j]);
    }
    inverse_coords.push_back(coord);
  }
  const Poly pulled = phi.value.compose(inverse_coords);
  std::vector<Poly> into_fibre = inverse_coords;
  into_fibre.push_back(pulled);
  return make_section(m, spec.fibre_map.compose(into_fibre));
}

/// The canonical representative of a jet: its Taylor polynomial at the base
/// point, with coefficients coeffs(α)/α!.
inline PolySection taylor_section(const Jet& j) {
  const std::size_t m = j.base_dim();
  const std::vector<std::string> vars = base_variable_names(m);
  Poly value(vars);
  for (const auto& [a, c] : j.coeffs) {
    if (c == 0) continue;
    Integer alpha_factorial = 1;
    for (unsigned e : a) alpha_factorial *= factorial(e);
    Poly term = Poly::constant(vars, c / Rational(alpha_factorial));
    for (std::size_t i = 0; i < m; ++i)
      for (unsigned k = 0; k < a[i]; ++k) {
        Poly shifted = Poly::variable(vars, i) + Poly::constant(vars, -j.base_point[i]);
        term = term * shifted;
      }
    value = value + term;
  }
  return make_section(m, value);
}

/// j^k f: reconstruct the Taylor representative, transport it, take its jet
/// at the image point.
inline Jet prolong(const MorphismSpec& spec, const Jet& j) {
  if (j.base_dim() != spec.base_dim) fail("DimensionMismatch", "jet over the wrong base");
  const PolySection transported = transform_section(spec, taylor_section(j));
  return jet_of(transported, base_map_apply(spec, j.base_point), j.order);
}

struct CurveProbeReport {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::size_t mismatches = 0;
  json witness;  // first mismatch, null when none

  bool all_agree() const { return mismatches == 0; }

  json to_json() const {
    return {{"trials", trials},
            {"agreements", agreements},
            {"mismatches", mismatches},
            {"witness", witness}};
  }
};

/// Randomized oracle for order-k equivalence: draws polynomial curves γ with
/// γ(0) = x and polynomial observables f on the total space, then compares
/// d^r/dt^r at 0 of f(φ(γ(t))) and f(ψ(γ(t))) for r ≤ k. Every even trial
/// uses the bare fibre observable u, which alone separates any two sections
/// with different jets for generic curves.
inline CurveProbeReport curve_probe(const PolySection& phi, const PolySection& psi,
                                    const std::vector<Rational>& x, unsigned k,
                                    std::size_t trials, std::uint64_t seed) {
  if (phi.base_dim != psi.base_dim) fail("DimensionMismatch", "sections over different bases");
  if (x.size() != phi.base_dim) fail("DimensionMismatch", "point of wrong dimension");
  if (trials == 0) fail("BadTrialCount", "at least one trial required");
  const std::size_t m = phi.base_dim;
  std::mt19937_64 rng(seed);
  auto coefficient = [&rng]() { return Rational(static_cast<long long>(rng() % 7) - 3); };

  const std::vector<std::string> tvar = {"t"};
  const std::vector<std::string> evars = fibre_variable_names(m);

  CurveProbeReport report;
  report.trials = trials;
  report.witness = json();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<Poly> gamma;
    for (std::size_t i = 0; i < m; ++i) {
      Poly g = Poly::constant(tvar, x[i]);
      for (unsigned d = 1; d <= k; ++d) {
        Poly power = Poly::constant(tvar, coefficient());
        for (unsigned q = 0; q < d; ++q) power = power * Poly::variable(tvar, 0);
        g = g + power;
      }
      gamma.push_back(g);
    }

    Poly observable(evars);
    if (trial % 2 == 0) {
      observable = Poly::variable(evars, m);  // the bare u coordinate
    } else {
      for (const MultiIndex& a : multi_indices_up_to(m + 1, k))
        if (rng() % 3 == 0) observable.add_term(a, coefficient());
      if (observable.is_zero()) observable = Poly::variable(evars, m);
    }

    auto through = [&](const PolySection& section) {
      std::vector<Poly> args = gamma;
      args.push_back(section.value.compose(gamma));
      return observable.compose(args);
    };
    const Poly g_phi = through(phi);
    const Poly g_psi = through(psi);

    bool agree = true;
    for (unsigned r = 0; r <= k && agree; ++r) {
      const Rational c_phi = g_phi.coefficient(MultiIndex{r}) * Rational(factorial(r));
      const Rational c_psi = g_psi.coefficient(MultiIndex{r}) * Rational(factorial(r));
      if (c_phi != c_psi) {
        agree = false;
        if (report.witness.is_null()) {
          json curve = json::array();
          for (const Poly& g : gamma) curve.push_back(g.to_string());
          report.witness = {{"trial", trial},
                            {"order", r},
                            {"curve", curve},
                            {"observable", observable.to_string()},
                            {"first", to_string(c_phi)},
                            {"second", to_string(c_psi)}};
        }
      }
    }
    if (agree)
      ++report.agreements;
    else
      ++report.mismatches;
  }
  return report;
}

/// Stage-by-stage description of J^kmax(π) → ⋯ → J^1(π) → E → M for the
/// trivial scalar bundle over ℚ^m.
inline json jet_chain_descriptor(std::size_t m, unsigned kmax) {
  const std::vector<std::string> base = base_variable_names(m);
  auto stage_coordinates = [&](int k) {
    std::vector<std::string> coords = base;
    if (k >= 0)
      for (const MultiIndex& a : multi_indices_up_to(m, static_cast<unsigned>(k)))
        coords.push_back(derivative_name(a, base));
    return coords;
  };
  auto stage_name = [](int k) {
    if (k < 0) return std::string("M");
    if (k == 0) return std::string("E");
    return "J^" + std::to_string(k);
  };

  json stages = json::array();
  json projections = json::array();
  std::vector<std::string> previous;
  for (int k = static_cast<int>(kmax); k >= -1; --k) {
    const std::vector<std::string> coords = stage_coordinates(k);
    stages.push_back(
        {{"name", stage_name(k)}, {"coordinates", coords}, {"dimension", coords.size()}});
    if (!previous.empty()) {
      std::vector<std::string> dropped;
      for (const std::string& c : previous)
        if (std::find(coords.begin(), coords.end(), c) == coords.end()) dropped.push_back(c);
      projections.push_back(
          {{"from", stage_name(k + 1)}, {"to", stage_name(k)}, {"dropped", dropped}});
    }
    previous = coords;
  }
  return {{"base_dimension", m}, {"max_order", kmax}, {"stages", stages},
          {"projections", projections}};
}

}  // namespace buncat
