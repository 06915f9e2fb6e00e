#pragma once

// Seeded random model builders shared by the unit tests and the acceptance
// driver. Everything is deterministic given the RNG state.

#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "buncat/bundle.hpp"
#include "buncat/chains.hpp"
#include "buncat/exact.hpp"
#include "buncat/finmap.hpp"
#include "buncat/jets.hpp"
#include "buncat/poly.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

inline std::vector<std::string> labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------------------
// bundles

inline buncat::Bundle random_bundle(Rng& rng, std::size_t max_total, std::size_t max_base,
                                    const std::string& prefix = "") {
  const std::size_t nb = 1 + pick(rng, max_base);
  const std::size_t ne = pick(rng, max_total + 1);
  const buncat::FinSet total(labels(prefix + "e", ne));
  const buncat::FinSet base(labels(prefix + "p", nb));
  std::vector<std::size_t> table(ne);
  for (std::size_t i = 0; i < ne; ++i) table[i] = pick(rng, nb);
  return buncat::make_bundle(total, base, buncat::FinMap(total, base, std::move(table)));
}

/// Projections hit every base point, so fibres along links are never empty.
inline buncat::Bundle random_surjective_bundle(Rng& rng, std::size_t max_total,
                                               std::size_t max_base, const std::string& prefix) {
  const std::size_t nb = 1 + pick(rng, max_base);
  const std::size_t ne = nb + pick(rng, max_total - nb + 1);
  const buncat::FinSet total(labels(prefix + "e", ne));
  const buncat::FinSet base(labels(prefix + "p", nb));
  std::vector<std::size_t> table(ne);
  std::map<std::string, std::string> projection;
  for (std::size_t i = 0; i < ne; ++i) {
    const std::size_t target = i < nb ? i : pick(rng, nb);
    projection[prefix + "e" + std::to_string(i)] = prefix + "p" + std::to_string(target);
  }
  return buncat::make_bundle(total, base, projection);
}

inline buncat::Bundle random_subbundle(Rng& rng, const buncat::Bundle& b) {
  std::vector<std::string> total;
  for (std::size_t i = 0; i < b.total.size(); ++i)
    if (rng() % 2 == 0) total.push_back(b.total.label(i));
  std::set<std::string> base;
  for (const std::string& e : total) base.insert(b.projection(e));
  for (std::size_t i = 0; i < b.base.size(); ++i)
    if (rng() % 3 == 0) base.insert(b.base.label(i));
  std::map<std::string, std::string> projection;
  for (const std::string& e : total) projection[e] = b.projection(e);
  return buncat::make_bundle(buncat::FinSet(total),
                             buncat::FinSet(std::vector<std::string>(base.begin(), base.end())),
                             projection);
}

/// A descending tower of subbundles within the documented size caps, redrawn
/// until the enumeration budget fits.
inline std::vector<buncat::Bundle> random_nested_family(Rng& rng, std::size_t max_bundles,
                                                        std::size_t budget) {
  while (true) {
    std::vector<buncat::Bundle> family{random_bundle(rng, 12, 5)};
    const std::size_t want = 2 + pick(rng, max_bundles - 1);
    while (family.size() < want) family.push_back(random_subbundle(rng, family.back()));
    if (buncat::BundleFamilyCategory::morphism_budget(family, budget) <= budget) return family;
  }
}

// ---------------------------------------------------------------------------
// chains

inline buncat::BundleChain random_chain(Rng& rng, std::size_t stages, std::size_t max_total,
                                        std::size_t max_base) {
  std::vector<buncat::Bundle> bundles;
  for (std::size_t s = 0; s < stages; ++s)
    bundles.push_back(
        random_surjective_bundle(rng, max_total, max_base, "s" + std::to_string(s)));
  std::vector<std::pair<buncat::FinMap, buncat::FinMap>> links;
  for (std::size_t s = 0; s + 1 < stages; ++s) {
    const buncat::Bundle& src = bundles[s];
    const buncat::Bundle& dst = bundles[s + 1];
    std::vector<std::size_t> f(src.base.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = pick(rng, dst.base.size());
    std::vector<std::size_t> u(src.total.size());
    for (std::size_t e = 0; e < u.size(); ++e) {
      const std::size_t target_base = f[src.projection.apply_index(e)];
      std::vector<std::size_t> fibre;
      for (std::size_t x = 0; x < dst.total.size(); ++x)
        if (dst.projection.apply_index(x) == target_base) fibre.push_back(x);
      u[e] = fibre[pick(rng, fibre.size())];
    }
    links.emplace_back(buncat::FinMap(src.total, dst.total, std::move(u)),
                       buncat::FinMap(src.base, dst.base, std::move(f)));
  }
  return buncat::make_chain(std::move(bundles), std::move(links));
}

/// A forward-closed restriction of `d`: stagewise subbundles whose links are
/// the restrictions of d's links, hence a subchain by construction.
inline buncat::BundleChain random_subchain(Rng& rng, const buncat::BundleChain& d) {
  const std::size_t n = d.stages();
  std::vector<std::set<std::string>> totals(n);
  std::vector<std::set<std::string>> bases(n);
  for (std::size_t i = 0; i < d.bundles[0].total.size(); ++i)
    if (rng() % 2 == 0) totals[0].insert(d.bundles[0].total.label(i));
  for (std::size_t s = 0; s < n; ++s) {
    if (s > 0)
      for (std::size_t i = 0; i < d.bundles[s].total.size(); ++i)
        if (rng() % 4 == 0) totals[s].insert(d.bundles[s].total.label(i));
    for (const std::string& e : totals[s]) bases[s].insert(d.bundles[s].projection(e));
    if (s > 0)
      for (const std::string& b : bases[s - 1]) bases[s].insert(d.links[s - 1].base_map(b));
    if (s + 1 < n)
      for (const std::string& e : totals[s]) totals[s + 1].insert(d.links[s].total_map(e));
  }
  std::vector<buncat::Bundle> bundles;
  for (std::size_t s = 0; s < n; ++s) {
    std::map<std::string, std::string> projection;
    for (const std::string& e : totals[s]) projection[e] = d.bundles[s].projection(e);
    bundles.push_back(buncat::make_bundle(
        buncat::FinSet(std::vector<std::string>(totals[s].begin(), totals[s].end())),
        buncat::FinSet(std::vector<std::string>(bases[s].begin(), bases[s].end())), projection));
  }
  std::vector<std::pair<buncat::FinMap, buncat::FinMap>> links;
  for (std::size_t s = 0; s + 1 < n; ++s) {
    std::map<std::string, std::string> u, f;
    for (const std::string& e : totals[s]) u[e] = d.links[s].total_map(e);
    for (const std::string& b : bases[s]) f[b] = d.links[s].base_map(b);
    links.emplace_back(
        buncat::FinMap::from_pairs(bundles[s].total, bundles[s + 1].total, u),
        buncat::FinMap::from_pairs(bundles[s].base, bundles[s + 1].base, f));
  }
  return buncat::make_chain(std::move(bundles), std::move(links));
}

// ---------------------------------------------------------------------------
// finite abelian groups

inline buncat::FinAbGroup random_group(Rng& rng, unsigned long long max_order) {
  std::vector<long long> factors;
  unsigned long long order = 1;
  const std::size_t rank = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < rank; ++i) {
    const long long n = 1 + static_cast<long long>(pick(rng, 8));
    if (order * static_cast<unsigned long long>(n) > max_order) break;
    order *= static_cast<unsigned long long>(n);
    factors.push_back(n);
  }
  if (factors.empty()) factors.push_back(2);
  return buncat::FinAbGroup(std::move(factors));
}

/// A uniformly random well-defined matrix: entry (i, j) ranges over the
/// multiples of n_i / gcd(n_i, n_j).
inline buncat::AbHom random_hom(Rng& rng, const buncat::FinAbGroup& src,
                                const buncat::FinAbGroup& dst) {
  std::vector<std::vector<long long>> matrix(dst.rank(), std::vector<long long>(src.rank()));
  for (std::size_t i = 0; i < dst.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j) {
      const long long ni = dst.factors()[i];
      const long long nj = src.factors()[j];
      const long long step = ni / std::gcd(ni, nj);
      matrix[i][j] = step * static_cast<long long>(pick(rng, static_cast<std::size_t>(ni / step)));
    }
  return buncat::AbHom(src, dst, std::move(matrix));
}

// ---------------------------------------------------------------------------
// polynomials, jets, morphism specs

inline buncat::Rational random_rational(Rng& rng) {
  const long long num = static_cast<long long>(rng() % 9) - 4;
  return rng() % 4 == 0 ? buncat::Rational(num, 2) : buncat::Rational(num);
}

inline buncat::Poly random_poly(Rng& rng, const std::vector<std::string>& vars, unsigned max_deg,
                                std::size_t tries) {
  buncat::Poly p(vars);
  for (std::size_t t = 0; t < tries; ++t) {
    buncat::MultiIndex a(vars.size(), 0);
    unsigned degree_left = max_deg;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      a[i] = static_cast<unsigned>(pick(rng, degree_left + 1));
      degree_left -= a[i];
    }
    p.add_term(a, random_rational(rng));
  }
  return p;
}

inline buncat::PolySection random_section(Rng& rng, std::size_t m, unsigned max_deg) {
  return buncat::make_section(m, random_poly(rng, buncat::base_variable_names(m), max_deg, 4));
}

inline buncat::Jet random_jet(Rng& rng, std::size_t m, unsigned k) {
  buncat::Jet jet;
  jet.order = k;
  for (std::size_t i = 0; i < m; ++i)
    jet.base_point.push_back(buncat::Rational(static_cast<long long>(rng() % 5) - 2));
  for (const buncat::MultiIndex& a : buncat::multi_indices_up_to(m, k))
    jet.coeffs[a] = random_rational(rng);
  return jet;
}

inline buncat::MorphismSpec random_spec(Rng& rng, std::size_t m, unsigned fibre_deg) {
  while (true) {
    std::vector<std::vector<buncat::Rational>> a(m, std::vector<buncat::Rational>(m));
    std::vector<buncat::Rational> b(m);
    for (std::size_t i = 0; i < m; ++i) {
      b[i] = buncat::Rational(static_cast<long long>(rng() % 5) - 2);
      for (std::size_t j = 0; j < m; ++j)
        a[i][j] = buncat::Rational(static_cast<long long>(rng() % 5) - 2);
    }
    buncat::Poly fibre = random_poly(rng, buncat::fibre_variable_names(m), fibre_deg, 3);
    fibre.add_term([&] {
      buncat::MultiIndex u(m + 1, 0);
      u[m] = 1;
      return u;
    }(), buncat::Rational(1));
    try {
      return buncat::make_spec(m, std::move(a), std::move(b), std::move(fibre));
    } catch (const buncat::Error&) {
      continue;  // singular draw
    }
  }
}

/// A polynomial whose k-jet at x0 vanishes: a combination of shifted
/// monomials of total degree at least k + 1.
inline buncat::Poly vanishing_jet_poly(Rng& rng, std::size_t m, unsigned k,
                                       const std::vector<buncat::Rational>& x0) {
  const std::vector<std::string> vars = buncat::base_variable_names(m);
  buncat::Poly out(vars);
  const std::size_t pieces = 1 + pick(rng, 3);
  for (std::size_t t = 0; t < pieces; ++t) {
    buncat::Poly term = buncat::Poly::constant(vars, random_rational(rng));
    unsigned degree = 0;
    while (degree < k + 1 + pick(rng, 2)) {
      const std::size_t i = pick(rng, m);
      term = term * (buncat::Poly::variable(vars, i) + buncat::Poly::constant(vars, -x0[i]));
      ++degree;
    }
    out = out + term;
  }
  return out;
}

}  // namespace testgen
