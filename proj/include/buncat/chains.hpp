#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "buncat/bundle.hpp"
#include "buncat/category.hpp"
#include "buncat/error.hpp"
#include "buncat/finmap.hpp"
#include "buncat/report.hpp"

namespace buncat {

/// An indexed sequence of bundles joined by bundle morphisms. A chain with a
/// single bundle has no links.
struct BundleChain {
  std::vector<Bundle> bundles;
  std::vector<BundleMorphism> links;

  std::size_t stages() const { return bundles.size(); }

  friend bool operator==(const BundleChain&, const BundleChain&) = default;
};

inline BundleChain make_chain(std::vector<Bundle> bundles,
                              std::vector<std::pair<FinMap, FinMap>> links) {
  if (bundles.empty()) fail("LengthMismatch", "a chain has at least one bundle");
  if (links.size() + 1 != bundles.size())
    fail("LengthMismatch", std::to_string(bundles.size()) + " bundles need " +
                               std::to_string(bundles.size() - 1) + " links, got " +
                               std::to_string(links.size()));
  BundleChain chain;
  chain.bundles = std::move(bundles);
  for (std::size_t i = 0; i < links.size(); ++i) {
    try {
      chain.links.push_back(validate_morphism(chain.bundles[i], chain.bundles[i + 1],
                                              links[i].first, links[i].second));
    } catch (const Error& e) {
      fail("LinkSquareFails", "link " + std::to_string(i) + ": " + e.what());
    }
  }
  return chain;
}

/// A ladder of componentwise bundle morphisms commuting with the links.
struct ChainMorphism {
  BundleChain source;
  BundleChain target;
  std::vector<BundleMorphism> components;

  friend bool operator==(const ChainMorphism&, const ChainMorphism&) = default;
};

inline ChainMorphism validate_chain_morphism(const BundleChain& c, const BundleChain& d,
                                             const std::vector<std::pair<FinMap, FinMap>>& components) {
  if (c.stages() != d.stages())
    fail("LengthMismatch", "chains have " + std::to_string(c.stages()) + " and " +
                               std::to_string(d.stages()) + " stages");
  if (components.size() != c.stages())
    fail("LengthMismatch", "one component per stage required");

  ChainMorphism m;
  m.source = c;
  m.target = d;
  for (std::size_t i = 0; i < components.size(); ++i) {
    try {
      m.components.push_back(
          validate_morphism(c.bundles[i], d.bundles[i], components[i].first, components[i].second));
    } catch (const Error& e) {
      fail("ComponentSquareFails", "stage " + std::to_string(i) + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i + 1 < components.size(); ++i) {
    const FinMap& g_i = m.components[i].total_map;
    const FinMap& g_next = m.components[i + 1].total_map;
    const FinMap& u = c.links[i].total_map;
    const FinMap& u_prime = d.links[i].total_map;
    for (std::size_t e = 0; e < g_i.domain().size(); ++e)
      if (u_prime.apply_index(g_i.apply_index(e)) != g_next.apply_index(u.apply_index(e)))
        fail("LadderFails", "square " + std::to_string(i) + " at total element '" +
                                g_i.domain().label(e) + "'");
    const FinMap& h_i = m.components[i].base_map;
    const FinMap& h_next = m.components[i + 1].base_map;
    const FinMap& f = c.links[i].base_map;
    const FinMap& f_prime = d.links[i].base_map;
    for (std::size_t b = 0; b < h_i.domain().size(); ++b)
      if (f_prime.apply_index(h_i.apply_index(b)) != h_next.apply_index(f.apply_index(b)))
        fail("LadderFails", "square " + std::to_string(i) + " at base element '" +
                                h_i.domain().label(b) + "'");
  }
  return m;
}

inline ChainMorphism identity_chain_morphism(const BundleChain& c) {
  std::vector<std::pair<FinMap, FinMap>> components;
  for (const Bundle& b : c.bundles)
    components.emplace_back(FinMap::identity(b.total), FinMap::identity(b.base));
  return validate_chain_morphism(c, c, components);
}

inline ChainMorphism compose_chain_morphisms(const ChainMorphism& m, const ChainMorphism& n) {
  if (m.target != n.source) fail("NotComposable", "middle chains differ");
  std::vector<std::pair<FinMap, FinMap>> components;
  for (std::size_t i = 0; i < m.components.size(); ++i)
    components.emplace_back(m.components[i].total_map.then(n.components[i].total_map),
                            m.components[i].base_map.then(n.components[i].base_map));
  return validate_chain_morphism(m.source, n.target, components);
}

/// Stagewise subbundles whose inclusions commute with both chains' links.
inline bool is_subchain(const BundleChain& c, const BundleChain& d) {
  if (c.stages() != d.stages()) return false;
  for (std::size_t i = 0; i < c.stages(); ++i)
    if (!is_subbundle(c.bundles[i], d.bundles[i])) return false;
  for (std::size_t i = 0; i + 1 < c.stages(); ++i) {
    const FinMap& u = c.links[i].total_map;
    const FinMap& u_prime = d.links[i].total_map;
    for (std::size_t e = 0; e < u.domain().size(); ++e)
      if (u.codomain().label(u.apply_index(e)) !=
          u_prime.codomain().label(u_prime.apply_index(u_prime.domain().index_of(u.domain().label(e)))))
        return false;
    const FinMap& f = c.links[i].base_map;
    const FinMap& f_prime = d.links[i].base_map;
    for (std::size_t b = 0; b < f.domain().size(); ++b)
      if (f.codomain().label(f.apply_index(b)) !=
          f_prime.codomain().label(f_prime.apply_index(f_prime.domain().index_of(f.domain().label(b)))))
        return false;
  }
  return true;
}

inline ChainMorphism subchain_inclusion(const BundleChain& c, const BundleChain& d) {
  if (!is_subchain(c, d)) fail("NotSubchain", "inclusion requires a subchain pair");
  std::vector<std::pair<FinMap, FinMap>> components;
  for (std::size_t i = 0; i < c.stages(); ++i) {
    const BundleMorphism inc = inclusion_morphism(c.bundles[i], d.bundles[i]);
    components.emplace_back(inc.total_map, inc.base_map);
  }
  return validate_chain_morphism(c, d, components);
}

/// The fibres of an ascending subbundle chain over one base point, with
/// identity inclusions as links.
struct FibreChain {
  std::string base_point;
  std::vector<FinSet> stages;
  std::vector<FinMap> links;
};

inline FibreChain fibre_chain(const std::vector<Bundle>& nested, const std::string& b) {
  if (nested.empty()) fail("NotNested", "need at least one bundle");
  for (std::size_t i = 0; i + 1 < nested.size(); ++i)
    if (!is_subbundle(nested[i], nested[i + 1]))
      fail("NotNested", "bundle " + std::to_string(i) + " is not a subbundle of bundle " +
                            std::to_string(i + 1));
  if (!nested.front().base.contains(b))
    fail("BasePointMissing", "'" + b + "' is not in the innermost base");

  FibreChain out;
  out.base_point = b;
  for (const Bundle& bundle : nested) out.stages.push_back(fibre(bundle, b));
  for (std::size_t i = 0; i + 1 < out.stages.size(); ++i) {
    if (!out.stages[i].subset_of(out.stages[i + 1]))
      fail("NotNested", "fibre over '" + b + "' fails to nest at stage " + std::to_string(i));
    std::vector<std::size_t> table(out.stages[i].size());
    for (std::size_t k = 0; k < table.size(); ++k)
      table[k] = out.stages[i + 1].index_of(out.stages[i].label(k));
    out.links.emplace_back(out.stages[i], out.stages[i + 1], std::move(table));
  }
  return out;
}

/// The full category on a family of equal-length chains. Hom-sets are built
/// stage by stage from bundle-morphism hom lists, pruning on the ladder
/// squares; the raw candidate-tuple count is capped before any search runs.
class ChainFamilyCategory {
public:
  static constexpr std::size_t kMaxCandidateTuples = 10000000;
  static constexpr std::size_t kMaxStored = 500000;

  explicit ChainFamilyCategory(std::vector<BundleChain> family) {
    for (auto& c : family) {
      bool known = false;
      for (const auto& have : chains_)
        if (have == c) known = true;
      if (!known) chains_.push_back(std::move(c));
    }
    if (chains_.empty()) fail("EmptyFamily", "a category needs at least one object");
    for (const auto& c : chains_)
      if (c.stages() != chains_.front().stages())
        fail("LengthMismatch", "all chains in a family must have equal length");

    const std::size_t stages = chains_.front().stages();
    std::vector<std::vector<std::vector<Square>>> homs(chains_.size() * chains_.size());
    std::size_t tuples_total = 0;
    for (ObjId i = 0; i < chains_.size(); ++i)
      for (ObjId j = 0; j < chains_.size(); ++j) {
        auto& per_stage = homs[i * chains_.size() + j];
        per_stage.resize(stages);
        std::size_t tuples = 1;
        for (std::size_t s = 0; s < stages; ++s) {
          detail::for_each_square(chains_[i].bundles[s], chains_[j].bundles[s],
                                  [&](std::vector<std::size_t> u, std::vector<std::size_t> f) {
                                    per_stage[s].push_back({std::move(u), std::move(f)});
                                  });
          if (per_stage[s].empty())
            tuples = 0;
          else if (tuples > kMaxCandidateTuples / per_stage[s].size())
            tuples = kMaxCandidateTuples + 1;
          else
            tuples *= per_stage[s].size();
        }
        tuples_total += std::min(tuples, kMaxCandidateTuples + 1);
        if (tuples_total > kMaxCandidateTuples)
          fail("EnumerationCap", "candidate component tuples exceed the enumeration cap");
      }

    identity_.resize(chains_.size());
    for (ObjId i = 0; i < chains_.size(); ++i)
      for (ObjId j = 0; j < chains_.size(); ++j) {
        std::vector<const Square*> picked(stages, nullptr);
        search(i, j, 0, homs[i * chains_.size() + j], picked);
      }
    for (ObjId i = 0; i < chains_.size(); ++i) {
      const ChainMorphism id = identity_chain_morphism(chains_[i]);
      identity_[i] = find(id).value();
    }
  }

  std::size_t object_count() const { return chains_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  ObjId source(MorId f) const { return morphisms_.at(f).src; }
  ObjId target(MorId f) const { return morphisms_.at(f).dst; }
  MorId identity(ObjId a) const { return identity_.at(a); }

  MorId compose(MorId f, MorId g) const {
    const Mor& mf = morphisms_.at(f);
    const Mor& mg = morphisms_.at(g);
    if (mf.dst != mg.src) fail("NonComposable", morphism_label(f) + " then " + morphism_label(g));
    std::vector<Square> composed(mf.components.size());
    for (std::size_t s = 0; s < composed.size(); ++s) {
      composed[s].u.resize(mf.components[s].u.size());
      for (std::size_t e = 0; e < composed[s].u.size(); ++e)
        composed[s].u[e] = mg.components[s].u[mf.components[s].u[e]];
      composed[s].f.resize(mf.components[s].f.size());
      for (std::size_t b = 0; b < composed[s].f.size(); ++b)
        composed[s].f[b] = mg.components[s].f[mf.components[s].f[b]];
    }
    auto it = intern_.find(key(mf.src, mg.dst, composed));
    if (it == intern_.end())
      fail("CompositionEscaped", "composite of two chain morphisms was not enumerated");
    return it->second;
  }

  std::string object_label(ObjId a) const { return "c" + std::to_string(a); }

  std::string morphism_label(MorId m) const {
    const Mor& rec = morphisms_.at(m);
    std::string out = object_label(rec.src) + "->" + object_label(rec.dst);
    for (std::size_t s = 0; s < rec.components.size(); ++s) {
      out += s ? ";" : "[";
      out += "u:";
      for (std::size_t e = 0; e < rec.components[s].u.size(); ++e) {
        if (e) out += " ";
        out += std::to_string(rec.components[s].u[e]);
      }
      out += "|f:";
      for (std::size_t b = 0; b < rec.components[s].f.size(); ++b) {
        if (b) out += " ";
        out += std::to_string(rec.components[s].f[b]);
      }
    }
    return out + "]";
  }

  const BundleChain& object(ObjId a) const { return chains_.at(a); }

  ChainMorphism as_morphism(MorId m) const {
    const Mor& rec = morphisms_.at(m);
    const BundleChain& c = chains_[rec.src];
    const BundleChain& d = chains_[rec.dst];
    std::vector<std::pair<FinMap, FinMap>> components;
    for (std::size_t s = 0; s < rec.components.size(); ++s)
      components.emplace_back(FinMap(c.bundles[s].total, d.bundles[s].total, rec.components[s].u),
                              FinMap(c.bundles[s].base, d.bundles[s].base, rec.components[s].f));
    return validate_chain_morphism(c, d, components);
  }

  std::optional<MorId> find(const ChainMorphism& m) const {
    ObjId src = chains_.size(), dst = chains_.size();
    for (ObjId i = 0; i < chains_.size(); ++i) {
      if (chains_[i] == m.source) src = i;
      if (chains_[i] == m.target) dst = i;
    }
    if (src == chains_.size() || dst == chains_.size()) return std::nullopt;
    std::vector<Square> squares;
    for (const BundleMorphism& comp : m.components)
      squares.push_back({comp.total_map.table(), comp.base_map.table()});
    auto it = intern_.find(key(src, dst, squares));
    if (it == intern_.end()) return std::nullopt;
    return it->second;
  }

private:
  struct Square {
    std::vector<std::size_t> u;
    std::vector<std::size_t> f;
  };
  struct Mor {
    ObjId src;
    ObjId dst;
    std::vector<Square> components;
  };

  static std::vector<std::size_t> key(ObjId src, ObjId dst, const std::vector<Square>& squares) {
    std::vector<std::size_t> k;
    k.push_back(src);
    k.push_back(dst);
    for (const Square& s : squares) {
      k.insert(k.end(), s.u.begin(), s.u.end());
      k.insert(k.end(), s.f.begin(), s.f.end());
    }
    return k;
  }

  bool ladder_ok(ObjId i, ObjId j, std::size_t s, const Square& prev, const Square& next) const {
    const auto& u = chains_[i].links[s].total_map.table();
    const auto& u_prime = chains_[j].links[s].total_map.table();
    for (std::size_t e = 0; e < prev.u.size(); ++e)
      if (u_prime[prev.u[e]] != next.u[u[e]]) return false;
    const auto& f = chains_[i].links[s].base_map.table();
    const auto& f_prime = chains_[j].links[s].base_map.table();
    for (std::size_t b = 0; b < prev.f.size(); ++b)
      if (f_prime[prev.f[b]] != next.f[f[b]]) return false;
    return true;
  }

  void search(ObjId i, ObjId j, std::size_t stage,
              const std::vector<std::vector<Square>>& per_stage,
              std::vector<const Square*>& picked) {
    if (stage == per_stage.size()) {
      std::vector<Square> components;
      components.reserve(picked.size());
      for (const Square* s : picked) components.push_back(*s);
      const MorId id = morphisms_.size();
      if (id >= kMaxStored) fail("EnumerationCap", "stored chain morphisms exceed the cap");
      intern_.emplace(key(i, j, components), id);
      morphisms_.push_back({i, j, std::move(components)});
      return;
    }
    for (const Square& candidate : per_stage[stage]) {
      if (stage > 0 && !ladder_ok(i, j, stage - 1, *picked[stage - 1], candidate)) continue;
      picked[stage] = &candidate;
      search(i, j, stage + 1, per_stage, picked);
    }
  }

  std::vector<BundleChain> chains_;
  std::vector<Mor> morphisms_;
  std::vector<MorId> identity_;
  std::map<std::vector<std::size_t>, MorId> intern_;
};

/// Verifies that a chain family, with subchain inclusions as the choice of
/// subobjects, satisfies the subobject axioms, plus inclusion uniqueness for
/// factors as in the bundle case.
inline VerificationReport verify_chaincat_subobject_axioms(const std::vector<BundleChain>& family) {
  ChainFamilyCategory cat(family);

  SubobjectChoice<ChainFamilyCategory> choice;
  choice.category = &cat;
  for (ObjId i = 0; i < cat.object_count(); ++i)
    for (ObjId j = 0; j < cat.object_count(); ++j)
      if (is_subchain(cat.object(i), cat.object(j)))
        choice.included.push_back(cat.find(subchain_inclusion(cat.object(i), cat.object(j))).value());

  VerificationReport report = verify_subobject_choice(choice);
  report.task = "chain_subobjects";

  bool unique_ok = true;
  json unique_witness;
  const HomIndex homs = HomIndex::build(cat);
  for (std::size_t x = 0; x < choice.included.size() && unique_ok; ++x)
    for (std::size_t y = 0; y < choice.included.size() && unique_ok; ++y) {
      const MorId into_e = choice.included[x];
      const MorId other = choice.included[y];
      if (cat.target(into_e) != cat.target(other)) continue;
      for (MorId h : homs.hom(cat.source(into_e), cat.source(other))) {
        if (cat.compose(h, other) != into_e) continue;
        const ChainMorphism hm = cat.as_morphism(h);
        if (!is_subchain(hm.source, hm.target) ||
            hm != subchain_inclusion(hm.source, hm.target)) {
          unique_ok = false;
          unique_witness = {{"through", cat.morphism_label(other)},
                            {"factor", cat.morphism_label(h)},
                            {"composite", cat.morphism_label(into_e)}};
          break;
        }
      }
    }
  report.add(unique_ok ? CheckResult::pass("inclusion_factor_unique")
                       : CheckResult::fail("inclusion_factor_unique", unique_witness));
  return report;
}

inline json bundle_to_json(const Bundle& b) {
  json projection = json::object();
  for (std::size_t e = 0; e < b.total.size(); ++e)
    projection[b.total.label(e)] = b.base.label(b.projection.apply_index(e));
  return {{"total", b.total.labels()}, {"base", b.base.labels()}, {"projection", projection}};
}

inline json finmap_to_json(const FinMap& m) {
  json out = json::object();
  for (std::size_t i = 0; i < m.domain().size(); ++i)
    out[m.domain().label(i)] = m.codomain().label(m.apply_index(i));
  return out;
}

inline json chain_to_json(const BundleChain& c) {
  json bundles = json::array();
  for (const Bundle& b : c.bundles) bundles.push_back(bundle_to_json(b));
  json links = json::array();
  for (const BundleMorphism& l : c.links)
    links.push_back({{"total_map", finmap_to_json(l.total_map)},
                     {"base_map", finmap_to_json(l.base_map)}});
  return {{"bundles", bundles}, {"links", links}};
}

struct ProbeReport {
  std::size_t samples = 0;
  std::size_t eligible = 0;
  std::size_t ladder_held = 0;
  std::size_t ladder_failed = 0;
  json counterexample;  // null when none found

  json to_json() const {
    return {{"samples", samples},
            {"eligible", eligible},
            {"ladder_held", ladder_held},
            {"ladder_failed", ladder_failed},
            {"counterexample", counterexample.is_null() ? json() : counterexample}};
  }
};

/// Randomized evidence gathering: draws pairs (c, d) where c is a stagewise
/// subbundle of d, every projection of c is surjective, and every projection
/// of d is injective, then records whether the two subchain ladder conditions
/// hold. Counterexamples are emitted verbatim; no claim is asserted either
/// way.
inline ProbeReport probe_subchain_sufficiency(std::size_t samples, std::size_t max_stages,
                                              std::size_t max_base, std::uint64_t seed) {
  ProbeReport report;
  report.samples = samples;
  report.counterexample = json();
  if (max_stages == 0 || max_base == 0) return report;
  std::mt19937_64 rng(seed);

  for (std::size_t trial = 0; trial < samples; ++trial) {
    const std::size_t stages = 1 + rng() % max_stages;

    // Outer chain d: injective projections, every stage nonempty.
    std::vector<Bundle> d_bundles;
    for (std::size_t s = 0; s < stages; ++s) {
      const std::size_t nb = 1 + rng() % max_base;
      const std::size_t ne = 1 + rng() % nb;
      std::vector<std::string> base_labels;
      for (std::size_t k = 0; k < nb; ++k) base_labels.push_back("b" + std::to_string(k));
      std::vector<std::size_t> targets(nb);
      for (std::size_t k = 0; k < nb; ++k) targets[k] = k;
      for (std::size_t k = nb; k > 1; --k) std::swap(targets[k - 1], targets[rng() % k]);
      std::vector<std::string> total_labels;
      std::map<std::string, std::string> projection;
      FinSet base(base_labels);
      for (std::size_t k = 0; k < ne; ++k) {
        total_labels.push_back("t" + std::to_string(k));
        projection["t" + std::to_string(k)] = base.label(targets[k]);
      }
      d_bundles.push_back(make_bundle(FinSet(total_labels), base, projection));
    }
    std::vector<std::pair<FinMap, FinMap>> d_links;
    for (std::size_t s = 0; s + 1 < stages; ++s) {
      const Bundle& from = d_bundles[s];
      const Bundle& to = d_bundles[s + 1];
      std::vector<std::size_t> f(from.base.size());
      for (std::size_t b = 0; b < from.base.size(); ++b) {
        bool covered = false;
        for (std::size_t e = 0; e < from.total.size(); ++e)
          if (from.projection.apply_index(e) == b) covered = true;
        if (covered)
          f[b] = to.projection.apply_index(rng() % to.total.size());
        else
          f[b] = rng() % to.base.size();
      }
      std::vector<std::size_t> u(from.total.size());
      for (std::size_t e = 0; e < from.total.size(); ++e) {
        const std::size_t pt = f[from.projection.apply_index(e)];
        for (std::size_t e2 = 0; e2 < to.total.size(); ++e2)
          if (to.projection.apply_index(e2) == pt) u[e] = e2;
      }
      d_links.emplace_back(FinMap(from.total, to.total, u), FinMap(from.base, to.base, f));
    }
    const BundleChain d = make_chain(d_bundles, d_links);

    // Inner chain c: a random subset of each stage's total, with exactly the
    // projected base points, so projections stay surjective and injective.
    std::vector<Bundle> c_bundles;
    for (std::size_t s = 0; s < stages; ++s) {
      const Bundle& outer = d_bundles[s];
      std::vector<std::string> total_labels;
      std::map<std::string, std::string> projection;
      std::vector<std::string> base_labels;
      for (std::size_t e = 0; e < outer.total.size(); ++e)
        if (rng() % 2) {
          const std::string& lbl = outer.total.label(e);
          total_labels.push_back(lbl);
          const std::string pt = outer.base.label(outer.projection.apply_index(e));
          projection[lbl] = pt;
          base_labels.push_back(pt);
        }
      c_bundles.push_back(
          make_bundle(FinSet(total_labels), FinSet(std::move(base_labels)), projection));
    }
    std::vector<std::pair<FinMap, FinMap>> c_links;
    bool buildable = true;
    for (std::size_t s = 0; s + 1 < stages && buildable; ++s) {
      const Bundle& from = c_bundles[s];
      const Bundle& to = c_bundles[s + 1];
      if (to.base.empty() && !from.base.empty()) {
        buildable = false;
        break;
      }
      std::vector<std::size_t> f(from.base.size());
      const bool mimic = rng() % 2 == 0;
      for (std::size_t b = 0; b < from.base.size(); ++b) {
        if (mimic) {
          const std::string& via_outer =
              d.links[s].base_map.codomain().label(d.links[s].base_map.apply_index(
                  d.links[s].base_map.domain().index_of(from.base.label(b))));
          if (to.base.contains(via_outer)) {
            f[b] = to.base.index_of(via_outer);
            continue;
          }
        }
        f[b] = rng() % to.base.size();
      }
      std::vector<std::size_t> u(from.total.size());
      for (std::size_t e = 0; e < from.total.size(); ++e) {
        const std::size_t pt = f[from.projection.apply_index(e)];
        for (std::size_t e2 = 0; e2 < to.total.size(); ++e2)
          if (to.projection.apply_index(e2) == pt) u[e] = e2;
      }
      c_links.emplace_back(FinMap(from.total, to.total, u), FinMap(from.base, to.base, f));
    }
    if (!buildable) continue;
    const BundleChain c = make_chain(c_bundles, c_links);

    bool stagewise = true;
    for (std::size_t s = 0; s < stages; ++s)
      if (!is_subbundle(c.bundles[s], d.bundles[s])) stagewise = false;
    if (!stagewise) continue;
    ++report.eligible;

    if (is_subchain(c, d)) {
      ++report.ladder_held;
    } else {
      ++report.ladder_failed;
      if (report.counterexample.is_null())
        report.counterexample = {{"inner", chain_to_json(c)}, {"outer", chain_to_json(d)}};
    }
  }
  return report;
}

}  // namespace buncat
