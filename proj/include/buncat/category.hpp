#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "buncat/error.hpp"
#include "buncat/report.hpp"

namespace buncat {

using ObjId = std::size_t;
using MorId = std::size_t;

/// A finite category presented through indices. Composition is diagrammatic
/// throughout the library: compose(f, g) is "f then g" and requires
/// target(f) == source(g). Morphism equality is equality of ids; models that
/// enumerate morphisms from functions intern extensionally equal ones.
template <typename C>
concept Category = requires(const C& c, ObjId a, MorId f, MorId g) {
  { c.object_count() } -> std::convertible_to<std::size_t>;
  { c.morphism_count() } -> std::convertible_to<std::size_t>;
  { c.source(f) } -> std::convertible_to<ObjId>;
  { c.target(f) } -> std::convertible_to<ObjId>;
  { c.identity(a) } -> std::convertible_to<MorId>;
  { c.compose(f, g) } -> std::convertible_to<MorId>;
  { c.object_label(a) } -> std::convertible_to<std::string>;
  { c.morphism_label(f) } -> std::convertible_to<std::string>;
};

/// Hom-sets of a finite category, bucketed by (source, target) pair.
struct HomIndex {
  std::size_t objects = 0;
  std::vector<std::vector<MorId>> buckets;  // objects * objects, row-major

  const std::vector<MorId>& hom(ObjId a, ObjId b) const { return buckets[a * objects + b]; }

  template <Category C>
  static HomIndex build(const C& cat) {
    HomIndex idx;
    idx.objects = cat.object_count();
    idx.buckets.assign(idx.objects * idx.objects, {});
    for (MorId f = 0; f < cat.morphism_count(); ++f)
      idx.buckets[cat.source(f) * idx.objects + cat.target(f)].push_back(f);
    return idx;
  }
};

namespace detail {

template <Category C>
void require_morphism(const C& cat, MorId f) {
  if (f >= cat.morphism_count())
    fail("UnknownMorphism", "morphism id " + std::to_string(f) + " out of range");
}

}  // namespace detail

/// Left-to-right fold of the composition. A single morphism folds to itself.
template <Category C>
MorId compose_path(const C& cat, const std::vector<MorId>& path) {
  if (path.empty()) fail("EmptyPath", "compose_path needs at least one morphism");
  for (MorId f : path) detail::require_morphism(cat, f);
  MorId acc = path[0];
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (cat.target(acc) != cat.source(path[i]))
      fail("NonComposable", "pair at index " + std::to_string(i - 1) + ": target of '" +
                                cat.morphism_label(acc) + "' is not the source of '" +
                                cat.morphism_label(path[i]) + "'");
    acc = cat.compose(acc, path[i]);
  }
  return acc;
}

struct CancellationWitness {
  ObjId test_object = 0;
  MorId g = 0;  // distinct parallel pair with equal composites
  MorId h = 0;
};

/// f is monic iff post-composition with f is injective on every hom-set into
/// its source; a hash of composites finds a violating pair in one sweep.
template <Category C>
bool is_monomorphism(const C& cat, MorId f, const HomIndex& homs,
                     CancellationWitness* witness = nullptr) {
  detail::require_morphism(cat, f);
  const ObjId a = cat.source(f);
  for (ObjId c = 0; c < cat.object_count(); ++c) {
    std::unordered_map<MorId, MorId> seen;  // composite -> first g
    for (MorId g : homs.hom(c, a)) {
      const MorId gf = cat.compose(g, f);
      auto [it, inserted] = seen.emplace(gf, g);
      if (!inserted) {
        if (witness) *witness = {c, it->second, g};
        return false;
      }
    }
  }
  return true;
}

template <Category C>
bool is_monomorphism(const C& cat, MorId f) {
  return is_monomorphism(cat, f, HomIndex::build(cat));
}

template <Category C>
bool is_epimorphism(const C& cat, MorId f, const HomIndex& homs,
                    CancellationWitness* witness = nullptr) {
  detail::require_morphism(cat, f);
  const ObjId b = cat.target(f);
  for (ObjId c = 0; c < cat.object_count(); ++c) {
    std::unordered_map<MorId, MorId> seen;
    for (MorId g : homs.hom(b, c)) {
      const MorId fg = cat.compose(f, g);
      auto [it, inserted] = seen.emplace(fg, g);
      if (!inserted) {
        if (witness) *witness = {c, it->second, g};
        return false;
      }
    }
  }
  return true;
}

template <Category C>
bool is_epimorphism(const C& cat, MorId f) {
  return is_epimorphism(cat, f, HomIndex::build(cat));
}

/// The quasi-order on monomorphisms: f precedes g when f factors as "h then g"
/// for some h. Both arguments must be monic and share a target.
template <Category C>
bool mono_preceq(const C& cat, MorId f, MorId g, const HomIndex& homs) {
  detail::require_morphism(cat, f);
  detail::require_morphism(cat, g);
  if (!is_monomorphism(cat, f, homs))
    fail("NotMono", "'" + cat.morphism_label(f) + "' is not a monomorphism");
  if (!is_monomorphism(cat, g, homs))
    fail("NotMono", "'" + cat.morphism_label(g) + "' is not a monomorphism");
  if (cat.target(f) != cat.target(g))
    fail("TargetMismatch", "'" + cat.morphism_label(f) + "' and '" + cat.morphism_label(g) +
                               "' do not share a target");
  for (MorId h : homs.hom(cat.source(f), cat.source(g)))
    if (cat.compose(h, g) == f) return true;
  return false;
}

template <Category C>
bool mono_preceq(const C& cat, MorId f, MorId g) {
  return mono_preceq(cat, f, g, HomIndex::build(cat));
}

template <Category C>
bool mono_equiv(const C& cat, MorId f, MorId g, const HomIndex& homs) {
  return mono_preceq(cat, f, g, homs) && mono_preceq(cat, g, f, homs);
}

template <Category C>
bool mono_equiv(const C& cat, MorId f, MorId g) {
  return mono_equiv(cat, f, g, HomIndex::build(cat));
}

/// At most one morphism between any two objects, and mutual reachability only
/// on the diagonal.
template <Category C>
bool is_strict_preorder(const C& cat) {
  const HomIndex homs = HomIndex::build(cat);
  for (ObjId a = 0; a < cat.object_count(); ++a)
    for (ObjId b = 0; b < cat.object_count(); ++b) {
      if (homs.hom(a, b).size() > 1) return false;
      if (a != b && !homs.hom(a, b).empty() && !homs.hom(b, a).empty()) return false;
    }
  return true;
}

/// An explicitly tabulated finite category. Construction performs structural
/// validation only (ids resolve, the table covers exactly the composable
/// pairs, identities have the right endpoints); the category *laws* are
/// audited separately so that law violations can be reported as check
/// failures rather than rejected silently.
class FinCategory {
public:
  struct MorphismSpec {
    std::string id;
    std::string source;
    std::string target;
  };

  static constexpr std::size_t kMaxMorphisms = 500000;

  FinCategory(std::vector<std::string> objects, std::vector<MorphismSpec> morphisms,
              const std::map<std::string, std::string>& identities,
              const std::map<std::pair<std::string, std::string>, std::string>& composition) {
    if (morphisms.size() > kMaxMorphisms) fail("CategoryTooLarge", "too many morphisms");
    for (const auto& o : objects) {
      if (object_index_.count(o)) fail("DuplicateObject", "object '" + o + "' listed twice");
      object_index_.emplace(o, object_ids_.size());
      object_ids_.push_back(o);
    }
    for (const auto& m : morphisms) {
      if (morphism_index_.count(m.id)) fail("DuplicateMorphism", "morphism '" + m.id + "' listed twice");
      auto s = object_index_.find(m.source);
      auto t = object_index_.find(m.target);
      if (s == object_index_.end()) fail("UnknownObject", "source '" + m.source + "' of '" + m.id + "'");
      if (t == object_index_.end()) fail("UnknownObject", "target '" + m.target + "' of '" + m.id + "'");
      morphism_index_.emplace(m.id, morphisms_.size());
      morphisms_.push_back({m.id, s->second, t->second});
    }
    identity_.assign(object_ids_.size(), 0);
    std::vector<bool> have_identity(object_ids_.size(), false);
    for (const auto& [obj, mor] : identities) {
      auto o = object_index_.find(obj);
      if (o == object_index_.end()) fail("UnknownObject", "identity declared for '" + obj + "'");
      auto m = morphism_index_.find(mor);
      if (m == morphism_index_.end()) fail("UnknownMorphism", "identity '" + mor + "' of '" + obj + "'");
      const Mor& rec = morphisms_[m->second];
      if (rec.src != o->second || rec.dst != o->second)
        fail("BadIdentity", "identity '" + mor + "' is not an endomorphism of '" + obj + "'");
      identity_[o->second] = m->second;
      have_identity[o->second] = true;
    }
    for (std::size_t i = 0; i < object_ids_.size(); ++i)
      if (!have_identity[i]) fail("MissingIdentity", "object '" + object_ids_[i] + "' has no identity");

    table_.assign(morphisms_.size() * morphisms_.size(), -1);
    for (const auto& [pair, result] : composition) {
      auto f = morphism_index_.find(pair.first);
      auto g = morphism_index_.find(pair.second);
      auto r = morphism_index_.find(result);
      if (f == morphism_index_.end()) fail("UnknownMorphism", "composition key '" + pair.first + "'");
      if (g == morphism_index_.end()) fail("UnknownMorphism", "composition key '" + pair.second + "'");
      if (r == morphism_index_.end()) fail("UnknownMorphism", "composition value '" + result + "'");
      if (morphisms_[f->second].dst != morphisms_[g->second].src)
        fail("NonComposablePair", "table entry ('" + pair.first + "', '" + pair.second +
                                      "') is not a composable pair");
      table_[f->second * morphisms_.size() + g->second] = static_cast<std::int64_t>(r->second);
    }
    for (MorId f = 0; f < morphisms_.size(); ++f)
      for (MorId g = 0; g < morphisms_.size(); ++g)
        if (morphisms_[f].dst == morphisms_[g].src && table_[f * morphisms_.size() + g] < 0)
          fail("MissingComposite", "no table entry for composable pair ('" + morphisms_[f].id +
                                       "', '" + morphisms_[g].id + "')");
  }

  std::size_t object_count() const { return object_ids_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  ObjId source(MorId f) const { return morphisms_.at(f).src; }
  ObjId target(MorId f) const { return morphisms_.at(f).dst; }
  MorId identity(ObjId a) const { return identity_.at(a); }

  MorId compose(MorId f, MorId g) const {
    detail::require_morphism(*this, f);
    detail::require_morphism(*this, g);
    const std::int64_t r = table_[f * morphisms_.size() + g];
    if (r < 0)
      fail("NonComposable", "'" + morphisms_[f].id + "' then '" + morphisms_[g].id + "'");
    return static_cast<MorId>(r);
  }

  std::string object_label(ObjId a) const { return object_ids_.at(a); }
  std::string morphism_label(MorId f) const { return morphisms_.at(f).id; }

  std::optional<ObjId> find_object(const std::string& id) const {
    auto it = object_index_.find(id);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<MorId> find_morphism(const std::string& id) const {
    auto it = morphism_index_.find(id);
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
  }

private:
  struct Mor {
    std::string id;
    ObjId src;
    ObjId dst;
  };
  std::vector<std::string> object_ids_;
  std::vector<Mor> morphisms_;
  std::vector<MorId> identity_;
  std::vector<std::int64_t> table_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
};

/// Audits the category laws: identity neutrality, endpoints of composites,
/// and associativity over all composable triples. The associativity sweep is
/// capped; past the cap the check is reported as skipped rather than guessed.
template <Category C>
VerificationReport audit_category_laws(const C& cat, std::size_t assoc_cap = 50000000) {
  VerificationReport report;
  report.task = "category_laws";

  bool neutrality_ok = true;
  json neutrality_witness;
  for (MorId f = 0; f < cat.morphism_count() && neutrality_ok; ++f) {
    const MorId left = cat.compose(cat.identity(cat.source(f)), f);
    const MorId right = cat.compose(f, cat.identity(cat.target(f)));
    if (left != f || right != f) {
      neutrality_ok = false;
      neutrality_witness = {{"morphism", cat.morphism_label(f)},
                            {"left", cat.morphism_label(left)},
                            {"right", cat.morphism_label(right)}};
    }
  }
  report.add(neutrality_ok ? CheckResult::pass("identity_neutrality")
                           : CheckResult::fail("identity_neutrality", neutrality_witness));

  bool endpoints_ok = true;
  json endpoints_witness;
  for (MorId f = 0; f < cat.morphism_count() && endpoints_ok; ++f)
    for (MorId g = 0; g < cat.morphism_count() && endpoints_ok; ++g) {
      if (cat.target(f) != cat.source(g)) continue;
      const MorId fg = cat.compose(f, g);
      if (cat.source(fg) != cat.source(f) || cat.target(fg) != cat.target(g)) {
        endpoints_ok = false;
        endpoints_witness = {{"f", cat.morphism_label(f)},
                             {"g", cat.morphism_label(g)},
                             {"composite", cat.morphism_label(fg)}};
      }
    }
  report.add(endpoints_ok ? CheckResult::pass("composite_endpoints")
                          : CheckResult::fail("composite_endpoints", endpoints_witness));

  const HomIndex homs = HomIndex::build(cat);
  std::size_t triples = 0;
  for (ObjId a = 0; a < cat.object_count(); ++a)
    for (ObjId b = 0; b < cat.object_count(); ++b)
      for (ObjId c = 0; c < cat.object_count(); ++c)
        for (ObjId d = 0; d < cat.object_count(); ++d)
          triples += homs.hom(a, b).size() * homs.hom(b, c).size() * homs.hom(c, d).size();
  if (triples > assoc_cap) {
    report.add(CheckResult::skipped("associativity", {{"composable_triples", triples},
                                                      {"cap", assoc_cap}}));
    return report;
  }

  bool assoc_ok = true;
  json assoc_witness;
  for (MorId f = 0; f < cat.morphism_count() && assoc_ok; ++f)
    for (MorId g = 0; g < cat.morphism_count() && assoc_ok; ++g) {
      if (cat.target(f) != cat.source(g)) continue;
      const MorId fg = cat.compose(f, g);
      for (MorId h = 0; h < cat.morphism_count() && assoc_ok; ++h) {
        if (cat.target(g) != cat.source(h)) continue;
        const MorId lhs = cat.compose(fg, h);
        const MorId rhs = cat.compose(f, cat.compose(g, h));
        if (lhs != rhs) {
          assoc_ok = false;
          assoc_witness = {{"f", cat.morphism_label(f)},
                           {"g", cat.morphism_label(g)},
                           {"h", cat.morphism_label(h)},
                           {"(fg)h", cat.morphism_label(lhs)},
                           {"f(gh)", cat.morphism_label(rhs)}};
        }
      }
    }
  report.add(assoc_ok ? CheckResult::pass("associativity")
                      : CheckResult::fail("associativity", assoc_witness));
  return report;
}

/// A reflexive–transitive relation on a finite carrier.
struct QuasiOrder {
  std::vector<std::string> carrier;
  std::vector<std::pair<std::string, std::string>> relation;
};

/// The one-morphism-per-related-pair category of a quasiorder; composition is
/// forced by transitivity.
inline FinCategory preorder_category(const QuasiOrder& q) {
  std::set<std::string> elements(q.carrier.begin(), q.carrier.end());
  if (elements.size() != q.carrier.size()) fail("DuplicateObject", "carrier has repeats");
  std::set<std::pair<std::string, std::string>> rel;
  for (const auto& p : q.relation) {
    if (!elements.count(p.first) || !elements.count(p.second))
      fail("UnknownElement", "pair (" + p.first + ", " + p.second + ") leaves the carrier");
    rel.insert(p);
  }
  for (const auto& x : q.carrier)
    if (!rel.count({x, x})) fail("NotReflexive", "missing (" + x + ", " + x + ")");
  for (const auto& [x, y] : rel)
    for (const auto& z : q.carrier)
      if (rel.count({y, z}) && !rel.count({x, z}))
        fail("NotTransitive", "(" + x + ", " + y + ") and (" + y + ", " + z + ") but not (" + x +
                                  ", " + z + ")");

  auto arrow = [](const std::string& x, const std::string& y) { return x + "->" + y; };
  std::vector<FinCategory::MorphismSpec> morphisms;
  std::map<std::string, std::string> identities;
  std::map<std::pair<std::string, std::string>, std::string> table;
  for (const auto& [x, y] : rel) morphisms.push_back({arrow(x, y), x, y});
  for (const auto& x : q.carrier) identities[x] = arrow(x, x);
  for (const auto& [x, y] : rel)
    for (const auto& [y2, z] : rel)
      if (y2 == y) table[{arrow(x, y), arrow(y, z)}] = arrow(x, z);
  return FinCategory(q.carrier, std::move(morphisms), identities, table);
}

/// A subcategory P of C proposed as the choice of subobjects.
template <Category C>
struct SubobjectChoice {
  const C* category = nullptr;
  std::vector<MorId> included;
};

/// Checks the three axioms of a choice of subobjects: (a) P is a strict
/// preorder whose objects are all of C's, (b) every P-morphism is monic in C,
/// (c) any C-factor h of one P-morphism through another lies in P. All three
/// axioms are evaluated; each failing entry carries one concrete witness.
/// Throws MalformedChoice if P is not closed under composition.
template <Category C>
VerificationReport verify_subobject_choice(const SubobjectChoice<C>& choice) {
  const C& cat = *choice.category;
  for (MorId p : choice.included) detail::require_morphism(cat, p);

  std::vector<MorId> included = choice.included;
  std::sort(included.begin(), included.end());
  included.erase(std::unique(included.begin(), included.end()), included.end());
  std::unordered_set<MorId> in_p(included.begin(), included.end());

  for (MorId p : included)
    for (MorId q : included) {
      if (cat.target(p) != cat.source(q)) continue;
      const MorId pq = cat.compose(p, q);
      if (!in_p.count(pq))
        fail("MalformedChoice", "composite '" + cat.morphism_label(pq) +
                                    "' of included morphisms is not included");
    }

  VerificationReport report;
  report.task = "subobject_choice";
  const HomIndex homs = HomIndex::build(cat);

  // (a) strict preorder spanning every object of C.
  bool a_ok = true;
  json a_witness;
  for (ObjId o = 0; o < cat.object_count() && a_ok; ++o)
    if (!in_p.count(cat.identity(o))) {
      a_ok = false;
      a_witness = {{"reason", "missing_identity"}, {"object", cat.object_label(o)}};
    }
  if (a_ok) {
    std::map<std::pair<ObjId, ObjId>, MorId> first_in_hom;
    for (MorId p : included) {
      auto key = std::make_pair(cat.source(p), cat.target(p));
      auto [it, inserted] = first_in_hom.emplace(key, p);
      if (!inserted) {
        a_ok = false;
        a_witness = {{"reason", "parallel_pair"},
                     {"first", cat.morphism_label(it->second)},
                     {"second", cat.morphism_label(p)}};
        break;
      }
    }
    if (a_ok)
      for (const auto& [key, p] : first_in_hom) {
        auto rev = first_in_hom.find({key.second, key.first});
        if (key.first != key.second && rev != first_in_hom.end()) {
          a_ok = false;
          a_witness = {{"reason", "antisymmetry"},
                       {"forward", cat.morphism_label(p)},
                       {"backward", cat.morphism_label(rev->second)}};
          break;
        }
      }
  }
  report.add(a_ok ? CheckResult::pass("a_strict_preorder_spanning")
                  : CheckResult::fail("a_strict_preorder_spanning", a_witness));

  // (b) inclusions are monomorphisms in the ambient category.
  bool b_ok = true;
  json b_witness;
  for (MorId p : included) {
    CancellationWitness w;
    if (!is_monomorphism(cat, p, homs, &w)) {
      b_ok = false;
      b_witness = {{"morphism", cat.morphism_label(p)},
                   {"test_object", cat.object_label(w.test_object)},
                   {"g", cat.morphism_label(w.g)},
                   {"h", cat.morphism_label(w.h)}};
      break;
    }
  }
  report.add(b_ok ? CheckResult::pass("b_monomorphisms")
                  : CheckResult::fail("b_monomorphisms", b_witness));

  // (c) factorization closure: f = hg with f, g in P forces h in P.
  bool c_ok = true;
  json c_witness;
  for (MorId f : included) {
    for (MorId g : included) {
      if (cat.target(f) != cat.target(g)) continue;
      for (MorId h : homs.hom(cat.source(f), cat.source(g)))
        if (cat.compose(h, g) == f && !in_p.count(h)) {
          c_ok = false;
          c_witness = {{"f", cat.morphism_label(f)},
                       {"g", cat.morphism_label(g)},
                       {"h", cat.morphism_label(h)}};
          break;
        }
      if (!c_ok) break;
    }
    if (!c_ok) break;
  }
  report.add(c_ok ? CheckResult::pass("c_factorization_closed")
                  : CheckResult::fail("c_factorization_closed", c_witness));
  return report;
}

}  // namespace buncat
