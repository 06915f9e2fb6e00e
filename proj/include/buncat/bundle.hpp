#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "buncat/category.hpp"
#include "buncat/error.hpp"
#include "buncat/finmap.hpp"
#include "buncat/report.hpp"

namespace buncat {

/// A bundle (E, p, B): a total function from a finite total space onto a
/// finite base. Fibres may be empty; nothing forces p to be onto.
struct Bundle {
  FinSet total;
  FinSet base;
  FinMap projection;

  friend bool operator==(const Bundle&, const Bundle&) = default;
  friend auto operator<=>(const Bundle&, const Bundle&) = default;
};

inline Bundle make_bundle(FinSet total, FinSet base, FinMap projection) {
  if (projection.domain() != total)
    fail("PartialProjection", "projection domain does not cover the total space");
  if (projection.codomain() != base)
    fail("ImageOutsideBase", "projection codomain is not the base");
  return Bundle{std::move(total), std::move(base), std::move(projection)};
}

inline Bundle make_bundle(FinSet total, FinSet base,
                          const std::map<std::string, std::string>& projection) {
  std::vector<std::size_t> table(total.size());
  std::vector<bool> assigned(total.size(), false);
  for (const auto& [e, b] : projection) {
    if (!total.contains(e)) fail("PartialProjection", "'" + e + "' is not in the total space");
    if (!base.contains(b)) fail("ImageOutsideBase", "'" + e + "' projects to '" + b + "'");
    table[total.index_of(e)] = base.index_of(b);
    assigned[total.index_of(e)] = true;
  }
  for (std::size_t i = 0; i < total.size(); ++i)
    if (!assigned[i]) fail("PartialProjection", "no projection for '" + total.label(i) + "'");
  FinMap p(total, base, std::move(table));
  return Bundle{std::move(total), std::move(base), std::move(p)};
}

inline FinSet fibre(const Bundle& b, const std::string& pt) {
  if (!b.base.contains(pt)) fail("UnknownBasePoint", "'" + pt + "' is not in the base");
  const std::size_t bi = b.base.index_of(pt);
  std::vector<std::string> members;
  for (std::size_t i = 0; i < b.total.size(); ++i)
    if (b.projection.apply_index(i) == bi) members.push_back(b.total.label(i));
  return FinSet(std::move(members));
}

inline std::string pair_label(const std::string& b, const std::string& f) {
  return "(" + b + "," + f + ")";
}

inline Bundle product_bundle(const FinSet& base, const FinSet& fibre_set) {
  if (base.empty() || fibre_set.empty()) fail("EmptyFactor", "both factors must be nonempty");
  std::vector<std::string> total_labels;
  std::map<std::string, std::string> projection;
  for (const auto& b : base.labels())
    for (const auto& f : fibre_set.labels()) {
      total_labels.push_back(pair_label(b, f));
      projection[pair_label(b, f)] = b;
    }
  return make_bundle(FinSet(std::move(total_labels)), base, projection);
}

/// A commuting square (u, f) between bundles. Only the validating
/// constructors below produce one.
struct BundleMorphism {
  Bundle source;
  Bundle target;
  FinMap total_map;
  FinMap base_map;

  friend bool operator==(const BundleMorphism&, const BundleMorphism&) = default;
};

struct SquareWitness {
  std::size_t element = 0;  // index into source.total
  std::size_t via_top = 0;  // index into target.base, through u then p'
  std::size_t via_bottom = 0;  // through p then f
};

/// Index-level square test used by the enumerators; no exceptions.
inline std::optional<SquareWitness> square_violation(const Bundle& src, const Bundle& dst,
                                                     const std::vector<std::size_t>& u,
                                                     const std::vector<std::size_t>& f) {
  for (std::size_t e = 0; e < src.total.size(); ++e) {
    const std::size_t top = dst.projection.apply_index(u[e]);
    const std::size_t bottom = f[src.projection.apply_index(e)];
    if (top != bottom) return SquareWitness{e, top, bottom};
  }
  return std::nullopt;
}

inline BundleMorphism validate_morphism(const Bundle& src, const Bundle& dst, const FinMap& u,
                                        const FinMap& f) {
  if (u.domain() != src.total || u.codomain() != dst.total)
    fail("DomainMismatch", "total map must go from the source total to the target total");
  if (f.domain() != src.base || f.codomain() != dst.base)
    fail("DomainMismatch", "base map must go from the source base to the target base");
  if (auto w = square_violation(src, dst, u.table(), f.table()))
    fail("SquareFails", "element '" + src.total.label(w->element) + "' reaches '" +
                            dst.base.label(w->via_top) + "' through the total map but '" +
                            dst.base.label(w->via_bottom) + "' through the base map");
  return BundleMorphism{src, dst, u, f};
}

inline BundleMorphism identity_morphism(const Bundle& b) {
  return BundleMorphism{b, b, FinMap::identity(b.total), FinMap::identity(b.base)};
}

inline BundleMorphism compose_morphisms(const BundleMorphism& m1, const BundleMorphism& m2) {
  if (m1.target != m2.source) fail("NotComposable", "middle bundles differ");
  return validate_morphism(m1.source, m2.target, m1.total_map.then(m2.total_map),
                           m1.base_map.then(m2.base_map));
}

inline bool is_isomorphism(const BundleMorphism& m) {
  if (!m.total_map.injective() || !m.total_map.surjective()) return false;
  if (!m.base_map.injective() || !m.base_map.surjective()) return false;
  std::vector<std::size_t> u_inv(m.total_map.table().size());
  for (std::size_t i = 0; i < u_inv.size(); ++i) u_inv[m.total_map.table()[i]] = i;
  std::vector<std::size_t> f_inv(m.base_map.table().size());
  for (std::size_t i = 0; i < f_inv.size(); ++i) f_inv[m.base_map.table()[i]] = i;
  validate_morphism(m.target, m.source, FinMap(m.target.total, m.source.total, std::move(u_inv)),
                    FinMap(m.target.base, m.source.base, std::move(f_inv)));
  return true;
}

/// E' ⊆ E, B' ⊆ B, and the projection restricts.
inline bool is_subbundle(const Bundle& inner, const Bundle& outer) {
  if (!inner.total.subset_of(outer.total)) return false;
  if (!inner.base.subset_of(outer.base)) return false;
  for (std::size_t i = 0; i < inner.total.size(); ++i) {
    const std::string& e = inner.total.label(i);
    const std::string& via_inner = inner.base.label(inner.projection.apply_index(i));
    if (outer.projection(e) != via_inner) return false;
  }
  return true;
}

inline BundleMorphism inclusion_morphism(const Bundle& inner, const Bundle& outer) {
  if (!is_subbundle(inner, outer)) fail("NotSubbundle", "inclusion requires a subbundle pair");
  std::vector<std::size_t> u(inner.total.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = outer.total.index_of(inner.total.label(i));
  std::vector<std::size_t> f(inner.base.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = outer.base.index_of(inner.base.label(i));
  return BundleMorphism{inner, outer, FinMap(inner.total, outer.total, std::move(u)),
                        FinMap(inner.base, outer.base, std::move(f))};
}

/// A finite group as an explicit multiplication table, validated on
/// construction.
class FinGroup {
public:
  FinGroup(FinSet elements, std::vector<std::vector<std::size_t>> op, std::size_t identity)
      : elements_(std::move(elements)), op_(std::move(op)), identity_(identity) {
    const std::size_t n = elements_.size();
    if (n == 0) fail("EmptyGroup", "a group has at least the identity");
    if (identity_ >= n) fail("UnknownElement", "identity index out of range");
    if (op_.size() != n) fail("PartialOperation", "operation table must have one row per element");
    for (const auto& row : op_) {
      if (row.size() != n) fail("PartialOperation", "operation row of wrong length");
      for (std::size_t v : row)
        if (v >= n) fail("UnknownElement", "operation value out of range");
    }
    for (std::size_t g = 0; g < n; ++g)
      if (op_[identity_][g] != g || op_[g][identity_] != g)
        fail("BadIdentity", "'" + elements_.label(identity_) + "' is not neutral");
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < n; ++k)
          if (op_[op_[g][h]][k] != op_[g][op_[h][k]])
            fail("NotAssociative", "associativity fails at ('" + elements_.label(g) + "', '" +
                                       elements_.label(h) + "', '" + elements_.label(k) + "')");
    for (std::size_t g = 0; g < n; ++g) {
      bool has_inverse = false;
      for (std::size_t h = 0; h < n; ++h)
        if (op_[g][h] == identity_ && op_[h][g] == identity_) has_inverse = true;
      if (!has_inverse) fail("NoInverse", "'" + elements_.label(g) + "' has no inverse");
    }
  }

  static FinGroup cyclic(std::size_t n, const std::string& prefix = "") {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    FinSet elements(labels);
    std::vector<std::vector<std::size_t>> op(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        op[elements.index_of(labels[a])][elements.index_of(labels[b])] =
            elements.index_of(labels[(a + b) % n]);
    return FinGroup(std::move(elements), std::move(op), elements.index_of(labels[0]));
  }

  const FinSet& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t multiply(std::size_t g, std::size_t h) const { return op_.at(g).at(h); }

private:
  FinSet elements_;
  std::vector<std::vector<std::size_t>> op_;
  std::size_t identity_;
};

/// A right action of a finite group on a finite set; the action laws are
/// validated on construction.
class GroupAction {
public:
  GroupAction(FinGroup group, FinSet space, std::vector<std::vector<std::size_t>> act)
      : group_(std::move(group)), space_(std::move(space)), act_(std::move(act)) {
    if (act_.size() != space_.size()) fail("PartialAction", "one row per space element required");
    for (const auto& row : act_) {
      if (row.size() != group_.order()) fail("PartialAction", "action row of wrong length");
      for (std::size_t v : row)
        if (v >= space_.size()) fail("UnknownElement", "action value out of range");
    }
    for (std::size_t x = 0; x < space_.size(); ++x)
      if (act_[x][group_.identity()] != x)
        fail("BadAction", "identity moves '" + space_.label(x) + "'");
    for (std::size_t x = 0; x < space_.size(); ++x)
      for (std::size_t g = 0; g < group_.order(); ++g)
        for (std::size_t h = 0; h < group_.order(); ++h)
          if (act_[act_[x][g]][h] != act_[x][group_.multiply(g, h)])
            fail("BadAction", "compatibility fails at ('" + space_.label(x) + "', '" +
                                  group_.elements().label(g) + "', '" +
                                  group_.elements().label(h) + "')");
  }

  const FinGroup& group() const { return group_; }
  const FinSet& space() const { return space_; }
  std::size_t act(std::size_t x, std::size_t g) const { return act_.at(x).at(g); }

private:
  FinGroup group_;
  FinSet space_;
  std::vector<std::vector<std::size_t>> act_;
};

/// Projection invariance plus a free transitive action on every fibre.
inline bool is_principal_g_bundle(const Bundle& b, const GroupAction& action) {
  if (action.space() != b.total)
    fail("ActionSpaceMismatch", "the action must live on the total space");
  for (std::size_t x = 0; x < b.total.size(); ++x)
    for (std::size_t g = 0; g < action.group().order(); ++g)
      if (b.projection.apply_index(action.act(x, g)) != b.projection.apply_index(x)) return false;
  for (std::size_t pt = 0; pt < b.base.size(); ++pt) {
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < b.total.size(); ++x)
      if (b.projection.apply_index(x) == pt) members.push_back(x);
    if (members.size() != action.group().order()) return false;
    for (std::size_t x : members) {
      std::set<std::size_t> orbit;
      for (std::size_t g = 0; g < action.group().order(); ++g) orbit.insert(action.act(x, g));
      if (orbit.size() != members.size()) return false;
    }
  }
  return true;
}

/// Per base point, a bijective coordinatization of the fibre by the full
/// vector space F_p^d.
struct FibreLinearStructure {
  unsigned prime = 2;
  // base label -> (total element label -> coordinate vector over F_p)
  std::map<std::string, std::map<std::string, std::vector<unsigned>>> coords;
};

namespace detail {

inline std::size_t pow_size(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

inline void check_linear_structure(const Bundle& b, const FibreLinearStructure& s) {
  for (std::size_t pt = 0; pt < b.base.size(); ++pt) {
    auto it = s.coords.find(b.base.label(pt));
    if (it == s.coords.end())
      fail("StructureMismatch", "no coordinates over '" + b.base.label(pt) + "'");
    const auto& assignment = it->second;
    const FinSet fib = fibre(b, b.base.label(pt));
    if (assignment.size() != fib.size())
      fail("StructureMismatch", "coordinate count does not match the fibre over '" +
                                    b.base.label(pt) + "'");
    std::size_t dim = 0;
    std::set<std::vector<unsigned>> seen;
    bool first = true;
    for (const auto& [e, vec] : assignment) {
      if (!fib.contains(e))
        fail("StructureMismatch", "'" + e + "' does not lie in the fibre over '" +
                                      b.base.label(pt) + "'");
      if (first) dim = vec.size(), first = false;
      if (vec.size() != dim)
        fail("StructureMismatch", "mixed coordinate dimensions over '" + b.base.label(pt) + "'");
      for (unsigned c : vec)
        if (c >= s.prime) fail("StructureMismatch", "coordinate exceeds the modulus");
      seen.insert(vec);
    }
    if (seen.size() != fib.size() || fib.size() != pow_size(s.prime, dim))
      fail("StructureMismatch", "coordinates over '" + b.base.label(pt) +
                                    "' are not a bijection onto the full space");
  }
}

}  // namespace detail

/// True iff the induced coordinate map over every source base point is
/// additive and homogeneous; enumerated in full.
inline bool check_fibre_linearity(const BundleMorphism& m, const FibreLinearStructure& s_src,
                                  const FibreLinearStructure& s_dst) {
  if (s_src.prime != s_dst.prime) fail("StructureMismatch", "moduli differ");
  detail::check_linear_structure(m.source, s_src);
  detail::check_linear_structure(m.target, s_dst);
  const unsigned p = s_src.prime;

  for (std::size_t pt = 0; pt < m.source.base.size(); ++pt) {
    const std::string& b = m.source.base.label(pt);
    const std::string& fb = m.target.base.label(m.base_map.apply_index(pt));
    const auto& src_coords = s_src.coords.at(b);
    const auto& dst_coords = s_dst.coords.at(fb);

    std::map<std::vector<unsigned>, std::vector<unsigned>> induced;
    for (const auto& [e, vec] : src_coords) {
      const std::string& ue = m.target.total.label(m.total_map.apply_index(m.source.total.index_of(e)));
      induced[vec] = dst_coords.at(ue);
    }

    auto add = [p](const std::vector<unsigned>& v, const std::vector<unsigned>& w) {
      std::vector<unsigned> r(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) r[i] = (v[i] + w[i]) % p;
      return r;
    };
    auto scale = [p](unsigned c, const std::vector<unsigned>& v) {
      std::vector<unsigned> r(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) r[i] = (c * v[i]) % p;
      return r;
    };

    for (const auto& [v, tv] : induced) {
      for (const auto& [w, tw] : induced)
        if (induced.at(add(v, w)) != add(tv, tw)) return false;
      for (unsigned c = 0; c < p; ++c)
        if (induced.at(scale(c, v)) != scale(c, tv)) return false;
    }
  }
  return true;
}

namespace detail {

/// Enumerates every commuting square (u, f): a -> b as index tables,
/// fibrewise per base map, so only genuine morphisms are visited.
template <typename Fn>
void for_each_square(const Bundle& a, const Bundle& b, Fn&& visit) {
  if (a.base.empty()) {
    visit(std::vector<std::size_t>{}, std::vector<std::size_t>{});
    return;
  }
  if (b.base.empty()) return;
  std::vector<std::vector<std::size_t>> fibre_members(b.base.size());
  for (std::size_t e = 0; e < b.total.size(); ++e)
    fibre_members[b.projection.apply_index(e)].push_back(e);

  std::vector<std::size_t> f(a.base.size(), 0);
  while (true) {
    bool feasible = true;
    for (std::size_t e = 0; e < a.total.size(); ++e)
      if (fibre_members[f[a.projection.apply_index(e)]].empty()) feasible = false;
    if (feasible) {
      std::vector<std::size_t> choice(a.total.size(), 0);
      while (true) {
        std::vector<std::size_t> u(a.total.size());
        for (std::size_t e = 0; e < a.total.size(); ++e)
          u[e] = fibre_members[f[a.projection.apply_index(e)]][choice[e]];
        visit(std::move(u), f);
        std::size_t pos = 0;
        while (pos < choice.size() &&
               choice[pos] + 1 == fibre_members[f[a.projection.apply_index(pos)]].size())
          choice[pos++] = 0;
        if (pos == choice.size()) break;
        ++choice[pos];
      }
    }
    std::size_t pos = 0;
    while (pos < f.size() && f[pos] + 1 == b.base.size()) f[pos++] = 0;
    if (pos == f.size()) break;
    ++f[pos];
  }
}

}  // namespace detail

/// The full category on a family of bundles: objects are the (deduplicated)
/// family members and morphisms are all commuting squares between them.
/// Valid squares are enumerated fibrewise per base map, so only genuine
/// morphisms are ever materialized; composition interns into the same store.
class BundleFamilyCategory {
public:
  static constexpr std::size_t kDefaultMaxMorphisms = 400000;

  explicit BundleFamilyCategory(std::vector<Bundle> family,
                                std::size_t max_morphisms = kDefaultMaxMorphisms) {
    for (auto& b : family) {
      bool known = false;
      for (const auto& have : bundles_)
        if (have == b) known = true;
      if (!known) bundles_.push_back(std::move(b));
    }
    if (bundles_.empty()) fail("EmptyFamily", "a category needs at least one object");
    if (morphism_budget(bundles_, max_morphisms) > max_morphisms)
      fail("FamilyTooLarge", "the family admits more than " + std::to_string(max_morphisms) +
                                 " bundle morphisms");

    identity_.resize(bundles_.size());
    for (ObjId i = 0; i < bundles_.size(); ++i)
      for (ObjId j = 0; j < bundles_.size(); ++j) enumerate_pair(i, j);
    for (ObjId i = 0; i < bundles_.size(); ++i) {
      const BundleMorphism id = identity_morphism(bundles_[i]);
      identity_[i] = intern_.at(key(i, i, id.total_map.table(), id.base_map.table()));
    }
  }

  /// Total number of commuting squares the family admits, without building
  /// them: for each base map f, the product over total elements of the size
  /// of the receiving fibre. Saturates just above the cap.
  static std::size_t morphism_budget(const std::vector<Bundle>& family,
                                     std::size_t cap = kDefaultMaxMorphisms) {
    std::size_t total = 0;
    for (const Bundle& a : family)
      for (const Bundle& b : family) {
        if (a.base.empty()) {  // the empty bundle maps uniquely anywhere
          ++total;
          continue;
        }
        if (b.base.empty()) continue;  // no base map out of a nonempty base
        std::vector<std::size_t> fibre_size(b.base.size(), 0);
        for (std::size_t e = 0; e < b.total.size(); ++e) ++fibre_size[b.projection.apply_index(e)];
        std::vector<std::size_t> src_fibre(a.base.size(), 0);
        for (std::size_t e = 0; e < a.total.size(); ++e) ++src_fibre[a.projection.apply_index(e)];
        std::vector<std::size_t> f(a.base.size(), 0);
        while (true) {
          bool zero = false;
          for (std::size_t pt = 0; pt < a.base.size(); ++pt)
            if (src_fibre[pt] > 0 && fibre_size[f[pt]] == 0) zero = true;
          if (!zero) {
            std::size_t count = 1;
            for (std::size_t pt = 0; pt < a.base.size() && count <= cap; ++pt)
              for (std::size_t k = 0; k < src_fibre[pt] && count <= cap; ++k)
                count = count > cap / fibre_size[f[pt]] ? cap + 1 : count * fibre_size[f[pt]];
            total += count;
            if (total > cap) return total;
          }
          std::size_t pos = 0;
          while (pos < f.size() && f[pos] + 1 == b.base.size()) f[pos++] = 0;
          if (pos == f.size()) break;
          ++f[pos];
        }
      }
    return total;
  }

  std::size_t object_count() const { return bundles_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  ObjId source(MorId f) const { return morphisms_.at(f).src; }
  ObjId target(MorId f) const { return morphisms_.at(f).dst; }
  MorId identity(ObjId a) const { return identity_.at(a); }

  MorId compose(MorId f, MorId g) const {
    const Mor& mf = morphisms_.at(f);
    const Mor& mg = morphisms_.at(g);
    if (mf.dst != mg.src) fail("NonComposable", morphism_label(f) + " then " + morphism_label(g));
    std::vector<std::size_t> u(mf.u.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = mg.u[mf.u[i]];
    std::vector<std::size_t> b(mf.f.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = mg.f[mf.f[i]];
    return intern_.at(key(mf.src, mg.dst, u, b));
  }

  std::string object_label(ObjId a) const { return "b" + std::to_string(a); }

  std::string morphism_label(MorId m) const {
    const Mor& rec = morphisms_.at(m);
    std::string out = object_label(rec.src) + "->" + object_label(rec.dst) + "[u:";
    for (std::size_t i = 0; i < rec.u.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(rec.u[i]);
    }
    out += "|f:";
    for (std::size_t i = 0; i < rec.f.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(rec.f[i]);
    }
    return out + "]";
  }

  const Bundle& object(ObjId a) const { return bundles_.at(a); }

  BundleMorphism as_morphism(MorId m) const {
    const Mor& rec = morphisms_.at(m);
    const Bundle& s = bundles_[rec.src];
    const Bundle& t = bundles_[rec.dst];
    return BundleMorphism{s, t, FinMap(s.total, t.total, rec.u), FinMap(s.base, t.base, rec.f)};
  }

  std::optional<MorId> find(const BundleMorphism& m) const {
    ObjId src = bundles_.size(), dst = bundles_.size();
    for (ObjId i = 0; i < bundles_.size(); ++i) {
      if (bundles_[i] == m.source) src = i;
      if (bundles_[i] == m.target) dst = i;
    }
    if (src == bundles_.size() || dst == bundles_.size()) return std::nullopt;
    auto it = intern_.find(key(src, dst, m.total_map.table(), m.base_map.table()));
    if (it == intern_.end()) return std::nullopt;
    return it->second;
  }

private:
  struct Mor {
    ObjId src;
    ObjId dst;
    std::vector<std::size_t> u;
    std::vector<std::size_t> f;
  };

  static std::vector<std::size_t> key(ObjId src, ObjId dst, const std::vector<std::size_t>& u,
                                      const std::vector<std::size_t>& f) {
    std::vector<std::size_t> k;
    k.reserve(2 + u.size() + f.size());
    k.push_back(src);
    k.push_back(dst);
    k.insert(k.end(), u.begin(), u.end());
    k.insert(k.end(), f.begin(), f.end());
    return k;
  }

  void enumerate_pair(ObjId i, ObjId j) {
    detail::for_each_square(bundles_[i], bundles_[j],
                            [&](std::vector<std::size_t> u, std::vector<std::size_t> f) {
                              store(i, j, std::move(u), std::move(f));
                            });
  }

  void store(ObjId i, ObjId j, std::vector<std::size_t> u, std::vector<std::size_t> f) {
    const MorId id = morphisms_.size();
    intern_.emplace(key(i, j, u, f), id);
    morphisms_.push_back({i, j, std::move(u), std::move(f)});
  }

  std::vector<Bundle> bundles_;
  std::vector<Mor> morphisms_;
  std::vector<MorId> identity_;
  std::map<std::vector<std::size_t>, MorId> intern_;
};

/// Verifies that the family, with inclusions as the choice of subobjects,
/// satisfies the subobject axioms, plus the stronger uniqueness statement:
/// any factor of one inclusion through another is itself the inclusion.
inline VerificationReport verify_bun_subobject_axioms(
    const std::vector<Bundle>& family,
    std::size_t max_morphisms = BundleFamilyCategory::kDefaultMaxMorphisms) {
  BundleFamilyCategory cat(family, max_morphisms);

  SubobjectChoice<BundleFamilyCategory> choice;
  choice.category = &cat;
  for (ObjId i = 0; i < cat.object_count(); ++i)
    for (ObjId j = 0; j < cat.object_count(); ++j)
      if (is_subbundle(cat.object(i), cat.object(j)))
        choice.included.push_back(
            cat.find(inclusion_morphism(cat.object(i), cat.object(j))).value());

  VerificationReport report = verify_subobject_choice(choice);
  report.task = "bundle_subobjects";

  bool unique_ok = true;
  json unique_witness;
  const HomIndex homs = HomIndex::build(cat);
  for (std::size_t x = 0; x < choice.included.size() && unique_ok; ++x)
    for (std::size_t y = 0; y < choice.included.size() && unique_ok; ++y) {
      const MorId into_e = choice.included[x];
      const MorId other = choice.included[y];
      if (cat.target(into_e) != cat.target(other)) continue;
      const ObjId c = cat.source(into_e);
      const ObjId d = cat.source(other);
      for (MorId h : homs.hom(c, d)) {
        if (cat.compose(h, other) != into_e) continue;
        const BundleMorphism hm = cat.as_morphism(h);
        if (!is_subbundle(hm.source, hm.target) ||
            hm != inclusion_morphism(hm.source, hm.target)) {
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

}  // namespace buncat
