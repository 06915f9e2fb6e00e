#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "buncat/category.hpp"
#include "buncat/error.hpp"
#include "buncat/finmap.hpp"

namespace buncat {

/// The full category on a finite family of finite sets: every function
/// between two family members is a morphism. Members are deduplicated by
/// value so that parallel copies of one set cannot masquerade as two objects.
class FinSetCategory {
public:
  static constexpr std::size_t kMaxMorphisms = 2000000;

  explicit FinSetCategory(std::vector<FinSet> sets) {
    for (auto& s : sets) {
      bool known = false;
      for (const auto& t : sets_)
        if (t == s) known = true;
      if (!known) sets_.push_back(std::move(s));
    }
    if (sets_.empty()) fail("EmptyFamily", "a category needs at least one object");

    std::size_t budget = 0;
    for (const auto& a : sets_)
      for (const auto& b : sets_) {
        std::size_t hom = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
          hom *= b.size();
          if (hom > kMaxMorphisms) fail("FamilyTooLarge", "too many functions to enumerate");
        }
        if (a.size() == 0) hom = 1;
        if (b.size() == 0 && a.size() > 0) hom = 0;
        budget += hom;
        if (budget > kMaxMorphisms) fail("FamilyTooLarge", "too many functions to enumerate");
      }

    identity_.resize(sets_.size());
    for (ObjId a = 0; a < sets_.size(); ++a)
      for (ObjId b = 0; b < sets_.size(); ++b) {
        if (sets_[b].empty() && !sets_[a].empty()) continue;
        std::vector<std::size_t> table(sets_[a].size(), 0);
        while (true) {
          const MorId id = morphisms_.size();
          morphisms_.push_back({a, b, table});
          intern_.emplace(std::make_tuple(a, b, table), id);
          if (a == b) {
            bool is_id = true;
            for (std::size_t i = 0; i < table.size(); ++i)
              if (table[i] != i) is_id = false;
            if (is_id) identity_[a] = id;
          }
          std::size_t pos = 0;
          while (pos < table.size() && table[pos] + 1 == sets_[b].size()) table[pos++] = 0;
          if (pos == table.size()) break;
          ++table[pos];
        }
      }
  }

  std::size_t object_count() const { return sets_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  ObjId source(MorId f) const { return morphisms_.at(f).src; }
  ObjId target(MorId f) const { return morphisms_.at(f).dst; }
  MorId identity(ObjId a) const { return identity_.at(a); }

  MorId compose(MorId f, MorId g) const {
    const Mor& mf = morphisms_.at(f);
    const Mor& mg = morphisms_.at(g);
    if (mf.dst != mg.src) fail("NonComposable", morphism_label(f) + " then " + morphism_label(g));
    std::vector<std::size_t> table(mf.table.size());
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = mg.table[mf.table[i]];
    return intern_.at(std::make_tuple(mf.src, mg.dst, std::move(table)));
  }

  std::string object_label(ObjId a) const {
    std::string out = "{";
    for (std::size_t i = 0; i < sets_.at(a).size(); ++i) {
      if (i) out += ",";
      out += sets_[a].label(i);
    }
    return out + "}";
  }

  std::string morphism_label(MorId f) const {
    const Mor& m = morphisms_.at(f);
    std::string out = object_label(m.src) + "->" + object_label(m.dst) + "[";
    for (std::size_t i = 0; i < m.table.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(m.table[i]);
    }
    return out + "]";
  }

  const FinSet& object(ObjId a) const { return sets_.at(a); }

  FinMap as_map(MorId f) const {
    const Mor& m = morphisms_.at(f);
    return FinMap(sets_[m.src], sets_[m.dst], m.table);
  }

  std::optional<MorId> find(const FinMap& map) const {
    ObjId src = sets_.size(), dst = sets_.size();
    for (ObjId a = 0; a < sets_.size(); ++a) {
      if (sets_[a] == map.domain()) src = a;
      if (sets_[a] == map.codomain()) dst = a;
    }
    if (src == sets_.size() || dst == sets_.size()) return std::nullopt;
    auto it = intern_.find(std::make_tuple(src, dst, map.table()));
    if (it == intern_.end()) return std::nullopt;
    return it->second;
  }

private:
  struct Mor {
    ObjId src;
    ObjId dst;
    std::vector<std::size_t> table;
  };
  std::vector<FinSet> sets_;
  std::vector<Mor> morphisms_;
  std::vector<MorId> identity_;
  std::map<std::tuple<ObjId, ObjId, std::vector<std::size_t>>, MorId> intern_;
};

}  // namespace buncat
