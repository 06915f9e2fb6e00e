#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "buncat/error.hpp"

namespace buncat {

/// A finite set of distinct string labels, kept sorted for value identity:
/// two FinSets are equal iff they name the same elements.
class FinSet {
public:
  FinSet() = default;

  explicit FinSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    auto dup = std::adjacent_find(labels_.begin(), labels_.end());
    if (dup != labels_.end()) fail("DuplicateElement", "element '" + *dup + "' listed twice");
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(const std::string& x) const {
    return std::binary_search(labels_.begin(), labels_.end(), x);
  }

  std::size_t index_of(const std::string& x) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), x);
    if (it == labels_.end() || *it != x) fail("UnknownElement", "'" + x + "' is not in the set");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool subset_of(const FinSet& other) const {
    return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(),
                         labels_.end());
  }

  friend bool operator==(const FinSet&, const FinSet&) = default;
  friend auto operator<=>(const FinSet&, const FinSet&) = default;

private:
  std::vector<std::string> labels_;
};

/// A total function between finite sets, stored as an index table into the
/// codomain. Value identity again: equal domains, codomains and tables.
class FinMap {
public:
  FinMap() = default;

  FinMap(FinSet domain, FinSet codomain, std::vector<std::size_t> table)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
    if (table_.size() != domain_.size())
      fail("PartialMap", "table covers " + std::to_string(table_.size()) + " of " +
                             std::to_string(domain_.size()) + " elements");
    for (std::size_t v : table_)
      if (v >= codomain_.size()) fail("UnknownElement", "table value out of codomain range");
  }

  static FinMap from_pairs(FinSet domain, FinSet codomain,
                           const std::map<std::string, std::string>& pairs) {
    std::vector<std::size_t> table(domain.size(), 0);
    std::vector<bool> assigned(domain.size(), false);
    for (const auto& [x, y] : pairs) {
      if (!domain.contains(x)) fail("UnknownElement", "'" + x + "' is not in the domain");
      if (!codomain.contains(y)) fail("UnknownElement", "'" + y + "' is not in the codomain");
      const std::size_t i = domain.index_of(x);
      table[i] = codomain.index_of(y);
      assigned[i] = true;
    }
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (!assigned[i]) fail("PartialMap", "no image for '" + domain.label(i) + "'");
    return FinMap(std::move(domain), std::move(codomain), std::move(table));
  }

  static FinMap identity(const FinSet& s) {
    std::vector<std::size_t> table(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) table[i] = i;
    return FinMap(s, s, std::move(table));
  }

  const FinSet& domain() const { return domain_; }
  const FinSet& codomain() const { return codomain_; }
  const std::vector<std::size_t>& table() const { return table_; }

  std::size_t apply_index(std::size_t i) const { return table_.at(i); }
  const std::string& operator()(const std::string& x) const {
    return codomain_.label(table_[domain_.index_of(x)]);
  }

  /// Diagrammatic: this, then g.
  FinMap then(const FinMap& g) const {
    if (codomain_ != g.domain_)
      fail("NonComposable", "codomain does not match the next domain");
    std::vector<std::size_t> table(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) table[i] = g.table_[table_[i]];
    return FinMap(domain_, g.codomain_, std::move(table));
  }

  bool injective() const {
    std::vector<bool> hit(codomain_.size(), false);
    for (std::size_t v : table_) {
      if (hit[v]) return false;
      hit[v] = true;
    }
    return true;
  }

  bool surjective() const {
    std::vector<bool> hit(codomain_.size(), false);
    for (std::size_t v : table_) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  friend bool operator==(const FinMap&, const FinMap&) = default;
  friend auto operator<=>(const FinMap&, const FinMap&) = default;

private:
  FinSet domain_;
  FinSet codomain_;
  std::vector<std::size_t> table_;
};

}  // namespace buncat
