#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "buncat/error.hpp"
#include "buncat/report.hpp"

namespace buncat {

/// A finite abelian group presented as a product of cyclic factors; elements
/// are residue tuples. Factor order 1 contributes a forced zero coordinate,
/// so the trivial group is representable as [1].
class FinAbGroup {
public:
  static constexpr long long kMaxFactor = 1000000000LL;
  static constexpr unsigned long long kEnumerable = 100000ULL;

  explicit FinAbGroup(std::vector<long long> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) fail("BadFactor", "a group needs at least one cyclic factor");
    order_ = 1;
    for (long long n : factors_) {
      if (n < 1 || n > kMaxFactor) fail("BadFactor", "cyclic order " + std::to_string(n));
      if (order_ > kEnumerable * 16)
        order_ = kEnumerable * 16 + 1;
      else
        order_ *= static_cast<unsigned long long>(n);
    }
  }

  const std::vector<long long>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  unsigned long long order() const { return order_; }  // saturates well above kEnumerable

  std::vector<long long> zero() const { return std::vector<long long>(rank(), 0); }

  bool contains(const std::vector<long long>& x) const {
    if (x.size() != rank()) return false;
    for (std::size_t j = 0; j < rank(); ++j)
      if (x[j] < 0 || x[j] >= factors_[j]) return false;
    return true;
  }

  std::vector<long long> element(unsigned long long index) const {
    std::vector<long long> x(rank());
    for (std::size_t j = rank(); j-- > 0;) {
      x[j] = static_cast<long long>(index % static_cast<unsigned long long>(factors_[j]));
      index /= static_cast<unsigned long long>(factors_[j]);
    }
    return x;
  }

  std::vector<long long> add(const std::vector<long long>& x,
                             const std::vector<long long>& y) const {
    std::vector<long long> r(rank());
    for (std::size_t j = 0; j < rank(); ++j) r[j] = (x[j] + y[j]) % factors_[j];
    return r;
  }

  std::vector<long long> neg(const std::vector<long long>& x) const {
    std::vector<long long> r(rank());
    for (std::size_t j = 0; j < rank(); ++j) r[j] = (factors_[j] - x[j]) % factors_[j];
    return r;
  }

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

private:
  std::vector<long long> factors_;
  unsigned long long order_ = 1;
};

/// A homomorphism between cyclic-product groups, given by an integer matrix
/// acting on residue tuples. Well-definedness m_ij * n_j ≡ 0 (mod n'_i) is
/// enforced at construction; entries are stored reduced.
class AbHom {
public:
  AbHom(FinAbGroup source, FinAbGroup target, std::vector<std::vector<long long>> matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.size() != target_.rank())
      fail("ShapeMismatch", "matrix needs one row per target factor");
    for (const auto& row : matrix_)
      if (row.size() != source_.rank())
        fail("ShapeMismatch", "matrix needs one column per source factor");
    for (std::size_t i = 0; i < matrix_.size(); ++i)
      for (std::size_t j = 0; j < matrix_[i].size(); ++j) {
        const long long ni = target_.factors()[i];
        matrix_[i][j] = ((matrix_[i][j] % ni) + ni) % ni;
      }
    for (std::size_t i = 0; i < target_.rank(); ++i)
      for (std::size_t j = 0; j < source_.rank(); ++j) {
        const long long ni = target_.factors()[i];
        const long long nj = source_.factors()[j] % ni;
        if ((matrix_[i][j] * nj) % ni != 0)
          fail("IllDefinedHom", "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") does not annihilate the source factor");
      }
  }

  static AbHom zero(const FinAbGroup& source, const FinAbGroup& target) {
    return AbHom(source, target,
                 std::vector<std::vector<long long>>(target.rank(),
                                                     std::vector<long long>(source.rank(), 0)));
  }

  static AbHom identity(const FinAbGroup& g) {
    std::vector<std::vector<long long>> m(g.rank(), std::vector<long long>(g.rank(), 0));
    for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = 1;
    return AbHom(g, g, std::move(m));
  }

  const FinAbGroup& source() const { return source_; }
  const FinAbGroup& target() const { return target_; }
  const std::vector<std::vector<long long>>& matrix() const { return matrix_; }

  /// Diagrammatic: this, then g.
  AbHom then(const AbHom& g) const {
    if (!(target_ == g.source_)) fail("NonComposable", "middle groups differ");
    std::vector<std::vector<long long>> m(g.target_.rank(),
                                          std::vector<long long>(source_.rank(), 0));
    for (std::size_t i = 0; i < g.target_.rank(); ++i)
      for (std::size_t j = 0; j < source_.rank(); ++j) {
        const long long ni = g.target_.factors()[i];
        long long acc = 0;
        for (std::size_t k = 0; k < target_.rank(); ++k)
          acc = (acc + (g.matrix_[i][k] % ni) * (matrix_[k][j] % ni)) % ni;
        m[i][j] = acc;
      }
    return AbHom(source_, g.target_, std::move(m));
  }

  friend bool operator==(const AbHom&, const AbHom&) = default;

private:
  FinAbGroup source_;
  FinAbGroup target_;
  std::vector<std::vector<long long>> matrix_;
};

inline std::vector<long long> hom_apply(const AbHom& h, const std::vector<long long>& x) {
  if (!h.source().contains(x)) fail("ElementOutOfRange", "tuple is not a source element");
  std::vector<long long> y(h.target().rank(), 0);
  for (std::size_t i = 0; i < h.target().rank(); ++i) {
    const long long ni = h.target().factors()[i];
    long long acc = 0;
    for (std::size_t j = 0; j < h.source().rank(); ++j)
      acc = (acc + h.matrix()[i][j] * (x[j] % ni)) % ni;
    y[i] = acc;
  }
  return y;
}

using ElementSet = std::set<std::vector<long long>>;

namespace detail {

inline void require_enumerable(const FinAbGroup& g) {
  if (g.order() > FinAbGroup::kEnumerable)
    fail("GroupTooLarge", "order exceeds the enumeration cap of " +
                              std::to_string(FinAbGroup::kEnumerable));
}

}  // namespace detail

inline ElementSet kernel(const AbHom& h) {
  detail::require_enumerable(h.source());
  ElementSet out;
  const std::vector<long long> zero = h.target().zero();
  for (unsigned long long i = 0; i < h.source().order(); ++i) {
    std::vector<long long> x = h.source().element(i);
    if (hom_apply(h, x) == zero) out.insert(std::move(x));
  }
  return out;
}

inline ElementSet image(const AbHom& h) {
  detail::require_enumerable(h.source());
  ElementSet out;
  for (unsigned long long i = 0; i < h.source().order(); ++i)
    out.insert(hom_apply(h, h.source().element(i)));
  return out;
}

/// Groups in storage order with maps[t]: groups[t] -> groups[t+1].
struct GradedSequence {
  std::vector<FinAbGroup> groups;
  std::vector<AbHom> maps;

  friend bool operator==(const GradedSequence&, const GradedSequence&) = default;
};

inline GradedSequence make_sequence(std::vector<FinAbGroup> groups, std::vector<AbHom> maps) {
  if (groups.empty()) fail("ShapeMismatch", "a sequence needs at least one group");
  if (maps.size() + 1 != groups.size())
    fail("ShapeMismatch", std::to_string(groups.size()) + " groups need " +
                              std::to_string(groups.size() - 1) + " maps");
  for (std::size_t t = 0; t < maps.size(); ++t)
    if (!(maps[t].source() == groups[t]) || !(maps[t].target() == groups[t + 1]))
      fail("ShapeMismatch", "map " + std::to_string(t) + " does not join its groups");
  return GradedSequence{std::move(groups), std::move(maps)};
}

/// Exactness at an interior position: the kernel of the outgoing map equals
/// the image of the incoming one.
inline bool is_exact_at(const GradedSequence& seq, std::size_t position) {
  if (position == 0 || position + 1 >= seq.groups.size())
    fail("BoundaryPosition", "position " + std::to_string(position) +
                                 " lacks an incoming or outgoing map");
  return kernel(seq.maps[position]) == image(seq.maps[position - 1]);
}

inline VerificationReport is_exact(const GradedSequence& seq) {
  VerificationReport report;
  report.task = "exactness";
  for (std::size_t t = 0; t < seq.groups.size(); ++t) {
    const std::string name = "exact_at_" + std::to_string(t);
    if (t == 0 || t + 1 >= seq.groups.size()) {
      report.add(CheckResult::skipped(name, {{"reason", "boundary, not checked"}}));
      continue;
    }
    if (is_exact_at(seq, t)) {
      report.add(CheckResult::pass(name));
    } else {
      const ElementSet ker = kernel(seq.maps[t]);
      const ElementSet img = image(seq.maps[t - 1]);
      json witness;
      for (const auto& x : ker)
        if (!img.count(x)) {
          witness = {{"in_kernel_not_image", x}};
          break;
        }
      if (witness.is_null())
        for (const auto& x : img)
          if (!ker.count(x)) {
            witness = {{"in_image_not_kernel", x}};
            break;
          }
      report.add(CheckResult::fail(name, witness));
    }
  }
  return report;
}

/// Two equal-length sequences joined by one vertical hom per level.
struct SequenceLadder {
  GradedSequence top;
  GradedSequence bottom;
  std::vector<AbHom> verticals;
};

inline VerificationReport validate_ladder(const SequenceLadder& l) {
  if (l.top.groups.size() != l.bottom.groups.size())
    fail("ShapeMismatch", "ladder sides have different lengths");
  if (l.verticals.size() != l.top.groups.size())
    fail("ShapeMismatch", "one vertical per level required");
  for (std::size_t t = 0; t < l.verticals.size(); ++t)
    if (!(l.verticals[t].source() == l.top.groups[t]) ||
        !(l.verticals[t].target() == l.bottom.groups[t]))
      fail("ShapeMismatch", "vertical " + std::to_string(t) + " does not join its levels");

  VerificationReport report;
  report.task = "ladder";
  for (std::size_t t = 0; t + 1 < l.top.groups.size(); ++t) {
    detail::require_enumerable(l.top.groups[t]);
    const std::string name = "square_" + std::to_string(t);
    bool ok = true;
    json witness;
    for (unsigned long long i = 0; i < l.top.groups[t].order() && ok; ++i) {
      const std::vector<long long> x = l.top.groups[t].element(i);
      const auto via_bottom = hom_apply(l.bottom.maps[t], hom_apply(l.verticals[t], x));
      const auto via_top = hom_apply(l.verticals[t + 1], hom_apply(l.top.maps[t], x));
      if (via_bottom != via_top) {
        ok = false;
        witness = {{"element", x}, {"vertical_then_map", via_bottom}, {"map_then_vertical", via_top}};
      }
    }
    report.add(ok ? CheckResult::pass(name) : CheckResult::fail(name, witness));
  }
  return report;
}

/// Levelwise injective embeddings commuting with both sequences' maps.
inline bool is_subsequence(const GradedSequence& inner, const GradedSequence& outer,
                           const std::vector<AbHom>& embeddings) {
  if (inner.groups.size() != outer.groups.size())
    fail("ShapeMismatch", "sequences have different lengths");
  if (embeddings.size() != inner.groups.size())
    fail("ShapeMismatch", "one embedding per level required");
  for (std::size_t t = 0; t < embeddings.size(); ++t) {
    if (!(embeddings[t].source() == inner.groups[t]) ||
        !(embeddings[t].target() == outer.groups[t]))
      fail("ShapeMismatch", "embedding " + std::to_string(t) + " does not join its levels");
    if (inner.groups[t].rank() != outer.groups[t].rank())
      fail("ShapeMismatch", "level " + std::to_string(t) + " presentations have different ranks");
    for (std::size_t j = 0; j < inner.groups[t].rank(); ++j)
      if (outer.groups[t].factors()[j] % inner.groups[t].factors()[j] != 0)
        fail("ShapeMismatch", "inner factor must divide the outer factor at level " +
                                  std::to_string(t));
  }
  for (const AbHom& e : embeddings) {
    ElementSet ker = kernel(e);
    if (ker.size() != 1) return false;
  }
  SequenceLadder ladder{inner, outer, embeddings};
  return validate_ladder(ladder).overall_pass();
}

}  // namespace buncat
