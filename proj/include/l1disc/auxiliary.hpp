#pragma once

// Recursive empty/nonempty rectangle families behind the modified Roth
// auxiliary functions f_i, their exact inner products with D_P, and the
// checks of the lemmas they satisfy.

#include "l1disc/dyadic.hpp"
#include "l1disc/kernels.hpp"
#include "l1disc/pointset.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace l1disc {

/// The unique n with 2^(n-1) < 2N <= 2^n.
unsigned n_from_pointcount(std::size_t point_count);

struct TreeNode {
  static constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

  DyadicRectangle rect;
  std::vector<std::size_t> points;  // indices into the PointSet
  std::size_t parent = kNoParent;
  // (local x << 32 | local y) of a nonempty child -> its index in the next level
  std::unordered_map<std::uint64_t, std::size_t> children;
  std::optional<Point> cluster;  // set when all points coincide
};

struct LevelRecord {
  unsigned level = 0;
  std::vector<TreeNode> nonempty;  // C_i^l
  Integer empty_count;             // #E_i^l
  Rational rect_area;              // 2^-n 2^(-2(n+1) l)
};

inline constexpr unsigned kMaxTreeLevel = 64;

struct TreeOptions {
  /// Levels to build. Unset: stabilization level + 2, capped at kMaxTreeLevel.
  std::optional<unsigned> max_level;
};

class AuxFamilyTree {
 public:
  unsigned index() const noexcept { return index_; }
  unsigned n() const noexcept { return n_; }
  std::size_t point_count() const noexcept { return point_count_; }
  const std::vector<LevelRecord>& levels() const noexcept { return levels_; }
  unsigned depth() const { return static_cast<unsigned>(levels_.size() - 1); }
  bool stabilized() const noexcept { return l_star_.has_value(); }
  std::optional<unsigned> l_star() const noexcept { return l_star_; }

  unsigned x_scale(unsigned level) const { return index_ + (n_ + 1) * level; }
  unsigned y_scale(unsigned level) const { return n_ - index_ + (n_ + 1) * level; }

  /// Level-0 node containing the cell (xi, yi), if nonempty.
  std::optional<std::size_t> find_root(const Integer& xi, const Integer& yi) const;
  /// Child of a level-`level` node at local offset (lx, ly), if nonempty.
  std::optional<std::size_t> find_child(unsigned level, std::size_t node, unsigned long lx,
                                        unsigned long ly) const;

  using LeafVisitor = std::function<void(const DyadicRectangle& leaf, bool empty)>;
  /// Visits every leaf of the tree truncated at `depth` that meets `query`:
  /// rectangles of E_i^l (l <= depth, empty = true) and of C_i^depth (empty = false).
  void for_each_leaf(const DyadicRectangle& query, unsigned depth, const LeafVisitor& visit) const;

  /// Test hook: reclassifies the first nonempty level-0 rectangle as empty.
  void drop_root_for_testing();

 private:
  friend AuxFamilyTree build_tree(const PointSet& points, unsigned i, const TreeOptions& options);

  void visit_children(const DyadicRectangle& query, unsigned level, std::size_t node, unsigned depth,
                      const LeafVisitor& visit) const;

  unsigned index_ = 0;
  unsigned n_ = 0;
  std::size_t point_count_ = 0;
  std::vector<LevelRecord> levels_;
  std::unordered_map<std::uint64_t, std::size_t> roots_;
  std::optional<unsigned> l_star_;
};

/// Builds E_i^l and C_i^l level by level. Points with a coordinate equal to 1
/// lie in no half-open cell and never make a rectangle nonempty.
AuxFamilyTree build_tree(const PointSet& points, unsigned i, const TreeOptions& options = {});

struct FValue {
  int value = 1;
  bool truncated = false;  // query fell in the residual set, where f_i := 1
};

struct EvalOptions {
  /// On stabilized trees, keep descending past the built levels along the point clusters.
  bool analytic_tail = true;
};

/// f_i(x, y) for (x, y) in [0,1)^2.
FValue eval_f_i(const AuxFamilyTree& tree, const Rational& x, const Rational& y, const EvalOptions& options = {});

/// N 2^(-n - 2(n+1) L): bound on the area not yet covered by E_i after L levels.
Rational uncovered_mass(std::size_t point_count, unsigned n, unsigned level);

/// Sum over R in E_i of |R|^2. Exact (closed geometric tail) on stabilized
/// trees; otherwise the partial sum over built levels.
Rational sum_area_squared(const AuxFamilyTree& tree);

/// The true value lies in [value - error, value]; error = 0 when exact.
struct InnerProduct {
  Rational value;
  Rational error;
  bool exact = true;
};

/// Integral of D_P f_i = -(N/16) sum_{R in E_i} |R|^2. On an unstabilized tree
/// throws PreconditionError unless allow_error_interval is set.
InnerProduct inner_product_D_fi(const PointSet& points, const AuxFamilyTree& tree,
                                bool allow_error_interval = false);

/// Integral of D_P f_i^0 for the level-0 (original Roth) function.
Rational inner_product_D_fi0(const PointSet& points, unsigned i);

/// Lemma-short bound -(2^n - N) N 2^(-2n) / 16.
Rational lemma_short_bound(std::size_t point_count);

struct ProductCheckReport {
  std::vector<unsigned> indices;
  unsigned level = 0;
  unsigned n = 0;
  std::size_t point_count = 0;
  std::size_t pieces = 0;
  Rational covered_area;
  Rational uncovered_area;
  Rational uncovered_bound;  // p * uncovered_mass
  Rational product_integral;
  Rational d_product_integral;
  Rational abs_term_sum;
  Rational lemma_bound;  // 2^(i1 - ip) N 2^-n / 16
  Rational error_term;   // N * uncovered_area bounds the uncovered part of the D-integral
  bool sides_distinct = false;
  bool product_is_haar = false;
  bool part_a = false;
  bool part_b = false;

  bool passed() const { return part_a && part_b && sides_distinct && product_is_haar; }
};

inline constexpr std::size_t kDefaultPieceCap = 4'000'000;

/// Integrates prod f_{i_t} and D prod f_{i_t} over the region covered by all
/// trees truncated at `level`. Throws ResourceLimitError past `piece_cap`.
ProductCheckReport product_integral_bound_check(const PointSet& points, std::span<const unsigned> indices,
                                                unsigned level, std::size_t piece_cap = kDefaultPieceCap,
                                                Exec exec = Exec::parallel);

struct LemmaCheck {
  std::string lemma;
  std::string subject;
  bool passed = false;
  std::string witness;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  std::size_t point_count = 0;
  unsigned n = 0;

  bool passed() const;
};

struct LemmaOptions {
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
  unsigned product_level = 2;
  /// Full pair/triple coverage up to this n; larger n uses sampled tuples at level 1.
  unsigned full_product_max_n = 4;
  std::size_t piece_cap = kDefaultPieceCap;
  std::optional<unsigned> max_level;
  bool corrupt_tree = false;
  Exec exec = Exec::parallel;
};

LemmaReport lemma_suite(const PointSet& points, const LemmaOptions& options = {});

}  // namespace l1disc
