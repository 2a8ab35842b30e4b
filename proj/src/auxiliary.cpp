#include "l1disc/auxiliary.hpp"

#include "l1disc/discrepancy.hpp"
#include "l1disc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <sstream>

namespace l1disc {

unsigned n_from_pointcount(std::size_t point_count) {
  if (point_count == 0) throw PreconditionError("n_from_pointcount needs N >= 1");
  unsigned n = 0;
  while ((std::uint64_t{1} << n) < 2 * static_cast<std::uint64_t>(point_count)) ++n;
  return n;
}

namespace {

constexpr std::uint64_t make_key(unsigned long x, unsigned long y) {
  return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint64_t>(y);
}

Integer shift_left(const Integer& v, unsigned bits) {
  Integer r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), bits);
  return r;
}

Integer shift_right(const Integer& v, unsigned bits) {
  Integer r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), v.get_mpz_t(), bits);
  return r;
}

// Cells at `cell_scale` meeting the dyadic interval (qscale, qindex): [lo, lo + count).
std::pair<Integer, unsigned long> cell_range(unsigned qscale, const Integer& qindex, unsigned cell_scale) {
  if (qscale >= cell_scale) return {shift_right(qindex, qscale - cell_scale), 1UL};
  return {shift_left(qindex, cell_scale - qscale), 1UL << (cell_scale - qscale)};
}

TreeNode make_node(DyadicRectangle rect) { return TreeNode{std::move(rect), {}, TreeNode::kNoParent, {}, std::nullopt}; }

bool inside_unit_cells(const Point& p) { return p.x < 1 && p.y < 1; }

void mark_cluster(TreeNode& node, const PointSet& points) {
  const Point& first = points[node.points.front()];
  for (std::size_t k : node.points)
    if (!(points[k] == first)) {
      node.cluster.reset();
      return;
    }
  node.cluster = first;
}

bool level_is_stable(const LevelRecord& level) {
  return std::all_of(level.nonempty.begin(), level.nonempty.end(),
                     [](const TreeNode& node) { return node.cluster.has_value(); });
}

}  // namespace

std::optional<std::size_t> AuxFamilyTree::find_root(const Integer& xi, const Integer& yi) const {
  if (!xi.fits_ulong_p() || !yi.fits_ulong_p()) return std::nullopt;
  auto it = roots_.find(make_key(xi.get_ui(), yi.get_ui()));
  if (it == roots_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> AuxFamilyTree::find_child(unsigned level, std::size_t node, unsigned long lx,
                                                     unsigned long ly) const {
  const auto& children = levels_.at(level).nonempty.at(node).children;
  auto it = children.find(make_key(lx, ly));
  if (it == children.end()) return std::nullopt;
  return it->second;
}

void AuxFamilyTree::drop_root_for_testing() {
  if (roots_.empty()) return;
  auto first = std::min_element(roots_.begin(), roots_.end(),
                                [](const auto& a, const auto& b) { return a.second < b.second; });
  roots_.erase(first);
}

AuxFamilyTree build_tree(const PointSet& points, unsigned i, const TreeOptions& options) {
  AuxFamilyTree tree;
  tree.point_count_ = points.size();
  tree.n_ = n_from_pointcount(points.size());
  tree.index_ = i;
  const unsigned n = tree.n_;
  if (i > n) throw PreconditionError("auxiliary index i=" + std::to_string(i) + " exceeds n=" + std::to_string(n));
  if (n > 31) throw ResourceLimitError("auxiliary trees support n <= 31");
  if (options.max_level && *options.max_level > kMaxTreeLevel)
    throw PreconditionError("max_level exceeds the hard cap " + std::to_string(kMaxTreeLevel));

  const unsigned bits = n + 1;
  LevelRecord level0;
  level0.level = 0;
  level0.rect_area = ldexp(Rational(1), -static_cast<long>(n));
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point& p = points[k];
    if (!inside_unit_cells(p)) continue;
    const Integer xi = floor_scaled(p.x, i);
    const Integer yi = floor_scaled(p.y, n - i);
    const std::uint64_t key = make_key(xi.get_ui(), yi.get_ui());
    auto [it, inserted] = tree.roots_.try_emplace(key, level0.nonempty.size());
    if (inserted) level0.nonempty.push_back(make_node(DyadicRectangle{DyadicInterval(i, xi), DyadicInterval(n - i, yi)}));
    level0.nonempty[it->second].points.push_back(k);
  }
  for (TreeNode& node : level0.nonempty) mark_cluster(node, points);
  level0.empty_count = pow2(n) - static_cast<unsigned long>(level0.nonempty.size());
  tree.levels_.push_back(std::move(level0));

  const Integer children_per_node = pow2(2 * bits);
  for (unsigned level = 0;; ++level) {
    if (!tree.l_star_ && level_is_stable(tree.levels_.back())) tree.l_star_ = level;
    unsigned target = kMaxTreeLevel;
    if (options.max_level) {
      target = *options.max_level;
    } else if (tree.l_star_) {
      target = std::min(kMaxTreeLevel, *tree.l_star_ + 2);
    }
    if (level >= target) break;

    LevelRecord next;
    next.level = level + 1;
    next.rect_area = ldexp(tree.levels_.back().rect_area, -2L * bits);
    const unsigned sx = tree.x_scale(level + 1);
    const unsigned sy = tree.y_scale(level + 1);
    std::vector<TreeNode>& parents = tree.levels_.back().nonempty;
    for (std::size_t pi = 0; pi < parents.size(); ++pi) {
      TreeNode& parent = parents[pi];
      const Integer bx = shift_left(parent.rect.x.index(), bits);
      const Integer by = shift_left(parent.rect.y.index(), bits);
      for (std::size_t k : parent.points) {
        const Point& p = points[k];
        const Integer gx = floor_scaled(p.x, sx);
        const Integer gy = floor_scaled(p.y, sy);
        const std::uint64_t key = make_key(Integer(gx - bx).get_ui(), Integer(gy - by).get_ui());
        auto [it, inserted] = parent.children.try_emplace(key, next.nonempty.size());
        if (inserted) {
          TreeNode child = make_node(DyadicRectangle{DyadicInterval(sx, gx), DyadicInterval(sy, gy)});
          child.parent = pi;
          next.nonempty.push_back(std::move(child));
        }
        next.nonempty[it->second].points.push_back(k);
      }
    }
    for (TreeNode& node : next.nonempty) mark_cluster(node, points);
    next.empty_count =
        children_per_node * static_cast<unsigned long>(parents.size()) - static_cast<unsigned long>(next.nonempty.size());
    tree.levels_.push_back(std::move(next));
  }
  if (tree.l_star_ && *tree.l_star_ > tree.depth()) tree.l_star_.reset();
  return tree;
}

void AuxFamilyTree::for_each_leaf(const DyadicRectangle& query, unsigned depth, const LeafVisitor& visit) const {
  if (depth > this->depth()) throw PreconditionError("for_each_leaf below the built depth");
  const auto [x0, xcount] = cell_range(query.x.scale(), query.x.index(), x_scale(0));
  const auto [y0, ycount] = cell_range(query.y.scale(), query.y.index(), y_scale(0));
  for (unsigned long dx = 0; dx < xcount; ++dx)
    for (unsigned long dy = 0; dy < ycount; ++dy) {
      const Integer xi = x0 + dx;
      const Integer yi = y0 + dy;
      DyadicRectangle cell{DyadicInterval(x_scale(0), xi), DyadicInterval(y_scale(0), yi)};
      const auto root = find_root(xi, yi);
      if (!root) {
        visit(cell, true);
      } else if (depth == 0) {
        visit(cell, false);
      } else {
        visit_children(query, 0, *root, depth, visit);
      }
    }
}

void AuxFamilyTree::visit_children(const DyadicRectangle& query, unsigned level, std::size_t node, unsigned depth,
                                   const LeafVisitor& visit) const {
  const unsigned bits = n_ + 1;
  const TreeNode& parent = levels_[level].nonempty[node];
  const unsigned sx = x_scale(level + 1);
  const unsigned sy = y_scale(level + 1);
  const Integer bx = shift_left(parent.rect.x.index(), bits);
  const Integer by = shift_left(parent.rect.y.index(), bits);
  // Query meets the parent: it either covers the parent on an axis or picks a sub-block.
  auto local_range = [bits](unsigned qscale, const Integer& qindex, unsigned parent_scale, const Integer& base) {
    if (qscale <= parent_scale) return std::pair<unsigned long, unsigned long>{0UL, 1UL << bits};
    auto [lo, count] = cell_range(qscale, qindex, parent_scale + bits);
    return std::pair<unsigned long, unsigned long>{Integer(lo - base).get_ui(), count};
  };
  const auto [lx0, xcount] = local_range(query.x.scale(), query.x.index(), x_scale(level), bx);
  const auto [ly0, ycount] = local_range(query.y.scale(), query.y.index(), y_scale(level), by);
  const unsigned long block = 1UL << bits;
  for (unsigned long dx = 0; dx < xcount && lx0 + dx < block; ++dx)
    for (unsigned long dy = 0; dy < ycount && ly0 + dy < block; ++dy) {
      const unsigned long lx = lx0 + dx;
      const unsigned long ly = ly0 + dy;
      auto it = parent.children.find(make_key(lx, ly));
      if (it == parent.children.end()) {
        visit(DyadicRectangle{DyadicInterval(sx, bx + lx), DyadicInterval(sy, by + ly)}, true);
      } else if (level + 1 == depth) {
        visit(levels_[level + 1].nonempty[it->second].rect, false);
      } else {
        visit_children(query, level + 1, it->second, depth, visit);
      }
    }
}

FValue eval_f_i(const AuxFamilyTree& tree, const Rational& x, const Rational& y, const EvalOptions& options) {
  if (x < 0 || x >= 1 || y < 0 || y >= 1) throw DomainError("eval_f_i needs (x, y) in [0,1)^2");
  const unsigned bits = tree.n() + 1;
  const Integer xi = floor_scaled(x, tree.x_scale(0));
  const Integer yi = floor_scaled(y, tree.y_scale(0));
  auto root = tree.find_root(xi, yi);
  if (!root) {
    const DyadicRectangle cell{DyadicInterval(tree.x_scale(0), xi), DyadicInterval(tree.y_scale(0), yi)};
    return FValue{haar_value(cell, x, y), false};
  }
  std::size_t node = *root;
  unsigned level = 0;
  while (level < tree.depth()) {
    const TreeNode& parent = tree.levels()[level].nonempty[node];
    const unsigned sx = tree.x_scale(level + 1);
    const unsigned sy = tree.y_scale(level + 1);
    const Integer gx = floor_scaled(x, sx);
    const Integer gy = floor_scaled(y, sy);
    const unsigned long lx = Integer(gx - shift_left(parent.rect.x.index(), bits)).get_ui();
    const unsigned long ly = Integer(gy - shift_left(parent.rect.y.index(), bits)).get_ui();
    auto child = tree.find_child(level, node, lx, ly);
    if (!child) {
      const DyadicRectangle cell{DyadicInterval(sx, gx), DyadicInterval(sy, gy)};
      return FValue{haar_value(cell, x, y), false};
    }
    node = *child;
    ++level;
  }
  const TreeNode& leaf = tree.levels()[level].nonempty[node];
  if (!options.analytic_tail || !tree.stabilized() || !leaf.cluster) return FValue{1, true};
  // Past the built levels the only nonempty child is the one holding the cluster.
  const Point& c = *leaf.cluster;
  if (c.x == x && c.y == y) return FValue{1, true};
  for (unsigned l = level + 1;; ++l) {
    const unsigned sx = tree.x_scale(l);
    const unsigned sy = tree.y_scale(l);
    const Integer gx = floor_scaled(x, sx);
    const Integer gy = floor_scaled(y, sy);
    if (gx != floor_scaled(c.x, sx) || gy != floor_scaled(c.y, sy)) {
      const DyadicRectangle cell{DyadicInterval(sx, gx), DyadicInterval(sy, gy)};
      return FValue{haar_value(cell, x, y), false};
    }
  }
}

Rational uncovered_mass(std::size_t point_count, unsigned n, unsigned level) {
  return ldexp(Rational(static_cast<unsigned long>(point_count)), -static_cast<long>(n + 2 * (n + 1) * level));
}

Rational sum_area_squared(const AuxFamilyTree& tree) {
  Rational sum = 0;
  for (const LevelRecord& level : tree.levels()) sum += Rational(level.empty_count) * level.rect_area * level.rect_area;
  if (!tree.stabilized()) return sum;
  // Beyond the last built level every nonempty rectangle has one nonempty child:
  // (2^(2(n+1)) - 1) c empty rectangles per level with |R|^2 = 2^-2n r^l, r = 2^(-4(n+1)).
  const unsigned n = tree.n();
  const LevelRecord& last = tree.levels().back();
  const Rational c(static_cast<unsigned long>(last.nonempty.size()));
  const Rational r = ldexp(Rational(1), -4L * (n + 1));
  const Rational per_level = Rational(pow2(2 * (n + 1)) - 1) * c * ldexp(Rational(1), -2L * n);
  Rational r_pow = 1;
  mpz_pow_ui(r_pow.get_den_mpz_t(), r.get_den_mpz_t(), tree.depth() + 1);
  sum += per_level * r_pow / (1 - r);
  return sum;
}

InnerProduct inner_product_D_fi(const PointSet& points, const AuxFamilyTree& tree, bool allow_error_interval) {
  if (points.size() != tree.point_count()) throw PreconditionError("tree was built for a different point set");
  const Rational scale = Rational(static_cast<unsigned long>(points.size())) / 16;
  InnerProduct out;
  out.value = -scale * sum_area_squared(tree);
  if (tree.stabilized()) return out;
  if (!allow_error_interval)
    throw PreconditionError("tree i=" + std::to_string(tree.index()) +
                            " is not stabilized; request the error-interval mode");
  // Deeper empty rectangles lie inside C^L and are no larger than level L+1 ones.
  const LevelRecord& last = tree.levels().back();
  const Rational next_area = ldexp(last.rect_area, -2L * (tree.n() + 1));
  out.error = scale * next_area * Rational(static_cast<unsigned long>(last.nonempty.size())) * last.rect_area;
  out.exact = false;
  return out;
}

Rational inner_product_D_fi0(const PointSet& points, unsigned i) {
  const AuxFamilyTree tree = build_tree(points, i, TreeOptions{0});
  const unsigned n = tree.n();
  const LevelRecord& level0 = tree.levels().front();
  return -Rational(static_cast<unsigned long>(points.size())) / 16 * Rational(level0.empty_count) *
         ldexp(Rational(1), -2L * n);
}

Rational lemma_short_bound(std::size_t point_count) {
  const unsigned n = n_from_pointcount(point_count);
  const Rational big_n(static_cast<unsigned long>(point_count));
  return -Rational(pow2(n) - static_cast<unsigned long>(point_count)) * big_n * ldexp(Rational(1), -2L * n) / 16;
}

ProductCheckReport product_integral_bound_check(const PointSet& points, std::span<const unsigned> indices,
                                                unsigned level, std::size_t piece_cap, Exec exec) {
  if (indices.size() < 2) throw PreconditionError("product check needs p >= 2 indices");
  const unsigned n = n_from_pointcount(points.size());
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] > n) throw PreconditionError("index exceeds n");
    if (t > 0 && indices[t] <= indices[t - 1]) throw PreconditionError("indices must be strictly increasing");
  }
  std::vector<AuxFamilyTree> trees;
  for (unsigned i : indices) trees.push_back(build_tree(points, i, TreeOptions{level}));

  std::vector<kernels::ProductPiece> pieces;
  auto guard = [&](std::size_t count) {
    if (count > piece_cap)
      throw ResourceLimitError("intersection pieces exceed the cap of " + std::to_string(piece_cap));
  };
  trees.front().for_each_leaf(DyadicRectangle{DyadicInterval::unit(), DyadicInterval::unit()}, level,
                              [&](const DyadicRectangle& leaf, bool empty) {
                                if (!empty) return;
                                pieces.push_back({leaf, {leaf}});
                                guard(pieces.size());
                              });
  for (std::size_t t = 1; t < trees.size(); ++t) {
    std::vector<kernels::ProductPiece> next;
    for (const kernels::ProductPiece& piece : pieces) {
      trees[t].for_each_leaf(piece.rect, level, [&](const DyadicRectangle& leaf, bool empty) {
        if (!empty) return;
        auto meet = intersect(piece.rect, leaf);
        if (!meet) throw InternalError("leaf enumeration returned a disjoint rectangle");
        kernels::ProductPiece joined{*meet, piece.factors};
        joined.factors.push_back(leaf);
        next.push_back(std::move(joined));
        guard(next.size());
      });
    }
    pieces = std::move(next);
  }

  const kernels::PieceIntegrals sums = kernels::integrate_pieces(pieces, points, exec);
  ProductCheckReport report;
  report.indices.assign(indices.begin(), indices.end());
  report.level = level;
  report.n = n;
  report.point_count = points.size();
  report.pieces = pieces.size();
  report.covered_area = sums.covered_area;
  report.uncovered_area = 1 - sums.covered_area;
  report.uncovered_bound = Rational(static_cast<unsigned long>(indices.size())) * uncovered_mass(points.size(), n, level);
  report.product_integral = sums.product_integral;
  report.d_product_integral = sums.d_product_integral;
  report.abs_term_sum = sums.abs_term_sum;
  report.lemma_bound = ldexp(Rational(static_cast<unsigned long>(points.size())) / 16,
                             static_cast<long>(indices.front()) - static_cast<long>(indices.back()) -
                                 static_cast<long>(n));
  report.error_term = Rational(static_cast<unsigned long>(points.size())) * report.uncovered_area;
  report.sides_distinct = sums.sides_distinct;
  report.product_is_haar = sums.product_is_haar;
  report.part_a = report.product_integral == 0 && report.uncovered_area >= 0 &&
                  report.uncovered_area <= report.uncovered_bound;
  report.part_b = abs(report.d_product_integral) <= report.lemma_bound + report.error_term &&
                  report.abs_term_sum <= report.lemma_bound;
  return report;
}

bool LemmaReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.passed; });
}

namespace {

std::string rect_string(const DyadicRectangle& r) {
  std::ostringstream os;
  os << "[" << r.x.left().to_rational() << "," << r.x.right().to_rational() << ")x[" << r.y.left().to_rational()
     << "," << r.y.right().to_rational() << ")";
  return os.str();
}

std::string subject_for(unsigned i) { return "i=" + std::to_string(i); }

// Every point inside [0,1)^2 must lie in a nonempty rectangle at every built level.
LemmaCheck check_construction(const PointSet& points, const AuxFamilyTree& tree) {
  LemmaCheck c{"construction", subject_for(tree.index()), true, {}};
  const unsigned n = tree.n();
  const auto& levels = tree.levels();
  for (std::size_t l = 0; l < levels.size() && c.passed; ++l) {
    const LevelRecord& rec = levels[l];
    const Integer expected_total = l == 0 ? pow2(n)
                                          : pow2(2 * (n + 1)) * static_cast<unsigned long>(levels[l - 1].nonempty.size());
    if (rec.empty_count + static_cast<unsigned long>(rec.nonempty.size()) != expected_total) {
      c.passed = false;
      c.witness = "level " + std::to_string(l) + ": empty + nonempty != expected rectangle count";
    }
    if (rec.nonempty.size() > points.size()) {
      c.passed = false;
      c.witness = "level " + std::to_string(l) + ": more nonempty rectangles than points";
    }
    for (const TreeNode& node : rec.nonempty) {
      if (node.rect.x.length() * node.rect.y.length() != rec.rect_area ||
          node.rect.x.scale() != tree.x_scale(static_cast<unsigned>(l))) {
        c.passed = false;
        c.witness = "level " + std::to_string(l) + ": rectangle " + rect_string(node.rect) + " has the wrong shape";
        break;
      }
      if (l > 0 && !(levels[l - 1].nonempty[node.parent].rect.x.contains(node.rect.x) &&
                     levels[l - 1].nonempty[node.parent].rect.y.contains(node.rect.y))) {
        c.passed = false;
        c.witness = "level " + std::to_string(l) + ": rectangle " + rect_string(node.rect) + " escapes its parent";
        break;
      }
    }
  }
  // Direct descent: a point never sits in an empty rectangle.
  for (std::size_t k = 0; k < points.size() && c.passed; ++k) {
    const Point& p = points[k];
    if (!(p.x < 1 && p.y < 1)) continue;
    auto node = tree.find_root(floor_scaled(p.x, tree.x_scale(0)), floor_scaled(p.y, tree.y_scale(0)));
    for (unsigned l = 0; c.passed; ++l) {
      if (!node) {
        c.passed = false;
        const DyadicRectangle cell{DyadicInterval(tree.x_scale(l), floor_scaled(p.x, tree.x_scale(l))),
                                   DyadicInterval(tree.y_scale(l), floor_scaled(p.y, tree.y_scale(l)))};
        std::ostringstream os;
        os << "point #" << k << " (" << p.x << ", " << p.y << ") lies in the empty rectangle " << rect_string(cell)
           << " at level " << l;
        c.witness = os.str();
        break;
      }
      if (l == tree.depth()) break;
      const TreeNode& parent = tree.levels()[l].nonempty[*node];
      const unsigned bits = tree.n() + 1;
      const Integer gx = floor_scaled(p.x, tree.x_scale(l + 1));
      const Integer gy = floor_scaled(p.y, tree.y_scale(l + 1));
      Integer bx, by;
      mpz_mul_2exp(bx.get_mpz_t(), parent.rect.x.index().get_mpz_t(), bits);
      mpz_mul_2exp(by.get_mpz_t(), parent.rect.y.index().get_mpz_t(), bits);
      node = tree.find_child(l, *node, Integer(gx - bx).get_ui(), Integer(gy - by).get_ui());
    }
  }
  if (c.passed) c.witness = "every point in [0,1)^2 lies in a nonempty rectangle at levels 0.." + std::to_string(tree.depth());
  return c;
}

LemmaCheck check_setzerocalc(const PointSet& points, const AuxFamilyTree& tree) {
  LemmaCheck c{"setzerocalc", subject_for(tree.index()), true, {}};
  const unsigned n = tree.n();
  Rational previous = 2;
  for (const LevelRecord& rec : tree.levels()) {
    Rational area_sum = 0;
    for (const TreeNode& node : rec.nonempty) area_sum += node.rect.area();
    const Rational formula = Rational(static_cast<unsigned long>(rec.nonempty.size())) *
                             ldexp(Rational(1), -static_cast<long>(n + 2 * (n + 1) * rec.level));
    if (area_sum != formula || area_sum > uncovered_mass(points.size(), n, rec.level) ||
        (area_sum >= previous && area_sum != 0)) {
      c.passed = false;
      c.witness = "level " + std::to_string(rec.level) + ": covered area " + area_sum.get_str() +
                  " breaks the measure bound";
      break;
    }
    previous = area_sum;
  }
  if (c.passed)
    c.witness = "uncovered area after level " + std::to_string(tree.depth()) + " <= " +
                uncovered_mass(points.size(), n, tree.depth()).get_str();
  return c;
}

LemmaCheck check_squareone(const AuxFamilyTree& tree, const LemmaOptions& options) {
  LemmaCheck c{"squareone", subject_for(tree.index()), true, {}};
  // Exact partition: E rectangles up to depth plus C^depth tile the square.
  Rational total = 0;
  for (const LevelRecord& rec : tree.levels()) total += Rational(rec.empty_count) * rec.rect_area;
  total += Rational(static_cast<unsigned long>(tree.levels().back().nonempty.size())) * tree.levels().back().rect_area;
  if (total != 1) {
    c.passed = false;
    c.witness = "E and C rectangles cover area " + total.get_str() + " instead of 1";
    return c;
  }
  std::mt19937_64 rng(options.seed * 7919 + tree.index());
  std::size_t truncated = 0;
  for (std::size_t s = 0; s < options.samples; ++s) {
    const Rational x = ldexp(Rational(Integer(static_cast<unsigned long>(rng() >> 11))), -53);
    const Rational y = ldexp(Rational(Integer(static_cast<unsigned long>(rng() >> 11))), -53);
    const FValue v = eval_f_i(tree, x, y);
    if (v.value != 1 && v.value != -1) {
      c.passed = false;
      std::ostringstream os;
      os << "f_i(" << x << ", " << y << ") = " << v.value;
      c.witness = os.str();
      return c;
    }
    truncated += v.truncated ? 1 : 0;
  }
  const double mass = to_double(uncovered_mass(tree.point_count(), tree.n(), tree.depth()));
  const double m = static_cast<double>(std::max<std::size_t>(options.samples, 1));
  const double sigma = std::sqrt(std::max(mass * (1 - mass), 1.0 / m) / m);
  if (static_cast<double>(truncated) / m > mass + 3 * sigma) {
    c.passed = false;
    c.witness = std::to_string(truncated) + " truncated samples exceed the uncovered mass";
  } else {
    c.witness = std::to_string(options.samples) + " samples, |f_i| = 1, " + std::to_string(truncated) + " truncated";
  }
  return c;
}

LemmaCheck check_short(const PointSet& points, const AuxFamilyTree& tree, const LemmaOptions& options) {
  LemmaCheck c{"short", subject_for(tree.index()), true, {}};
  const Rational n_points(static_cast<unsigned long>(points.size()));
  // Per-rectangle identity on every level-0 empty rectangle and on a sample of deeper ones.
  Rational level0_sum = 0;
  std::size_t checked = 0;
  auto check_rect = [&](const DyadicRectangle& rect) {
    const Rational area = rect.area();
    const Rational via_kernel = haar_inner_product(points, rect);
    ++checked;
    if (via_kernel != -n_points * area * area / 16) {
      c.passed = false;
      c.witness = "empty rectangle " + rect_string(rect) + " gives " + via_kernel.get_str();
    }
    return via_kernel;
  };
  tree.for_each_leaf(DyadicRectangle{DyadicInterval::unit(), DyadicInterval::unit()}, 0,
                     [&](const DyadicRectangle& leaf, bool empty) {
                       if (empty && c.passed) level0_sum += check_rect(leaf);
                     });
  if (!c.passed) return c;
  const LevelRecord& l0 = tree.levels().front();
  if (level0_sum != -n_points / 16 * Rational(l0.empty_count) * l0.rect_area * l0.rect_area) {
    c.passed = false;
    c.witness = "level-0 Haar sum " + level0_sum.get_str() + " disagrees with the closed form";
    return c;
  }
  if (tree.depth() >= 1) {
    std::mt19937_64 rng(options.seed + 104729 * (tree.index() + 1));
    std::size_t budget = 64;
    const auto& parents = tree.levels()[0].nonempty;
    for (std::size_t s = 0; s < parents.size() * 4 && budget > 0 && c.passed; ++s) {
      const TreeNode& parent = parents[rng() % parents.size()];
      const unsigned bits = tree.n() + 1;
      const unsigned long lx = rng() % (1UL << bits);
      const unsigned long ly = rng() % (1UL << bits);
      if (parent.children.contains((static_cast<std::uint64_t>(lx) << 32) | ly)) continue;
      check_rect(DyadicRectangle{parent.rect.x.child(bits, Integer(lx)), parent.rect.y.child(bits, Integer(ly))});
      --budget;
    }
    if (!c.passed) return c;
  }
  const InnerProduct ip = inner_product_D_fi(points, tree, true);
  const Rational bound = lemma_short_bound(points.size());
  // The true value is <= ip.value, so ip.value <= bound suffices.
  if (ip.value > bound) {
    c.passed = false;
    c.witness = "integral D f_i = " + ip.value.get_str() + " > " + bound.get_str();
  } else {
    c.witness = "integral D f_i = " + ip.value.get_str() + (ip.exact ? "" : " (upper end)") + " <= " +
                bound.get_str() + "; " + std::to_string(checked) + " rectangles checked";
  }
  return c;
}

std::vector<std::vector<unsigned>> product_tuples(unsigned n, bool full) {
  std::vector<std::vector<unsigned>> tuples;
  if (full) {
    for (unsigned a = 0; a <= n; ++a)
      for (unsigned b = a + 1; b <= n; ++b) {
        tuples.push_back({a, b});
        for (unsigned c = b + 1; c <= n; ++c) tuples.push_back({a, b, c});
      }
    return tuples;
  }
  tuples.push_back({0, 1});
  tuples.push_back({0, n});
  tuples.push_back({n - 1, n});
  if (n >= 2) tuples.push_back({0, n / 2, n});
  return tuples;
}

std::string tuple_string(const std::vector<unsigned>& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + std::to_string(t[k]);
  return s + ")";
}

}  // namespace

LemmaReport lemma_suite(const PointSet& points, const LemmaOptions& options) {
  if (points.empty()) throw PreconditionError("lemma_suite needs N >= 1");
  LemmaReport report;
  report.point_count = points.size();
  report.n = n_from_pointcount(points.size());
  const unsigned n = report.n;

  std::vector<AuxFamilyTree> trees(n + 1);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (options.exec == Exec::parallel)
  for (unsigned i = 0; i <= n; ++i) {
    try {
      trees[i] = build_tree(points, i, TreeOptions{options.max_level});
    } catch (...) {
#pragma omp critical(l1disc_lemma_build)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  if (options.corrupt_tree) trees[0].drop_root_for_testing();

  for (const AuxFamilyTree& tree : trees) {
    report.checks.push_back(check_construction(points, tree));
    report.checks.push_back(check_setzerocalc(points, tree));
    report.checks.push_back(check_squareone(tree, options));
    report.checks.push_back(check_short(points, tree, options));
  }

  if (n >= 1) {
    const bool full = n <= options.full_product_max_n;
    for (const auto& tuple : product_tuples(n, full)) {
      unsigned level = full ? options.product_level : std::min(1u, options.product_level);
      LemmaCheck c{"long", tuple_string(tuple), false, {}};
      for (;;) {
        try {
          const ProductCheckReport r = product_integral_bound_check(points, tuple, level, options.piece_cap, options.exec);
          c.passed = r.passed();
          std::ostringstream os;
          os << "L=" << level << " pieces=" << r.pieces << " int prod f=" << r.product_integral
             << " uncovered=" << r.uncovered_area << "<=" << r.uncovered_bound << " |int D prod f|<="
             << r.abs_term_sum << "<=" << r.lemma_bound << " (+" << r.error_term << ")";
          if (!r.sides_distinct) os << " side lengths collide";
          if (!r.product_is_haar) os << " product is not a signed Haar function";
          c.witness = os.str();
          break;
        } catch (const ResourceLimitError&) {
          if (level == 0) {
            c.passed = true;
            c.witness = "skipped: piece cap exceeded even at L=0";
            break;
          }
          --level;
        }
      }
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

}  // namespace l1disc
