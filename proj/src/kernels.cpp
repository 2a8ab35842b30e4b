#include "l1disc/kernels.hpp"

#include "l1disc/discrepancy.hpp"
#include "l1disc/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <random>

namespace l1disc {

CellDecomposition decompose(const PointSet& points) {
  CellDecomposition cells;
  cells.x_cuts = {Rational(0), Rational(1)};
  cells.y_cuts = {Rational(0), Rational(1)};
  for (const Point& p : points) {
    cells.x_cuts.push_back(p.x);
    cells.y_cuts.push_back(p.y);
  }
  for (auto* cuts : {&cells.x_cuts, &cells.y_cuts}) {
    std::sort(cuts->begin(), cuts->end());
    cuts->erase(std::unique(cuts->begin(), cuts->end()), cuts->end());
  }
  const std::size_t nx = cells.x_cuts.size();
  const std::size_t ny = cells.y_cuts.size();
  cells.corner_counts.assign(nx * ny, 0);
  for (const Point& p : points) {
    const auto a = std::lower_bound(cells.x_cuts.begin(), cells.x_cuts.end(), p.x) - cells.x_cuts.begin();
    const auto b = std::lower_bound(cells.y_cuts.begin(), cells.y_cuts.end(), p.y) - cells.y_cuts.begin();
    ++cells.corner_counts[static_cast<std::size_t>(a) * ny + static_cast<std::size_t>(b)];
  }
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      std::uint32_t& v = cells.corner_counts[a * ny + b];
      if (a > 0) v += cells.corner_counts[(a - 1) * ny + b];
      if (b > 0) v += cells.corner_counts[a * ny + b - 1];
      if (a > 0 && b > 0) v -= cells.corner_counts[(a - 1) * ny + b - 1];
    }
  return cells;
}

namespace kernels {

namespace {

// Integral of x over [x0, x1] times integral of y over [y0, y1].
Rational xy_moment(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
  return (x1 * x1 - x0 * x0) * (y1 * y1 - y0 * y0) / 4;
}

// Exact sum of per-thread rational accumulators; addition is exact so the
// combination order does not affect the result.
template <typename Body>
Rational reduce_rows(std::size_t rows, Exec exec, Body body) {
  if (exec == Exec::serial) {
    Rational total = 0;
    for (std::size_t r = 0; r < rows; ++r) total += body(r);
    return total;
  }
  Rational total = 0;
#pragma omp parallel
  {
    Rational local = 0;
#pragma omp for schedule(dynamic)
    for (std::size_t r = 0; r < rows; ++r) local += body(r);
#pragma omp critical(l1disc_reduce_rows)
    total += local;
  }
  return total;
}

}  // namespace

L1Parts cell_abs_integral(unsigned long c, unsigned long n_points, const Rational& x0, const Rational& x1,
                          const Rational& y0, const Rational& y1) {
  const Rational n(n_points);
  const Rational count(c);
  // Integral of the signed function c - Nxy.
  const Rational signed_part = count * (x1 - x0) * (y1 - y0) - n * xy_moment(x0, x1, y0, y1);
  L1Parts out;
  if (c == 0) {
    out.rational_part = -signed_part;
    return out;
  }
  const Rational t = count / n;
  if (x1 * y1 <= t) {
    out.rational_part = signed_part;
    return out;
  }
  // |g| = g + 2 max(0, -g). The set g < 0 is {xy > t}: x in [xa, xb] covers y in
  // (t/x, y1]; x in [xb, x1] covers the full y range.
  Rational xa = t / y1;
  if (xa < x0) xa = x0;
  Rational xb = x1;
  if (y0 > 0) {
    const Rational edge = t / y0;
    if (edge < xb) xb = edge;
  }
  if (xb < xa) xb = xa;
  const Rational full = n * (x1 * x1 - xb * xb) * (y1 * y1 - y0 * y0) / 4 - count * (x1 - xb) * (y1 - y0);
  const Rational partial = n * y1 * y1 * (xb * xb - xa * xa) / 4 - count * y1 * (xb - xa);
  out.rational_part = signed_part + 2 * (full + partial);
  if (xb > xa) out.log_terms.push_back({count * count / n, xb / xa});
  return out;
}

L1Parts l1_cells(const CellDecomposition& cells, std::size_t n_points, Exec exec) {
  const std::size_t nx = cells.x_cells();
  const std::size_t ny = cells.y_cells();
  std::vector<L1Parts> rows(nx);
  auto row = [&](std::size_t a) {
    L1Parts acc;
    for (std::size_t b = 0; b < ny; ++b) {
      L1Parts cell = cell_abs_integral(cells.cell_count(a, b), n_points, cells.x_cuts[a], cells.x_cuts[a + 1],
                                       cells.y_cuts[b], cells.y_cuts[b + 1]);
      acc.rational_part += cell.rational_part;
      for (LogTerm& t : cell.log_terms) acc.log_terms.push_back(std::move(t));
    }
    rows[a] = std::move(acc);
  };
  if (exec == Exec::serial) {
    for (std::size_t a = 0; a < nx; ++a) row(a);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t a = 0; a < nx; ++a) row(a);
  }
  L1Parts total;
  for (L1Parts& r : rows) {
    total.rational_part += r.rational_part;
    for (LogTerm& t : r.log_terms) total.log_terms.push_back(std::move(t));
  }
  return total;
}

Rational l2_cells(const CellDecomposition& cells, std::size_t n_points, Exec exec) {
  const Rational n(static_cast<unsigned long>(n_points));
  const std::size_t ny = cells.y_cells();
  return reduce_rows(cells.x_cells(), exec, [&](std::size_t a) {
    const Rational& x0 = cells.x_cuts[a];
    const Rational& x1 = cells.x_cuts[a + 1];
    const Rational dx = x1 - x0;
    const Rational dx2 = x1 * x1 - x0 * x0;
    const Rational dx3 = x1 * x1 * x1 - x0 * x0 * x0;
    Rational acc = 0;
    for (std::size_t b = 0; b < ny; ++b) {
      const Rational& y0 = cells.y_cuts[b];
      const Rational& y1 = cells.y_cuts[b + 1];
      const Rational c(static_cast<unsigned long>(cells.cell_count(a, b)));
      acc += c * c * dx * (y1 - y0) - c * n * dx2 * (y1 * y1 - y0 * y0) / 2 +
             n * n * dx3 * (y1 * y1 * y1 - y0 * y0 * y0) / 9;
    }
    return acc;
  });
}

Rational warnock_pairs(const PointSet& points, Exec exec) {
  const std::size_t count = points.size();
  const std::vector<Point>& pts = points.points();
  const Rational pair_sum = reduce_rows(count, exec, [&](std::size_t p) {
    Rational acc = 0;
    for (std::size_t q = p + 1; q < count; ++q) {
      const Rational& mx = pts[p].x > pts[q].x ? pts[p].x : pts[q].x;
      const Rational& my = pts[p].y > pts[q].y ? pts[p].y : pts[q].y;
      acc += (1 - mx) * (1 - my);
    }
    acc *= 2;
    acc += (1 - pts[p].x) * (1 - pts[p].y);
    return acc;
  });
  Rational linear = 0;
  for (const Point& p : pts) linear += (1 - p.x * p.x) * (1 - p.y * p.y);
  const Rational n(static_cast<unsigned long>(count));
  return pair_sum - n * linear / 2 + n * n / 9;
}

Rational linf_corners(const CellDecomposition& cells, std::size_t n_points, Exec exec) {
  const Rational n(static_cast<unsigned long>(n_points));
  const std::size_t nx = cells.x_cuts.size();
  const std::size_t ny = cells.y_cuts.size();
  std::vector<Rational> row_max(nx);
  auto row = [&](std::size_t a) {
    Rational best = 0;
    for (std::size_t b = 0; b < ny; ++b) {
      const Rational volume = n * cells.x_cuts[a] * cells.y_cuts[b];
      const Rational closed = Rational(static_cast<unsigned long>(cells.corner(a, b))) - volume;
      const Rational strict =
          Rational(static_cast<unsigned long>(a > 0 && b > 0 ? cells.corner(a - 1, b - 1) : 0)) - volume;
      best = std::max({best, Rational(abs(closed)), Rational(abs(strict))});
    }
    row_max[a] = std::move(best);
  };
  if (exec == Exec::serial) {
    for (std::size_t a = 0; a < nx; ++a) row(a);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t a = 0; a < nx; ++a) row(a);
  }
  return *std::max_element(row_max.begin(), row_max.end());
}

SampleMoments mc_discrepancy_moments(const PointSet& points, unsigned power, std::size_t samples,
                                     std::uint64_t seed, Exec exec) {
  if (power != 1 && power != 2) throw PreconditionError("Monte-Carlo power must be 1 or 2");
  std::vector<double> px, py;
  px.reserve(points.size());
  py.reserve(points.size());
  for (const Point& p : points) {
    px.push_back(to_double(p.x));
    py.push_back(to_double(p.y));
  }
  const double n = static_cast<double>(points.size());
  struct ChunkSums {
    double sum = 0;
    double sum_sq = 0;
  };
  std::vector<ChunkSums> chunks(kMonteCarloChunks);
  auto run_chunk = [&](std::size_t chunk) {
    const std::size_t base = samples / kMonteCarloChunks;
    const std::size_t count = base + (chunk < samples % kMonteCarloChunks ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk)};
    std::mt19937_64 rng(seq);
    constexpr double kScale = 0x1.0p-53;
    ChunkSums s;
    for (std::size_t k = 0; k < count; ++k) {
      const double x = static_cast<double>(rng() >> 11) * kScale;
      const double y = static_cast<double>(rng() >> 11) * kScale;
      std::size_t inside = 0;
      for (std::size_t j = 0; j < px.size(); ++j) inside += (px[j] <= x && py[j] <= y) ? 1 : 0;
      const double d = static_cast<double>(inside) - n * x * y;
      const double v = power == 1 ? std::fabs(d) : d * d;
      s.sum += v;
      s.sum_sq += v * v;
    }
    chunks[chunk] = s;
  };
  if (exec == Exec::serial) {
    for (std::size_t c = 0; c < kMonteCarloChunks; ++c) run_chunk(c);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t c = 0; c < kMonteCarloChunks; ++c) run_chunk(c);
  }
  double sum = 0, sum_sq = 0;
  for (const ChunkSums& c : chunks) {
    sum += c.sum;
    sum_sq += c.sum_sq;
  }
  const double m = static_cast<double>(samples);
  const double mean = sum / m;
  const double var = std::max(0.0, (sum_sq / m - mean * mean) * m / (m - 1));
  return SampleMoments{mean, std::sqrt(var / m)};
}

Integer sign_vector_power_sum(unsigned n, unsigned k, Exec exec) {
  if (n > 30) throw ResourceLimitError("sign-vector enumeration capped at n <= 30");
  const std::uint64_t total = std::uint64_t{1} << n;
  auto term = [&](std::uint64_t mask) {
    // eps_j = -1 for the set bits of mask.
    const long s = 1 + static_cast<long>(n) - 2 * std::popcount(mask);
    Integer v;
    mpz_set_si(v.get_mpz_t(), s);
    mpz_pow_ui(v.get_mpz_t(), v.get_mpz_t(), k);
    return v;
  };
  Integer sum = 0;
  if (exec == Exec::serial) {
    for (std::uint64_t mask = 0; mask < total; ++mask) sum += term(mask);
    return sum;
  }
#pragma omp parallel
  {
    Integer local = 0;
#pragma omp for schedule(static)
    for (std::uint64_t mask = 0; mask < total; ++mask) local += term(mask);
#pragma omp critical(l1disc_sign_sum)
    sum += local;
  }
  return sum;
}

namespace {

struct PieceResult {
  Rational product;
  Rational d_product;
  Rational area;
  bool sides_distinct = true;
  bool product_is_haar = true;
};

bool pairwise_distinct(std::vector<unsigned> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

// h_f at the center of half `q` of `piece` (f contains piece), by index arithmetic.
int half_center_sign(const DyadicInterval& f, const DyadicInterval& piece, int q) {
  if (f.scale() > piece.scale()) return 0;
  const unsigned shift = piece.scale() + 1 - f.scale();
  if (piece.scale() <= 60 && piece.index().fits_ulong_p() && f.index().fits_ulong_p()) {
    const unsigned long t = (4 * piece.index().get_ui() + 2 * static_cast<unsigned long>(q) + 1) >> shift;
    const unsigned long j = f.index().get_ui();
    return t == 2 * j ? 1 : t == 2 * j + 1 ? -1 : 0;
  }
  Integer center = 4 * piece.index() + (2 * q + 1);
  Integer at_half_scale;
  mpz_fdiv_q_2exp(at_half_scale.get_mpz_t(), center.get_mpz_t(), shift);
  if (at_half_scale == 2 * f.index()) return 1;
  if (at_half_scale == 2 * f.index() + 1) return -1;
  return 0;
}

// Dyadic coordinates a / 2^e with e <= 62, for integer containment tests.
struct FastCoord {
  unsigned long a = 0;
  unsigned e = 0;
};

struct FastPoints {
  std::vector<FastCoord> x, y;
};

std::optional<FastPoints> fast_points(const PointSet& points) {
  FastPoints fp;
  for (const Point& p : points) {
    for (const auto& [coord, out] : {std::pair{&p.x, &fp.x}, std::pair{&p.y, &fp.y}}) {
      if (!is_dyadic(*coord)) return std::nullopt;
      const unsigned e = dyadic_exponent(*coord);
      if (e > 62) return std::nullopt;
      out->push_back({coord->get_num().get_ui(), e});
    }
  }
  return fp;
}

bool fast_contains(const DyadicInterval& interval, const FastCoord& c) {
  const unsigned k = interval.scale();
  const unsigned long j = interval.index().get_ui();
  if (k >= c.e) return k - c.e + static_cast<unsigned>(std::bit_width(c.a)) <= 63 && (c.a << (k - c.e)) == j;
  return (c.a >> (c.e - k)) == j;
}

// Integral of D h_rect, touching exact kernels only for points inside rect.
Rational fast_haar_inner_product(const PointSet& points, const FastPoints& fp, const DyadicRectangle& rect) {
  Rational kernel_sum = 0;
  if (rect.x.scale() <= 62 && rect.y.scale() <= 62) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (!fast_contains(rect.x, fp.x[k]) || !fast_contains(rect.y, fp.y[k])) continue;
      kernel_sum += haar_point_kernel(rect.x, points[k].x) * haar_point_kernel(rect.y, points[k].y);
    }
    const Rational area = rect.area();
    return kernel_sum - Rational(static_cast<unsigned long>(points.size())) * area * area / 16;
  }
  return haar_inner_product(points, rect);
}

PieceResult integrate_piece(const ProductPiece& piece, const PointSet& points, const std::optional<FastPoints>& fp) {
  PieceResult r;
  std::vector<unsigned> xs, ys;
  for (const DyadicRectangle& f : piece.factors) {
    xs.push_back(f.x.scale());
    ys.push_back(f.y.scale());
  }
  r.sides_distinct = pairwise_distinct(xs) && pairwise_distinct(ys);
  const Rational quarter = piece.rect.area() / 4;
  int signs[2][2];
  for (int qx = 0; qx < 2; ++qx)
    for (int qy = 0; qy < 2; ++qy) {
      int sign = 1;
      for (const DyadicRectangle& f : piece.factors)
        sign *= half_center_sign(f.x, piece.rect.x, qx) * half_center_sign(f.y, piece.rect.y, qy);
      signs[qx][qy] = sign;
      r.product += sign * quarter;
    }
  // +-h_rect has signs (s, -s; -s, s) over the quadrants.
  const int s = signs[0][0];
  r.product_is_haar = s != 0 && signs[1][0] == -s && signs[0][1] == -s && signs[1][1] == s;
  if (r.product_is_haar) {
    r.d_product = s * (fp ? fast_haar_inner_product(points, *fp, piece.rect) : haar_inner_product(points, piece.rect));
  } else {
    const DyadicInterval x_halves[2] = {piece.rect.x.left_half(), piece.rect.x.right_half()};
    const DyadicInterval y_halves[2] = {piece.rect.y.left_half(), piece.rect.y.right_half()};
    for (int qx = 0; qx < 2; ++qx)
      for (int qy = 0; qy < 2; ++qy) {
        if (signs[qx][qy] == 0) continue;
        r.d_product += signs[qx][qy] * box_integral_D(points, x_halves[qx].left().to_rational(),
                                                       x_halves[qx].right().to_rational(),
                                                       y_halves[qy].left().to_rational(),
                                                       y_halves[qy].right().to_rational());
      }
  }
  r.area = piece.rect.area();
  return r;
}

}  // namespace

PieceIntegrals integrate_pieces(std::span<const ProductPiece> pieces, const PointSet& points, Exec exec) {
  PieceIntegrals total;
  const std::optional<FastPoints> fp = fast_points(points);
  auto absorb = [](PieceIntegrals& acc, const PieceResult& r) {
    acc.product_integral += r.product;
    acc.d_product_integral += r.d_product;
    acc.abs_term_sum += abs(r.d_product);
    acc.covered_area += r.area;
    acc.sides_distinct = acc.sides_distinct && r.sides_distinct;
    acc.product_is_haar = acc.product_is_haar && r.product_is_haar;
  };
  if (exec == Exec::serial) {
    for (const ProductPiece& piece : pieces) absorb(total, integrate_piece(piece, points, fp));
    return total;
  }
#pragma omp parallel
  {
    PieceIntegrals local;
#pragma omp for schedule(dynamic, 64)
    for (std::size_t k = 0; k < pieces.size(); ++k) absorb(local, integrate_piece(pieces[k], points, fp));
#pragma omp critical(l1disc_pieces)
    {
      total.product_integral += local.product_integral;
      total.d_product_integral += local.d_product_integral;
      total.abs_term_sum += local.abs_term_sum;
      total.covered_area += local.covered_area;
      total.sides_distinct = total.sides_distinct && local.sides_distinct;
      total.product_is_haar = total.product_is_haar && local.product_is_haar;
    }
  }
  return total;
}

}  // namespace kernels
}  // namespace l1disc
