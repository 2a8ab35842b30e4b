#include "l1disc/pointset.hpp"

#include "l1disc/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace l1disc {

PointSet::PointSet(std::vector<Point> points, std::string label)
    : points_(std::move(points)), label_(std::move(label)) {
  for (const Point& p : points_) make_point(p.x, p.y);
}

PointSet van_der_corput(unsigned m) {
  if (m > kMaxVanDerCorputExponent)
    throw ResourceLimitError("van der Corput exponent " + std::to_string(m) + " exceeds cap " +
                             std::to_string(kMaxVanDerCorputExponent));
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t rev = 0;
    for (unsigned b = 0; b < m; ++b)
      if (k & (std::uint64_t{1} << b)) rev |= std::uint64_t{1} << (m - 1 - b);
    pts.push_back({DyadicFraction(Integer(static_cast<unsigned long>(k)), m).to_rational(),
                   DyadicFraction(Integer(static_cast<unsigned long>(rev)), m).to_rational()});
  }
  return PointSet(std::move(pts), "vdc(m=" + std::to_string(m) + ")");
}

PointSet random_uniform(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("random_uniform needs N >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  auto draw = [&rng] {
    return DyadicFraction(Integer(static_cast<unsigned long>(rng() >> 11)), 53).to_rational();
  };
  for (std::size_t k = 0; k < n; ++k) {
    Rational x = draw();
    Rational y = draw();
    pts.push_back({std::move(x), std::move(y)});
  }
  return PointSet(std::move(pts), "random(N=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")");
}

PointSet symmetrize(const PointSet& points) {
  std::vector<Point> pts = points.points();
  pts.reserve(2 * points.size());
  for (const Point& p : points) pts.push_back({Rational(1 - p.x), p.y});
  return PointSet(std::move(pts), "symmetrize(" + points.label() + ")");
}

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

PointSet read_csv(std::istream& in, std::string label) {
  std::vector<Point> pts;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (line_no == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
    const std::string line = strip(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!seen_data && (line == "x,y" || line == "x, y")) {
      seen_data = true;
      continue;
    }
    seen_data = true;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw ParseError(line_no, "expected exactly two comma-separated coordinates");
    Rational x, y;
    try {
      x = parse_rational(line.substr(0, comma));
      y = parse_rational(line.substr(comma + 1));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    if (x < 0 || x > 1 || y < 0 || y > 1)
      throw DomainError("line " + std::to_string(line_no) + ": coordinate outside [0,1]");
    pts.push_back({std::move(x), std::move(y)});
  }
  return PointSet(std::move(pts), std::move(label));
}

PointSet read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_csv(in, path.filename().string());
}

void write_csv(const PointSet& points, std::ostream& out) {
  for (const Point& p : points) out << to_literal(p.x) << "," << to_literal(p.y) << "\n";
}

void write_csv(const PointSet& points, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(points, out);
}

}  // namespace l1disc
