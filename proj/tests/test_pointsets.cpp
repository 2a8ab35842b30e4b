#include "l1disc/errors.hpp"
#include "l1disc/pointset.hpp"

#include "support.hpp"

#include <filesystem>
#include <set>

using namespace l1disc;
using test::q;

TEST_CASE("van der Corput") {
  CHECK(van_der_corput(0) == test::singleton());
  CHECK(van_der_corput(2) == test::pts({{"0", "0"}, {"1/4", "1/2"}, {"1/2", "1/4"}, {"3/4", "3/4"}}));
  const PointSet p3 = van_der_corput(3);
  CHECK(p3[1] == make_point(q("1/8"), q("1/2")));
  for (unsigned m : {4u, 7u}) {
    const PointSet p = van_der_corput(m);
    std::set<Rational> xs, ys;
    for (const Point& pt : p) {
      xs.insert(pt.x);
      ys.insert(pt.y);
    }
    CHECK(xs.size() == p.size());
    CHECK(ys.size() == p.size());
  }
  CHECK_THROWS_AS(van_der_corput(25), ResourceLimitError);
}

TEST_CASE("random_uniform") {
  CHECK(random_uniform(1, 99).size() == 1);
  CHECK(random_uniform(50, 3) == random_uniform(50, 3));
  CHECK_FALSE(random_uniform(50, 3) == random_uniform(50, 4));
  const PointSet p = random_uniform(1000, 7);
  Rational mean = 0;
  for (const Point& pt : p) {
    CHECK(pt.x.get_den() <= pow2(53));
    CHECK(is_dyadic(pt.x));
    mean += pt.x;
  }
  mean /= 1000;
  CHECK(abs(mean - q("1/2")) < q("0.05"));
  CHECK_THROWS_AS(random_uniform(0, 1), PreconditionError);
}

TEST_CASE("symmetrize") {
  CHECK(symmetrize(test::singleton()) == test::pts({{"0", "0"}, {"1", "0"}}));
  CHECK(symmetrize(test::pts({{"1/2", "1/4"}})).size() == 2);
  const PointSet s = symmetrize(van_der_corput(2));
  CHECK(s.size() == 8);
  CHECK(std::find(s.begin(), s.end(), make_point(q("3/4"), q("1/2"))) != s.end());
  CHECK(s.label().find("symmetrize") != std::string::npos);
}

TEST_CASE("csv parsing") {
  std::istringstream in("\xEF\xBB\xBFx,y\n# comment\n0.25,0.5\n3/2^3, 1/2^1\n\n7/10,1\n");
  const PointSet p = read_csv(in);
  REQUIRE(p.size() == 3);
  CHECK(p[0] == make_point(q("1/4"), q("1/2")));
  CHECK(p[1] == make_point(q("3/8"), q("1/2")));
  CHECK(p[2] == make_point(q("7/10"), q("1")));

  std::istringstream bad("0.1,0.2\n1.5,0.2\n");
  CHECK_THROWS_AS(read_csv(bad), DomainError);
  std::istringstream garbage("0.1,0.2\n0.3;0.4\n");
  try {
    read_csv(garbage);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream three("0.1,0.2,0.3\n");
  CHECK_THROWS_AS(read_csv(three), ParseError);
}

TEST_CASE("csv round trip is exact") {
  std::vector<PointSet> sets = {van_der_corput(5), random_uniform(40, 11),
                                test::pts({{"1/3", "2/7"}, {"0.1", "1"}, {"0", "0.999"}})};
  for (const PointSet& p : sets) {
    std::stringstream buffer;
    write_csv(p, buffer);
    CHECK(read_csv(buffer) == p);
  }
  const auto path = std::filesystem::temp_directory_path() / "l1disc_roundtrip.csv";
  write_csv(sets[1], path);
  CHECK(read_csv(path) == sets[1]);
  std::filesystem::remove(path);
  CHECK_THROWS(read_csv(std::filesystem::path("/nonexistent/dir/file.csv")));
}

TEST_CASE("literal forms") {
  CHECK(to_literal(q("3/8")) == "3/2^3");
  CHECK(to_literal(q("7/10")) == "0.7");
  CHECK(to_literal(q("1/3")) == "1/3");
  CHECK(to_literal(q("1")) == "1");
  CHECK(parse_rational("1.5e-2") == q("3/200"));
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}
