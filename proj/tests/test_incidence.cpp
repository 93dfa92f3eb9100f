#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include "singergq/incidence.hpp"

using namespace singergq;

namespace {

// the classical 15-point quadrangle: points are the 2-subsets of a 6-set,
// lines are the perfect matchings, incidence is containment
Incidence doily() {
  std::map<std::pair<int, int>, std::uint32_t> pid;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      pid[{a, b}] = static_cast<std::uint32_t>(pid.size());
  Incidence inc;
  inc.npoints = pid.size();
  std::vector<std::pair<int, int>> acc;
  auto rec = [&](auto&& self, unsigned used) -> void {
    if (used == 0x3f) {
      std::vector<std::uint32_t> L;
      for (auto& pr : acc) L.push_back(pid[pr]);
      std::sort(L.begin(), L.end());
      inc.lines.push_back(L);
      return;
    }
    int a = 0;
    while (used & (1u << a)) ++a;
    for (int b = a + 1; b < 6; ++b) {
      if (used & (1u << b)) continue;
      acc.push_back({a, b});
      self(self, used | (1u << a) | (1u << b));
      acc.pop_back();
    }
  };
  rec(rec, 0);
  return inc;
}

Incidence fano() {
  Incidence inc;
  inc.npoints = 7;
  inc.lines = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
               {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  return inc;
}

}  // namespace

TEST_CASE("matching model is a quadrangle of order (2,2)") {
  Incidence inc = doily();
  REQUIRE(inc.npoints == 15);
  REQUIRE(inc.lines.size() == 15);
  GQOrder ord;
  std::string why;
  REQUIRE(is_generalized_quadrangle(inc, &ord, &why));
  CHECK(ord == GQOrder{2, 2});
}

TEST_CASE("projective plane is rejected") {
  GQOrder ord;
  std::string why;
  CHECK_FALSE(is_generalized_quadrangle(fano(), &ord, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("corrupt line is rejected") {
  Incidence inc = doily();
  REQUIRE(inc.lines[0][0] != inc.lines[3][0]);
  inc.lines[0][0] = inc.lines[3][0];  // now one point is doubly covered
  std::sort(inc.lines[0].begin(), inc.lines[0].end());
  GQOrder ord;
  CHECK_FALSE(is_generalized_quadrangle(inc, &ord));
}

TEST_CASE("perp sizes and regularity in the (2,2) quadrangle") {
  Incidence inc = doily();
  auto through = lines_through_table(inc);
  for (std::uint32_t x = 0; x < inc.npoints; ++x)
    CHECK(perp(inc, through, x).size() == 1 + 2 * 3);  // 1 + s(t+1)
  // every point of this quadrangle is regular
  for (std::uint32_t x = 0; x < inc.npoints; ++x)
    CHECK(point_regular(inc, through, x, 2));
  // and a noncollinear pair has trace and span of size t+1
  auto px = perp(inc, through, 0);
  std::uint32_t y = 0;
  while (std::binary_search(px.begin(), px.end(), y)) ++y;
  auto tr = perp_set(inc, through, {0, y});
  CHECK(tr.size() == 3);
  CHECK(perp_set(inc, through, tr).size() == 3);
}

TEST_CASE("derived quadrangle at a regular point has order (q-1, q+1)") {
  Incidence inc = doily();
  DerivedMaps maps;
  Incidence d = derived_at_regular_point(inc, 0, &maps);
  CHECK(d.npoints == 8);              // q^3
  CHECK(d.lines.size() == 16);        // q^2 (q+2)
  CHECK(maps.n_old_lines == 12);
  CHECK(maps.span_rep.size() == 4);   // q^2 double perps through x
  GQOrder ord;
  std::string why;
  REQUIRE(is_generalized_quadrangle(d, &ord, &why));
  CHECK(ord == GQOrder{1, 3});
  // provenance maps are consistent
  REQUIRE(maps.point_orig.size() == d.npoints);
  auto through = lines_through_table(inc);
  auto px = perp(inc, through, 0);
  for (std::uint32_t p : maps.point_orig)
    CHECK_FALSE(std::binary_search(px.begin(), px.end(), p));
  for (std::size_t li = 0; li < maps.n_old_lines; ++li) {
    const auto& old = inc.lines[maps.line_orig[li]];
    for (std::uint32_t p : d.lines[li])
      CHECK(std::find(old.begin(), old.end(), maps.point_orig[p]) != old.end());
  }
}

TEST_CASE("csv export is stable") {
  Incidence inc;
  inc.npoints = 3;
  inc.lines = {{0, 1}, {1, 2}};
  std::ostringstream os;
  write_csv(os, inc);
  CHECK(os.str() == "point_id,line_id\n0,0\n1,0\n1,1\n2,1\n");
}
