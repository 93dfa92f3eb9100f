#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <unordered_set>

#include "singergq/symplectic.hpp"

using namespace singergq;

TEST_CASE("alternating form basics") {
  Field F(5);
  vec u{1, 2, 3, 4}, v{0, 1, 2, 0};
  CHECK(symp(F, u, u) == 0);
  CHECK(symp(F, u, v) == F.neg(symp(F, v, u)));
  // gram matrix has full rank
  Mat P = symp_gram(F);
  CHECK(mat_det(F, P) == 1);
}

TEST_CASE("symplectic quadrangles have the classical parameters") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    SymplecticSpace W(q);
    INFO("q = " << q);
    REQUIRE(W.inc.npoints == (q * q + 1) * (q + 1));
    REQUIRE(W.inc.lines.size() == (q * q + 1) * (q + 1));
    GQOrder ord;
    std::string why;
    REQUIRE(is_generalized_quadrangle(W.inc, &ord, &why));
    CHECK(ord == GQOrder{q, q});
  }
}

TEST_CASE("every point of the q=3 quadrangle is regular") {
  SymplecticSpace W(3);
  for (std::uint32_t x = 0; x < W.inc.npoints; ++x)
    CHECK(point_regular(W.inc, W.through, x, 3));
}

TEST_CASE("stabilizer family sizes") {
  auto gsize = [](unsigned q) {
    return static_cast<std::size_t>(q) * q * q * q * (q - 1) * (q - 1) * (q + 1);
  };
  auto hsize = [](unsigned q) {
    return static_cast<std::size_t>(q) * q * q * q * (q * q - 1);
  };
  for (unsigned q : {3u, 4u, 5u}) {
    Field F(q);
    INFO("q = " << q);
    CHECK(point_stabilizer(F).size() == gsize(q));   // 1296, 11520, 60000
    CHECK(centralizer_part(F).size() == hsize(q));   // 648, 3840, 15000
  }
}

TEST_CASE("the q=3 family is a group of similitudes fixing the base point") {
  Field F(3);
  SymplecticSpace W(3);
  auto G = point_stabilizer(F);
  REQUIRE(G.size() == 1296);
  std::unordered_set<Mat, MatHash> set(G.begin(), G.end());
  REQUIRE(set.size() == G.size());
  CHECK(set.count(mat_id(4)) == 1);

  for (const Mat& A : G) {
    fel lam = 0;
    REQUIRE(is_similitude(F, A, &lam));
    REQUIRE(lam == similitude_factor_entry(A));
    // fixes x = (1,0,0,0) exactly
    REQUIRE(mat_vec(F, A, {1, 0, 0, 0}) == vec{1, 0, 0, 0});
    REQUIRE(set.count(mat_inv(F, A)) == 1);
  }
  // closed under multiplication: a group, not just a parameter family
  for (const Mat& A : G)
    for (const Mat& B : G)
      if (!set.count(mat_mul(F, A, B))) FAIL("product escaped the family");
}

TEST_CASE("q=3 family acts as automorphisms of the quadrangle") {
  SymplecticSpace W(3);
  auto G = point_stabilizer(W.F);
  std::set<std::vector<std::uint32_t>> line_set(W.inc.lines.begin(),
                                                W.inc.lines.end());
  for (const Mat& A : G) {
    std::vector<std::uint32_t> img(W.inc.npoints);
    for (std::uint32_t i = 0; i < W.inc.npoints; ++i)
      img[i] = static_cast<std::uint32_t>(point_image(W, A, i));
    for (const auto& L : W.inc.lines) {
      std::vector<std::uint32_t> M;
      for (std::uint32_t p : L) M.push_back(img[p]);
      std::sort(M.begin(), M.end());
      if (!line_set.count(M)) FAIL("line image is not a line");
    }
  }
}

TEST_CASE("orbit-stabilizer oracle from the full symplectic group at q=3") {
  Field F(3);
  MatGroupOps ops{&F};
  std::vector<Mat> gens;
  ProjSpace P(F, 3);
  for (std::size_t i = 0; i < P.size(); ++i)
    gens.push_back(symp_transvection(F, P.point(i)));
  for (const Mat& T : gens) {
    fel lam;
    REQUIRE(is_similitude(F, T, &lam));
    REQUIRE(lam == 1);
  }
  auto Sp = group_closure(ops, gens);
  REQUIRE(Sp.size() == 51840);

  // matrices fixing the base point projectively: |Sp| / #points
  std::vector<Mat> stab;
  for (const Mat& A : Sp) {
    vec im = mat_vec(F, A, {1, 0, 0, 0});
    if (im[1] == 0 && im[2] == 0 && im[3] == 0) stab.push_back(A);
  }
  CHECK(stab.size() == 51840 / 40);

  // corner-normalized, they collapse exactly onto the d = 1 layer
  std::unordered_set<Mat, MatHash> normed;
  for (const Mat& A : stab) normed.insert(mat_proj_normalize(F, A));
  auto H = centralizer_part(F);
  std::unordered_set<Mat, MatHash> hset(H.begin(), H.end());
  CHECK(normed.size() == H.size());
  CHECK(normed == hset);
}

TEST_CASE("commuting with the shear is exactly the d = 1 condition") {
  Field F(3);
  MatGroupOps ops{&F};
  Mat S1 = shear(F, 1);
  auto G = point_stabilizer(F);
  std::size_t d1 = 0;
  for (const Mat& A : G) {
    bool c = commutes(ops, A, S1);
    REQUIRE(c == (similitude_factor_entry(A) == 1));
    d1 += c;
  }
  CHECK(d1 == 648);
}

TEST_CASE("shears form a central subgroup of the d = 1 layer") {
  Field F(3);
  MatGroupOps ops{&F};
  auto S = shear_subgroup(F);
  REQUIRE(S.size() == 3);
  CHECK(shear(F, 1) == stab_element(F, 1, 0, 0, 1, 0, 0, 1));
  auto H = centralizer_part(F);
  for (const Mat& s : S)
    for (const Mat& h : H) REQUIRE(commutes(ops, s, h));
}

TEST_CASE("derived quadrangles at the base point") {
  for (unsigned q : {3u, 4u, 5u}) {
    SymplecticSpace W(q);
    DerivedSpace D = payne_at_base(W);
    INFO("q = " << q);
    REQUIRE(D.inc.npoints == static_cast<std::size_t>(q) * q * q);
    REQUIRE(D.inc.lines.size() == static_cast<std::size_t>(q) * q * (q + 2));
    REQUIRE(D.maps.n_old_lines == static_cast<std::size_t>(q) * q * (q + 1));
    GQOrder ord;
    std::string why;
    REQUIRE(is_generalized_quadrangle(D.inc, &ord, &why));
    CHECK(ord == GQOrder{q - 1, q + 1});
    for (std::uint32_t id : D.by_chart) REQUIRE(id != UINT32_MAX);
  }
}

TEST_CASE("old lines project to affine lines, span lines are chart fibers") {
  SymplecticSpace W(4);
  DerivedSpace D = payne_at_base(W);
  const Field& F = W.F;
  for (std::size_t li = 0; li < D.inc.lines.size(); ++li) {
    const auto& L = D.inc.lines[li];
    if (li < D.maps.n_old_lines) {
      // q distinct plane points, pairwise differences all parallel
      std::set<std::pair<fel, fel>> plane_pts;
      for (std::uint32_t p : L) plane_pts.insert({D.chart[p][1], D.chart[p][2]});
      REQUIRE(plane_pts.size() == L.size());
      auto [x0, y0] = *plane_pts.begin();
      fel dx = 0, dy = 0;
      for (auto [x1, y1] : plane_pts) {
        fel ex = F.sub(x1, x0), ey = F.sub(y1, y0);
        if (ex == 0 && ey == 0) continue;
        if (dx == 0 && dy == 0) {
          dx = ex;
          dy = ey;
        } else {
          REQUIRE(F.mul(ex, dy) == F.mul(ey, dx));
        }
      }
    } else {
      for (std::uint32_t p : L) {
        REQUIRE(D.chart[p][1] == D.chart[L[0]][1]);
        REQUIRE(D.chart[p][2] == D.chart[L[0]][2]);
      }
      REQUIRE(L.size() == 4);
    }
  }
}

TEST_CASE("shear translates the fiber coordinate") {
  SymplecticSpace W(3);
  DerivedSpace D = payne_at_base(W);
  Mat S1 = shear(W.F, 1);
  for (std::uint32_t dp = 0; dp < D.inc.npoints; ++dp) {
    auto [a, X, Y] = D.chart[dp];
    std::uint32_t im = derived_image(W, D, S1, dp);
    CHECK(D.chart[im] == std::array<fel, 3>{W.F.add(a, 1), X, Y});
  }
}

TEST_CASE("d = 1 elements act on the chart by the affine formula") {
  SymplecticSpace W(3);
  const Field& F = W.F;
  DerivedSpace D = payne_at_base(W);
  auto H = centralizer_part(F);
  for (const Mat& A : H) {
    fel ap = A.at(0, 1), b = A.at(0, 2), c = A.at(0, 3);
    fel e = A.at(2, 1), f = A.at(2, 2), g = A.at(2, 3);
    fel hh = A.at(3, 1), i = A.at(3, 2), j = A.at(3, 3);
    for (std::uint32_t dp : {0u, 5u, 13u, 26u}) {
      auto [a, X, Y] = D.chart[dp];
      std::uint32_t im = derived_image(W, D, A, dp);
      fel a2 = F.add(F.add(a, ap), F.add(F.mul(b, X), F.mul(c, Y)));
      fel X2 = F.add(e, F.add(F.mul(f, X), F.mul(g, Y)));
      fel Y2 = F.add(hh, F.add(F.mul(i, X), F.mul(j, Y)));
      REQUIRE(D.chart[im] == std::array<fel, 3>{a2, X2, Y2});
    }
  }
}

TEST_CASE("transvections are symplectic and fix their own center") {
  Field F(4);
  vec v{1, 2, 3, 1};
  Mat T = symp_transvection(F, v);
  fel lam;
  REQUIRE(is_similitude(F, T, &lam));
  CHECK(lam == 1);
  CHECK(mat_det(F, T) == 1);
  CHECK(mat_vec(F, T, v) == v);
}
