#pragma once
// The symplectic quadrangle W(q) on PG(3, q) and the machinery around its
// base point x = (1,0,0,0): the alternating form, totally isotropic lines,
// the point-stabilizer family inside the projective similitude group, the
// shear subgroup, and the derived quadrangle at x with an explicit chart.
//
// Form convention, acting on column vectors z -> A z:
//   B(u, v) = u0 v1 - u1 v0 + u2 v3 - u3 v2
// so x-perp is the hyperplane z1 = 0, and points off x-perp normalize to
// (a, 1, X, Y): fiber coordinate a over the affine plane point (X, Y).

#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "singergq/gf.hpp"
#include "singergq/incidence.hpp"
#include "singergq/matgroup.hpp"
#include "singergq/projgeom.hpp"

namespace singergq {

inline fel symp(const Field& F, const vec& u, const vec& v) {
  fel s = F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0]));
  return F.add(s, F.sub(F.mul(u[2], v[3]), F.mul(u[3], v[2])));
}

inline Mat symp_gram(const Field& F) {
  Mat P;
  P.n = 4;
  P.at(0, 1) = 1;
  P.at(1, 0) = F.neg(1);
  P.at(2, 3) = 1;
  P.at(3, 2) = F.neg(1);
  return P;
}

// A^T P A = factor * P; factor is returned through `factor` when nonnull
inline bool is_similitude(const Field& F, const Mat& A, fel* factor = nullptr) {
  std::array<vec, 4> cols;
  for (unsigned j = 0; j < 4; ++j) {
    vec c(4);
    for (unsigned i = 0; i < 4; ++i) c[i] = A.at(i, j);
    cols[j] = std::move(c);
  }
  fel lam = symp(F, cols[0], cols[1]);
  if (lam == 0) return false;
  Mat P = symp_gram(F);
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j)
      if (symp(F, cols[i], cols[j]) != F.mul(lam, P.at(i, j))) return false;
  if (factor) *factor = lam;
  return true;
}

struct SymplecticSpace {
  Field F;
  ProjSpace P;
  Incidence inc;  // W(q): all points of PG(3,q), totally isotropic lines
  std::vector<std::vector<std::uint32_t>> through;
  std::uint32_t x;  // index of (1,0,0,0)

  explicit SymplecticSpace(unsigned q) : F(q), P(F, 3) {
    inc.npoints = P.size();
    std::set<std::vector<std::uint32_t>> lines;
    for (std::uint32_t a = 0; a < P.size(); ++a)
      for (std::uint32_t b = a + 1; b < P.size(); ++b)
        if (symp(F, P.point(a), P.point(b)) == 0) {
          auto L = P.line_through(a, b);
          std::vector<std::uint32_t> l32(L.begin(), L.end());
          lines.insert(l32);
        }
    inc.lines.assign(lines.begin(), lines.end());
    through = lines_through_table(inc);
    x = static_cast<std::uint32_t>(P.index({1, 0, 0, 0}));
  }
};

// --- the stabilizer family at x, corner-normalized similitudes ---
//
//       [ 1  a  b  c ]           d = f j - i g   (must be nonzero)
//   A = [ 0  d  0  0 ]           b = (e i - h f) / d
//       [ 0  e  f  g ]           c = (e j - h g) / d
//       [ 0  h  i  j ]
//
// Seven free parameters (a, e, h, f, g, i, j); d is both the (1,1) entry
// and the similitude factor.

inline Mat stab_element(const Field& F, fel a, fel e, fel h, fel f, fel g,
                        fel i, fel j) {
  fel d = F.sub(F.mul(f, j), F.mul(i, g));
  if (d == 0) throw std::domain_error("parameters give a singular element");
  fel di = F.inv(d);
  fel b = F.mul(di, F.sub(F.mul(e, i), F.mul(h, f)));
  fel c = F.mul(di, F.sub(F.mul(e, j), F.mul(h, g)));
  Mat A;
  A.n = 4;
  A.at(0, 0) = 1;  A.at(0, 1) = a;  A.at(0, 2) = b;  A.at(0, 3) = c;
  A.at(1, 1) = d;
  A.at(2, 1) = e;  A.at(2, 2) = f;  A.at(2, 3) = g;
  A.at(3, 1) = h;  A.at(3, 2) = i;  A.at(3, 3) = j;
  return A;
}

inline fel similitude_factor_entry(const Mat& A) { return A.at(1, 1); }

// the whole family G; order q^4 (q-1)^2 (q+1)
inline std::vector<Mat> point_stabilizer(const Field& F) {
  std::vector<Mat> out;
  const unsigned q = F.q();
  for (unsigned f = 0; f < q; ++f)
    for (unsigned g = 0; g < q; ++g)
      for (unsigned i = 0; i < q; ++i)
        for (unsigned j = 0; j < q; ++j) {
          if (F.sub(F.mul(static_cast<fel>(f), static_cast<fel>(j)),
                    F.mul(static_cast<fel>(i), static_cast<fel>(g))) == 0)
            continue;
          for (unsigned a = 0; a < q; ++a)
            for (unsigned e = 0; e < q; ++e)
              for (unsigned h = 0; h < q; ++h)
                out.push_back(stab_element(
                    F, static_cast<fel>(a), static_cast<fel>(e),
                    static_cast<fel>(h), static_cast<fel>(f),
                    static_cast<fel>(g), static_cast<fel>(i),
                    static_cast<fel>(j)));
        }
  return out;
}

// H: the d = 1 layer of G; order q^4 (q^2 - 1)
inline std::vector<Mat> centralizer_part(const Field& F) {
  std::vector<Mat> out;
  const unsigned q = F.q();
  for (unsigned f = 0; f < q; ++f)
    for (unsigned g = 0; g < q; ++g)
      for (unsigned i = 0; i < q; ++i)
        for (unsigned j = 0; j < q; ++j) {
          if (F.sub(F.mul(static_cast<fel>(f), static_cast<fel>(j)),
                    F.mul(static_cast<fel>(i), static_cast<fel>(g))) != 1)
            continue;
          for (unsigned a = 0; a < q; ++a)
            for (unsigned e = 0; e < q; ++e)
              for (unsigned h = 0; h < q; ++h)
                out.push_back(stab_element(
                    F, static_cast<fel>(a), static_cast<fel>(e),
                    static_cast<fel>(h), static_cast<fel>(f),
                    static_cast<fel>(g), static_cast<fel>(i),
                    static_cast<fel>(j)));
        }
  return out;
}

inline Mat shear(const Field& F, fel t) {
  (void)F;
  Mat A = mat_id(4);
  A.at(0, 1) = t;
  return A;
}

inline std::vector<Mat> shear_subgroup(const Field& F) {
  std::vector<Mat> out;
  for (unsigned t = 0; t < F.q(); ++t) out.push_back(shear(F, static_cast<fel>(t)));
  return out;
}

// symplectic transvection z -> z + B(z, v) v
inline Mat symp_transvection(const Field& F, const vec& v) {
  Mat A;
  A.n = 4;
  for (unsigned j = 0; j < 4; ++j) {
    vec e(4, 0);
    e[j] = 1;
    fel c = symp(F, e, v);
    for (unsigned i = 0; i < 4; ++i)
      A.at(i, j) = F.add((i == j) ? static_cast<fel>(1) : static_cast<fel>(0),
                         F.mul(c, v[i]));
  }
  return A;
}

// --- derived quadrangle at x with chart (a, X, Y) ---

struct DerivedSpace {
  Incidence inc;
  DerivedMaps maps;
  std::vector<std::array<fel, 3>> chart;     // derived point -> (a, X, Y)
  std::vector<std::uint32_t> by_chart;       // a*q^2 + X*q + Y -> derived point
  std::vector<std::uint32_t> orig_to_derived;  // PG index -> derived id or -1
};

inline DerivedSpace payne_at_base(const SymplecticSpace& W) {
  DerivedSpace D;
  D.inc = derived_at_regular_point(W.inc, W.x, &D.maps);
  const Field& F = W.F;
  const unsigned q = F.q();
  D.chart.resize(D.inc.npoints);
  D.by_chart.assign(static_cast<std::size_t>(q) * q * q, UINT32_MAX);
  D.orig_to_derived.assign(W.P.size(), UINT32_MAX);
  for (std::uint32_t dp = 0; dp < D.inc.npoints; ++dp) {
    const vec& z = W.P.point(D.maps.point_orig[dp]);
    if (z[1] == 0) throw std::logic_error("derived point lies in x-perp");
    fel s = F.inv(z[1]);
    fel a = F.mul(z[0], s), X = F.mul(z[2], s), Y = F.mul(z[3], s);
    D.chart[dp] = {a, X, Y};
    D.by_chart[(static_cast<std::size_t>(a) * q + X) * q + Y] = dp;
    D.orig_to_derived[D.maps.point_orig[dp]] = dp;
  }
  return D;
}

inline std::size_t point_image(const SymplecticSpace& W, const Mat& A,
                               std::size_t i) {
  return W.P.index(mat_vec(W.F, A, W.P.point(i)));
}

inline std::uint32_t derived_image(const SymplecticSpace& W,
                                   const DerivedSpace& D, const Mat& A,
                                   std::uint32_t dp) {
  std::size_t orig = D.maps.point_orig[dp];
  std::size_t img = point_image(W, A, orig);
  std::uint32_t out = D.orig_to_derived[img];
  if (out == UINT32_MAX) throw std::domain_error("image left the derived space");
  return out;
}

}  // namespace singergq
