#pragma once
// Hyperovals in PG(2, q), q even: the translation and Payne families, the
// derived quadrangle T2*(H) on the affine points of PG(3, q), and the
// non-abelian groups acting sharply transitively on those points.
//
// Matrices act on column vectors. An affine map of AG(3, q) is a 4x4 matrix
// fixing the plane at infinity, translation part in the last column. The
// hyperoval lives in that plane, so a group preserves the quadrangle exactly
// when the linear parts of its elements stabilize the hyperoval setwise.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "singergq/gf.hpp"
#include "singergq/incidence.hpp"
#include "singergq/matgroup.hpp"
#include "singergq/projgeom.hpp"
#include "singergq/singer.hpp"

namespace singergq {

struct GcdViolation : std::domain_error {
  using std::domain_error::domain_error;
};
struct BadParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GammaNotStabilizing : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SearchTooLarge : std::length_error {
  using std::length_error::length_error;
};

enum class HyperovalKind { regular, translation, payne, custom };

struct Hyperoval {
  Field F;
  HyperovalKind kind = HyperovalKind::custom;
  unsigned k = 0;           // Frobenius parameter of the translation family
  std::vector<vec> points;  // q+2 normalized points of PG(2, q)
};

inline std::string kind_name(const Hyperoval& H) {
  switch (H.kind) {
    case HyperovalKind::regular:
      return "regular";
    case HyperovalKind::translation:
      return "translation:" + std::to_string(H.k);
    case HyperovalKind::payne:
      return "payne";
    default:
      return "custom";
  }
}

inline bool points_collinear(const Field& F, const vec& u, const vec& v,
                             const vec& w) {
  fel d = F.mul(u[0], F.sub(F.mul(v[1], w[2]), F.mul(v[2], w[1])));
  d = F.sub(d, F.mul(u[1], F.sub(F.mul(v[0], w[2]), F.mul(v[2], w[0]))));
  d = F.add(d, F.mul(u[2], F.sub(F.mul(v[0], w[1]), F.mul(v[1], w[0]))));
  return d == 0;
}

// q+2 points of PG(2, q), pairwise distinct, no three collinear
inline bool is_hyperoval(const Field& F, const std::vector<vec>& pts,
                         std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (F.p() != 2) return fail("hyperovals need even q");
  if (pts.size() != F.q() + 2) return fail("expected q+2 points");
  std::vector<vec> norm;
  norm.reserve(pts.size());
  for (const vec& v : pts) {
    if (v.size() != 3) return fail("points must have 3 coordinates");
    norm.push_back(normalize_point(F, v));
  }
  {
    std::vector<vec> s = norm;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      return fail("repeated point");
  }
  for (std::size_t i = 0; i < norm.size(); ++i)
    for (std::size_t j = i + 1; j < norm.size(); ++j)
      for (std::size_t k = j + 1; k < norm.size(); ++k)
        if (points_collinear(F, norm[i], norm[j], norm[k]))
          return fail("points " + std::to_string(i) + "," + std::to_string(j) +
                      "," + std::to_string(k) + " are collinear");
  return true;
}

inline Hyperoval checked_hyperoval(Field F, HyperovalKind kind, unsigned k,
                                   std::vector<vec> pts) {
  for (vec& v : pts) v = normalize_point(F, v);
  std::string why;
  if (!is_hyperoval(F, pts, &why))
    throw BadParameters("not a hyperoval: " + why);
  return Hyperoval{std::move(F), kind, k, std::move(pts)};
}

inline Hyperoval make_hyperoval(unsigned q, std::vector<vec> pts) {
  return checked_hyperoval(Field(q), HyperovalKind::custom, 0, std::move(pts));
}

// {(1, t, t^{2^k})} plus (0,0,1) and (0,1,0); needs gcd(k, h) = 1, and gives
// the regular hyperoval exactly for k = 1 or h-1 (Frobenius repeats mod h)
inline Hyperoval translation_hyperoval(unsigned q, unsigned k) {
  Field F(q);
  if (F.p() != 2) throw BadParameters("translation hyperovals need even q");
  const unsigned h = F.h();
  if (k == 0 || std::gcd(k, h) != 1)
    throw GcdViolation("translation hyperoval needs gcd(k, h) = 1, got k=" +
                       std::to_string(k) + ", h=" + std::to_string(h));
  const unsigned reps = k % h;
  std::vector<vec> pts;
  pts.reserve(q + 2);
  for (unsigned t = 0; t < q; ++t) {
    fel s = static_cast<fel>(t);
    for (unsigned i = 0; i < reps; ++i) s = F.frob(s);
    pts.push_back({1, static_cast<fel>(t), s});
  }
  pts.push_back({0, 0, 1});
  pts.push_back({0, 1, 0});
  HyperovalKind kind = (reps == 1 % h || reps == (h - 1) % h)
                           ? HyperovalKind::regular
                           : HyperovalKind::translation;
  return checked_hyperoval(std::move(F), kind, k, std::move(pts));
}

// {(1, t, t^a + t^b + t^c)} with (a, b, c) the exponents of t^{1/6}, t^{3/6},
// t^{5/6} resolved mod q-1; h odd makes 6 invertible there, h >= 5 keeps the
// family disjoint from the smaller classes
inline Hyperoval payne_hyperoval(unsigned q) {
  Field F(q);
  if (F.p() != 2) throw BadParameters("Payne hyperovals need even q");
  const unsigned h = F.h();
  if (h < 5 || h % 2 == 0)
    throw BadParameters("Payne hyperovals need q = 2^h with h >= 5 odd");
  const unsigned e1 = frac_exponent(1, 6, q);
  const unsigned e3 = frac_exponent(3, 6, q);
  const unsigned e5 = frac_exponent(5, 6, q);
  std::vector<vec> pts;
  pts.reserve(q + 2);
  for (unsigned t = 0; t < q; ++t) {
    const fel s = static_cast<fel>(t);
    const fel y = F.add(F.add(F.pow(s, e1), F.pow(s, e3)), F.pow(s, e5));
    pts.push_back({1, s, y});
  }
  pts.push_back({0, 0, 1});
  pts.push_back({0, 1, 0});
  return checked_hyperoval(std::move(F), HyperovalKind::payne, 0,
                           std::move(pts));
}

// --- AG(3, q), the point set of the derived quadrangle ---

inline std::uint32_t affine_index(const Field& F, fel x, fel y, fel z) {
  const std::uint32_t q = F.q();
  return (static_cast<std::uint32_t>(x) * q + y) * q + z;
}

inline vec affine_point(const Field& F, std::uint32_t i) {
  const std::uint32_t q = F.q();
  return {static_cast<fel>(i / (q * q)), static_cast<fel>((i / q) % q),
          static_cast<fel>(i % q)};
}

// action of an affine 4x4 matrix on AG(3, q) point ids
inline std::uint32_t affine_image(const Field& F, const Mat& A,
                                  std::uint32_t i) {
  if (A.n != 4) throw std::invalid_argument("affine action needs 4x4 matrix");
  if (A.at(3, 0) != 0 || A.at(3, 1) != 0 || A.at(3, 2) != 0 || A.at(3, 3) == 0)
    throw std::invalid_argument("matrix does not fix the plane at infinity");
  const vec p = affine_point(F, i);
  const fel s = F.inv(A.at(3, 3));
  fel out[3];
  for (unsigned r = 0; r < 3; ++r) {
    fel acc = A.at(r, 3);
    for (unsigned c = 0; c < 3; ++c) acc = F.add(acc, F.mul(A.at(r, c), p[c]));
    out[r] = F.mul(s, acc);
  }
  return affine_index(F, out[0], out[1], out[2]);
}

struct T2StarModel {
  Hyperoval H;
  Incidence inc;  // q^3 points, (q+2) q^2 lines of q points each
};

// the affine lines of PG(3, q) whose point at infinity lies on the hyperoval
inline T2StarModel t2star(const Hyperoval& H) {
  const Field& F = H.F;
  const std::uint64_t q = F.q();
  const std::uint64_t npts = q * q * q;
  if (npts > (1u << 15))
    throw SpaceTooLarge("derived quadrangle wants q^3 <= 32768 points");
  Incidence inc;
  inc.npoints = npts;
  inc.lines.reserve((q + 2) * q * q);
  std::vector<char> seen(npts);
  for (const vec& d : H.points) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t a = 0; a < npts; ++a) {
      if (seen[a]) continue;
      const vec base = affine_point(F, a);
      std::vector<std::uint32_t> line;
      line.reserve(q);
      for (unsigned s = 0; s < q; ++s) {
        const fel x = F.add(base[0], F.mul(static_cast<fel>(s), d[0]));
        const fel y = F.add(base[1], F.mul(static_cast<fel>(s), d[1]));
        const fel z = F.add(base[2], F.mul(static_cast<fel>(s), d[2]));
        const std::uint32_t id = affine_index(F, x, y, z);
        seen[id] = 1;
        line.push_back(id);
      }
      std::sort(line.begin(), line.end());
      inc.lines.push_back(std::move(line));
    }
  }
  return T2StarModel{H, std::move(inc)};
}

// --- groups of affine 4x4 matrices ---

inline MatGroupOps affine_ops(const Field& F) { return MatGroupOps{&F, false}; }

inline Mat translation_mat(fel a, fel b, fel c) {
  Mat A = mat_id(4);
  A.a[3] = a;
  A.a[7] = b;
  A.a[11] = c;
  return A;
}

inline std::vector<Mat> full_translation_group(const Field& F) {
  const unsigned q = F.q();
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(q) * q * q);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      for (unsigned c = 0; c < q; ++c)
        out.push_back(translation_mat(static_cast<fel>(a), static_cast<fel>(b),
                                      static_cast<fel>(c)));
  return out;
}

inline Mat linear_part(const Mat& A) {
  if (A.n != 4) throw std::invalid_argument("linear part needs a 4x4 matrix");
  Mat L = mat_id(3);
  for (unsigned r = 0; r < 3; ++r)
    for (unsigned c = 0; c < 3; ++c) L.a[r * 3 + c] = A.at(r, c);
  return L;
}

inline bool is_translation(const Mat& A) {
  return A.n == 4 && linear_part(A) == mat_id(3) && A.at(3, 0) == 0 &&
         A.at(3, 1) == 0 && A.at(3, 2) == 0 && A.at(3, 3) == 1;
}

// does the 3x3 matrix map the hyperoval onto itself; on failure reports the
// index of a point moved off
inline bool stabilizes_hyperoval(const Hyperoval& H, const Mat& L,
                                 std::size_t* witness = nullptr) {
  const Field& F = H.F;
  std::set<vec> hset(H.points.begin(), H.points.end());
  for (std::size_t i = 0; i < H.points.size(); ++i) {
    if (!hset.count(normalize_point(F, mat_vec(F, L, H.points[i])))) {
      if (witness) *witness = i;
      return false;
    }
  }
  return true;
}

// --- sharply transitive group no. 1: the translation-hyperoval group ---

// rows (1,0,0,a), (a,1,0,b), (a^{2^k},0,1,c), (0,0,0,1)
inline Mat translation_singer_element(const Field& F, unsigned k, fel a, fel b,
                                      fel c) {
  fel ak = a;
  for (unsigned i = 0; i < k % F.h(); ++i) ak = F.frob(ak);
  Mat A = mat_id(4);
  A.a[3] = a;
  A.a[4] = a;
  A.a[7] = b;
  A.a[8] = ak;
  A.a[11] = c;
  return A;
}

struct TranslationSinger {
  Field F;
  unsigned k = 1;
  std::vector<Mat> gens;      // digit basis in each of the three slots
  std::vector<Mat> elements;  // all q^3 elements, (a, b, c) odometer order
};

inline TranslationSinger translation_singer(unsigned q, unsigned k) {
  Field F(q);
  if (F.p() != 2) throw BadParameters("translation groups need even q");
  const unsigned h = F.h();
  if (k == 0 || std::gcd(k, h) != 1)
    throw GcdViolation("translation group needs gcd(k, h) = 1, got k=" +
                       std::to_string(k) + ", h=" + std::to_string(h));
  TranslationSinger G{std::move(F), k, {}, {}};
  G.elements.reserve(static_cast<std::size_t>(q) * q * q);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      for (unsigned c = 0; c < q; ++c)
        G.elements.push_back(translation_singer_element(
            G.F, k, static_cast<fel>(a), static_cast<fel>(b),
            static_cast<fel>(c)));
  for (unsigned i = 0; i < h; ++i) {
    const fel e = static_cast<fel>(1u << i);
    G.gens.push_back(translation_singer_element(G.F, k, e, 0, 0));
    G.gens.push_back(translation_singer_element(G.F, k, 0, e, 0));
    G.gens.push_back(translation_singer_element(G.F, k, 0, 0, e));
  }
  return G;
}

// --- sharply transitive group no. 2: half translations plus an elation ---

// bits of a and b together have even parity; over GF(2) the base-p digits of
// a field element are exactly its bits, so this is the hyperplane
// X_1 + .. + X_h + X_{h+1} + .. + X_{2h} = 0 of (F_q)^3 read as V(3h, 2)
inline bool in_parity_hyperplane(fel a, fel b) {
  return (std::popcount(static_cast<unsigned>(a)) +
          std::popcount(static_cast<unsigned>(b))) %
             2 ==
         0;
}

// the involution swapping the first two coordinates of PG(2, q)
inline Mat coordinate_swap() { return mat(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}); }

struct ElationSinger {
  Field F;
  Mat gamma;                      // 3x3 involution stabilizing the hyperoval
  Mat g;                          // gamma with affine column (1,0,0)
  Mat g_squared;                  // a translation h_w with w in D
  std::vector<Mat> gens;          // g plus a GF(2)-basis of D
  std::vector<Mat> translations;  // T = {h_d : d in D}, |D| = q^3/2
  std::vector<Mat> elements;      // T then T*g
};

// S = <g, T> where T translates by the parity hyperplane D and g induces
// gamma at infinity while translating by (1,0,0); since (1,0,0) is not in D
// the two cosets T, T*g reach every point of AG(3, q) exactly once
inline ElationSinger elation_singer(const Hyperoval& H, const Mat& gamma) {
  const Field& F = H.F;
  const unsigned q = F.q(), h = F.h();
  if (gamma.n != 3) throw BadParameters("gamma must be a 3x3 matrix");
  if (gamma == mat_id(3) || !(mat_mul(F, gamma, gamma) == mat_id(3)))
    throw BadParameters("gamma must be a non-identity involution");
  std::size_t wit = 0;
  if (!stabilizes_hyperoval(H, gamma, &wit)) {
    const vec& w = H.points[wit];
    throw GammaNotStabilizing(
        "gamma moves hyperoval point (" + std::to_string(w[0]) + "," +
        std::to_string(w[1]) + "," + std::to_string(w[2]) +
        ") off the hyperoval");
  }
  if (in_parity_hyperplane(1, 0)) throw DViolation("(1,0,0) must not lie in D");
  if (!in_parity_hyperplane(1, 1)) throw DViolation("(1,1,0) must lie in D");

  ElationSinger S{F, gamma, mat_id(4), mat_id(4), {}, {}, {}};
  for (unsigned r = 0; r < 3; ++r)
    for (unsigned c = 0; c < 3; ++c) S.g.a[r * 4 + c] = gamma.at(r, c);
  S.g.a[3] = 1;  // affine column (1,0,0)

  // T, with the gamma-invariance of D checked exhaustively as we go; without
  // it g would not normalize T and <g, T> would outgrow 2^{3h}
  S.translations.reserve(static_cast<std::size_t>(q) * q * q / 2);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b) {
      if (!in_parity_hyperplane(static_cast<fel>(a), static_cast<fel>(b)))
        continue;
      for (unsigned c = 0; c < q; ++c) {
        const vec im = mat_vec(F, gamma,
                               {static_cast<fel>(a), static_cast<fel>(b),
                                static_cast<fel>(c)});
        if (!in_parity_hyperplane(im[0], im[1]))
          throw DViolation("gamma maps (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) +
                           ") out of the parity hyperplane");
        S.translations.push_back(translation_mat(
            static_cast<fel>(a), static_cast<fel>(b), static_cast<fel>(c)));
      }
    }

  S.g_squared = mat_mul(F, S.g, S.g);
  if (!is_translation(S.g_squared) ||
      !in_parity_hyperplane(S.g_squared.at(0, 3), S.g_squared.at(1, 3)))
    throw DViolation("g^2 is not a translation by an element of D");

  S.elements = S.translations;
  S.elements.reserve(2 * S.translations.size());
  for (const Mat& t : S.translations)
    S.elements.push_back(mat_mul(F, t, S.g));

  S.gens.push_back(S.g);
  for (unsigned i = 1; i < h; ++i)
    S.gens.push_back(
        translation_mat(static_cast<fel>(1u | (1u << i)), 0, 0));
  for (unsigned i = 0; i < h; ++i)
    S.gens.push_back(translation_mat(1, static_cast<fel>(1u << i), 0));
  for (unsigned i = 0; i < h; ++i)
    S.gens.push_back(translation_mat(0, 0, static_cast<fel>(1u << i)));

  // point-regularity certificate: the orbit of the origin hits each point of
  // AG(3, q) exactly once; with |S| = q^3 that settles sharp transitivity
  const std::size_t npts = static_cast<std::size_t>(q) * q * q;
  if (!is_sharply_transitive(
          S.elements,
          [&](const Mat& A, std::uint32_t x) { return affine_image(F, A, x); },
          npts))
    throw std::logic_error("elation group failed the point-regularity check");
  return S;
}

// --- group reports against the quadrangle ---

struct HyperovalSingerReport {
  std::string name;
  std::uint64_t order = 0;
  std::uint64_t exponent = 0;
  std::uint64_t center_order = 0;
  std::uint64_t translation_intersection = 0;
  bool sharply_transitive = false;
  bool stabilizes_infinity = false;
};

inline HyperovalSingerReport singer_group_report(
    const Hyperoval& H, std::string name, const std::vector<Mat>& gens,
    const std::vector<Mat>& elements) {
  const Field& F = H.F;
  const MatGroupOps ops = affine_ops(F);
  HyperovalSingerReport r;
  r.name = std::move(name);
  r.order = elements.size();
  r.exponent = group_exponent(ops, elements);
  r.center_order = center(ops, elements, gens).size();
  for (const Mat& A : elements)
    if (is_translation(A)) ++r.translation_intersection;
  const std::size_t npts = static_cast<std::size_t>(F.q()) * F.q() * F.q();
  r.sharply_transitive = is_sharply_transitive(
      elements,
      [&](const Mat& A, std::uint32_t x) { return affine_image(F, A, x); },
      npts);
  r.stabilizes_infinity = true;
  for (const Mat& A : gens)
    if (!stabilizes_hyperoval(H, linear_part(A))) {
      r.stabilizes_infinity = false;
      break;
    }
  return r;
}

// --- linear stabilizer of the hyperoval itself ---

// unique projectivity sending the standard frame e1, e2, e3, e1+e2+e3 to the
// four given points, which must be in general position
inline Mat frame_projectivity(const Field& F, const vec& p0, const vec& p1,
                              const vec& p2, const vec& p3) {
  std::vector<vec> rows(3, vec(3));
  for (unsigned r = 0; r < 3; ++r) {
    rows[r][0] = p0[r];
    rows[r][1] = p1[r];
    rows[r][2] = p2[r];
  }
  const std::optional<vec> cs = solve(F, rows, p3);
  if (!cs || (*cs)[0] == 0 || (*cs)[1] == 0 || (*cs)[2] == 0)
    throw std::domain_error("frame points are not in general position");
  Mat M = mat_id(3);
  for (unsigned r = 0; r < 3; ++r) {
    M.a[r * 3 + 0] = F.mul((*cs)[0], p0[r]);
    M.a[r * 3 + 1] = F.mul((*cs)[1], p1[r]);
    M.a[r * 3 + 2] = F.mul((*cs)[2], p2[r]);
  }
  return M;
}

// every projectivity stabilizing the hyperoval setwise. Any 4 of its points
// form a frame, so each stabilizer is pinned by where it sends the first
// four points; scanning all ordered 4-tuples is exhaustive and hits each
// stabilizer exactly once. (q+2)(q+1)q(q-1) tuples, fine through q = 32.
inline std::vector<Mat> hyperoval_stabilizer_scan(
    const Hyperoval& H, std::uint64_t tuple_limit = 1ull << 21) {
  const Field& F = H.F;
  const std::vector<vec>& P = H.points;
  const std::uint64_t m = P.size();
  const std::uint64_t tuples = m * (m - 1) * (m - 2) * (m - 3);
  if (tuples > tuple_limit)
    throw SearchTooLarge("stabilizer scan over " + std::to_string(tuples) +
                         " frames refused");
  const Mat base_inv =
      mat_inv(F, frame_projectivity(F, P[0], P[1], P[2], P[3]));
  const std::set<vec> hset(P.begin(), P.end());
  std::vector<Mat> out;
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < P.size(); ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < P.size(); ++k) {
        if (k == i || k == j) continue;
        for (std::size_t l = 0; l < P.size(); ++l) {
          if (l == i || l == j || l == k) continue;
          const Mat M = mat_mul(
              F, frame_projectivity(F, P[i], P[j], P[k], P[l]), base_inv);
          // P[0..3] land on hyperoval points by construction
          bool ok = true;
          for (std::size_t idx = 4; idx < P.size(); ++idx)
            if (!hset.count(normalize_point(F, mat_vec(F, M, P[idx])))) {
              ok = false;
              break;
            }
          if (ok) out.push_back(mat_proj_normalize(F, M));
        }
      }
    }
  std::sort(out.begin(), out.end(), mat_less);
  return out;
}

// the 2-power-order part of the linear stabilizer. For the translation
// families this is the printed lower-triangular group of order q, no search
// needed; otherwise the full scan runs and the 2-power elements must close
// under multiplication to count as a group.
inline std::vector<Mat> hyperoval_linear_stabilizer(const Hyperoval& H) {
  const Field& F = H.F;
  const unsigned q = F.q();
  if (H.kind == HyperovalKind::regular ||
      H.kind == HyperovalKind::translation) {
    const unsigned reps = H.k % F.h();
    std::vector<Mat> out;
    out.reserve(q);
    for (unsigned a = 0; a < q; ++a) {
      fel ak = static_cast<fel>(a);
      for (unsigned i = 0; i < reps; ++i) ak = F.frob(ak);
      Mat L = mat_id(3);
      L.a[3] = static_cast<fel>(a);
      L.a[6] = ak;
      out.push_back(L);
    }
    for (const Mat& L : out)
      if (!stabilizes_hyperoval(H, L))
        throw std::logic_error("parametric stabilizer family fails to act");
    return out;
  }
  const std::vector<Mat> stab = hyperoval_stabilizer_scan(H);
  const MatGroupOps ops{&F, true};
  std::vector<Mat> twos;
  for (const Mat& s : stab) {
    const unsigned o = element_order(ops, s);
    if ((o & (o - 1)) == 0) twos.push_back(s);
  }
  for (const Mat& a : twos)
    for (const Mat& b : twos)
      if (!std::binary_search(twos.begin(), twos.end(), ops.mul(a, b),
                              mat_less))
        throw BadParameters(
            "2-power stabilizer elements do not form a subgroup");
  return twos;
}

}  // namespace singergq
