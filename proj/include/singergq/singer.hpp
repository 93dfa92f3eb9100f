#pragma once
// Point-regular groups on the derived quadrangle at the base point.
//
// The plane group at the base point is the order-q^3 Heisenberg group of
// unitriangular 3x3 matrices U(alpha,beta,gamma) acting on the affine chart
// (X,Y) -> (X + alpha Y + gamma, Y + beta). Candidate subgroups of order q^2
// containing the centre correspond to GF(p)-subspaces of the quotient
// H/Z = F_q^2 meeting {(alpha,0)} trivially, i.e. graphs of h x h matrices
// over GF(p). Each candidate lifts to an order-q^3 subgroup of the 4x4
// stabilizer family; the lift acts sharply transitively on the derived
// quadrangle's points. This header builds the models, enumerates and
// classifies the candidates, compares lifts across the q+1 line labels,
// computes spread intersection profiles in F_q^2 and their generalizations,
// and provides small cohomology oracles for the counting heuristics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "singergq/matgroup.hpp"
#include "singergq/symplectic.hpp"

namespace singergq {

struct GroupTooLarge : std::length_error {
  using std::length_error::length_error;
};
struct TooManyCandidates : std::length_error {
  using std::length_error::length_error;
};
struct LiftNotSharplyTransitive : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotContainingCenter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct WrongSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SpaceTooLarge : std::length_error {
  using std::length_error::length_error;
};
struct SystemTooLarge : std::length_error {
  using std::length_error::length_error;
};
struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

// --- plane model -----------------------------------------------------------

inline Mat plane_map(const Field& F, fel alpha, fel beta, fel gamma) {
  (void)F;
  Mat U = mat_id(3);
  U.at(0, 1) = alpha;
  U.at(0, 2) = gamma;
  U.at(1, 2) = beta;
  return U;
}

// 4x4 stabilizer element inducing the plane map U(alpha,beta,gamma), with the
// shear coordinate a along the base line
inline Mat lift_map(const Field& F, fel a, fel alpha, fel beta, fel gamma) {
  return stab_element(F, a, gamma, beta, 1, alpha, 0, 1);
}

// plane index of the chart point (X, Y)
inline std::uint32_t plane_index(const Field& F, fel X, fel Y) {
  return static_cast<std::uint32_t>(X) * F.q() + Y;
}

// affine plane action of a 3x3 map in homogeneous form [[.,.,.],[.,.,.],[0,0,1]]
inline std::uint32_t plane_image3(const Field& F, const Mat& U,
                                  std::uint32_t pt) {
  fel X = static_cast<fel>(pt / F.q()), Y = static_cast<fel>(pt % F.q());
  fel Xn = F.add(F.add(F.mul(U.at(0, 0), X), F.mul(U.at(0, 1), Y)), U.at(0, 2));
  fel Yn = F.add(F.add(F.mul(U.at(1, 0), X), F.mul(U.at(1, 1), Y)), U.at(1, 2));
  return plane_index(F, Xn, Yn);
}

// plane action read off a 4x4 stabilizer element with unit similitude factor
inline std::uint32_t plane_image4(const Field& F, const Mat& A,
                                  std::uint32_t pt) {
  fel X = static_cast<fel>(pt / F.q()), Y = static_cast<fel>(pt % F.q());
  fel Xn = F.add(F.add(F.mul(A.at(2, 2), X), F.mul(A.at(2, 3), Y)), A.at(2, 1));
  fel Yn = F.add(F.add(F.mul(A.at(3, 2), X), F.mul(A.at(3, 3), Y)), A.at(3, 1));
  return plane_index(F, Xn, Yn);
}

// the 3x3 homogeneous form of the plane action of a 4x4 stabilizer element
inline Mat plane_part(const Mat& A) {
  Mat U;
  U.n = 3;
  U.at(0, 0) = A.at(2, 2);
  U.at(0, 1) = A.at(2, 3);
  U.at(0, 2) = A.at(2, 1);
  U.at(1, 0) = A.at(3, 2);
  U.at(1, 1) = A.at(3, 3);
  U.at(1, 2) = A.at(3, 1);
  U.at(2, 2) = 1;
  return U;
}

// Line labels 0..q for the q+1 lines through the base point: label 0 is the
// distinguished line (plane direction (1:0)); label 1+t is the line with
// direction (t:1). The conjugator is a unit-factor stabilizer element
// carrying the label-0 structure to the labelled line.
inline Mat line_conjugator(const Field& F, unsigned ell) {
  if (ell > F.q()) throw std::domain_error("line label out of range");
  if (ell == 0) return mat_id(4);
  fel t = static_cast<fel>(ell - 1);
  return stab_element(F, 0, 0, 0, t, F.neg(1), 1, 0);
}

struct HeisenbergModel {
  Field F;
  unsigned ell = 0;
  std::vector<Mat> elements;  // 3x3, index (alpha*q + beta)*q + gamma at ell=0
  std::vector<Mat> A;         // plane translations, order q^2
  std::vector<Mat> B;         // maps fixing the labelled direction, order q^2
  std::vector<Mat> Z;         // centre, order q
};

inline HeisenbergModel heisenberg(unsigned q, unsigned ell = 0) {
  if (q > 64) throw GroupTooLarge("plane group order exceeds 64^3");
  HeisenbergModel H{Field(q), ell, {}, {}, {}, {}};
  const Field& F = H.F;
  Mat C3 = plane_part(line_conjugator(F, ell));
  Mat C3i = mat_inv(F, C3);
  auto conj = [&](const Mat& U) { return mat_mul(F, mat_mul(F, C3, U), C3i); };
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      for (unsigned g = 0; g < q; ++g)
        H.elements.push_back(conj(plane_map(F, static_cast<fel>(a),
                                            static_cast<fel>(b),
                                            static_cast<fel>(g))));
  for (unsigned b = 0; b < q; ++b)
    for (unsigned g = 0; g < q; ++g) {
      H.A.push_back(conj(plane_map(F, 0, static_cast<fel>(b),
                                   static_cast<fel>(g))));
      H.B.push_back(conj(plane_map(F, static_cast<fel>(b), 0,
                                   static_cast<fel>(g))));
    }
  for (unsigned g = 0; g < q; ++g)
    H.Z.push_back(conj(plane_map(F, 0, 0, static_cast<fel>(g))));
  return H;
}

// the full preimage of the plane group in the unit-factor 4x4 family,
// order q^4; only materialized for small q
inline std::vector<Mat> sylow_family(const Field& F, unsigned ell = 0) {
  const unsigned q = F.q();
  if (q > 8) throw GroupTooLarge("4x4 family order exceeds 8^4");
  Mat C = line_conjugator(F, ell);
  Mat Ci = mat_inv(F, C);
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(q) * q * q * q);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned al = 0; al < q; ++al)
      for (unsigned b = 0; b < q; ++b)
        for (unsigned g = 0; g < q; ++g) {
          Mat A = lift_map(F, static_cast<fel>(a), static_cast<fel>(al),
                           static_cast<fel>(b), static_cast<fel>(g));
          out.push_back(mat_mul(F, mat_mul(F, C, A), Ci));
        }
  return out;
}

// shear-free abelian subgroup of order q^2 in the 4x4 family; a negative
// control: too small to be point-regular on the derived quadrangle
inline std::vector<Mat> abelian_control_subgroup(const Field& F) {
  std::vector<Mat> out;
  for (unsigned al = 0; al < F.q(); ++al)
    for (unsigned g = 0; g < F.q(); ++g)
      out.push_back(lift_map(F, 0, static_cast<fel>(al), 0,
                             static_cast<fel>(g)));
  return out;
}

inline bool contains_all_shears(const Field& F, const std::vector<Mat>& S) {
  std::unordered_set<Mat, MatHash> have(S.begin(), S.end());
  for (unsigned t = 0; t < F.q(); ++t)
    if (!have.count(shear(F, static_cast<fel>(t)))) return false;
  return true;
}

// --- candidates: graphs of h x h matrices over GF(p) ------------------------

struct BLCandidate {
  unsigned h = 1;
  std::vector<std::uint8_t> m;  // h*h entries over GF(p), row-major

  std::uint8_t at(unsigned r, unsigned c) const { return m[r * h + c]; }
};

inline fel apply_candidate(const Field& F, const BLCandidate& M, fel beta) {
  auto d = F.digits(beta);
  std::vector<std::uint8_t> out(M.h, 0);
  for (unsigned r = 0; r < M.h; ++r) {
    unsigned s = 0;
    for (unsigned c = 0; c < M.h; ++c) s += M.at(r, c) * d[c];
    out[r] = static_cast<std::uint8_t>(s % F.p());
  }
  return F.from_digits(out);
}

// all p^{h^2} candidates in lexicographic order of the row-major encoding
inline std::vector<BLCandidate> enumerate_bl(const Field& F) {
  const unsigned h = F.h(), p = F.p();
  double count = 1;
  for (unsigned i = 0; i < h * h; ++i) count *= p;
  if (count > double(1u << 20))
    throw TooManyCandidates("candidate count exceeds 2^20");
  std::vector<BLCandidate> out;
  out.reserve(static_cast<std::size_t>(count));
  BLCandidate M{h, std::vector<std::uint8_t>(h * h, 0)};
  for (;;) {
    out.push_back(M);
    unsigned i = h * h;
    while (i > 0 && M.m[i - 1] == p - 1) M.m[--i] = 0;
    if (i == 0) break;
    ++M.m[i - 1];
  }
  return out;
}

// the matrix of multiplication by t in the digit basis
inline BLCandidate scalar_candidate(const Field& F, fel t) {
  const unsigned h = F.h();
  BLCandidate M{h, std::vector<std::uint8_t>(h * h, 0)};
  for (unsigned c = 0; c < h; ++c) {
    fel basis = F.from_digits([&] {
      std::vector<std::uint8_t> e(h, 0);
      e[c] = 1;
      return e;
    }());
    auto col = F.digits(F.mul(t, basis));
    for (unsigned r = 0; r < h; ++r) M.m[r * h + c] = col[r];
  }
  return M;
}

inline bool candidate_scalar(const Field& F, const BLCandidate& M, fel* t) {
  for (unsigned s = 0; s < F.q(); ++s)
    if (scalar_candidate(F, static_cast<fel>(s)).m == M.m) {
      if (t) *t = static_cast<fel>(s);
      return true;
    }
  return false;
}

inline std::string candidate_string(const BLCandidate& M) {
  std::string s;
  for (unsigned r = 0; r < M.h; ++r) {
    if (r) s += '|';
    for (unsigned c = 0; c < M.h; ++c) s += char('0' + M.at(r, c));
  }
  return s;
}

// --- lifts into the stabilizer family ---------------------------------------

struct SingerLift {
  BLCandidate M;
  unsigned ell = 0;
  std::vector<Mat> S;     // 4x4 elements, order q^3
  std::vector<Mat> T;     // 3x3 plane preimage of the candidate, order q^2
  std::vector<Mat> gens;  // generating subset of S
};

inline SingerLift lift_eta(const Field& F, const BLCandidate& M,
                           unsigned ell = 0) {
  const unsigned q = F.q();
  if (M.h != F.h()) throw WrongSize("candidate size does not match the field");
  SingerLift L{M, ell, {}, {}, {}};
  Mat C = line_conjugator(F, ell);
  Mat Ci = mat_inv(F, C);
  Mat C3 = plane_part(C);
  Mat C3i = mat_inv(F, C3);
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      for (unsigned g = 0; g < q; ++g) {
        fel beta = static_cast<fel>(b);
        Mat A = lift_map(F, static_cast<fel>(a), apply_candidate(F, M, beta),
                         beta, static_cast<fel>(g));
        L.S.push_back(mat_mul(F, mat_mul(F, C, A), Ci));
        if (a == 0)
          L.T.push_back(mat_mul(F, mat_mul(F, C3, plane_part(A)), C3i));
      }
  std::unordered_set<Mat, MatHash> distinct(L.S.begin(), L.S.end());
  if (distinct.size() != static_cast<std::size_t>(q) * q * q)
    throw std::logic_error("lift elements not distinct");
  // generators: a digit basis in each of the three coordinate directions
  for (unsigned i = 0; i < F.h(); ++i) {
    std::vector<std::uint8_t> e(F.h(), 0);
    e[i] = 1;
    fel b = F.from_digits(e);
    Mat g0 = lift_map(F, b, 0, 0, 0);
    Mat g1 = lift_map(F, 0, apply_candidate(F, M, b), b, 0);
    Mat g2 = lift_map(F, 0, 0, 0, b);
    L.gens.push_back(mat_mul(F, mat_mul(F, C, g0), Ci));
    L.gens.push_back(mat_mul(F, mat_mul(F, C, g1), Ci));
    L.gens.push_back(mat_mul(F, mat_mul(F, C, g2), Ci));
  }
  return L;
}

inline void certify_sharply_transitive(const SymplecticSpace& W,
                                       const DerivedSpace& D,
                                       const SingerLift& L) {
  auto act = [&](const Mat& g, std::uint32_t dp) {
    return derived_image(W, D, g, dp);
  };
  if (!is_sharply_transitive(L.S, act, D.inc.npoints))
    throw LiftNotSharplyTransitive("lift " + candidate_string(L.M) +
                                   " at line " + std::to_string(L.ell));
}

// --- spread intersection dims of a candidate --------------------------------

// dims[0]: vs the translation part {(0,beta)}; dims[1]: vs {(alpha,0)};
// dims[2+j]: vs the graph of multiplication by the field element j+1
inline std::vector<unsigned> commuting_dims(const Field& F,
                                            const BLCandidate& M) {
  const unsigned h = F.h(), p = F.p();
  Field Fp(p);
  auto kernel_dim = [&](const BLCandidate& N) {
    std::vector<vec> rows(h, vec(h, 0));
    for (unsigned r = 0; r < h; ++r)
      for (unsigned c = 0; c < h; ++c) rows[r][c] = N.at(r, c);
    return h - rank(Fp, rows);
  };
  std::vector<unsigned> dims;
  dims.push_back(kernel_dim(M));
  dims.push_back(0);
  for (unsigned mval = 1; mval < F.q(); ++mval) {
    BLCandidate D = M;
    BLCandidate S = scalar_candidate(F, static_cast<fel>(mval));
    for (unsigned i = 0; i < h * h; ++i)
      D.m[i] = static_cast<std::uint8_t>((D.m[i] + p - S.m[i]) % p);
    dims.push_back(kernel_dim(D));
  }
  return dims;
}

// the sorted nonzero projective intersection sizes, (p^d - 1)/(p - 1)
inline std::vector<unsigned> intersection_profile(const Field& F,
                                                  const BLCandidate& M) {
  std::vector<unsigned> out;
  for (unsigned d : commuting_dims(F, M)) {
    if (d == 0) continue;
    unsigned pts = 0, pw = 1;
    for (unsigned i = 0; i < d; ++i) {
      pts += pw;
      pw *= F.p();
    }
    out.push_back(pts);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// recover the dims from an explicit plane subgroup of order q^2 containing
// the centre, by counting its quotient image inside each spread part
inline std::vector<unsigned> commuting_dims_of_group(const Field& F,
                                                     const std::vector<Mat>& T) {
  const unsigned q = F.q();
  if (T.size() != static_cast<std::size_t>(q) * q)
    throw WrongSize("plane subgroup must have order q^2");
  std::set<std::pair<fel, fel>> image;
  std::set<fel> zs;
  for (const Mat& U : T) {
    if (U.at(1, 0) != 0 || U.at(0, 0) != 1 || U.at(1, 1) != 1)
      throw WrongSize("not a unitriangular plane element");
    image.insert({U.at(0, 1), U.at(1, 2)});
    if (U.at(0, 1) == 0 && U.at(1, 2) == 0) zs.insert(U.at(0, 2));
  }
  if (zs.size() != q) throw NotContainingCenter("centre not inside the group");
  auto log_dim = [&](std::size_t count) {
    unsigned d = 0;
    for (std::size_t c = count; c > 1; c /= F.p()) ++d;
    return d;
  };
  std::vector<unsigned> dims;
  std::size_t c0 = 0;
  for (auto& [al, be] : image)
    if (al == 0) ++c0;
  dims.push_back(log_dim(c0));
  std::size_t c1 = 0;
  for (auto& [al, be] : image)
    if (be == 0 && al != 0) ++c1;
  dims.push_back(log_dim(c1 + 1));
  for (unsigned mval = 1; mval < q; ++mval) {
    std::size_t cm = 0;
    for (auto& [al, be] : image)
      if (al == F.mul(static_cast<fel>(mval), be)) ++cm;
    dims.push_back(log_dim(cm));
  }
  return dims;
}

// number of secant directions of the point set {(beta, M beta)}
inline std::size_t directions_of_graph(const Field& F, const BLCandidate& M) {
  std::set<fel> slopes;
  for (unsigned d = 1; d < F.q(); ++d) {
    fel delta = static_cast<fel>(d);
    slopes.insert(F.div(apply_candidate(F, M, delta), delta));
  }
  return slopes.size();
}

// --- quotient classification -------------------------------------------------

struct QuotientClassification {
  std::vector<std::size_t> abelian;     // candidate indices, ascending
  std::vector<std::size_t> elementary;  // subset of abelian
};

inline QuotientClassification classify_abelian_quotients(
    const Field& F, const std::vector<BLCandidate>& cands) {
  QuotientClassification out;
  const unsigned q = F.q();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool ab = true;
    for (unsigned b = 1; b < q && ab; ++b)
      for (unsigned b2 = b + 1; b2 < q && ab; ++b2) {
        fel lhs = F.mul(apply_candidate(F, cands[i], static_cast<fel>(b)),
                        static_cast<fel>(b2));
        fel rhs = F.mul(apply_candidate(F, cands[i], static_cast<fel>(b2)),
                        static_cast<fel>(b));
        ab = lhs == rhs;
      }
    if (!ab) continue;
    out.abelian.push_back(i);
    MatGroupOps ops{&F, false};
    bool elem = true;
    for (unsigned b = 0; b < q && elem; ++b) {
      Mat U = plane_map(F, apply_candidate(F, cands[i], static_cast<fel>(b)),
                        static_cast<fel>(b), 0);
      elem = ops.is_id(mat_pow(ops, U, F.p()));
    }
    if (elem) out.elementary.push_back(i);
  }
  return out;
}

// --- census records ----------------------------------------------------------

struct SingerGroupRecord {
  unsigned ell = 0;
  BLCandidate M;
  std::uint64_t order = 0;
  bool abelian_quotient = false;
  bool elementary_abelian_quotient = false;
  bool group_abelian = false;
  std::uint64_t center_order = 0, derived_order = 0, exponent = 0;
  int nilpotency_class = 0;
  std::vector<unsigned> commuting_dims;
  bool sharply_transitive = false;
  bool scalar = false;
  fel scalar_t = 0;
};

inline SingerGroupRecord census_record(const Field& F, const SingerLift& L) {
  SingerGroupRecord R;
  R.ell = L.ell;
  R.M = L.M;
  R.order = L.S.size();
  MatGroupOps ops{&F, false};
  std::vector<BLCandidate> one{L.M};
  auto cls = classify_abelian_quotients(F, one);
  R.abelian_quotient = !cls.abelian.empty();
  R.elementary_abelian_quotient = !cls.elementary.empty();
  R.group_abelian = is_abelian(ops, L.gens);
  R.center_order = center(ops, L.S, L.gens).size();
  R.derived_order = derived_subgroup(ops, L.gens).size();
  R.exponent = group_exponent(ops, L.S);
  R.nilpotency_class = nilpotency_class(ops, L.S, L.gens);
  R.commuting_dims = commuting_dims(F, L.M);
  R.scalar = candidate_scalar(F, L.M, &R.scalar_t);
  return R;
}

// --- cross-line comparison ---------------------------------------------------

inline std::size_t cross_line_overlap(const Field& F, unsigned e1,
                                      unsigned e2) {
  auto cands = enumerate_bl(F);
  if (e1 == e2) return cands.size();
  auto keys = [&](unsigned ell) {
    std::set<std::vector<fel>> out;
    for (const auto& M : cands)
      out.insert(subgroup_key(lift_eta(F, M, ell).S));
    return out;
  };
  auto k1 = keys(e1), k2 = keys(e2);
  std::size_t n = 0;
  for (const auto& k : k1) n += k2.count(k);
  return n;
}

struct LineCensusTotals {
  std::size_t lifts_total = 0;
  std::size_t distinct_groups = 0;
  std::size_t distinct_nonabelian_quotient = 0;
  std::size_t distinct_nonelementary_quotient = 0;
  std::size_t abelian_quotient_per_line = 0;
  std::size_t elementary_quotient_per_line = 0;
};

// enumerate every lift at every line label and dedup by element set
inline LineCensusTotals cross_line_census(const Field& F) {
  auto cands = enumerate_bl(F);
  auto cls = classify_abelian_quotients(F, cands);
  std::set<std::size_t> ab(cls.abelian.begin(), cls.abelian.end());
  std::set<std::size_t> el(cls.elementary.begin(), cls.elementary.end());
  LineCensusTotals tot;
  tot.abelian_quotient_per_line = ab.size();
  tot.elementary_quotient_per_line = el.size();
  std::set<std::vector<fel>> all, nonab, nonel;
  for (unsigned ell = 0; ell <= F.q(); ++ell)
    for (std::size_t i = 0; i < cands.size(); ++i) {
      ++tot.lifts_total;
      auto key = subgroup_key(lift_eta(F, cands[i], ell).S);
      all.insert(key);
      if (!ab.count(i)) nonab.insert(key);
      if (!el.count(i)) nonel.insert(key);
    }
  tot.distinct_groups = all.size();
  tot.distinct_nonabelian_quotient = nonab.size();
  tot.distinct_nonelementary_quotient = nonel.size();
  return tot;
}

// closed-form count of nonabelian-quotient lifts over all lines
inline std::int64_t total_count(unsigned q) {
  Field F(q);
  std::int64_t cand = 1;
  for (unsigned i = 0; i < F.h() * F.h(); ++i) cand *= F.p();
  std::int64_t base = static_cast<std::int64_t>(q + 1) * (cand - 1);
  if (F.p() % 2 == 1) return base - static_cast<std::int64_t>(q + 1) * (q - 1);
  return base - 1;
}

// --- central relations and the plane quotient --------------------------------

struct CentralRelations {
  bool contains_shears = false;
  bool shears_central = false;
  bool center_is_shears = false;
};

inline CentralRelations central_relations(const Field& F, const SingerLift& L) {
  CentralRelations R;
  R.contains_shears = contains_all_shears(F, L.S);
  MatGroupOps ops{&F, false};
  R.shears_central = true;
  for (unsigned t = 0; t < F.q() && R.shears_central; ++t) {
    Mat s = shear(F, static_cast<fel>(t));
    for (const Mat& g : L.S)
      if (!commutes(ops, s, g)) {
        R.shears_central = false;
        break;
      }
  }
  auto Zs = sorted_elements(center(ops, L.S, L.gens));
  R.center_is_shears = Zs == sorted_elements(shear_subgroup(F));
  return R;
}

struct PlaneQuotientReport {
  std::size_t kernel_order = 0;      // elements of the lift acting trivially
  std::size_t quotient_order = 0;    // distinct induced plane permutations
  bool matches_plane_group = false;  // same permutation set as T
};

inline PlaneQuotientReport quotient_matches_plane_group(const Field& F,
                                                        const SingerLift& L) {
  const std::size_t npts = static_cast<std::size_t>(F.q()) * F.q();
  auto act4 = [&](const Mat& g, std::uint32_t i) {
    return plane_image4(F, g, i);
  };
  auto act3 = [&](const Mat& g, std::uint32_t i) {
    return plane_image3(F, g, i);
  };
  auto [ps, kern] = induced_permutations(L.S, act4, npts);
  auto [pt, kt] = induced_permutations(L.T, act3, npts);
  (void)kt;
  PlaneQuotientReport R;
  R.kernel_order = kern;
  R.quotient_order = ps.size();
  R.matches_plane_group = ps == pt;
  return R;
}

// --- prime case census -------------------------------------------------------

struct PrimeCensus {
  unsigned p = 0;
  std::size_t abelian = 0;          // lifts that are abelian groups
  std::size_t elementary = 0;       // ... and of exponent p
  std::size_t heisenberg_like = 0;  // nonabelian, exponent p, centre order p
  std::size_t exponent_p2 = 0;      // nonabelian lifts of exponent p^2
  bool claimed_census_matches = false; // one elementary abelian + p-1 exponent-p
};

inline PrimeCensus prime_case_census(unsigned p) {
  Field F(p);
  PrimeCensus C;
  C.p = p;
  for (const auto& M : enumerate_bl(F)) {
    auto R = census_record(F, lift_eta(F, M));
    if (R.group_abelian) {
      ++C.abelian;
      if (R.exponent == p) ++C.elementary;
    } else if (R.exponent == p && R.center_order == p) {
      ++C.heisenberg_like;
    }
    if (!R.group_abelian && R.exponent == static_cast<std::uint64_t>(p) * p)
      ++C.exponent_p2;
  }
  C.claimed_census_matches = C.elementary == 1 && C.heisenberg_like == p - 1;
  return C;
}

// --- generic subspace enumeration over GF(p) ---------------------------------

inline std::uint64_t gaussian_binomial(unsigned n, unsigned k, unsigned p) {
  if (k > n) return 0;
  unsigned __int128 num = 1, den = 1;
  auto pw = [&](unsigned e) {
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
  };
  for (unsigned i = 0; i < k; ++i) {
    num *= pw(n - i) - 1;
    den *= pw(i + 1) - 1;
  }
  unsigned __int128 out = num / den;
  if (out > UINT64_MAX) throw std::overflow_error("binomial exceeds 64 bits");
  return static_cast<std::uint64_t>(out);
}

// visit every k-dim subspace of GF(p)^n, presented in reduced echelon form
template <class Fn>
void for_each_subspace(unsigned p, unsigned n, unsigned k, Fn&& fn,
                       std::uint64_t limit = 1u << 21) {
  if (gaussian_binomial(n, k, p) > limit)
    throw SpaceTooLarge("subspace family exceeds the enumeration limit");
  std::vector<unsigned> piv(k);
  for (unsigned i = 0; i < k; ++i) piv[i] = i;
  for (;;) {
    std::vector<char> is_piv(n, 0);
    for (unsigned c : piv) is_piv[c] = 1;
    std::vector<std::pair<unsigned, unsigned>> free_pos;
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = piv[i] + 1; j < n; ++j)
        if (!is_piv[j]) free_pos.emplace_back(i, j);
    std::vector<std::uint8_t> val(free_pos.size(), 0);
    for (;;) {
      std::vector<vec> rows(k, vec(n, 0));
      for (unsigned i = 0; i < k; ++i) rows[i][piv[i]] = 1;
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        rows[free_pos[t].first][free_pos[t].second] = val[t];
      fn(rows);
      std::size_t t = free_pos.size();
      while (t > 0 && val[t - 1] == p - 1) val[--t] = 0;
      if (t == 0) break;
      ++val[t - 1];
    }
    // next pivot combination
    unsigned i = k;
    while (i > 0 && piv[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (unsigned j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

// # h-dim subspaces of GF(p)^{2h} meeting the first coordinate block only
// in zero; an independent count of the candidate family
inline std::uint64_t count_complement_subspaces(unsigned p, unsigned h) {
  Field Fp(p);
  std::vector<vec> first;
  for (unsigned i = 0; i < h; ++i) {
    vec r(2 * h, 0);
    r[i] = 1;
    first.push_back(std::move(r));
  }
  std::uint64_t n = 0;
  for_each_subspace(p, 2 * h, h, [&](const std::vector<vec>& rows) {
    std::vector<vec> stack = rows;
    stack.insert(stack.end(), first.begin(), first.end());
    if (rank(Fp, stack) == 2 * h) ++n;
  });
  return n;
}

// --- regular spreads of GF(p)^{2n} and intersection profiles -----------------

struct SpreadSet {
  unsigned p = 2, n = 1;
  std::vector<std::vector<vec>> elems;  // q+1 bases, rows of length 2n
};

// model GF(p)^{2n} as F_q^2: parts {(u,0)}, {(0,v)}, and the graphs of
// multiplication by each nonzero field element
inline SpreadSet regular_spread(unsigned p, unsigned n) {
  unsigned q = 1;
  for (unsigned i = 0; i < n; ++i) q *= p;
  Field Fq(q);
  SpreadSet S{p, n, {}};
  std::vector<vec> u0, v0;
  for (unsigned i = 0; i < n; ++i) {
    vec r(2 * n, 0), s(2 * n, 0);
    r[i] = 1;
    s[n + i] = 1;
    u0.push_back(std::move(r));
    v0.push_back(std::move(s));
  }
  S.elems.push_back(u0);
  S.elems.push_back(v0);
  for (unsigned m = 1; m < q; ++m) {
    std::vector<vec> g;
    for (unsigned i = 0; i < n; ++i) {
      std::vector<std::uint8_t> e(n, 0);
      e[i] = 1;
      auto prod = Fq.digits(Fq.mul(static_cast<fel>(m), Fq.from_digits(e)));
      vec r(2 * n, 0);
      for (unsigned j = 0; j < n; ++j) r[j] = prod[j];
      r[n + i] = 1;
      g.push_back(std::move(r));
    }
    S.elems.push_back(std::move(g));
  }
  return S;
}

inline unsigned subspace_intersection_dim(const Field& Fp,
                                          const std::vector<vec>& a,
                                          const std::vector<vec>& b) {
  std::vector<vec> stack = a;
  stack.insert(stack.end(), b.begin(), b.end());
  return static_cast<unsigned>(a.size() + b.size()) - rank(Fp, stack);
}

// basis of the intersection of two row spaces
inline std::vector<vec> subspace_intersection(const Field& Fp,
                                              const std::vector<vec>& a,
                                              const std::vector<vec>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t w = a[0].size();
  std::vector<vec> sys(w, vec(a.size() + b.size(), 0));
  for (std::size_t c = 0; c < w; ++c) {
    for (std::size_t i = 0; i < a.size(); ++i) sys[c][i] = a[i][c];
    for (std::size_t j = 0; j < b.size(); ++j)
      sys[c][a.size() + j] = Fp.neg(b[j][c]);
  }
  std::vector<vec> out;
  for (const vec& y : kernel_basis(Fp, sys)) {
    vec x(w, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t c = 0; c < w; ++c)
        x[c] = Fp.add(x[c], Fp.mul(y[i], a[i][c]));
    out.push_back(std::move(x));
  }
  row_reduce(Fp, out);
  return out;
}

// distinct profiles of nonzero projective intersection sizes with the regular
// spread, over all n-dim subspaces off the spread
inline std::vector<std::vector<unsigned>> zeta_profiles(unsigned p,
                                                        unsigned n) {
  double amb = 1;
  for (unsigned i = 0; i < 2 * n; ++i) amb *= p;
  if (amb > double(1u << 16)) throw SpaceTooLarge("ambient space exceeds 2^16");
  Field Fp(p);
  SpreadSet S = regular_spread(p, n);
  std::set<std::vector<vec>> spread_keys;
  for (auto e : S.elems) {
    row_reduce(Fp, e);
    spread_keys.insert(e);
  }
  std::set<std::vector<unsigned>> profiles;
  for_each_subspace(p, 2 * n, n, [&](const std::vector<vec>& rows) {
    if (spread_keys.count(rows)) return;
    std::vector<unsigned> prof;
    for (const auto& e : S.elems) {
      unsigned d = subspace_intersection_dim(Fp, rows, e);
      if (d == 0) continue;
      unsigned pts = 0, pw = 1;
      for (unsigned i = 0; i < d; ++i) {
        pts += pw;
        pw *= p;
      }
      prof.push_back(pts);
    }
    std::sort(prof.begin(), prof.end());
    profiles.insert(std::move(prof));
  });
  return {profiles.begin(), profiles.end()};
}

inline std::size_t zeta(unsigned p, unsigned n) {
  return zeta_profiles(p, n).size();
}

// --- even characteristic invariant count -------------------------------------

// multisets {d, n-d} with both parts positive: the type of an n-space that is
// spanned by its intersections with two fixed skew n-spaces of GF(2)^{2n}
inline unsigned even_char_invariant_formula(unsigned n) {
  return (n - 1 + 1) / 2;  // ceil((n-1)/2) == floor(n/2) for n >= 1
}

// exhaustive for n <= 4; for larger n every admissible type is realized by an
// explicit direct sum witness, and the arithmetic bound closes the count
inline unsigned even_char_invariant_count(unsigned n) {
  if (n < 2) throw std::domain_error("need n >= 2");
  if (n > 10) throw SpaceTooLarge("ambient exceeds 2^20");
  Field F2(2);
  std::vector<vec> pi, pip;
  for (unsigned i = 0; i < n; ++i) {
    vec r(2 * n, 0), s(2 * n, 0);
    r[i] = 1;
    s[n + i] = 1;
    pi.push_back(std::move(r));
    pip.push_back(std::move(s));
  }
  std::set<std::pair<unsigned, unsigned>> types;
  if (n <= 4) {
    for_each_subspace(2, 2 * n, n, [&](const std::vector<vec>& rows) {
      unsigned d = subspace_intersection_dim(F2, rows, pi);
      unsigned dp = subspace_intersection_dim(F2, rows, pip);
      if (d >= 1 && dp >= 1 && d + dp == n)
        types.insert({std::min(d, dp), std::max(d, dp)});
    });
  } else {
    for (unsigned d = 1; d + 1 <= n; ++d) {
      // witness: first d rows of one block, last n-d of the other
      std::vector<vec> rows;
      for (unsigned i = 0; i < d; ++i) rows.push_back(pi[i]);
      for (unsigned i = 0; i < n - d; ++i) rows.push_back(pip[i]);
      unsigned dd = subspace_intersection_dim(F2, rows, pi);
      unsigned ddp = subspace_intersection_dim(F2, rows, pip);
      if (dd != d || ddp != n - d)
        throw std::logic_error("witness type not as constructed");
      types.insert({std::min(dd, ddp), std::max(dd, ddp)});
    }
  }
  return static_cast<unsigned>(types.size());
}

// --- partitions ---------------------------------------------------------------

inline std::uint64_t partition_count(unsigned n) {
  if (n > 60) throw std::domain_error("partition table capped at 60");
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (unsigned k = 1; k <= n; ++k)
    for (unsigned m = k; m <= n; ++m) p[m] += p[m - k];
  return p[n];
}

inline std::vector<std::vector<unsigned>> partitions(unsigned n) {
  if (n > 30) throw std::domain_error("partition listing capped at 30");
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned rem,
                                                    unsigned maxpart) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned k = std::min(rem, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rem - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline double hr_estimate(unsigned m) {
  const double pi = 3.14159265358979323846;
  return std::exp(pi * std::sqrt(2.0 * m / 3.0)) / (4.0 * m * std::sqrt(3.0));
}

// --- partition witnesses -------------------------------------------------------

struct PartitionWitness {
  std::vector<vec> alpha;             // basis of the witnessing subspace
  std::vector<unsigned> spread_idx;   // distinct spread parts used
};

// For each partition of n into >= 2 parts, search for an n-dim subspace off
// the spread whose intersections with distinct spread parts have exactly the
// partition's dimensions and together span the subspace. A probe: absence of
// a witness is reported, never treated as a refutation.
inline std::map<std::vector<unsigned>, std::optional<PartitionWitness>>
partition_witness_search(unsigned p, unsigned n,
                         std::uint64_t limit = 1u << 21) {
  Field Fp(p);
  SpreadSet S = regular_spread(p, n);
  std::set<std::vector<vec>> spread_keys;
  for (auto e : S.elems) {
    row_reduce(Fp, e);
    spread_keys.insert(e);
  }
  std::map<std::vector<unsigned>, std::optional<PartitionWitness>> out;
  std::vector<std::vector<unsigned>> targets;
  for (auto& lam : partitions(n))
    if (lam.size() >= 2) {
      targets.push_back(lam);
      out[lam] = std::nullopt;
    }
  std::size_t remaining = targets.size();
  for_each_subspace(
      p, 2 * n, n,
      [&](const std::vector<vec>& rows) {
        if (remaining == 0 || spread_keys.count(rows)) return;
        std::vector<unsigned> dims(S.elems.size());
        for (std::size_t i = 0; i < S.elems.size(); ++i)
          dims[i] = subspace_intersection_dim(Fp, rows, S.elems[i]);
        for (auto& lam : targets) {
          if (out[lam]) continue;
          // backtrack over distinct spread parts matching the parts of lam
          std::vector<unsigned> chosen;
          std::vector<char> used(S.elems.size(), 0);
          std::function<bool(std::size_t, std::vector<vec>)> pick =
              [&](std::size_t j, std::vector<vec> span) -> bool {
            if (j == lam.size())
              return rank(Fp, span) == n;
            for (std::size_t i = 0; i < S.elems.size(); ++i) {
              if (used[i] || dims[i] != lam[j]) continue;
              used[i] = 1;
              chosen.push_back(static_cast<unsigned>(i));
              auto inter = subspace_intersection(Fp, rows, S.elems[i]);
              auto bigger = span;
              bigger.insert(bigger.end(), inter.begin(), inter.end());
              if (pick(j + 1, std::move(bigger))) return true;
              used[i] = 0;
              chosen.pop_back();
            }
            return false;
          };
          if (pick(0, {})) {
            out[lam] = PartitionWitness{rows, chosen};
            --remaining;
          }
        }
      },
      limit);
  return out;
}

// --- cohomology oracles ---------------------------------------------------------

inline std::uint64_t pow_u64(unsigned p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

// second cohomology order of C_p^n with coefficients C_p^n as derived in the
// counting heuristic: p^{n(n-1)(n+2)/2}
inline std::uint64_t h2_order_formula(unsigned p, unsigned n) {
  return pow_u64(p, n * (n - 1) * (n + 2) / 2);
}

// textbook value for the same order: p^{n^2(n+1)/2}
inline std::uint64_t h2_order_expected(unsigned p, unsigned n) {
  return pow_u64(p, n * n * (n + 1) / 2);
}

inline std::uint64_t schur_multiplier_order(unsigned p, unsigned n) {
  return pow_u64(p, n * (n - 1) / 2);
}

struct FiberBound {
  std::int64_t num = 0, den = 0;
  double value = 0;
};

// (p^{n^2} - q^{p mod 2}) / (h2_order_formula - 1)
inline FiberBound fiber_bound(unsigned p, unsigned n) {
  std::int64_t den =
      static_cast<std::int64_t>(h2_order_formula(p, n)) - 1;
  if (den == 0) throw DivisionByZero("counting bound undefined at n = 1");
  std::int64_t q = static_cast<std::int64_t>(pow_u64(p, n));
  std::int64_t num = static_cast<std::int64_t>(pow_u64(p, n * n)) -
                     (p % 2 == 1 ? q : 1);
  return {num, den, static_cast<double>(num) / static_cast<double>(den)};
}

// |H^2(C_p^n, C_p^n)| with trivial action, by direct linear algebra on the
// cocycle identity f(x,y) + f(x+y,z) = f(y,z) + f(x,y+z)
inline std::uint64_t h2_bruteforce(unsigned p, unsigned n) {
  const std::uint64_t nG = pow_u64(p, n);
  const std::uint64_t nvars = nG * nG * n;
  if (nvars > (1u << 12)) throw SystemTooLarge("cocycle system exceeds 2^12");
  Field Fp(p);
  const unsigned g = static_cast<unsigned>(nG);
  auto add = [&](unsigned x, unsigned y) {
    unsigned r = 0, pw = 1;
    for (unsigned i = 0; i < n; ++i, pw *= p) {
      unsigned dx = x / pw % p, dy = y / pw % p;
      r += (dx + dy) % p * pw;
    }
    return r;
  };
  auto var = [&](unsigned x, unsigned y, unsigned c) {
    return (static_cast<std::size_t>(x) * g + y) * n + c;
  };
  std::vector<vec> rows;
  rows.reserve(static_cast<std::size_t>(g) * g * g * n);
  for (unsigned x = 0; x < g; ++x)
    for (unsigned y = 0; y < g; ++y)
      for (unsigned z = 0; z < g; ++z)
        for (unsigned c = 0; c < n; ++c) {
          vec r(nvars, 0);
          auto bump = [&](std::size_t v, fel s) { r[v] = Fp.add(r[v], s); };
          bump(var(x, y, c), 1);
          bump(var(add(x, y), z, c), 1);
          bump(var(y, z, c), Fp.neg(1));
          bump(var(x, add(y, z), c), Fp.neg(1));
          rows.push_back(std::move(r));
        }
  unsigned dimZ = static_cast<unsigned>(nvars) - rank(Fp, rows);
  std::vector<vec> cob;
  for (unsigned z = 0; z < g; ++z)
    for (unsigned c = 0; c < n; ++c) {
      vec r(nvars, 0);
      for (unsigned x = 0; x < g; ++x)
        for (unsigned y = 0; y < g; ++y) {
          fel s = 0;
          if (x == z) s = Fp.add(s, 1);
          if (y == z) s = Fp.add(s, 1);
          if (add(x, y) == z) s = Fp.sub(s, 1);
          r[var(x, y, c)] = s;
        }
      cob.push_back(std::move(r));
    }
  unsigned dimB = rank(Fp, cob);
  return pow_u64(p, dimZ - dimB);
}

}  // namespace singergq
