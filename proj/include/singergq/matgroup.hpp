#pragma once
// Small dense matrices over GF(q) (n <= 4) and finite matrix groups built
// by breadth-first closure from generators. Group-theoretic invariants are
// computed directly on the element list: order, exponent, center, derived
// subgroup, abelian type, sharp transitivity of an action.
//
// Matrices act on column vectors, z -> A z. Projective mode canonicalizes
// every product so the first nonzero entry in row-major order equals 1;
// linear mode compares matrices exactly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "singergq/gf.hpp"
#include "singergq/projgeom.hpp"

namespace singergq {

struct Mat {
  unsigned n = 0;
  std::array<fel, 16> a{};  // row-major, entries beyond n*n stay zero

  fel& at(unsigned r, unsigned c) { return a[r * n + c]; }
  fel at(unsigned r, unsigned c) const { return a[r * n + c]; }
  friend bool operator==(const Mat&, const Mat&) = default;
};

struct MatHash {
  std::size_t operator()(const Mat& m) const {
    std::uint64_t h = 1469598103934665603ull ^ m.n;
    for (fel x : m.a) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline Mat mat_id(unsigned n) {
  Mat m;
  m.n = n;
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

inline Mat mat(unsigned n, std::initializer_list<unsigned> vals) {
  if (vals.size() != n * n) throw std::domain_error("matrix literal size");
  Mat m;
  m.n = n;
  unsigned i = 0;
  for (unsigned v : vals) m.a[i++] = static_cast<fel>(v);
  return m;
}

inline Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
  Mat C;
  C.n = A.n;
  for (unsigned i = 0; i < A.n; ++i)
    for (unsigned j = 0; j < A.n; ++j) {
      fel s = 0;
      for (unsigned k = 0; k < A.n; ++k)
        s = F.add(s, F.mul(A.at(i, k), B.at(k, j)));
      C.at(i, j) = s;
    }
  return C;
}

inline vec mat_vec(const Field& F, const Mat& A, const vec& v) {
  vec out(A.n, 0);
  for (unsigned i = 0; i < A.n; ++i) {
    fel s = 0;
    for (unsigned k = 0; k < A.n; ++k) s = F.add(s, F.mul(A.at(i, k), v[k]));
    out[i] = s;
  }
  return out;
}

inline Mat mat_transpose(const Mat& A) {
  Mat B;
  B.n = A.n;
  for (unsigned i = 0; i < A.n; ++i)
    for (unsigned j = 0; j < A.n; ++j) B.at(i, j) = A.at(j, i);
  return B;
}

inline fel mat_det(const Field& F, Mat A) {
  fel det = 1;
  for (unsigned c = 0; c < A.n; ++c) {
    unsigned piv = c;
    while (piv < A.n && A.at(piv, c) == 0) ++piv;
    if (piv == A.n) return 0;
    if (piv != c) {
      for (unsigned j = 0; j < A.n; ++j) std::swap(A.at(piv, j), A.at(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, A.at(c, c));
    fel s = F.inv(A.at(c, c));
    for (unsigned i = c + 1; i < A.n; ++i) {
      fel f = F.mul(A.at(i, c), s);
      if (f == 0) continue;
      for (unsigned j = c; j < A.n; ++j)
        A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(c, j)));
    }
  }
  return det;
}

inline Mat mat_inv(const Field& F, Mat A) {
  Mat I = mat_id(A.n);
  for (unsigned c = 0; c < A.n; ++c) {
    unsigned piv = c;
    while (piv < A.n && A.at(piv, c) == 0) ++piv;
    if (piv == A.n) throw std::domain_error("singular matrix");
    if (piv != c)
      for (unsigned j = 0; j < A.n; ++j) {
        std::swap(A.at(piv, j), A.at(c, j));
        std::swap(I.at(piv, j), I.at(c, j));
      }
    fel s = F.inv(A.at(c, c));
    for (unsigned j = 0; j < A.n; ++j) {
      A.at(c, j) = F.mul(A.at(c, j), s);
      I.at(c, j) = F.mul(I.at(c, j), s);
    }
    for (unsigned i = 0; i < A.n; ++i) {
      if (i == c || A.at(i, c) == 0) continue;
      fel f = A.at(i, c);
      for (unsigned j = 0; j < A.n; ++j) {
        A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(c, j)));
        I.at(i, j) = F.sub(I.at(i, j), F.mul(f, I.at(c, j)));
      }
    }
  }
  return I;
}

// scale so the first nonzero row-major entry is 1
inline Mat mat_proj_normalize(const Field& F, Mat A) {
  for (unsigned i = 0; i < A.n * A.n; ++i)
    if (A.a[i] != 0) {
      if (A.a[i] != 1) {
        fel s = F.inv(A.a[i]);
        for (unsigned j = 0; j < A.n * A.n; ++j) A.a[j] = F.mul(A.a[j], s);
      }
      return A;
    }
  throw std::domain_error("zero matrix");
}

struct MatGroupOps {
  const Field* F = nullptr;
  bool projective = false;

  Mat norm(Mat A) const { return projective ? mat_proj_normalize(*F, A) : A; }
  Mat mul(const Mat& A, const Mat& B) const { return norm(mat_mul(*F, A, B)); }
  Mat inv(const Mat& A) const { return norm(mat_inv(*F, A)); }
  bool is_id(const Mat& A) const { return A == mat_id(A.n); }
};

// breadth-first closure; returns all elements, identity first
inline std::vector<Mat> group_closure(const MatGroupOps& ops,
                                      const std::vector<Mat>& gens,
                                      std::size_t limit = 1u << 22) {
  if (gens.empty()) throw std::domain_error("no generators");
  std::vector<Mat> canon;
  canon.reserve(gens.size());
  for (const Mat& g : gens) canon.push_back(ops.norm(g));
  std::unordered_set<Mat, MatHash> seen;
  std::vector<Mat> out;
  std::queue<Mat> work;
  Mat e = mat_id(gens[0].n);
  seen.insert(e);
  out.push_back(e);
  work.push(e);
  while (!work.empty()) {
    Mat x = work.front();
    work.pop();
    for (const Mat& g : canon) {
      Mat y = ops.mul(x, g);
      if (seen.insert(y).second) {
        out.push_back(y);
        work.push(y);
        if (out.size() > limit) throw std::runtime_error("closure exceeds limit");
      }
    }
  }
  return out;
}

inline unsigned element_order(const MatGroupOps& ops, const Mat& A) {
  Mat x = ops.norm(A);
  Mat e = mat_id(A.n);
  unsigned k = 1;
  while (!(x == e)) {
    x = ops.mul(x, A);
    ++k;
    if (k > (1u << 24)) throw std::runtime_error("element order diverges");
  }
  return k;
}

inline Mat mat_pow(const MatGroupOps& ops, Mat A, std::uint64_t e) {
  Mat r = mat_id(A.n);
  A = ops.norm(A);
  while (e) {
    if (e & 1) r = ops.mul(r, A);
    A = ops.mul(A, A);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t group_exponent(const MatGroupOps& ops,
                                    const std::vector<Mat>& elements) {
  std::uint64_t ex = 1;
  for (const Mat& g : elements)
    ex = std::lcm(ex, static_cast<std::uint64_t>(element_order(ops, g)));
  return ex;
}

inline bool commutes(const MatGroupOps& ops, const Mat& a, const Mat& b) {
  return ops.mul(a, b) == ops.mul(b, a);
}

inline bool is_abelian(const MatGroupOps& ops, const std::vector<Mat>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!commutes(ops, gens[i], gens[j])) return false;
  return true;
}

// elements commuting with every generator
inline std::vector<Mat> center(const MatGroupOps& ops,
                               const std::vector<Mat>& elements,
                               const std::vector<Mat>& gens) {
  std::vector<Mat> out;
  for (const Mat& x : elements) {
    bool ok = true;
    for (const Mat& g : gens)
      if (!commutes(ops, x, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

// normal closure of the generator commutators, as an element list
inline std::vector<Mat> derived_subgroup(const MatGroupOps& ops,
                                         const std::vector<Mat>& gens) {
  std::vector<Mat> dgens;
  for (const Mat& a : gens)
    for (const Mat& b : gens) {
      Mat c = ops.mul(ops.mul(ops.inv(a), ops.inv(b)), ops.mul(a, b));
      if (!ops.is_id(c)) dgens.push_back(c);
    }
  if (dgens.empty()) return {mat_id(gens[0].n)};
  for (;;) {
    std::vector<Mat> elems = group_closure(ops, dgens);
    std::unordered_set<Mat, MatHash> have(elems.begin(), elems.end());
    bool grew = false;
    for (const Mat& g : gens) {
      Mat gi = ops.inv(g);
      for (const Mat& d : elems) {
        Mat c = ops.mul(ops.mul(g, d), gi);
        if (!have.count(c)) {
          dgens.push_back(c);
          grew = true;
        }
      }
      if (grew) break;
    }
    if (!grew) return elems;
  }
}

inline bool is_elementary_abelian(const MatGroupOps& ops,
                                  const std::vector<Mat>& elements,
                                  const std::vector<Mat>& gens, unsigned p) {
  if (!is_abelian(ops, gens)) return false;
  for (const Mat& g : elements)
    if (!ops.is_id(mat_pow(ops, g, p))) return false;
  return true;
}

// type of a finite abelian group: prime -> exponents of its cyclic p-power
// factors, largest first, recovered from the counts of p^j torsion elements
inline std::map<unsigned, std::vector<unsigned>> abelian_type(
    const MatGroupOps& ops, const std::vector<Mat>& elements) {
  std::map<unsigned, std::vector<unsigned>> out;
  std::uint64_t n = elements.size();
  for (unsigned p = 2; n > 1; ++p) {
    if (n % p) continue;
    unsigned pk = 0;
    while (n % p == 0) {
      n /= p;
      ++pk;
    }
    // c_j = log_p #{x : x^{p^j} = 1} = sum_i min(lambda_i, j)
    std::vector<unsigned> c{0};
    for (unsigned j = 1;; ++j) {
      std::uint64_t pj = 1;
      for (unsigned i = 0; i < j; ++i) pj *= p;
      std::uint64_t cnt = 0;
      for (const Mat& g : elements)
        if (ops.is_id(mat_pow(ops, g, pj))) ++cnt;
      unsigned lg = 0;
      while (cnt > 1) {
        cnt /= p;
        ++lg;
      }
      c.push_back(lg);
      if (lg == pk) break;
    }
    std::vector<unsigned> lambda;
    for (std::size_t j = 1; j < c.size(); ++j) {
      unsigned parts_ge_j = c[j] - c[j - 1];  // #{i : lambda_i >= j}
      while (lambda.size() < parts_ge_j) lambda.push_back(0);
      for (unsigned i = 0; i < parts_ge_j; ++i) ++lambda[i];
    }
    out[p] = lambda;
  }
  return out;
}

// action must send (group element, point) to a point id; sharp transitivity
// means |G| = #points and one orbit, each point hit exactly once from x0
template <class Action>
bool is_sharply_transitive(const std::vector<Mat>& elements, Action&& act,
                           std::size_t npoints, std::uint32_t x0 = 0) {
  if (elements.size() != npoints) return false;
  std::vector<char> hit(npoints, 0);
  for (const Mat& g : elements) {
    std::uint32_t y = act(g, x0);
    if (y >= npoints || hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

// matrix action on the points of a projective space
inline std::size_t proj_point_image(const ProjSpace& P, const Mat& A,
                                    std::size_t i) {
  return P.index(mat_vec(P.field(), A, P.point(i)));
}

inline bool mat_less(const Mat& a, const Mat& b) {
  if (a.n != b.n) return a.n < b.n;
  return a.a < b.a;
}

inline std::vector<Mat> sorted_elements(std::vector<Mat> v) {
  std::sort(v.begin(), v.end(), mat_less);
  return v;
}

// flattened canonical key of an element set, for subgroup dedup
inline std::vector<fel> subgroup_key(std::vector<Mat> v) {
  std::sort(v.begin(), v.end(), mat_less);
  std::vector<fel> key;
  key.reserve(v.size() * 17);
  for (const Mat& m : v) {
    key.push_back(static_cast<fel>(m.n));
    key.insert(key.end(), m.a.begin(), m.a.end());
  }
  return key;
}

inline bool is_normal_in(const MatGroupOps& ops, const std::vector<Mat>& sub,
                         const std::vector<Mat>& ambient) {
  std::unordered_set<Mat, MatHash> in_sub(sub.begin(), sub.end());
  for (const Mat& g : ambient) {
    Mat gi = ops.inv(g);
    for (const Mat& s : sub)
      if (!in_sub.count(ops.mul(ops.mul(g, s), gi))) return false;
  }
  return true;
}

// lower central series length; -1 when the series stalls above the identity
inline int nilpotency_class(const MatGroupOps& ops,
                            const std::vector<Mat>& elements,
                            const std::vector<Mat>& gens, int max_class = 20) {
  if (elements.size() <= 1) return 0;
  std::vector<Mat> cur = elements;
  for (int c = 1; c <= max_class; ++c) {
    std::vector<Mat> cgens;
    for (const Mat& x : cur)
      for (const Mat& g : gens) {
        Mat k = ops.mul(ops.mul(ops.inv(x), ops.inv(g)), ops.mul(x, g));
        if (!ops.is_id(k)) cgens.push_back(k);
      }
    if (cgens.empty()) return c;
    // normal closure of the commutators under the ambient generators
    for (;;) {
      std::vector<Mat> elems = group_closure(ops, cgens);
      std::unordered_set<Mat, MatHash> have(elems.begin(), elems.end());
      bool grew = false;
      for (const Mat& g : gens) {
        Mat gi = ops.inv(g);
        for (const Mat& d : elems) {
          Mat k = ops.mul(ops.mul(g, d), gi);
          if (!have.count(k)) {
            cgens.push_back(k);
            grew = true;
          }
        }
        if (grew) break;
      }
      if (!grew) {
        if (elems.size() == cur.size()) return -1;
        cur = std::move(elems);
        break;
      }
    }
  }
  return -1;
}

// Every maximal abelian subgroup, each as a sorted element list. Walks
// centralizers: a maximal abelian subgroup of C_G(g) containing g stays
// maximal in G, and every maximal abelian subgroup of a nonabelian G
// contains a noncentral element, so the recursion is exhaustive.
inline std::vector<std::vector<Mat>> maximal_abelian_subgroups(
    const MatGroupOps& ops, const std::vector<Mat>& elements) {
  std::vector<std::vector<Mat>> out;
  std::set<std::vector<fel>> recorded, visited;
  std::function<void(const std::vector<Mat>&)> walk =
      [&](const std::vector<Mat>& C) {
        if (is_abelian(ops, C)) {
          if (recorded.insert(subgroup_key(C)).second)
            out.push_back(sorted_elements(C));
          return;
        }
        std::vector<Mat> Zc = center(ops, C, C);
        std::unordered_set<Mat, MatHash> central(Zc.begin(), Zc.end());
        for (const Mat& g : C) {
          if (central.count(g)) continue;
          std::vector<Mat> K = center(ops, C, {g});
          if (is_abelian(ops, K)) {
            if (recorded.insert(subgroup_key(K)).second)
              out.push_back(sorted_elements(K));
          } else if (visited.insert(subgroup_key(K)).second) {
            walk(K);
          }
        }
      };
  walk(elements);
  return out;
}

struct LinearGroupOrders {
  std::uint64_t pgl = 0, psl = 0;
  unsigned ratio = 1;  // |PGL| / |PSL| = gcd(n, q-1)
};

inline LinearGroupOrders psl_pgl_order(unsigned n, unsigned q) {
  if (n < 2 || q < 2) throw std::domain_error("need n, q >= 2");
  unsigned __int128 pgl = 1;
  for (unsigned e = 0; e < n * (n - 1) / 2; ++e) pgl *= q;
  for (unsigned i = 2; i <= n; ++i) {
    unsigned __int128 qi = 1;
    for (unsigned j = 0; j < i; ++j) qi *= q;
    pgl *= qi - 1;
  }
  if (pgl > UINT64_MAX) throw std::overflow_error("group order exceeds 64 bits");
  unsigned ratio = std::gcd(n, q - 1);
  return {static_cast<std::uint64_t>(pgl),
          static_cast<std::uint64_t>(pgl / ratio), ratio};
}

struct GroupInvariants {
  std::uint64_t order = 0, exponent = 0, center_order = 0, derived_order = 0;
  int nilpotency_class = -1;
  bool abelian = false;
  friend bool operator==(const GroupInvariants&, const GroupInvariants&) =
      default;
};

inline GroupInvariants invariants(const MatGroupOps& ops,
                                  const std::vector<Mat>& elements,
                                  const std::vector<Mat>& gens) {
  GroupInvariants inv;
  inv.order = elements.size();
  inv.exponent = group_exponent(ops, elements);
  inv.center_order = center(ops, elements, gens).size();
  inv.derived_order = derived_subgroup(ops, gens).size();
  inv.abelian = inv.derived_order == 1;
  inv.nilpotency_class = nilpotency_class(ops, elements, gens);
  return inv;
}

// distinct permutations the elements induce on 0..npts-1, sorted, plus the
// number of elements acting trivially (the kernel order when they form a group)
template <class Action>
std::pair<std::vector<std::vector<std::uint32_t>>, std::size_t>
induced_permutations(const std::vector<Mat>& elements, Action&& act,
                     std::size_t npts) {
  std::vector<std::vector<std::uint32_t>> perms;
  perms.reserve(elements.size());
  std::size_t kernel = 0;
  for (const Mat& g : elements) {
    std::vector<std::uint32_t> pm(npts);
    bool ident = true;
    for (std::uint32_t i = 0; i < npts; ++i) {
      pm[i] = static_cast<std::uint32_t>(act(g, i));
      ident = ident && pm[i] == i;
    }
    if (ident) ++kernel;
    perms.push_back(std::move(pm));
  }
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  return {perms, kernel};
}

}  // namespace singergq
