#pragma once
// Panel-regular lattice presentations from two point-regular quadrangle
// groups. The pipeline: local_data fixes the pencil of lines through a
// base point and computes the line stabilizers by orbit-stabilizer,
// check_local_iso matches the two stabilizer profiles, and gamma1 emits
//
//   (S * S') / << [S_L(j), S'_L'(sigma j)] : j in J >>
//
// as an explicit presentation: one generator per nontrivial element of
// each factor, full multiplication-table relators, and the commutator
// relators of the matched stabilizer pairs. Groups enter as complete
// lists of point permutations; everything downstream runs on a Cayley
// table indexed through the free base-point action.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "incidence.hpp"

namespace singergq {

struct NotSinger : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoMatching : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MatchingInvalid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnknownFormat : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TableTooLarge : std::length_error {
  using std::length_error::length_error;
};

using Perm = std::vector<std::uint32_t>;

// (f then g applied after): (f o g)[i] = f[g[i]]
inline Perm compose_perm(const Perm& f, const Perm& g) {
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

// --- Cayley table through a free point ---------------------------------------

// Multiplication table of a permutation group given as a full element
// list acting freely and transitively at the point x. Every product is
// located through its image of x and then verified entrywise, so a list
// that is not a sharply point-transitive group cannot slip through.
struct GroupTable {
  std::uint32_t n = 0;
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> tab;  // tab[i*n+j] = index of elements[i] o elements[j]
  std::vector<std::uint32_t> inv;

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    return tab[static_cast<std::size_t>(i) * n + j];
  }
  std::uint64_t element_order(std::uint32_t i) const {
    std::uint64_t o = 1;
    for (std::uint32_t k = i; k != identity; k = mul(k, i)) ++o;
    return o;
  }
};

inline GroupTable group_table(const std::vector<Perm>& elements,
                              std::uint32_t x) {
  GroupTable T;
  T.n = static_cast<std::uint32_t>(elements.size());
  if (T.n == 0) throw NotSinger("empty group");
  const std::size_t npts = elements[0].size();
  if (x >= npts) throw std::invalid_argument("base point out of range");
  if (T.n > 8192)
    throw TableTooLarge("group table would need " + std::to_string(T.n) +
                        "^2 entries");
  std::vector<std::uint32_t> at_x(npts, UINT32_MAX);
  for (std::uint32_t i = 0; i < T.n; ++i) {
    if (elements[i].size() != npts)
      throw NotSinger("permutation degrees disagree");
    std::uint32_t img = elements[i][x];
    if (img >= npts) throw NotSinger("permutation value out of range");
    if (at_x[img] != UINT32_MAX)
      throw NotSinger("two elements agree at the base point");
    at_x[img] = i;
  }
  T.identity = at_x[x];
  if (T.identity == UINT32_MAX)
    throw NotSinger("no element fixes the base point");
  for (std::size_t p = 0; p < npts; ++p)
    if (elements[T.identity][p] != p)
      throw NotSinger("the base point stabilizer is not trivial");
  T.tab.resize(static_cast<std::size_t>(T.n) * T.n);
  for (std::uint32_t i = 0; i < T.n; ++i)
    for (std::uint32_t j = 0; j < T.n; ++j) {
      std::uint32_t k = at_x[elements[i][elements[j][x]]];
      if (k == UINT32_MAX) throw NotSinger("not closed under composition");
      const Perm &f = elements[i], &g = elements[j], &h = elements[k];
      for (std::size_t p = 0; p < npts; ++p)
        if (f[g[p]] != h[p]) throw NotSinger("not closed under composition");
      T.tab[static_cast<std::size_t>(i) * T.n + j] = k;
    }
  T.inv.resize(T.n);
  for (std::uint32_t i = 0; i < T.n; ++i)
    for (std::uint32_t j = 0; j < T.n; ++j)
      if (T.mul(i, j) == T.identity) {
        T.inv[i] = j;
        break;
      }
  return T;
}

// --- abelian invariants -------------------------------------------------------

// invariant factors (ascending divisibility chain) from per-prime
// descending exponent multisets, aligning the largest exponents
inline std::vector<std::uint64_t> factors_from_prime_exponents(
    std::map<std::uint64_t, std::vector<unsigned>> pe) {
  std::size_t k = 0;
  for (auto& [p, es] : pe) {
    std::sort(es.begin(), es.end(), std::greater<unsigned>());
    k = std::max(k, es.size());
  }
  std::vector<std::uint64_t> desc(k, 1);
  for (const auto& [p, es] : pe)
    for (std::size_t s = 0; s < es.size(); ++s)
      for (unsigned e = 0; e < es[s]; ++e) desc[s] *= p;
  while (!desc.empty() && desc.back() == 1) desc.pop_back();
  std::reverse(desc.begin(), desc.end());
  return desc;
}

// The multiset of element orders pins a finite abelian group up to
// isomorphism; recover the invariant factors from it.
inline std::vector<std::uint64_t> invariant_factors_from_orders(
    const std::vector<std::uint64_t>& orders) {
  std::map<std::uint64_t, std::vector<unsigned>> pe;
  std::set<std::uint64_t> primes;
  for (std::uint64_t o : orders) {
    for (std::uint64_t p = 2; p * p <= o; ++p)
      while (o % p == 0) {
        primes.insert(p);
        o /= p;
      }
    if (o > 1) primes.insert(o);
  }
  for (std::uint64_t p : primes) {
    // d_k = #elements killed by p^k; the k-th jump counts cyclic factors
    // of order >= p^k
    std::vector<unsigned> dlog{0};
    for (unsigned k = 1;; ++k) {
      std::uint64_t pk = 1;
      for (unsigned i = 0; i < k; ++i) pk *= p;
      std::uint64_t cnt = 0;
      for (std::uint64_t o : orders) {
        std::uint64_t r = o;
        while (r % p == 0) r /= p;
        if (r == 1 && o <= pk && pk % o == 0) ++cnt;
      }
      unsigned lg = 0;
      std::uint64_t pw = 1;
      while (pw < cnt) {
        pw *= p;
        ++lg;
      }
      if (pw != cnt)
        throw std::invalid_argument("order census not abelian-consistent");
      dlog.push_back(lg);
      if (k > 1 && dlog[k] == dlog[k - 1]) break;
    }
    std::vector<unsigned>& es = pe[p];
    for (std::size_t k = 1; k + 1 < dlog.size(); ++k) {
      unsigned atleast_k = dlog[k] - dlog[k - 1];
      unsigned atleast_k1 = dlog[k + 1] - dlog[k];
      for (unsigned c = atleast_k1; c < atleast_k; ++c)
        es.push_back(static_cast<unsigned>(k));
    }
  }
  return factors_from_prime_exponents(std::move(pe));
}

// derived subgroup as an index set, via the table
inline std::vector<std::uint32_t> derived_indices(const GroupTable& T) {
  std::vector<char> in(T.n, 0);
  in[T.identity] = 1;
  std::vector<std::uint32_t> work{T.identity};
  auto push = [&](std::uint32_t v) {
    if (!in[v]) {
      in[v] = 1;
      work.push_back(v);
    }
  };
  for (std::uint32_t i = 0; i < T.n; ++i)
    for (std::uint32_t j = 0; j < T.n; ++j)
      push(T.mul(T.mul(T.inv[i], T.inv[j]), T.mul(i, j)));
  for (std::size_t head = 0; head < work.size(); ++head)
    for (std::size_t k = 0; k < work.size(); ++k) {
      push(T.mul(work[head], work[k]));
      if (head != k) push(T.mul(work[k], work[head]));
    }
  std::sort(work.begin(), work.end());
  return work;
}

// invariant factors of G/[G,G]
inline std::vector<std::uint64_t> abelianized_factors(const GroupTable& T) {
  std::vector<std::uint32_t> D = derived_indices(T);
  std::vector<std::uint32_t> coset(T.n, UINT32_MAX);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t i = 0; i < T.n; ++i) {
    if (coset[i] != UINT32_MAX) continue;
    std::uint32_t c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(i);
    for (std::uint32_t d : D) coset[T.mul(i, d)] = c;
  }
  std::vector<std::uint64_t> orders;
  for (std::uint32_t r : reps) {
    std::uint64_t o = 1;
    std::uint32_t k = r;
    while (coset[k] != coset[T.identity]) {
      k = T.mul(k, r);
      ++o;
    }
    orders.push_back(o);
  }
  return invariant_factors_from_orders(orders);
}

// --- local data at a base point ----------------------------------------------

struct LineStabilizer {
  std::uint32_t line = 0;                 // line id in the incidence structure
  std::vector<std::uint32_t> members;     // element indices, ascending
  std::uint64_t orbit_size = 0;
  bool abelian = true;
  std::vector<std::uint64_t> factors;     // invariant factors; empty = trivial
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order_census;
};

struct LocalData {
  Incidence inc;
  std::uint32_t x = 0;
  std::vector<Perm> elements;
  GroupTable table;
  std::vector<std::uint32_t> lambda;      // line ids through x, ascending
  std::vector<LineStabilizer> stabilizers;
  bool all_abelian = true;
};

inline std::string profile_string(const LineStabilizer& st) {
  if (!st.abelian) {
    std::string s = "nab" + std::to_string(st.members.size()) + "(";
    bool first = true;
    for (const auto& [o, c] : st.order_census) {
      if (o == 1) continue;
      if (!first) s += ",";
      s += std::to_string(o) + ":" + std::to_string(c);
      first = false;
    }
    return s + ")";
  }
  if (st.members.size() == 1) return "1";
  std::string s;
  for (auto it = st.factors.rbegin(); it != st.factors.rend(); ++it) {
    if (!s.empty()) s += "x";
    s += "C" + std::to_string(*it);
  }
  return s;
}

inline std::vector<std::string> stabilizer_profile(const LocalData& L) {
  std::vector<std::string> out;
  for (const auto& st : L.stabilizers) out.push_back(profile_string(st));
  return out;
}

// Pencil data of a point-regular automorphism group: the lines through
// x in ascending id order and their setwise stabilizers. Rejects input
// that is not a group of automorphisms acting sharply transitively on
// the points.
inline LocalData local_data(const Incidence& inc,
                            const std::vector<Perm>& elements,
                            std::uint32_t x) {
  if (x >= inc.npoints) throw std::invalid_argument("base point out of range");
  if (elements.size() != inc.npoints)
    throw NotSinger("need exactly one group element per point, got " +
                    std::to_string(elements.size()) + " for " +
                    std::to_string(inc.npoints) + " points");
  std::vector<char> seen(inc.npoints);
  for (const Perm& g : elements) {
    if (g.size() != inc.npoints)
      throw NotSinger("permutation degree does not match the point count");
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t v : g) {
      if (v >= inc.npoints || seen[v])
        throw NotSinger("element is not a permutation of the points");
      seen[v] = 1;
    }
  }
  std::set<std::vector<std::uint32_t>> line_set(inc.lines.begin(),
                                                inc.lines.end());
  std::vector<std::uint32_t> img;
  for (const Perm& g : elements)
    for (const auto& L : inc.lines) {
      img.clear();
      for (std::uint32_t p : L) img.push_back(g[p]);
      std::sort(img.begin(), img.end());
      if (!line_set.count(img))
        throw NotSinger("element does not map lines to lines");
    }

  LocalData out;
  out.inc = inc;
  out.x = x;
  out.elements = elements;
  out.table = group_table(elements, x);

  for (std::uint32_t li = 0; li < inc.lines.size(); ++li)
    if (std::binary_search(inc.lines[li].begin(), inc.lines[li].end(), x))
      out.lambda.push_back(li);

  for (std::uint32_t li : out.lambda) {
    LineStabilizer st;
    st.line = li;
    std::set<std::vector<std::uint32_t>> orbit;
    for (std::uint32_t i = 0; i < out.table.n; ++i) {
      img.clear();
      for (std::uint32_t p : inc.lines[li]) img.push_back(elements[i][p]);
      std::sort(img.begin(), img.end());
      if (img == inc.lines[li]) st.members.push_back(i);
      orbit.insert(img);
    }
    st.orbit_size = orbit.size();
    if (st.orbit_size * st.members.size() != out.table.n)
      throw std::logic_error("orbit-stabilizer identity failed");
    std::map<std::uint64_t, std::uint64_t> census;
    std::vector<std::uint64_t> orders;
    for (std::uint32_t m : st.members) {
      std::uint64_t o = out.table.element_order(m);
      ++census[o];
      orders.push_back(o);
    }
    st.order_census.assign(census.begin(), census.end());
    for (std::uint32_t a : st.members)
      for (std::uint32_t b : st.members)
        if (out.table.mul(a, b) != out.table.mul(b, a)) st.abelian = false;
    if (st.abelian) st.factors = invariant_factors_from_orders(orders);
    out.all_abelian = out.all_abelian && st.abelian;
    out.stabilizers.push_back(std::move(st));
  }
  return out;
}

// --- local isomorphism matching ----------------------------------------------

struct Matching {
  std::vector<std::uint32_t> sigma;  // pencil index j -> pencil index of L'
  bool fingerprint_only = false;     // some matched stabilizer is nonabelian
};

inline std::string profile_list(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i];
  }
  return s + "]";
}

// Bijection sigma with S_{lambda(j)} iso S'_{lambda'(sigma j)} for all j.
// Abelian stabilizers are matched on invariant factors, which decide the
// isomorphism type; a nonabelian stabilizer downgrades its match to the
// order-census fingerprint and flags the result.
inline Matching check_local_iso(const LocalData& A, const LocalData& B) {
  if (A.lambda.size() != B.lambda.size())
    throw NoMatching("pencil sizes differ: " + std::to_string(A.lambda.size()) +
                     " vs " + std::to_string(B.lambda.size()));
  auto pa = stabilizer_profile(A), pb = stabilizer_profile(B);
  std::vector<std::uint32_t> ia(pa.size()), ib(pb.size());
  std::iota(ia.begin(), ia.end(), 0);
  std::iota(ib.begin(), ib.end(), 0);
  auto by = [](const std::vector<std::string>& prof) {
    return [&prof](std::uint32_t l, std::uint32_t r) {
      return prof[l] != prof[r] ? prof[l] < prof[r] : l < r;
    };
  };
  std::sort(ia.begin(), ia.end(), by(pa));
  std::sort(ib.begin(), ib.end(), by(pb));
  for (std::size_t k = 0; k < ia.size(); ++k)
    if (pa[ia[k]] != pb[ib[k]])
      throw NoMatching("stabilizer profiles do not match: " + profile_list(pa) +
                       " vs " + profile_list(pb));
  Matching M;
  M.sigma.resize(pa.size());
  for (std::size_t k = 0; k < ia.size(); ++k) M.sigma[ia[k]] = ib[k];
  for (std::size_t j = 0; j < pa.size(); ++j)
    M.fingerprint_only |= !A.stabilizers[j].abelian;
  return M;
}

// --- the presentation ---------------------------------------------------------

// letters: positive = generator id (1-based), negative = its inverse
using Word = std::vector<std::int32_t>;

struct Presentation {
  std::vector<std::string> names;
  std::vector<Word> relators;
  std::size_t left_generators = 0;  // names[0 .. left_generators) belong to S
  std::size_t table_relators = 0;
  std::size_t commutator_relators = 0;
  std::vector<std::uint64_t> abelianization;  // invariant factors, ascending
  std::uint64_t abelianization_order = 1;
  std::size_t free_rank = 0;
  std::string abelianization_method;  // "smith" or "direct"
};

// Smith normal form diagonal over the integers; standard pivot reduction
inline std::vector<long long> smith_diagonal(
    std::vector<std::vector<long long>> M, std::size_t cols) {
  std::vector<long long> diag;
  std::size_t top = 0;
  const std::size_t rows = M.size();
  for (std::size_t t = 0; t < cols && top < rows; ++t) {
    std::size_t pr = rows, pc = cols;
    long long best = 0;
    for (std::size_t r = top; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (M[r][c] != 0 &&
            (best == 0 || std::llabs(M[r][c]) < std::llabs(best))) {
          best = M[r][c];
          pr = r;
          pc = c;
        }
    if (best == 0) break;
    std::swap(M[top], M[pr]);
    for (auto& row : M) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = top + 1; r < rows; ++r)
        while (M[r][t] != 0) {
          long long f = M[r][t] / M[top][t];
          for (std::size_t c = t; c < cols; ++c) M[r][c] -= f * M[top][c];
          if (M[r][t] != 0) {
            std::swap(M[top], M[r]);
            clean = false;
          }
        }
      for (std::size_t c = t + 1; c < cols; ++c)
        while (M[top][c] != 0) {
          long long f = M[top][c] / M[top][t];
          for (auto& row : M) row[c] -= f * row[t];
          if (M[top][c] != 0) {
            for (auto& row : M) std::swap(row[t], row[c]);
            clean = false;
          }
        }
      if (!clean) continue;
      // divisibility sweep so the diagonal forms a chain
      for (std::size_t r = top + 1; r < rows && clean; ++r)
        for (std::size_t c = t + 1; c < cols && clean; ++c)
          if (M[r][c] % M[top][t] != 0) {
            for (std::size_t cc = t; cc < cols; ++cc) M[top][cc] += M[r][cc];
            clean = false;
          }
    }
    diag.push_back(std::llabs(M[top][t]));
    ++top;
  }
  return diag;
}

namespace detail {
inline void fill_abelianization_smith(Presentation& P) {
  const std::size_t cols = P.names.size();
  std::set<std::vector<long long>> rows;
  for (const Word& w : P.relators) {
    std::vector<long long> row(cols, 0);
    for (std::int32_t letter : w)
      row[static_cast<std::size_t>(std::abs(letter)) - 1] +=
          letter > 0 ? 1 : -1;
    if (std::any_of(row.begin(), row.end(), [](long long v) { return v != 0; }))
      rows.insert(std::move(row));
  }
  auto diag =
      smith_diagonal(std::vector<std::vector<long long>>(rows.begin(), rows.end()),
                     cols);
  std::size_t rank = 0;
  P.abelianization.clear();
  for (long long d : diag)
    if (d != 0) {
      ++rank;
      if (d != 1) P.abelianization.push_back(static_cast<std::uint64_t>(d));
    }
  P.free_rank = cols - rank;
  P.abelianization_order = 1;
  for (std::uint64_t d : P.abelianization) P.abelianization_order *= d;
  P.abelianization_method = "smith";
}
}  // namespace detail

// Amalgam presentation over a validated matching. Table relators list
// g*h*(gh)^-1 for every ordered pair of nontrivial elements of each
// factor; commutator relators run over the matched stabilizer pairs.
// For presentations up to snf_cap generators the abelianization comes
// from the Smith form of the relator matrix; above that it is assembled
// factor-by-factor (the commutator relators die in any abelian quotient,
// so the abelianization is S^ab x S'^ab either way).
inline Presentation gamma1(const LocalData& A, const LocalData& B,
                           const Matching& M, std::size_t snf_cap = 200) {
  const std::size_t J = A.lambda.size();
  if (B.lambda.size() != J || M.sigma.size() != J)
    throw MatchingInvalid("matching size does not fit the pencils");
  std::vector<char> hit(J, 0);
  for (std::uint32_t v : M.sigma) {
    if (v >= J || hit[v]) throw MatchingInvalid("matching is not a bijection");
    hit[v] = 1;
  }
  for (std::size_t j = 0; j < J; ++j)
    if (profile_string(A.stabilizers[j]) !=
        profile_string(B.stabilizers[M.sigma[j]]))
      throw MatchingInvalid(
          "stabilizers at pencil index " + std::to_string(j) +
          " are not isomorphic: " + profile_string(A.stabilizers[j]) + " vs " +
          profile_string(B.stabilizers[M.sigma[j]]));

  Presentation P;
  const std::uint32_t na = A.table.n, nb = B.table.n;
  std::vector<std::int32_t> gida(na, 0), gidb(nb, 0);
  std::int32_t next = 1;
  for (std::uint32_t i = 0; i < na; ++i)
    if (i != A.table.identity) {
      gida[i] = next++;
      P.names.push_back("a" + std::to_string(gida[i]));
    }
  P.left_generators = P.names.size();
  for (std::uint32_t i = 0; i < nb; ++i)
    if (i != B.table.identity) {
      gidb[i] = next++;
      P.names.push_back("b" + std::to_string(gidb[i] -
                                             static_cast<std::int32_t>(na) + 1));
    }

  auto table_block = [&P](const GroupTable& T,
                          const std::vector<std::int32_t>& gid) {
    for (std::uint32_t i = 0; i < T.n; ++i) {
      if (i == T.identity) continue;
      for (std::uint32_t j = 0; j < T.n; ++j) {
        if (j == T.identity) continue;
        std::uint32_t k = T.mul(i, j);
        Word w{gid[i], gid[j]};
        if (k != T.identity) w.push_back(-gid[k]);
        P.relators.push_back(std::move(w));
        ++P.table_relators;
      }
    }
  };
  table_block(A.table, gida);
  table_block(B.table, gidb);

  for (std::size_t j = 0; j < J; ++j)
    for (std::uint32_t u : A.stabilizers[j].members) {
      if (u == A.table.identity) continue;
      for (std::uint32_t v : B.stabilizers[M.sigma[j]].members) {
        if (v == B.table.identity) continue;
        P.relators.push_back({gida[u], gidb[v], -gida[u], -gidb[v]});
        ++P.commutator_relators;
      }
    }

  if (P.names.size() <= snf_cap) {
    detail::fill_abelianization_smith(P);
  } else {
    std::map<std::uint64_t, std::vector<unsigned>> pe;
    for (const GroupTable* T : {&A.table, &B.table})
      for (std::uint64_t f : abelianized_factors(*T))
        for (std::uint64_t p = 2, r = f; r > 1; ++p)
          if (r % p == 0) {
            unsigned e = 0;
            while (r % p == 0) {
              r /= p;
              ++e;
            }
            pe[p].push_back(e);
          }
    P.abelianization = factors_from_prime_exponents(std::move(pe));
    P.abelianization_order = 1;
    for (std::uint64_t d : P.abelianization) P.abelianization_order *= d;
    P.free_rank = 0;
    P.abelianization_method = "direct";
  }
  return P;
}

// --- Schur multiplier metadata -------------------------------------------------

struct H2Info {
  bool known = false;
  std::uint64_t p = 0;        // prime, 0 for a trivial multiplier
  std::uint64_t exponent = 0; // |H2| = p^exponent
  std::string text;
};

struct HomologyMetadata {
  H2Info left, right;
  bool product_known = false;
  std::string product_text;
};

// H2 of an elementary abelian group C_p^k is C_p^(k(k-1)/2); anything
// else is out of scope for this formula and reported as unknown.
inline H2Info schur_elementary(const std::vector<Perm>& G) {
  H2Info info;
  info.text = "unknown (formula out of scope)";
  if (G.empty()) throw std::invalid_argument("empty group");
  const std::size_t npts = G[0].size();
  Perm id(npts);
  std::iota(id.begin(), id.end(), 0);
  if (std::find(G.begin(), G.end(), id) == G.end())
    throw std::invalid_argument("identity permutation missing");
  std::uint64_t p = 0;
  for (const Perm& g : G) {
    if (g.size() != npts) throw std::invalid_argument("degrees disagree");
    if (g == id) continue;
    Perm pw = g;
    std::uint64_t o = 1;
    while (pw != id) {
      pw = compose_perm(pw, g);
      if (++o > G.size()) throw std::invalid_argument("order exceeds the set");
    }
    if (p == 0) p = o;
    if (o != p) return info;
  }
  if (p == 0) {  // trivial group
    info.known = true;
    info.exponent = 0;
    info.text = "1";
    return info;
  }
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return info;
  for (const Perm& g : G)
    for (const Perm& h : G)
      if (compose_perm(g, h) != compose_perm(h, g)) return info;
  std::uint64_t k = 0, pw = 1;
  while (pw < G.size()) {
    pw *= p;
    ++k;
  }
  if (pw != G.size()) return info;
  info.known = true;
  info.p = p;
  info.exponent = k * (k - 1) / 2;
  info.text = info.exponent == 0
                  ? "1"
                  : std::to_string(p) + "^" + std::to_string(info.exponent);
  return info;
}

inline HomologyMetadata homology_metadata(const std::vector<Perm>& S,
                                          const std::vector<Perm>& Sprime) {
  HomologyMetadata H;
  H.left = schur_elementary(S);
  H.right = schur_elementary(Sprime);
  H.product_known = H.left.known && H.right.known;
  if (!H.product_known) {
    H.product_text = "unknown (formula out of scope)";
  } else if (H.left.exponent == 0) {
    H.product_text = H.right.text;
  } else if (H.right.exponent == 0) {
    H.product_text = H.left.text;
  } else if (H.left.p == H.right.p) {
    H.product_text = std::to_string(H.left.p) + "^" +
                     std::to_string(H.left.exponent + H.right.exponent);
  } else {
    H.product_text = H.left.text + "*" + H.right.text;
  }
  return H;
}

// --- export -------------------------------------------------------------------

namespace detail {
inline std::string word_text(const Word& w,
                             const std::vector<std::string>& names,
                             const char* sep, const char* prefix) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += sep;
    std::size_t id = static_cast<std::size_t>(std::abs(w[i]));
    if (*prefix)
      s += std::string(prefix) + std::to_string(id);
    else
      s += names[id - 1];
    if (w[i] < 0) s += "^-1";
  }
  return s;
}
}  // namespace detail

inline std::string export_presentation(const Presentation& P,
                                       const std::string& format) {
  if (P.names.empty() || P.relators.empty())
    throw std::invalid_argument("presentation has no relators");
  const std::string counts =
      "generators " + std::to_string(P.names.size()) + " = " +
      std::to_string(P.left_generators) + " + " +
      std::to_string(P.names.size() - P.left_generators) + ", relators " +
      std::to_string(P.relators.size()) + " = " +
      std::to_string(P.table_relators) + " table + " +
      std::to_string(P.commutator_relators) + " commutator";
  std::string out;
  if (format == "gap") {
    out += "# panel-regular lattice presentation\n# " + counts + "\n";
    out += "F := FreeGroup( ";
    for (std::size_t i = 0; i < P.names.size(); ++i) {
      if (i) out += ", ";
      out += "\"" + P.names[i] + "\"";
    }
    out += " );\nrels := [\n";
    for (std::size_t r = 0; r < P.relators.size(); ++r) {
      out += detail::word_text(P.relators[r], P.names, "*", "F.");
      out += r + 1 < P.relators.size() ? ",\n" : "\n";
    }
    out += "];\nG := F / rels;\n";
    return out;
  }
  if (format == "magma") {
    out += "// panel-regular lattice presentation\n// " + counts + "\n";
    std::string gens;
    for (std::size_t i = 0; i < P.names.size(); ++i) {
      if (i) gens += ", ";
      gens += P.names[i];
    }
    out += "G< " + gens + " > := Group<\n" + gens + " |\n";
    for (std::size_t r = 0; r < P.relators.size(); ++r) {
      out += detail::word_text(P.relators[r], P.names, "*", "");
      out += r + 1 < P.relators.size() ? ",\n" : "\n";
    }
    out += ">;\n";
    return out;
  }
  if (format == "plain") {
    out += "lattice-presentation 1\n";
    out += "generators " + std::to_string(P.names.size()) + " " +
           std::to_string(P.left_generators) + "\n";
    out += "table-relators " + std::to_string(P.table_relators) + "\n";
    out += "commutator-relators " + std::to_string(P.commutator_relators) + "\n";
    out += "abelianization";
    for (std::uint64_t d : P.abelianization) out += " " + std::to_string(d);
    out += "\nfree-rank " + std::to_string(P.free_rank) + "\n";
    out += "names";
    for (const std::string& n : P.names) out += " " + n;
    out += "\n";
    for (const Word& w : P.relators)
      out += "rel " + detail::word_text(w, P.names, " ", "") + "\n";
    out += "end\n";
    return out;
  }
  throw UnknownFormat("unknown presentation format: " + format);
}

// Reader for the plain format; inverse of export_presentation(.., "plain").
inline Presentation parse_plain_presentation(const std::string& text) {
  auto fail = [](const std::string& msg) -> std::runtime_error {
    return std::runtime_error("plain presentation: " + msg);
  };
  std::vector<std::vector<std::string>> lines;
  std::string cur;
  std::vector<std::string> toks;
  auto flush_tok = [&] {
    if (!cur.empty()) {
      toks.push_back(cur);
      cur.clear();
    }
  };
  for (char ch : text) {
    if (ch == '\n') {
      flush_tok();
      if (!toks.empty()) lines.push_back(std::move(toks));
      toks.clear();
    } else if (ch == ' ') {
      flush_tok();
    } else {
      cur += ch;
    }
  }
  flush_tok();
  if (!toks.empty()) lines.push_back(std::move(toks));
  if (lines.empty() || lines[0] != std::vector<std::string>{
                           "lattice-presentation", "1"})
    throw fail("bad header");
  Presentation P;
  P.abelianization_method = "parsed";
  std::map<std::string, std::int32_t> id_of;
  std::size_t relators_seen = 0;
  bool ended = false;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto& L = lines[ln];
    if (ended) throw fail("content after end");
    if (L[0] == "generators" && L.size() == 3) {
      P.left_generators = std::strtoull(L[2].c_str(), nullptr, 10);
    } else if (L[0] == "table-relators" && L.size() == 2) {
      P.table_relators = std::strtoull(L[1].c_str(), nullptr, 10);
    } else if (L[0] == "commutator-relators" && L.size() == 2) {
      P.commutator_relators = std::strtoull(L[1].c_str(), nullptr, 10);
    } else if (L[0] == "abelianization") {
      for (std::size_t i = 1; i < L.size(); ++i)
        P.abelianization.push_back(std::strtoull(L[i].c_str(), nullptr, 10));
    } else if (L[0] == "free-rank" && L.size() == 2) {
      P.free_rank = std::strtoull(L[1].c_str(), nullptr, 10);
    } else if (L[0] == "names") {
      for (std::size_t i = 1; i < L.size(); ++i) {
        P.names.push_back(L[i]);
        id_of[L[i]] = static_cast<std::int32_t>(P.names.size());
      }
    } else if (L[0] == "rel") {
      Word w;
      for (std::size_t i = 1; i < L.size(); ++i) {
        std::string tok = L[i];
        bool invert = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
          invert = true;
          tok = tok.substr(0, tok.size() - 3);
        }
        auto it = id_of.find(tok);
        if (it == id_of.end()) throw fail("unknown generator " + tok);
        w.push_back(invert ? -it->second : it->second);
      }
      P.relators.push_back(std::move(w));
      ++relators_seen;
    } else if (L[0] == "end" && L.size() == 1) {
      ended = true;
    } else {
      throw fail("unrecognized line starting with " + L[0]);
    }
  }
  if (!ended) throw fail("missing end marker");
  if (relators_seen != P.table_relators + P.commutator_relators)
    throw fail("relator count does not match the header");
  P.abelianization_order = 1;
  for (std::uint64_t d : P.abelianization) P.abelianization_order *= d;
  return P;
}

}  // namespace singergq
