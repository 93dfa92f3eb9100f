#pragma once
// Projective spaces PG(n, q) over the fields in gf.hpp, plus the small
// amount of GF(q) linear algebra the rest of the library needs.
//
// A projective point is stored as its normalized homogeneous coordinate
// vector: the first nonzero coordinate equals 1. Points are enumerated once
// per space in lexicographic order of that normalized tuple, so point
// indices are stable and reproducible; point 0 of PG(3, q) is (0,0,0,1).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "singergq/gf.hpp"

namespace singergq {

using vec = std::vector<fel>;

inline vec normalize_point(const Field& F, vec v) {
  for (fel& c : v)
    if (c != 0) {
      if (c != 1) {
        fel s = F.inv(c);
        for (fel& d : v) d = F.mul(d, s);
      }
      return v;
    }
  throw std::domain_error("zero vector has no projective point");
}

class ProjSpace {
 public:
  ProjSpace(const Field& F, unsigned dim) : F_(F), n_(dim) {
    const unsigned q = F_.q();
    std::uint64_t count = 0, power = 1;
    for (unsigned i = 0; i <= n_; ++i) {
      count += power;
      power *= q;
    }
    pts_.reserve(count);
    // leading coordinate position k from the right end toward the front
    // gives lex order: (0,..,0,1) first, (1,*,..,*) block last
    for (unsigned k = n_ + 1; k-- > 0;) {
      std::uint64_t free_count = 1;
      for (unsigned i = k + 1; i <= n_; ++i) free_count *= q;
      for (std::uint64_t t = 0; t < free_count; ++t) {
        vec v(n_ + 1, 0);
        v[k] = 1;
        // decode t with coordinate k+1 most significant
        std::uint64_t u = t;
        for (unsigned i = n_; i > k; --i) {
          v[i] = static_cast<fel>(u % q);
          u /= q;
        }
        pts_.push_back(std::move(v));
      }
    }
    idx_.reserve(pts_.size() * 2);
    for (std::size_t i = 0; i < pts_.size(); ++i) idx_[pack(pts_[i])] = i;
  }

  const Field& field() const { return F_; }
  unsigned dim() const { return n_; }
  std::size_t size() const { return pts_.size(); }
  const vec& point(std::size_t i) const { return pts_[i]; }

  std::size_t index(const vec& v) const {
    auto it = idx_.find(pack(normalize_point(F_, v)));
    if (it == idx_.end()) throw std::domain_error("point not in space");
    return it->second;
  }

  // the q+1 point indices on the line spanned by two distinct points
  std::vector<std::size_t> line_through(std::size_t a, std::size_t b) const {
    const vec& u = pts_[a];
    const vec& w = pts_[b];
    std::vector<std::size_t> out;
    out.push_back(a);
    for (unsigned t = 0; t < F_.q(); ++t) {
      vec v(n_ + 1);
      for (unsigned i = 0; i <= n_; ++i)
        v[i] = F_.add(F_.mul(static_cast<fel>(t), u[i]), w[i]);
      out.push_back(index(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // indices of points z with sum_i w_i z_i = 0
  std::vector<std::size_t> hyperplane(const vec& w) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      fel s = 0;
      for (unsigned j = 0; j <= n_; ++j) s = F_.add(s, F_.mul(w[j], pts_[i][j]));
      if (s == 0) out.push_back(i);
    }
    return out;
  }

 private:
  Field F_;
  unsigned n_;
  std::vector<vec> pts_;
  std::unordered_map<std::uint64_t, std::size_t> idx_;

  std::uint64_t pack(const vec& v) const {
    std::uint64_t r = 0;
    for (unsigned i = 0; i <= n_; ++i) r = r * F_.q() + v[i];
    return r;
  }
};

// --- dense linear algebra over GF(q), rows as vectors ---

// row echelon reduction in place; returns rank
inline unsigned row_reduce(const Field& F, std::vector<vec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  unsigned r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    fel s = F.inv(rows[r][c]);
    for (fel& x : rows[r]) x = F.mul(x, s);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c] != 0) {
        fel f = rows[i][c];
        for (std::size_t j = 0; j < cols; ++j)
          rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
      }
    ++r;
  }
  rows.resize(r);
  return r;
}

inline unsigned rank(const Field& F, std::vector<vec> rows) {
  return row_reduce(F, rows);
}

inline bool in_row_span(const Field& F, std::vector<vec> rows, const vec& v) {
  unsigned r = row_reduce(F, rows);
  rows.push_back(v);
  return row_reduce(F, rows) == r;
}

// basis of {x : M x = 0} for M given by rows
inline std::vector<vec> kernel_basis(const Field& F, std::vector<vec> rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows[0].size();
  row_reduce(F, rows);
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  for (const vec& row : rows) {
    std::size_t c = 0;
    while (c < cols && row[c] == 0) ++c;
    pivot_col.push_back(c);
    if (c < cols) is_pivot[c] = true;
  }
  std::vector<vec> basis;
  for (std::size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    vec x(cols, 0);
    x[freec] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (pivot_col[i] < cols) x[pivot_col[i]] = F.neg(rows[i][freec]);
    basis.push_back(std::move(x));
  }
  return basis;
}

// one solution of M x = b, or nullopt when inconsistent
inline std::optional<vec> solve(const Field& F, std::vector<vec> rows, vec b) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(b[i]);
  row_reduce(F, rows);
  vec x(cols, 0);
  for (const vec& row : rows) {
    std::size_t c = 0;
    while (c < cols && row[c] == 0) ++c;
    if (c == cols) {
      if (row[cols] != 0) return std::nullopt;
      continue;
    }
    x[c] = row[cols];
  }
  return x;
}

}  // namespace singergq
