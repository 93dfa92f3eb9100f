#pragma once
// Abstract point-line incidence structures and generalized quadrangle
// checks. Points are dense ids 0..npoints-1; each line is a sorted id list.
//
// The quadrangle test avoids the naive anti-flag scan: for each point P it
// stamps, per line L, how many points of L are collinear with P, in
// O(|P-perp| * (t+1) + #lines) using epoch counters. That keeps the check
// usable at tens of thousands of points.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace singergq {

struct Incidence {
  std::size_t npoints = 0;
  std::vector<std::vector<std::uint32_t>> lines;
};

struct GQOrder {
  unsigned s = 0, t = 0;
  friend bool operator==(const GQOrder&, const GQOrder&) = default;
};

inline std::vector<std::vector<std::uint32_t>> lines_through_table(
    const Incidence& inc) {
  std::vector<std::vector<std::uint32_t>> tab(inc.npoints);
  for (std::uint32_t li = 0; li < inc.lines.size(); ++li)
    for (std::uint32_t p : inc.lines[li]) tab[p].push_back(li);
  return tab;
}

// x^perp: x itself plus everything collinear with x, sorted
inline std::vector<std::uint32_t> perp(
    const Incidence& inc, const std::vector<std::vector<std::uint32_t>>& through,
    std::uint32_t x) {
  std::vector<std::uint32_t> out{x};
  for (std::uint32_t li : through[x])
    for (std::uint32_t p : inc.lines[li])
      if (p != x) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::uint32_t> intersect_sorted(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// perp of a point set: intersection of the members' perps
inline std::vector<std::uint32_t> perp_set(
    const Incidence& inc, const std::vector<std::vector<std::uint32_t>>& through,
    const std::vector<std::uint32_t>& pts) {
  if (pts.empty()) return {};
  std::vector<std::uint32_t> acc = perp(inc, through, pts[0]);
  for (std::size_t i = 1; i < pts.size() && !acc.empty(); ++i)
    acc = intersect_sorted(acc, perp(inc, through, pts[i]));
  return acc;
}

// Full generalized quadrangle test. On success fills `order` (s, t).
// Requires s, t >= 1 structures; reports failure reason when asked.
inline bool is_generalized_quadrangle(const Incidence& inc, GQOrder* order,
                                      std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (inc.lines.empty() || inc.npoints == 0) return fail("empty structure");
  const std::size_t line_size = inc.lines[0].size();
  if (line_size < 2) return fail("degenerate line");
  for (const auto& L : inc.lines) {
    if (L.size() != line_size) return fail("line sizes differ");
    if (!std::is_sorted(L.begin(), L.end()) ||
        std::adjacent_find(L.begin(), L.end()) != L.end())
      return fail("line not sorted/unique");
    for (std::uint32_t p : L)
      if (p >= inc.npoints) return fail("point id out of range");
  }
  auto through = lines_through_table(inc);
  const std::size_t point_deg = through[0].size();
  if (point_deg < 2) return fail("degenerate point");
  for (const auto& tl : through)
    if (tl.size() != point_deg) return fail("point degrees differ");

  const unsigned s = static_cast<unsigned>(line_size - 1);
  const unsigned t = static_cast<unsigned>(point_deg - 1);
  if (inc.npoints != static_cast<std::size_t>(s + 1) * (s * t + 1))
    return fail("point count does not match (s+1)(st+1)");
  if (inc.lines.size() != static_cast<std::size_t>(t + 1) * (s * t + 1))
    return fail("line count does not match (t+1)(st+1)");

  // partial linear space: no two lines share two points
  std::vector<std::uint32_t> mark(inc.npoints, 0);
  std::uint32_t epoch = 0;
  for (std::uint32_t p = 0; p < inc.npoints; ++p) {
    ++epoch;
    for (std::uint32_t li : through[p])
      for (std::uint32_t qpt : inc.lines[li]) {
        if (qpt == p) continue;
        if (mark[qpt] == epoch) return fail("two lines share two points");
        mark[qpt] = epoch;
      }
  }

  // anti-flag axiom via per-point line stamps
  std::vector<std::uint32_t> cnt(inc.lines.size(), 0);
  std::vector<std::uint32_t> cnt_epoch(inc.lines.size(), 0);
  std::vector<char> on_line(inc.lines.size(), 0);
  std::vector<std::uint32_t> pperp;
  for (std::uint32_t p = 0; p < inc.npoints; ++p) {
    ++epoch;
    pperp.clear();
    pperp.push_back(p);
    mark[p] = epoch;
    for (std::uint32_t li : through[p])
      for (std::uint32_t qpt : inc.lines[li])
        if (mark[qpt] != epoch) {
          mark[qpt] = epoch;
          pperp.push_back(qpt);
        }
    for (std::uint32_t li : through[p]) on_line[li] = 1;
    for (std::uint32_t qpt : pperp)
      for (std::uint32_t li : through[qpt]) {
        if (cnt_epoch[li] != epoch) {
          cnt_epoch[li] = epoch;
          cnt[li] = 0;
        }
        ++cnt[li];
      }
    for (std::uint32_t li = 0; li < inc.lines.size(); ++li) {
      std::uint32_t c = (cnt_epoch[li] == epoch) ? cnt[li] : 0;
      if (on_line[li]) {
        if (c != s + 1) return fail("line through point not inside its perp");
      } else if (c != 1) {
        return fail("anti-flag axiom fails");
      }
    }
    for (std::uint32_t li : through[p]) on_line[li] = 0;
  }
  if (order) *order = GQOrder{s, t};
  return true;
}

// (x,y) noncollinear is a regular pair when the double perp closes up to
// t+1 points
inline bool pair_regular(const Incidence& inc,
                         const std::vector<std::vector<std::uint32_t>>& through,
                         std::uint32_t x, std::uint32_t y, unsigned t) {
  auto tr = perp_set(inc, through, {x, y});
  auto span = perp_set(inc, through, tr);
  return span.size() == t + 1;
}

inline bool point_regular(const Incidence& inc,
                          const std::vector<std::vector<std::uint32_t>>& through,
                          std::uint32_t x, unsigned t) {
  auto px = perp(inc, through, x);
  std::vector<char> in_perp(inc.npoints, 0);
  for (std::uint32_t p : px) in_perp[p] = 1;
  for (std::uint32_t y = 0; y < inc.npoints; ++y)
    if (!in_perp[y] && !pair_regular(inc, through, x, y, t)) return false;
  return true;
}

// Derived quadrangle at a regular point x of a GQ of order (q, q):
// keep the points off x^perp; shorten every line missing x by its unique
// point in x^perp; add the double perps through x, with x removed.
struct DerivedMaps {
  std::vector<std::uint32_t> point_orig;            // new point -> old point
  std::vector<std::int32_t> line_orig;              // >=0: old line id
  std::vector<std::uint32_t> span_rep;              // for new lines: a witness y
  std::size_t n_old_lines = 0;                      // prefix of lines[] that is old
};

inline Incidence derived_at_regular_point(const Incidence& inc, std::uint32_t x,
                                          DerivedMaps* maps = nullptr) {
  auto through = lines_through_table(inc);
  auto px = perp(inc, through, x);
  std::vector<char> in_perp(inc.npoints, 0);
  for (std::uint32_t p : px) in_perp[p] = 1;

  std::vector<std::uint32_t> new_id(inc.npoints, UINT32_MAX);
  Incidence out;
  DerivedMaps m;
  for (std::uint32_t p = 0; p < inc.npoints; ++p)
    if (!in_perp[p]) {
      new_id[p] = static_cast<std::uint32_t>(out.npoints++);
      m.point_orig.push_back(p);
    }

  std::vector<char> is_through_x(inc.lines.size(), 0);
  for (std::uint32_t li : through[x]) is_through_x[li] = 1;
  for (std::uint32_t li = 0; li < inc.lines.size(); ++li) {
    if (is_through_x[li]) continue;
    std::vector<std::uint32_t> L;
    for (std::uint32_t p : inc.lines[li])
      if (new_id[p] != UINT32_MAX) L.push_back(new_id[p]);
    std::sort(L.begin(), L.end());
    out.lines.push_back(std::move(L));
    m.line_orig.push_back(static_cast<std::int32_t>(li));
  }
  m.n_old_lines = out.lines.size();

  std::vector<char> seen(inc.npoints, 0);
  for (std::uint32_t y = 0; y < inc.npoints; ++y) {
    if (in_perp[y] || seen[y]) continue;
    auto tr = perp_set(inc, through, {x, y});
    auto span = perp_set(inc, through, tr);
    std::vector<std::uint32_t> L;
    for (std::uint32_t p : span)
      if (p != x) {
        seen[p] = 1;
        L.push_back(new_id[p]);
      }
    std::sort(L.begin(), L.end());
    out.lines.push_back(std::move(L));
    m.line_orig.push_back(-1);
    m.span_rep.push_back(y);
  }
  if (maps) *maps = std::move(m);
  return out;
}

// two column csv, one row per flag
inline void write_csv(std::ostream& os, const Incidence& inc) {
  os << "point_id,line_id\n";
  for (std::uint32_t li = 0; li < inc.lines.size(); ++li)
    for (std::uint32_t p : inc.lines[li]) os << p << ',' << li << '\n';
}

}  // namespace singergq
