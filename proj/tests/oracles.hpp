#pragma once

// Small reference implementations used to pin expected values in the test
// suites.  Everything here is written for clarity over speed and stays
// independent of the library code paths it checks.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "rectcover/boolmat.hpp"

namespace oracle {

// s(1)=0, s(n+1) = s(n) + floor(log2(n)) + 2.
inline std::size_t s_recurrence(std::size_t n) {
  std::size_t s = 0;
  for (std::size_t m = 1; m < n; ++m) {
    std::size_t lg = 0;
    while ((std::size_t{2} << lg) <= m) ++lg;  // lg = floor(log2(m))
    s += lg + 2;
  }
  return s;
}

// Closed form n*(floor(log2 n)+2) - 2^(floor(log2 n)+1).
inline std::size_t s_closed_form(std::size_t n) {
  std::size_t lg = 0;
  while ((std::size_t{2} << lg) <= n) ++lg;
  return n * (lg + 2) - (std::size_t{2} << lg);
}

// Rectangles as (row mask, col mask) over hosts with at most 16 rows/cols.
struct MaskRect {
  std::uint32_t rows = 0, cols = 0;
};

inline std::vector<MaskRect> all_rectangles(const rectcover::BooleanMatrix& a) {
  std::size_t m = a.rows(), n = a.cols();
  std::vector<std::uint32_t> support(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.get(i, j)) support[i] |= std::uint32_t{1} << j;
  std::vector<MaskRect> out;
  for (std::uint32_t rmask = 1; rmask < (1u << m); ++rmask) {
    std::uint32_t common = (1u << n) - 1;
    for (std::size_t i = 0; i < m; ++i)
      if (rmask & (1u << i)) common &= support[i];
    if (!common) continue;
    // every nonempty subset of the common support forms a rectangle
    for (std::uint32_t cmask = common;; cmask = (cmask - 1) & common) {
      if (cmask) out.push_back({rmask, cmask});
      if (cmask == 0) break;
    }
  }
  return out;
}

inline std::vector<MaskRect> maximal_rectangles(const rectcover::BooleanMatrix& a) {
  auto rects = all_rectangles(a);
  std::vector<MaskRect> out;
  for (const auto& r : rects) {
    bool maximal = true;
    for (const auto& q : rects) {
      if ((r.rows & q.rows) == r.rows && (r.cols & q.cols) == r.cols &&
          (q.rows != r.rows || q.cols != r.cols)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(r);
  }
  return out;
}

// Exhaustive minimum-cost covering by depth-first search over all rectangles.
// cost(R,C) = |R| + |C| when weighted, 1 otherwise.  Suitable for tiny hosts.
struct CoverSearch {
  std::vector<MaskRect> rects;
  std::vector<std::uint64_t> coverage;  // entry bits per rectangle
  std::vector<unsigned> cost;
  std::uint64_t all_entries = 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();

  void run(std::uint64_t covered, std::size_t spent, bool partition_only) {
    if (spent >= best) return;
    if (covered == all_entries) {
      best = spent;
      return;
    }
    // first uncovered entry
    int e = std::countr_zero(~covered & all_entries);
    for (std::size_t t = 0; t < rects.size(); ++t) {
      if (!(coverage[t] >> e & 1)) continue;
      if (partition_only && (coverage[t] & covered)) continue;
      run(covered | coverage[t], spent + cost[t], partition_only);
    }
  }
};

inline std::size_t min_cover_cost(const rectcover::BooleanMatrix& a, bool weighted,
                                  bool partition_only = false) {
  std::size_t m = a.rows(), n = a.cols();
  std::vector<int> entry_index(m * n, -1);
  int entries = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.get(i, j)) entry_index[i * n + j] = entries++;
  CoverSearch search;
  search.all_entries = entries ? (~std::uint64_t{0} >> (64 - entries)) : 0;
  for (const auto& r : all_rectangles(a)) {
    std::uint64_t cov = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (r.rows >> i & 1)
        for (std::size_t j = 0; j < n; ++j)
          if (r.cols >> j & 1) cov |= std::uint64_t{1} << entry_index[i * n + j];
    search.rects.push_back(r);
    search.coverage.push_back(cov);
    search.cost.push_back(weighted ? std::popcount(r.rows) + std::popcount(r.cols) : 1);
  }
  if (entries == 0) return 0;
  search.run(0, 0, partition_only);
  return search.best;
}

// Disjointness matrix built from the block recurrence
// D_{2n} = (D_n D_n; D_n 0) instead of the bitwise definition.
inline rectcover::BooleanMatrix disjointness_recursive(unsigned k) {
  rectcover::BooleanMatrix d(1, 1);
  d.set(0, 0, true);
  for (unsigned step = 0; step < k; ++step) {
    std::size_t n = d.rows();
    rectcover::BooleanMatrix next(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!d.get(i, j)) continue;
        next.set(i, j, true);
        next.set(i, j + n, true);
        next.set(i + n, j, true);
      }
    d = next;
  }
  return d;
}

}  // namespace oracle
