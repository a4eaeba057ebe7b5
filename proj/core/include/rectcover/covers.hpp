#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rectcover/arith.hpp"
#include "rectcover/boolmat.hpp"
#include "rectcover/common.hpp"

namespace rectcover {

// All-ones submatrix given by sorted row and column index lists.
struct Rectangle {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> cols;

  bool operator==(const Rectangle& other) const = default;
};
bool operator<(const Rectangle& a, const Rectangle& b);

inline std::size_t rectangle_cost(const Rectangle& r) { return r.rows.size() + r.cols.size(); }

struct Covering {
  std::size_t host_rows = 0, host_cols = 0;
  std::vector<Rectangle> rectangles;
};

struct WeightedRectangle {
  Rectangle rect;
  Rat weight = 1;
};

struct FractionalCovering {
  std::size_t host_rows = 0, host_cols = 0;
  std::vector<WeightedRectangle> rectangles;
};

// Throw ValidationError naming the first offending entry in row-major order:
// either an entry of some rectangle that is 0 in the host, or an uncovered
// 1-entry (for fractional coverings, total weight < 1).
void validate_rectangle(const BooleanMatrix& host, const Rectangle& r);
void validate_covering(const BooleanMatrix& host, const Covering& c);
void validate_fractional_covering(const BooleanMatrix& host, const FractionalCovering& c);

std::size_t covering_cost(const BooleanMatrix& host, const Covering& c);
Rat fractional_cost(const BooleanMatrix& host, const FractionalCovering& c);

// Valid covering whose rectangles are pairwise disjoint on the host's 1-entries.
bool is_partition(const BooleanMatrix& host, const Covering& c);

constexpr std::size_t kDefaultMaxRectangles = 1u << 20;

// Inclusion-maximal all-ones submatrices, sorted lexicographically by
// (rows, cols).  Hosts are limited to 24 rows; the closed row sets are walked
// via column-support intersections.
std::vector<Rectangle> enumerate_maximal_rectangles(const BooleanMatrix& a,
                                                    std::size_t max_rects = kDefaultMaxRectangles);

// Every all-ones submatrix, deduplicated and sorted.  Exponential in general;
// guarded by the same budget.
std::vector<Rectangle> enumerate_all_rectangles(const BooleanMatrix& a,
                                                std::size_t max_rects = kDefaultMaxRectangles);

// Text format: header "m n t", then t lines
//   R i1,i2,... C j1,j2,... [W p/q]
// with sorted index lists; W omitted means weight 1.
std::string write_cov(const FractionalCovering& c);
std::string write_cov(const Covering& c);
FractionalCovering read_cov(std::istream& in);
FractionalCovering read_cov_string(const std::string& text);
FractionalCovering load_cov(const std::string& path);
void save_cov(const FractionalCovering& c, const std::string& path);
void save_cov(const Covering& c, const std::string& path);

// Conversions; to_integral requires every weight to be exactly 1.
FractionalCovering to_fractional(const Covering& c);
Covering to_integral(const FractionalCovering& c);

}  // namespace rectcover
