#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rectcover/arith.hpp"
#include "rectcover/boolmat.hpp"
#include "rectcover/covers.hpp"
#include "rectcover/network.hpp"

namespace rectcover {

constexpr std::size_t kDefaultNodeBudget = 10'000'000;

// Outcome of a branch-and-bound search.  When the node budget runs out the
// best covering found so far is returned with optimal = false; the witness
// is always valid.  For exact_boolean_rank, cost holds the rectangle count.
struct ExactCover {
  std::size_t cost = 0;
  Covering cover;
  bool optimal = true;
  std::size_t nodes = 0;
};

// Minimum-cost covering (cost = sum of |R|+|C|) by branch and bound over
// all rectangles: branch on the row-major first uncovered 1-entry, prune
// with the per-entry density bound min over maximal rectangles containing
// the entry of 1/|R| + 1/|C|.  Rectangle enumeration beyond max_rects
// throws BudgetError.
ExactCover exact_or2(const BooleanMatrix& a, std::size_t max_nodes = kDefaultNodeBudget,
                     std::size_t max_rects = kDefaultMaxRectangles);

// Minimum number of rectangles in a covering; same search over maximal
// rectangles only (enlarging a rectangle never hurts at unit weight) with
// the reciprocal-area bound.
ExactCover exact_boolean_rank(const BooleanMatrix& a,
                              std::size_t max_nodes = kDefaultNodeBudget,
                              std::size_t max_rects = kDefaultMaxRectangles);

// Minimum-cost partition: rectangles must be pairwise disjoint on the
// 1-entries, so candidates are all rectangles avoiding the covered region.
ExactCover exact_sum2(const BooleanMatrix& a, std::size_t max_nodes = kDefaultNodeBudget,
                      std::size_t max_rects = kDefaultMaxRectangles);

// |A| / (k*l), valid whenever A has no (k+1) x (l+1) all-ones submatrix.
// The precondition is checked by enumeration; a violation throws
// ValidationError naming a witness submatrix.
Rat nechiporuk_bound(const BooleanMatrix& a, unsigned k, unsigned l,
                     std::size_t max_rects = kDefaultMaxRectangles);

// Edge e = (u,v) of a network expressing an m x n matrix, together with the
// rows reachable from v and the columns reaching u.  When both lists are
// nonempty they form a rectangle of the expressed matrix.
struct EdgeRectangle {
  std::pair<NodeId, NodeId> edge;
  std::vector<std::uint32_t> to_rows;
  std::vector<std::uint32_t> from_cols;
};

std::vector<EdgeRectangle> edge_rectangles(const RectifierNetwork& net, std::size_t m,
                                           std::size_t n);

struct EdgeWeight {
  std::pair<NodeId, NodeId> edge;
  Rat wprime;
};

struct SubnetworkReport {
  std::uint32_t row = 0, col = 0;  // 1-entry of the left factor
  std::size_t edge_count = 0;
  bool expresses = false;
  bool unambiguous = false;  // checked in sum mode only
};

// Certified inequality chain for a network expressing kronecker(K, M):
//   edges >= sum_wprime >= rank * min_edges
// where rank is the fractional cover optimum of K, w'(e) sums the dual
// weights of K over the left-factor projection of e's rectangle, and
// min_edges is the smallest subnetwork edge count.  min_edges is a
// surrogate: each subnetwork expresses M, so its edge count is at least
// the (uncomputable here) cost of M.  Chain violations throw logic_error;
// they cannot occur for correct inputs.
struct DirectProductReport {
  bool sum_mode = false;
  std::size_t left_rows = 0, left_cols = 0, right_rows = 0, right_cols = 0;
  std::size_t total_edges = 0;
  Rat rank;
  Rat sum_wprime;
  std::size_t min_edges = 0;
  Rat product;  // rank * min_edges
  bool ok = false;
  std::vector<EdgeWeight> edges;
  std::vector<SubnetworkReport> subnetworks;
};

// Requires net to express kronecker(k, m); every subnetwork extracted for a
// 1-entry of k must express m (a failure signals a bug and throws
// logic_error).
DirectProductReport verify_direct_product(const BooleanMatrix& k, const BooleanMatrix& m,
                                          const RectifierNetwork& net);

// Same chain with unambiguity required of the network (ValidationError) and
// checked on every subnetwork.
DirectProductReport verify_direct_product_sum(const BooleanMatrix& k, const BooleanMatrix& m,
                                              const RectifierNetwork& net);

// Sections EDGES, SUBNETWORKS and CHAIN in fixed order.
std::string report_text(const DirectProductReport& r);

// CSV twin with columns kind,a,b,value.
std::string report_csv(const DirectProductReport& r);

}  // namespace rectcover
