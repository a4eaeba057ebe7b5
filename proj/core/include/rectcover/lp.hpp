#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectcover/arith.hpp"
#include "rectcover/covers.hpp"

namespace rectcover {

enum class LpSense { minimize, maximize };
enum class LpRelation { less_equal, greater_equal, equal };

struct LpConstraint {
  std::vector<Rat> coeffs;
  LpRelation rel = LpRelation::less_equal;
  Rat rhs = 0;
};

// Default bounds are [0, +inf); an absent lower bound makes the variable free.
struct VarBounds {
  std::optional<Rat> lower = Rat(0);
  std::optional<Rat> upper = std::nullopt;
};

struct LinearProgram {
  LpSense sense = LpSense::minimize;
  std::vector<Rat> objective;
  std::vector<LpConstraint> rows;
  std::vector<VarBounds> bounds;  // one per variable
};

enum class LpStatus { optimal, infeasible, unbounded };

// row_duals follow the usual sign convention for the problem's own sense:
// for a minimization, >= rows get nonnegative duals and <= rows nonpositive
// ones; for a maximization the signs swap.  Strong duality is asserted
// internally on every solve, so objective and dual objective agree exactly.
struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Rat objective = 0;
  std::vector<Rat> x;
  std::vector<Rat> row_duals;
};

// Exact rational two-phase simplex.  Enters on the most negative reduced
// cost and falls back to Bland's rule through degenerate stretches, so it
// cannot cycle.
LpSolution solve_lp(const LinearProgram& p);

// Covering relaxation of a host matrix: one variable per rectangle, one
// >=1 constraint per 1-entry.  Weighted objectives price a rectangle at
// |R|+|C| and range over all rectangles (shrinking a rectangle lowers its
// price, so maximal rectangles alone can be strictly worse); unweighted
// objectives price every rectangle at 1 and range over maximal rectangles
// only, which is lossless.  Variables are bounded below by 0 with no upper
// bound: optimal solutions never exceed 1, and leaving the bound out makes
// the LP dual exactly the rectangle certificate program.
struct CoverLp {
  LinearProgram lp;
  std::vector<Rectangle> columns;                           // variable -> rectangle
  std::vector<std::pair<std::uint32_t, std::uint32_t>> row_entries;  // row -> 1-entry
};

CoverLp build_cover_lp(const BooleanMatrix& a, bool weighted,
                       std::size_t max_rectangles = kDefaultMaxRectangles);

// Same LP over an explicit rectangle family (columns kept in the given order).
CoverLp build_cover_lp_over(const BooleanMatrix& a, const std::vector<Rectangle>& family,
                            bool weighted);

// Solves the covering relaxation and returns the fractional covering made of
// the rectangles with nonzero optimal weight, its exact optimum, and the
// optimal dual value per 1-entry (row-major order of the 1-entries).
struct CoverLpResult {
  FractionalCovering cover;
  Rat optimum = 0;
  std::vector<Rat> entry_duals;
};

CoverLpResult solve_cover_lp(const BooleanMatrix& a, bool weighted,
                             std::size_t max_rectangles = kDefaultMaxRectangles);

// Optimum of the unweighted relaxation; lies between the Boolean rank divided
// by (1 + log2(mn)) and the Boolean rank itself.
Rat fractional_rank(const BooleanMatrix& k, std::size_t max_rectangles = kDefaultMaxRectangles);

// Weights on the 1-entries of a host such that every rectangle (R,C) obeys
// sum of the weights inside R x C <= |R|+|C|.  Values are stored for every
// 1-entry; absent entries are implicitly zero.
struct DualCertificate {
  std::size_t rows = 0, cols = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rat> values;
};

// Total of the stored values.
Rat certificate_value(const DualCertificate& cert);

// Optimal dual solution of the covering relaxation, one value per 1-entry.
// With weighted = false the values certify the unweighted optimum instead
// (per-rectangle sums stay <= 1), which also satisfies the weighted form.
DualCertificate dual_weights(const BooleanMatrix& a, bool weighted,
                             std::size_t max_rectangles = kDefaultMaxRectangles);

// The explicit certificate for the strict upper triangle on n points:
// y(i,j) = 2 when j-i = 1, 1 when j-i is a power of two at least 2, else 0.
// Its total value is s(n) = n(floor(log2 n)+2) - 2^{floor(log2 n)+1}.
DualCertificate triangular_certificate(std::size_t n);

struct CertificateCheck {
  bool feasible = false;
  Rat worst_slack = 0;  // min over rectangles of |R|+|C| - certified sum
  std::string violation;  // empty when feasible
};

// Checks nonnegativity and every rectangle constraint of the host.  Strict
// upper-triangular hosts use a split-point enumeration (rows left of the
// split against every column subset right of it, n <= 24); other hosts
// enumerate all rectangles row-set first (rows <= 16).
CertificateCheck verify_certificate(const BooleanMatrix& a, const DualCertificate& cert);

// The general enumeration, exposed so the triangular fast path can be
// cross-checked against it.
CertificateCheck verify_certificate_exhaustive(const BooleanMatrix& a,
                                               const DualCertificate& cert);

// Certificate text format: header "m n", then one line "<i> <j> <value>" per
// stored entry with the value an integer or p/q.
std::string write_dc(const DualCertificate& cert);
DualCertificate read_dc_string(const std::string& text);
void save_dc(const DualCertificate& cert, const std::string& path);
DualCertificate load_dc(const std::string& path);

}  // namespace rectcover
