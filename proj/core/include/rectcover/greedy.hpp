#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rectcover/arith.hpp"
#include "rectcover/boolmat.hpp"
#include "rectcover/covers.hpp"

namespace rectcover {

// Abstract set-cover instance over the universe {0, ..., universe_size-1}.
// Each set lists its elements as a strictly increasing sequence.  Weights
// are optional; when present there must be one positive weight per set.
struct SetCoverInstance {
  std::size_t universe_size = 0;
  std::vector<std::vector<std::uint32_t>> sets;
  std::vector<Rat> weights;
};

void validate_instance(const SetCoverInstance& inst);

// Classic greedy: repeatedly pick the set covering the most yet-uncovered
// elements, ties broken by the smallest set index.  Weights do not affect
// the choice.  Returns the chosen set indices in pick order.
std::vector<std::size_t> greedy_cover(const SetCoverInstance& inst);

// Size guarantee for greedy when every element lies in at least a gamma
// fraction of the sets: ceil((1/gamma) * ln+(gamma*universe)) + 1/gamma,
// where ln+ = max(0, ln).  The logarithm is evaluated in long double; the
// rest of the expression stays rational.  Requires gamma in (0, 1].
Rat greedy_bound(const Rat& gamma, std::size_t universe);

// f(k,x,y) = C(k; x, z, k-x-z) / C(2z, z) with z = (k-x-y)/2.
// Requires y <= x <= k, x+y <= k and k-x-y even.
Rat f_value(unsigned k, unsigned x, unsigned y);

// mu(ell) = 1/C(ell,x) + 1/C(k-ell,y), defined for x <= ell <= k-y.
Rat mu(unsigned k, unsigned x, unsigned y, unsigned ell);

// Minimiser of mu over x <= ell <= k-y, smallest ell on ties.
unsigned ell_star(unsigned k, unsigned x, unsigned y);

// Fractional covering of kneser_submatrix(k,x,y) that puts weight
// 1/C(k-x-y, ell-x) on the rectangle of every size-ell bipartition
// (rows: x-subsets of S, columns: y-subsets of the complement).  Every
// 1-entry is covered with total weight exactly one.
FractionalCovering eta_covering(unsigned k, unsigned x, unsigned y, unsigned ell);

// Closed form of the eta covering cost:
// (C(ell,x) + C(k-ell,y)) * C(k,ell) / C(k-x-y, ell-x)
// which equals mu(ell) * C(k,x) * C(k-x,y).
Rat eta_cost_formula(unsigned k, unsigned x, unsigned y, unsigned ell);

// Exact integer check of
// C(k,x) C(k-x,y) C(k-x-y,ell-x) == C(k,ell) C(ell,x) C(k-ell,y).
bool trinomial_identity_check(unsigned k, unsigned x, unsigned y, unsigned ell);

// g(alpha) = H(alpha) + 1 - 3*alpha with H the binary entropy in bits.
double entropy_g(double alpha);

// Maximiser of g over (0, 1/2) by golden-section search to an interval of
// width 1e-10.  The maximum value is log2(9/4), attained at alpha = 1/9.
struct EntropyPoint {
  double alpha_star;
  double value;
};
EntropyPoint entropy_exponent();

// d(m) = C(k; m, k/2-m, k/2) / C(k-2m, k/2-m) for even k and m <= k/2.
Rat kneser_d(unsigned m, unsigned k);

// Greedy covering of kneser_submatrix(k,x,y) by bipartition rectangles of
// size ell = x + ceil((k-x-y)/2).  Requires y <= x <= k.  When x+y > k the
// host has no 1-entries and the empty covering is returned.
Covering disjointness_block_cover(unsigned k, unsigned x, unsigned y);

// Covering of disjointness(k) assembled from the block covers of every
// popcount class pair (x,y) with x+y <= k, lifted along the subset-rank
// to bitmask bijection (blocks with x < y reuse the transposed cover of
// (y,x)).  Requires k <= 14.
Covering disjointness_full_cover(unsigned k);

// Greedy covering of an arbitrary matrix by its maximal rectangles.
// Unweighted mode maximises new coverage; weighted mode maximises the
// ratio of new coverage to |R|+|C|.  Ties pick the smallest rectangle in
// enumeration order.
Covering greedy_matrix_cover(const BooleanMatrix& a, bool weighted,
                             std::size_t max_rects = kDefaultMaxRectangles);

// One row of the disjointness sweep table.
struct BlockReport {
  unsigned k = 0, x = 0, y = 0;
  unsigned ell = 0;        // bipartition size used by the block cover
  Rat gamma;               // true covering density C(k-x-y,ell-x)/C(k,ell)
  std::size_t universe = 0;
  std::size_t greedy_size = 0;
  Rat bound;               // greedy_bound(gamma, universe)
  Int block_cost;
  bool has_f = false;      // f_value is defined only for even k-x-y
  Rat f;
  unsigned ell_opt = 0;    // minimiser of mu
  Rat mu_star;
  Rat eta_cost;            // eta covering cost at ell_opt
};

// Reports for every block (x,y) with y <= x and x+y <= k.
std::vector<BlockReport> disjointness_sweep(unsigned k);

// CSV table of the sweep reports for k_lo..k_hi, one row per block, with
// header k,x,y,ell,gamma,greedy_size,greedy_bound,block_cost,f_value,
// mu_star,eta_cost.  Rationals print as p/q; f_value is empty when k-x-y
// is odd.
std::string sweep_csv(unsigned k_lo, unsigned k_hi);

}  // namespace rectcover
