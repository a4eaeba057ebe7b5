#include "rectcover/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "rectcover/common.hpp"

namespace rectcover {

namespace {

long double to_long_double(const Rat& r) {
  return numerator(r).convert_to<long double>() / denominator(r).convert_to<long double>();
}

// x-subsets of the sorted member list m, lexicographic, as member values.
std::vector<std::vector<unsigned>> subsets_of(const std::vector<unsigned>& m, unsigned x) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& pos : subsets_of_size(static_cast<unsigned>(m.size()), x)) {
    std::vector<unsigned> s(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) s[i] = m[pos[i] - 1];
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<unsigned> complement_of(unsigned k, const std::vector<unsigned>& s) {
  std::vector<unsigned> comp;
  comp.reserve(k - s.size());
  std::size_t at = 0;
  for (unsigned e = 1; e <= k; ++e) {
    if (at < s.size() && s[at] == e) {
      ++at;
      continue;
    }
    comp.push_back(e);
  }
  return comp;
}

// Rank of ys among the y-subsets of {1..k} minus xs, by relabelling each
// member to its position inside the complement.
std::size_t row_local_rank(unsigned k, const std::vector<unsigned>& xs,
                           const std::vector<unsigned>& ys) {
  std::vector<unsigned> rel(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    unsigned below = 0;
    for (auto v : xs)
      if (v < ys[i]) ++below;
    rel[i] = ys[i] - below;
  }
  return subset_lex_rank(rel, k - static_cast<unsigned>(xs.size()));
}

// Rectangle of the bipartition (s, complement): rows are the lex ranks of
// the x-subsets of s, columns the ranks of the y-subsets of the complement.
// Both lists come out sorted because the enumerations are lexicographic.
Rectangle bipartition_rectangle(unsigned k, unsigned x, unsigned y,
                                const std::vector<unsigned>& s) {
  Rectangle r;
  for (const auto& xs : subsets_of(s, x))
    r.rows.push_back(static_cast<std::uint32_t>(subset_lex_rank(xs, k)));
  for (const auto& ys : subsets_of(complement_of(k, s), y))
    r.cols.push_back(static_cast<std::uint32_t>(subset_lex_rank(ys, k)));
  return r;
}

void check_ell_range(unsigned k, unsigned x, unsigned y, unsigned ell, const char* what) {
  if (x + y > k || ell < x || ell > k - y)
    throw ValidationError(std::string(what) + " requires x <= ell <= k-y");
}

constexpr std::size_t kMaxBlockDim = 1u << 20;
constexpr std::size_t kMaxBlockSets = 1u << 25;

}  // namespace

void validate_instance(const SetCoverInstance& inst) {
  if (!inst.weights.empty() && inst.weights.size() != inst.sets.size())
    throw ValidationError("weight count does not match set count");
  for (const auto& w : inst.weights)
    if (w <= 0) throw ValidationError("set weights must be positive");
  std::vector<char> seen(inst.universe_size, 0);
  for (std::size_t s = 0; s < inst.sets.size(); ++s) {
    const auto& set = inst.sets[s];
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] >= inst.universe_size)
        throw ValidationError("set " + std::to_string(s) +
                              " contains an element outside the universe");
      if (i > 0 && set[i] <= set[i - 1])
        throw ValidationError("set " + std::to_string(s) + " is not strictly increasing");
      seen[set[i]] = 1;
    }
  }
  for (std::size_t e = 0; e < inst.universe_size; ++e)
    if (!seen[e])
      throw ValidationError("element " + std::to_string(e) + " is not covered by any set");
}

std::vector<std::size_t> greedy_cover(const SetCoverInstance& inst) {
  validate_instance(inst);
  std::vector<std::vector<std::uint32_t>> elem_sets(inst.universe_size);
  for (std::size_t s = 0; s < inst.sets.size(); ++s)
    for (auto e : inst.sets[s]) elem_sets[e].push_back(static_cast<std::uint32_t>(s));
  std::vector<std::size_t> gain(inst.sets.size());
  for (std::size_t s = 0; s < inst.sets.size(); ++s) gain[s] = inst.sets[s].size();
  std::vector<char> covered(inst.universe_size, 0);
  std::size_t left = inst.universe_size;
  std::vector<std::size_t> chosen;
  while (left > 0) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t s = 0; s < inst.sets.size(); ++s)
      if (gain[s] > best_gain) {
        best = s;
        best_gain = gain[s];
      }
    for (auto e : inst.sets[best]) {
      if (covered[e]) continue;
      covered[e] = 1;
      --left;
      for (auto s : elem_sets[e]) --gain[s];
    }
    chosen.push_back(best);
  }
  return chosen;
}

Rat greedy_bound(const Rat& gamma, std::size_t universe) {
  if (gamma <= 0 || gamma > 1) throw ValidationError("gamma must lie in (0, 1]");
  Rat inv = Rat(1) / gamma;
  Rat out = inv;
  Rat scaled = gamma * Int(universe);
  if (scaled > 1) {
    long double t =
        to_long_double(inv) * std::log(to_long_double(scaled));
    out += Int(static_cast<long long>(std::ceil(t)));
  }
  return out;
}

Rat f_value(unsigned k, unsigned x, unsigned y) {
  if (y > x || x > k || x + y > k)
    throw ValidationError("f requires 0 <= y <= x and x + y <= k");
  if ((k - x - y) % 2 != 0) throw ValidationError("f requires k - x - y to be even");
  unsigned z = (k - x - y) / 2;
  return Rat(multinomial3(k, x, z, k - x - z)) / binomial(2 * z, z);
}

Rat mu(unsigned k, unsigned x, unsigned y, unsigned ell) {
  check_ell_range(k, x, y, ell, "mu");
  return Rat(1) / binomial(ell, x) + Rat(1) / binomial(k - ell, y);
}

unsigned ell_star(unsigned k, unsigned x, unsigned y) {
  if (x + y > k) throw ValidationError("mu requires x <= ell <= k-y");
  unsigned best = x;
  Rat best_value = mu(k, x, y, x);
  for (unsigned ell = x + 1; ell <= k - y; ++ell) {
    Rat v = mu(k, x, y, ell);
    if (v < best_value) {
      best = ell;
      best_value = v;
    }
  }
  return best;
}

FractionalCovering eta_covering(unsigned k, unsigned x, unsigned y, unsigned ell) {
  check_ell_range(k, x, y, ell, "eta");
  Int nr = binomial(k, x), nc = binomial(k, y), count = binomial(k, ell);
  if (nr > kMaxBlockDim || nc > kMaxBlockDim)
    throw BudgetError("kneser host dimensions exceed 2^20");
  if (count > kMaxBlockDim) throw BudgetError("eta covering exceeds 2^20 rectangles");
  FractionalCovering c;
  c.host_rows = nr.convert_to<std::size_t>();
  c.host_cols = nc.convert_to<std::size_t>();
  Rat w = Rat(1) / binomial(k - x - y, ell - x);
  for (const auto& s : subsets_of_size(k, ell))
    c.rectangles.push_back({bipartition_rectangle(k, x, y, s), w});
  return c;
}

Rat eta_cost_formula(unsigned k, unsigned x, unsigned y, unsigned ell) {
  check_ell_range(k, x, y, ell, "eta");
  return Rat((binomial(ell, x) + binomial(k - ell, y)) * binomial(k, ell)) /
         binomial(k - x - y, ell - x);
}

bool trinomial_identity_check(unsigned k, unsigned x, unsigned y, unsigned ell) {
  check_ell_range(k, x, y, ell, "the identity");
  Int lhs = binomial(k, x) * binomial(k - x, y) * binomial(k - x - y, ell - x);
  Int rhs = binomial(k, ell) * binomial(ell, x) * binomial(k - ell, y);
  return lhs == rhs;
}

double entropy_g(double alpha) {
  double h = 0;
  if (alpha > 0) h -= alpha * std::log2(alpha);
  if (alpha < 1) h -= (1 - alpha) * std::log2(1 - alpha);
  return h + 1 - 3 * alpha;
}

EntropyPoint entropy_exponent() {
  const double ratio = (std::sqrt(5.0) - 1) / 2;
  double a = 0, b = 0.5;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = entropy_g(c), fd = entropy_g(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = entropy_g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = entropy_g(d);
    }
  }
  double alpha = (a + b) / 2;
  return {alpha, entropy_g(alpha)};
}

Rat kneser_d(unsigned m, unsigned k) {
  if (k % 2 != 0) throw ValidationError("d is defined for even k only");
  unsigned half = k / 2;
  if (m > half) throw ValidationError("d requires m <= k/2");
  return Rat(multinomial3(k, m, half - m, half)) / binomial(k - 2 * m, half - m);
}

Covering disjointness_block_cover(unsigned k, unsigned x, unsigned y) {
  if (y > x || x > k) throw ValidationError("block cover requires 0 <= y <= x <= k");
  Int nr = binomial(k, x), nc = binomial(k, y);
  if (nr > kMaxBlockDim || nc > kMaxBlockDim)
    throw BudgetError("kneser host dimensions exceed 2^20");
  Covering cov;
  cov.host_rows = nr.convert_to<std::size_t>();
  cov.host_cols = nc.convert_to<std::size_t>();
  if (x + y > k) return cov;

  unsigned ell = x + (k - x - y + 1) / 2;
  Int per_set = binomial(ell, x) * binomial(k - ell, y);
  if (binomial(k, ell) * per_set > kMaxBlockSets)
    throw BudgetError("block cover instance exceeds the set budget");

  std::size_t row_stride = binomial(k - x, y).convert_to<std::size_t>();
  auto bipartitions = subsets_of_size(k, ell);
  SetCoverInstance inst;
  inst.universe_size = cov.host_rows * row_stride;
  inst.sets.reserve(bipartitions.size());
  for (const auto& s : bipartitions) {
    auto xsubs = subsets_of(s, x);
    auto ysubs = subsets_of(complement_of(k, s), y);
    std::vector<std::uint32_t> elems;
    elems.reserve(xsubs.size() * ysubs.size());
    for (const auto& xs : xsubs) {
      std::size_t base = subset_lex_rank(xs, k) * row_stride;
      for (const auto& ys : ysubs)
        elems.push_back(static_cast<std::uint32_t>(base + row_local_rank(k, xs, ys)));
    }
    inst.sets.push_back(std::move(elems));
  }
  for (auto s : greedy_cover(inst))
    cov.rectangles.push_back(bipartition_rectangle(k, x, y, bipartitions[s]));
  return cov;
}

Covering disjointness_full_cover(unsigned k) {
  if (k > 14) throw BudgetError("full disjointness cover supports k <= 14");
  Covering out;
  out.host_rows = out.host_cols = std::size_t{1} << k;

  // subset lex rank -> bitmask, per popcount class
  std::vector<std::vector<std::uint32_t>> lift(k + 1);
  for (unsigned x = 0; x <= k; ++x)
    for (const auto& s : subsets_of_size(k, x))
      lift[x].push_back(static_cast<std::uint32_t>(subset_to_bits(s)));

  for (unsigned x = 0; x <= k; ++x)
    for (unsigned y = 0; x + y <= k; ++y) {
      Covering block;
      if (x >= y) {
        block = disjointness_block_cover(k, x, y);
      } else {
        Covering t = disjointness_block_cover(k, y, x);
        block.host_rows = t.host_cols;
        block.host_cols = t.host_rows;
        for (auto& r : t.rectangles) block.rectangles.push_back({std::move(r.cols), std::move(r.rows)});
      }
      for (const auto& r : block.rectangles) {
        Rectangle g;
        g.rows.reserve(r.rows.size());
        g.cols.reserve(r.cols.size());
        for (auto i : r.rows) g.rows.push_back(lift[x][i]);
        for (auto j : r.cols) g.cols.push_back(lift[y][j]);
        std::sort(g.rows.begin(), g.rows.end());
        std::sort(g.cols.begin(), g.cols.end());
        out.rectangles.push_back(std::move(g));
      }
    }
  return out;
}

Covering greedy_matrix_cover(const BooleanMatrix& a, bool weighted, std::size_t max_rects) {
  std::vector<std::int64_t> id(a.rows() * a.cols(), -1);
  std::size_t universe = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j)) id[i * a.cols() + j] = static_cast<std::int64_t>(universe++);
  Covering out;
  out.host_rows = a.rows();
  out.host_cols = a.cols();
  if (universe == 0) return out;
  auto rects = enumerate_maximal_rectangles(a, max_rects);

  std::vector<std::vector<std::uint32_t>> elem_sets(universe);
  std::vector<std::size_t> gain(rects.size()), cost(rects.size());
  for (std::size_t s = 0; s < rects.size(); ++s) {
    gain[s] = rects[s].rows.size() * rects[s].cols.size();
    cost[s] = rectangle_cost(rects[s]);
    for (auto i : rects[s].rows)
      for (auto j : rects[s].cols)
        elem_sets[id[static_cast<std::size_t>(i) * a.cols() + j]].push_back(
            static_cast<std::uint32_t>(s));
  }
  std::vector<char> covered(universe, 0);
  std::size_t left = universe;
  while (left > 0) {
    std::size_t best = rects.size();
    for (std::size_t s = 0; s < rects.size(); ++s) {
      if (gain[s] == 0) continue;
      if (best == rects.size() ||
          (weighted ? gain[s] * cost[best] > gain[best] * cost[s] : gain[s] > gain[best]))
        best = s;
    }
    // every 1-entry lies in some maximal rectangle, so progress is guaranteed
    for (auto i : rects[best].rows)
      for (auto j : rects[best].cols) {
        std::int64_t e = id[static_cast<std::size_t>(i) * a.cols() + j];
        if (covered[e]) continue;
        covered[e] = 1;
        --left;
        for (auto s : elem_sets[e]) --gain[s];
      }
    out.rectangles.push_back(rects[best]);
  }
  return out;
}

std::vector<BlockReport> disjointness_sweep(unsigned k) {
  std::vector<BlockReport> out;
  for (unsigned x = 0; x <= k; ++x)
    for (unsigned y = 0; y <= x && x + y <= k; ++y) {
      BlockReport rep;
      rep.k = k;
      rep.x = x;
      rep.y = y;
      rep.ell = x + (k - x - y + 1) / 2;
      rep.universe = (binomial(k, x) * binomial(k - x, y)).convert_to<std::size_t>();
      rep.gamma = Rat(binomial(k - x - y, rep.ell - x)) / binomial(k, rep.ell);
      rep.bound = greedy_bound(rep.gamma, rep.universe);
      Covering c = disjointness_block_cover(k, x, y);
      rep.greedy_size = c.rectangles.size();
      rep.block_cost = 0;
      for (const auto& r : c.rectangles) rep.block_cost += Int(rectangle_cost(r));
      if ((k - x - y) % 2 == 0) {
        rep.has_f = true;
        rep.f = f_value(k, x, y);
      }
      rep.ell_opt = ell_star(k, x, y);
      rep.mu_star = mu(k, x, y, rep.ell_opt);
      rep.eta_cost = eta_cost_formula(k, x, y, rep.ell_opt);
      out.push_back(std::move(rep));
    }
  return out;
}

std::string sweep_csv(unsigned k_lo, unsigned k_hi) {
  if (k_lo > k_hi) throw ValidationError("empty sweep range");
  std::ostringstream out;
  out << "k,x,y,ell,gamma,greedy_size,greedy_bound,block_cost,f_value,mu_star,eta_cost\n";
  for (unsigned k = k_lo; k <= k_hi; ++k)
    for (const auto& r : disjointness_sweep(k)) {
      out << r.k << ',' << r.x << ',' << r.y << ',' << r.ell << ','
          << rational_to_string(r.gamma) << ',' << r.greedy_size << ','
          << rational_to_string(r.bound) << ',' << r.block_cost << ','
          << (r.has_f ? rational_to_string(r.f) : std::string()) << ','
          << rational_to_string(r.mu_star) << ',' << rational_to_string(r.eta_cost) << '\n';
    }
  return out.str();
}

}  // namespace rectcover
