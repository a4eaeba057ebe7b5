#include "rectcover/exact.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rectcover/common.hpp"
#include "rectcover/greedy.hpp"
#include "rectcover/lp.hpp"

namespace rectcover {

namespace {

// Largest rectangle pool for which the exact covering relaxation is solved at
// the root to sharpen the search bound; beyond it the solve costs more than
// the pruning it buys.
constexpr std::size_t kRootRelaxationRectangles = 2048;

std::string set_string(const std::vector<std::uint32_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// Shared branch-and-bound skeleton.  Branches on the uncovered 1-entry with
// the fewest candidate rectangles; prunes with the larger of two additive
// per-entry rate bounds (exact relaxation duals when available, density rates
// otherwise) and, under weighted costs, a touched-rows-plus-columns bound.
// The incumbent starts from a seed covering, so the returned witness is valid
// even when the node budget stops the search; the search halts outright once
// an incumbent meets the root lower bound, which proves it optimal.
struct BranchSearch {
  const std::vector<std::vector<std::uint32_t>>& rect_entries;
  const std::vector<std::vector<std::uint32_t>>& entry_rects;
  const std::vector<std::size_t>& rect_cost;
  const std::vector<Rat>& rate_dual;
  const std::vector<Rat>& rate_dense;
  const std::vector<std::uint32_t>& entry_row;
  const std::vector<std::uint32_t>& entry_col;
  bool partition;
  bool row_col_bound;
  std::size_t budget;
  Int stop_at;

  std::size_t nodes = 0;
  bool stopped = false;
  bool proved = false;
  std::vector<char> covered;
  std::size_t uncovered = 0;
  Rat res_dual, res_dense;
  std::vector<std::size_t> row_left, col_left;
  std::size_t rows_active = 0, cols_active = 0;
  std::size_t cost_now = 0;
  std::vector<std::uint32_t> pick;
  std::size_t best_cost = 0;
  std::vector<std::uint32_t> best_pick;

  void start(std::size_t entries) {
    covered.assign(entries, 0);
    uncovered = entries;
    res_dual = res_dense = 0;
    std::uint32_t rmax = 0, cmax = 0;
    for (std::size_t e = 0; e < entries; ++e) {
      res_dual += rate_dual[e];
      res_dense += rate_dense[e];
      rmax = std::max(rmax, entry_row[e]);
      cmax = std::max(cmax, entry_col[e]);
    }
    row_left.assign(rmax + 1, 0);
    col_left.assign(cmax + 1, 0);
    for (std::size_t e = 0; e < entries; ++e) {
      if (row_left[entry_row[e]]++ == 0) ++rows_active;
      if (col_left[entry_col[e]]++ == 0) ++cols_active;
    }
    if (row_col_bound && Int(rows_active + cols_active) > stop_at)
      stop_at = Int(rows_active + cols_active);
    if (Int(best_cost) <= stop_at) {
      proved = true;
      return;
    }
    dfs();
  }

  Int bound() const {
    Int lb = rat_ceil(res_dual);
    Int dense = rat_ceil(res_dense);
    if (dense > lb) lb = dense;
    if (row_col_bound && Int(rows_active + cols_active) > lb)
      lb = Int(rows_active + cols_active);
    return lb;
  }

  void dfs() {
    if (uncovered == 0) {
      if (cost_now < best_cost) {
        best_cost = cost_now;
        best_pick = pick;
        if (Int(best_cost) <= stop_at) proved = true;
      }
      return;
    }
    if (stopped || ++nodes > budget) {
      stopped = true;
      return;
    }
    if (Int(cost_now) + bound() >= Int(best_cost)) return;
    std::size_t p = 0, degree = std::numeric_limits<std::size_t>::max();
    for (std::size_t e = 0; e < covered.size(); ++e)
      if (!covered[e] && entry_rects[e].size() < degree) {
        p = e;
        degree = entry_rects[e].size();
      }
    for (auto r : entry_rects[p]) {
      if (cost_now + rect_cost[r] >= best_cost) continue;
      if (partition) {
        bool clash = false;
        for (auto e : rect_entries[r])
          if (covered[e]) {
            clash = true;
            break;
          }
        if (clash) continue;
      }
      std::vector<std::uint32_t> newly;
      for (auto e : rect_entries[r])
        if (!covered[e]) {
          covered[e] = 1;
          newly.push_back(e);
          res_dual -= rate_dual[e];
          res_dense -= rate_dense[e];
          if (--row_left[entry_row[e]] == 0) --rows_active;
          if (--col_left[entry_col[e]] == 0) --cols_active;
        }
      uncovered -= newly.size();
      cost_now += rect_cost[r];
      pick.push_back(r);
      dfs();
      pick.pop_back();
      cost_now -= rect_cost[r];
      uncovered += newly.size();
      for (auto e : newly) {
        covered[e] = 0;
        res_dual += rate_dual[e];
        res_dense += rate_dense[e];
        if (row_left[entry_row[e]]++ == 0) ++rows_active;
        if (col_left[entry_col[e]]++ == 0) ++cols_active;
      }
      if (stopped || proved) return;
    }
  }
};

enum class SearchMode { kWeighted, kUnitCount, kWeightedPartition };

ExactCover run_search(const BooleanMatrix& a, SearchMode mode, std::size_t max_nodes,
                      std::size_t max_rects) {
  ExactCover result;
  result.cover.host_rows = a.rows();
  result.cover.host_cols = a.cols();

  std::vector<std::size_t> entry_of(a.rows() * a.cols(), std::numeric_limits<std::size_t>::max());
  std::vector<std::uint32_t> entry_row, entry_col;
  std::size_t ones = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j)) {
        entry_of[i * a.cols() + j] = ones++;
        entry_row.push_back(static_cast<std::uint32_t>(i));
        entry_col.push_back(static_cast<std::uint32_t>(j));
      }
  if (ones == 0) return result;

  bool unit = mode == SearchMode::kUnitCount;
  auto maximal = enumerate_maximal_rectangles(a, max_rects);
  std::vector<Rectangle> rects =
      unit ? maximal : enumerate_all_rectangles(a, max_rects);

  std::vector<std::vector<std::uint32_t>> rect_entries(rects.size());
  std::vector<std::vector<std::uint32_t>> entry_rects(ones);
  std::vector<std::size_t> rect_cost(rects.size());
  for (std::size_t r = 0; r < rects.size(); ++r) {
    rect_cost[r] = unit ? 1 : rectangle_cost(rects[r]);
    for (auto i : rects[r].rows)
      for (auto j : rects[r].cols)
        rect_entries[r].push_back(
            static_cast<std::uint32_t>(entry_of[static_cast<std::size_t>(i) * a.cols() + j]));
    std::sort(rect_entries[r].begin(), rect_entries[r].end());
    for (auto e : rect_entries[r]) entry_rects[e].push_back(static_cast<std::uint32_t>(r));
  }
  // Cheapest cost per entry first, so the leftmost descent mimics a ratio
  // greedy and reaches strong incumbents early.
  for (auto& cand : entry_rects)
    std::sort(cand.begin(), cand.end(), [&](std::uint32_t p, std::uint32_t q) {
      std::size_t lhs = rect_cost[p] * rect_entries[q].size();
      std::size_t rhs = rect_cost[q] * rect_entries[p].size();
      if (lhs != rhs) return lhs < rhs;
      if (rect_entries[p].size() != rect_entries[q].size())
        return rect_entries[p].size() > rect_entries[q].size();
      return p < q;
    });

  // Per-entry lower bound: the cheapest rate at which any rectangle can pay
  // for this entry.  Maximal rectangles minimise both 1/|R|+1/|C| and
  // 1/(|R|*|C|), so they bound the non-maximal candidates too.
  std::vector<Rat> density(ones);
  for (const auto& r : maximal) {
    Rat rate = unit ? Rat(Int(1), Int(r.rows.size()) * Int(r.cols.size()))
                    : Rat(Int(1), Int(r.rows.size())) + Rat(Int(1), Int(r.cols.size()));
    for (auto i : r.rows)
      for (auto j : r.cols) {
        std::size_t e = entry_of[static_cast<std::size_t>(i) * a.cols() + j];
        if (density[e] == 0 || rate < density[e]) density[e] = rate;
      }
  }

  // Sharper rates from the exact covering relaxation when the pool is small
  // enough to solve: its optimal duals are admissible per-entry rates whose
  // total is the relaxation optimum, the strongest additive root bound.
  std::vector<Rat> duals(ones, Rat(0));
  Int stop_at = 0;
  {
    Rat dual_total = 0;
    if (rects.size() <= kRootRelaxationRectangles) {
      CoverLpResult relax = solve_cover_lp(a, !unit, max_rects);
      duals = std::move(relax.entry_duals);
      dual_total = relax.optimum;
    }
    Rat dense_total = 0;
    for (const auto& d : density) dense_total += d;
    stop_at = std::max(rat_ceil(dual_total), rat_ceil(dense_total));
  }

  // Seed incumbent: greedy covering, or the all-singletons partition.
  std::vector<std::uint32_t> seed;
  std::size_t seed_cost = 0;
  if (mode == SearchMode::kWeightedPartition) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a.get(i, j)) {
          Rectangle unit_rect{{static_cast<std::uint32_t>(i)}, {static_cast<std::uint32_t>(j)}};
          auto at = std::lower_bound(rects.begin(), rects.end(), unit_rect);
          seed.push_back(static_cast<std::uint32_t>(at - rects.begin()));
        }
    seed_cost = 2 * ones;
  } else {
    Covering greedy = greedy_matrix_cover(a, !unit, max_rects);
    for (const auto& r : greedy.rectangles) {
      auto at = std::lower_bound(rects.begin(), rects.end(), r);
      seed.push_back(static_cast<std::uint32_t>(at - rects.begin()));
      seed_cost += unit ? 1 : rectangle_cost(r);
    }
  }

  BranchSearch search{rect_entries,
                      entry_rects,
                      rect_cost,
                      duals,
                      density,
                      entry_row,
                      entry_col,
                      mode == SearchMode::kWeightedPartition,
                      mode != SearchMode::kUnitCount,
                      max_nodes,
                      stop_at};
  search.best_cost = seed_cost;
  search.best_pick = seed;
  search.start(ones);

  result.cost = search.best_cost;
  result.optimal = search.proved || !search.stopped;
  result.nodes = search.nodes;
  std::sort(search.best_pick.begin(), search.best_pick.end());
  for (auto r : search.best_pick) result.cover.rectangles.push_back(rects[r]);
  return result;
}

}  // namespace

ExactCover exact_or2(const BooleanMatrix& a, std::size_t max_nodes, std::size_t max_rects) {
  return run_search(a, SearchMode::kWeighted, max_nodes, max_rects);
}

ExactCover exact_boolean_rank(const BooleanMatrix& a, std::size_t max_nodes,
                              std::size_t max_rects) {
  return run_search(a, SearchMode::kUnitCount, max_nodes, max_rects);
}

ExactCover exact_sum2(const BooleanMatrix& a, std::size_t max_nodes, std::size_t max_rects) {
  return run_search(a, SearchMode::kWeightedPartition, max_nodes, max_rects);
}

Rat nechiporuk_bound(const BooleanMatrix& a, unsigned k, unsigned l, std::size_t max_rects) {
  if (k == 0 || l == 0) throw ValidationError("k and l must be positive");
  std::size_t ones = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) ones += a.get(i, j);
  if (ones == 0) return 0;
  for (const auto& r : enumerate_maximal_rectangles(a, max_rects))
    if (r.rows.size() > k && r.cols.size() > l) {
      std::vector<std::uint32_t> wr(r.rows.begin(), r.rows.begin() + k + 1);
      std::vector<std::uint32_t> wc(r.cols.begin(), r.cols.begin() + l + 1);
      throw ValidationError("found a " + std::to_string(k + 1) + "x" + std::to_string(l + 1) +
                            " all-ones submatrix: R=" + set_string(wr) + " C=" + set_string(wc));
    }
  return Rat(Int(ones)) / (Int(k) * Int(l));
}

namespace {

struct Adjacency {
  std::vector<std::vector<NodeId>> out, in;
};

Adjacency adjacency_of(const RectifierNetwork& net) {
  Adjacency adj;
  adj.out.resize(net.node_count);
  adj.in.resize(net.node_count);
  for (const auto& [u, v] : net.edges) {
    adj.out[u].push_back(v);
    adj.in[v].push_back(u);
  }
  return adj;
}

std::vector<char> closure(const Adjacency& adj, const std::vector<NodeId>& start, bool forward) {
  std::vector<char> seen(adj.out.size(), 0);
  std::vector<NodeId> stack;
  for (auto v : start)
    if (!seen[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (auto w : forward ? adj.out[v] : adj.in[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

DirectProductReport build_report(const BooleanMatrix& kf, const BooleanMatrix& mf,
                                 const RectifierNetwork& net, bool sum_mode) {
  BooleanMatrix prod = kronecker(kf, mf);
  if (!(express(net, prod.rows(), prod.cols()) == prod))
    throw ValidationError("network does not express the product matrix");
  if (sum_mode && !is_unambiguous(net)) throw ValidationError("network is ambiguous");

  std::size_t m1 = kf.rows(), n1 = kf.cols(), m2 = mf.rows(), n2 = mf.cols();
  DualCertificate cert = dual_weights(kf, false);
  std::vector<Rat> w(m1 * n1);
  for (const auto& [pos, value] : cert.values) w[pos.first * n1 + pos.second] = value;

  DirectProductReport rep;
  rep.sum_mode = sum_mode;
  rep.left_rows = m1;
  rep.left_cols = n1;
  rep.right_rows = m2;
  rep.right_cols = n2;
  rep.total_edges = net.edges.size();
  rep.rank = certificate_value(cert);

  for (const auto& er : edge_rectangles(net, prod.rows(), prod.cols())) {
    std::vector<char> left_rows(m1, 0), left_cols(n1, 0);
    for (auto i : er.to_rows) left_rows[i / m2] = 1;
    for (auto j : er.from_cols) left_cols[j / n2] = 1;
    Rat wp = 0;
    for (std::size_t i1 = 0; i1 < m1; ++i1)
      for (std::size_t j1 = 0; j1 < n1; ++j1)
        if (left_rows[i1] && left_cols[j1]) wp += w[i1 * n1 + j1];
    if (wp > 1) throw std::logic_error("edge weight exceeds one");
    rep.sum_wprime += wp;
    rep.edges.push_back({er.edge, wp});
  }

  Adjacency adj = adjacency_of(net);
  Rat recount = 0;
  std::size_t min_edges = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t i1 = 0; i1 < m1; ++i1)
    for (std::uint32_t j1 = 0; j1 < n1; ++j1) {
      if (!kf.get(i1, j1)) continue;
      std::vector<NodeId> ins(n2), outs(m2);
      for (std::size_t j2 = 0; j2 < n2; ++j2) ins[j2] = net.in_map[j1 * n2 + j2];
      for (std::size_t i2 = 0; i2 < m2; ++i2) outs[i2] = net.out_map[i1 * m2 + i2];
      auto fwd = closure(adj, ins, true);
      auto bwd = closure(adj, outs, false);
      std::vector<char> core(net.node_count, 0), keep(net.node_count, 0);
      for (std::size_t v = 0; v < net.node_count; ++v) core[v] = keep[v] = fwd[v] && bwd[v];
      for (auto v : ins) keep[v] = 1;
      for (auto v : outs) keep[v] = 1;
      std::vector<NodeId> label(net.node_count, 0);
      RectifierNetwork sub;
      for (std::size_t v = 0; v < net.node_count; ++v)
        if (keep[v]) label[v] = static_cast<NodeId>(sub.node_count++);
      for (const auto& [u, v] : net.edges)
        if (core[u] && core[v]) sub.edges.push_back({label[u], label[v]});
      for (auto v : ins) sub.in_map.push_back(label[v]);
      for (auto v : outs) sub.out_map.push_back(label[v]);
      if (!(express(sub, m2, n2) == mf))
        throw std::logic_error("subnetwork fails to express the right factor");
      bool unambiguous = sum_mode && is_unambiguous(sub);
      if (sum_mode && !unambiguous) throw std::logic_error("subnetwork is ambiguous");
      rep.subnetworks.push_back({i1, j1, sub.edges.size(), true, unambiguous});
      recount += w[i1 * n1 + j1] * Int(sub.edges.size());
      min_edges = std::min(min_edges, sub.edges.size());
    }
  if (recount != rep.sum_wprime)
    throw std::logic_error("edge and subnetwork accounting disagree");

  rep.min_edges = min_edges;
  rep.product = rep.rank * Int(min_edges);
  if (Rat(Int(rep.total_edges)) < rep.sum_wprime)
    throw std::logic_error("chain violated: edge count below the edge weight total");
  if (rep.sum_wprime < rep.product)
    throw std::logic_error("chain violated: edge weights below rank times min_edges");
  rep.ok = true;
  return rep;
}

}  // namespace

std::vector<EdgeRectangle> edge_rectangles(const RectifierNetwork& net, std::size_t m,
                                           std::size_t n) {
  validate_network(net);
  if (net.out_map.size() != m || net.in_map.size() != n)
    throw ValidationError("network shape does not match the requested dimensions");
  Adjacency adj = adjacency_of(net);
  std::vector<std::vector<char>> from_col(n), to_row(m);
  for (std::size_t j = 0; j < n; ++j) from_col[j] = closure(adj, {net.in_map[j]}, true);
  for (std::size_t i = 0; i < m; ++i) to_row[i] = closure(adj, {net.out_map[i]}, false);
  std::vector<EdgeRectangle> out;
  out.reserve(net.edges.size());
  for (const auto& [u, v] : net.edges) {
    EdgeRectangle er;
    er.edge = {u, v};
    for (std::size_t i = 0; i < m; ++i)
      if (to_row[i][v]) er.to_rows.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t j = 0; j < n; ++j)
      if (from_col[j][u]) er.from_cols.push_back(static_cast<std::uint32_t>(j));
    out.push_back(std::move(er));
  }
  return out;
}

DirectProductReport verify_direct_product(const BooleanMatrix& k, const BooleanMatrix& m,
                                          const RectifierNetwork& net) {
  return build_report(k, m, net, false);
}

DirectProductReport verify_direct_product_sum(const BooleanMatrix& k, const BooleanMatrix& m,
                                              const RectifierNetwork& net) {
  return build_report(k, m, net, true);
}

std::string report_text(const DirectProductReport& r) {
  std::ostringstream out;
  out << "direct product report (" << (r.sum_mode ? "sum" : "or") << " mode)\n";
  out << "left " << r.left_rows << "x" << r.left_cols << ", right " << r.right_rows << "x"
      << r.right_cols << ", product " << r.left_rows * r.right_rows << "x"
      << r.left_cols * r.right_cols << "\n";
  out << "min_edges is a surrogate for the right factor's cost: every subnetwork\n"
         "expresses the right factor, so its edge count is at least that cost.\n"
         "The chain certifies edges >= sum_wprime >= rank * min_edges.\n";
  out << "EDGES\n";
  for (const auto& e : r.edges)
    out << e.edge.first << ' ' << e.edge.second << ' ' << rational_to_string(e.wprime) << '\n';
  out << "SUBNETWORKS\n";
  for (const auto& s : r.subnetworks)
    out << s.row << ' ' << s.col << ' ' << s.edge_count << " expresses"
        << (r.sum_mode ? " unambiguous" : "") << '\n';
  out << "CHAIN\n";
  out << "edges " << r.total_edges << '\n';
  out << "sum_wprime " << rational_to_string(r.sum_wprime) << '\n';
  out << "rank " << rational_to_string(r.rank) << '\n';
  out << "min_edges " << r.min_edges << '\n';
  out << "product " << rational_to_string(r.product) << '\n';
  out << "ok " << (r.ok ? "yes" : "no") << '\n';
  return out.str();
}

std::string report_csv(const DirectProductReport& r) {
  std::ostringstream out;
  out << "kind,a,b,value\n";
  for (const auto& e : r.edges)
    out << "edge," << e.edge.first << ',' << e.edge.second << ','
        << rational_to_string(e.wprime) << '\n';
  for (const auto& s : r.subnetworks)
    out << "subnetwork," << s.row << ',' << s.col << ',' << s.edge_count << '\n';
  out << "chain,edges,," << r.total_edges << '\n';
  out << "chain,sum_wprime,," << rational_to_string(r.sum_wprime) << '\n';
  out << "chain,rank,," << rational_to_string(r.rank) << '\n';
  out << "chain,min_edges,," << r.min_edges << '\n';
  out << "chain,product,," << rational_to_string(r.product) << '\n';
  out << "chain,ok,," << (r.ok ? "yes" : "no") << '\n';
  return out.str();
}

}  // namespace rectcover
