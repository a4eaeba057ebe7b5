#include "rectcover/network.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

#include "rectcover/arith.hpp"

namespace rectcover {

namespace {

struct Adjacency {
  std::vector<std::vector<NodeId>> out, in;
  std::vector<NodeId> topo;  // topological order

  explicit Adjacency(const RectifierNetwork& net)
      : out(net.node_count), in(net.node_count) {
    for (auto [u, v] : net.edges) {
      out[u].push_back(v);
      in[v].push_back(u);
    }
    std::vector<std::size_t> indeg(net.node_count);
    for (NodeId v = 0; v < net.node_count; ++v) indeg[v] = in[v].size();
    std::queue<NodeId> ready;
    for (NodeId v = 0; v < net.node_count; ++v)
      if (indeg[v] == 0) ready.push(v);
    while (!ready.empty()) {
      NodeId v = ready.front();
      ready.pop();
      topo.push_back(v);
      for (NodeId w : out[v])
        if (--indeg[w] == 0) ready.push(w);
    }
  }

  bool acyclic(const RectifierNetwork& net) const { return topo.size() == net.node_count; }
};

}  // namespace

void validate_network(const RectifierNetwork& net) {
  for (auto [u, v] : net.edges)
    if (u >= net.node_count || v >= net.node_count)
      throw ValidationError("edge endpoint out of range");
  for (NodeId v : net.in_map)
    if (v >= net.node_count) throw ValidationError("in map node out of range");
  for (NodeId v : net.out_map)
    if (v >= net.node_count) throw ValidationError("out map node out of range");

  Adjacency adj(net);
  if (!adj.acyclic(net)) throw ValidationError("network has a cycle");

  std::vector<char> is_in(net.node_count, 0), is_out(net.node_count, 0);
  for (std::size_t j = 0; j < net.in_map.size(); ++j) {
    NodeId v = net.in_map[j];
    if (is_in[v]) throw ValidationError("in map is not injective at column " + std::to_string(j));
    is_in[v] = 1;
    if (!adj.in[v].empty())
      throw ValidationError("in node of column " + std::to_string(j) + " has incoming edges");
  }
  for (std::size_t i = 0; i < net.out_map.size(); ++i) {
    NodeId v = net.out_map[i];
    if (is_out[v]) throw ValidationError("out map is not injective at row " + std::to_string(i));
    is_out[v] = 1;
    if (!adj.out[v].empty())
      throw ValidationError("out node of row " + std::to_string(i) + " has outgoing edges");
  }
}

BooleanMatrix express(const RectifierNetwork& net, std::size_t m, std::size_t n) {
  if (net.out_map.size() != m || net.in_map.size() != n)
    throw ValidationError("expression dimensions " + std::to_string(m) + " x " +
                          std::to_string(n) + " do not match the network maps");
  validate_network(net);
  Adjacency adj(net);
  BooleanMatrix result(m, n);
  std::vector<char> reach(net.node_count);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(reach.begin(), reach.end(), 0);
    reach[net.in_map[j]] = 1;
    for (NodeId v : adj.topo)
      if (reach[v])
        for (NodeId w : adj.out[v]) reach[w] = 1;
    for (std::size_t i = 0; i < m; ++i)
      if (reach[net.out_map[i]]) result.set(i, j, true);
  }
  return result;
}

std::pair<std::size_t, std::size_t> depth_profile(const RectifierNetwork& net) {
  validate_network(net);
  if (net.node_count == 0) throw ValidationError("network has no maximal paths");
  if (net.edges.empty()) return {0, 0};
  Adjacency adj(net);
  constexpr std::size_t kUnset = ~std::size_t{0};
  std::vector<std::size_t> shortest(net.node_count, kUnset), longest(net.node_count, kUnset);
  for (NodeId v : adj.topo) {
    if (adj.in[v].empty()) {
      shortest[v] = longest[v] = 0;
    } else {
      for (NodeId u : adj.in[v]) {
        shortest[v] = std::min(shortest[v], shortest[u] + 1);
        longest[v] = longest[v] == kUnset ? longest[u] + 1 : std::max(longest[v], longest[u] + 1);
      }
    }
  }
  // Isolated nodes stand for unused rows and columns; they contribute no path.
  std::size_t lo = kUnset, hi = 0;
  for (NodeId v = 0; v < net.node_count; ++v)
    if (adj.out[v].empty() && !adj.in[v].empty()) {
      lo = std::min(lo, shortest[v]);
      hi = std::max(hi, longest[v]);
    }
  return {lo, hi};
}

bool is_unambiguous(const RectifierNetwork& net) {
  validate_network(net);
  Adjacency adj(net);
  std::vector<Int> paths(net.node_count);
  for (NodeId s : net.in_map) {
    std::fill(paths.begin(), paths.end(), Int(0));
    paths[s] = 1;
    for (NodeId v : adj.topo)
      if (paths[v] != 0)
        for (NodeId w : adj.out[v]) paths[w] += paths[v];
    for (NodeId t : net.out_map)
      if (paths[t] > 1) return false;
  }
  return true;
}

RectifierNetwork covering_to_depth2(const BooleanMatrix& host, const Covering& c) {
  validate_covering(host, c);
  if (c.rectangles.empty()) throw ValidationError("covering has no rectangles");
  std::size_t m = c.host_rows, n = c.host_cols;
  RectifierNetwork net;
  net.node_count = n + m + c.rectangles.size();
  net.in_map.resize(n);
  net.out_map.resize(m);
  for (std::size_t j = 0; j < n; ++j) net.in_map[j] = static_cast<NodeId>(j);
  for (std::size_t i = 0; i < m; ++i) net.out_map[i] = static_cast<NodeId>(n + i);
  for (std::size_t t = 0; t < c.rectangles.size(); ++t) {
    NodeId mid = static_cast<NodeId>(n + m + t);
    for (std::uint32_t j : c.rectangles[t].cols) net.edges.emplace_back(j, mid);
    for (std::uint32_t i : c.rectangles[t].rows) net.edges.emplace_back(mid, n + i);
  }
  return net;
}

Covering depth2_to_covering(const RectifierNetwork& net) {
  validate_network(net);
  auto [lo, hi] = depth_profile(net);
  if (lo != 2 || hi != 2)
    throw ValidationError("network depth profile is (" + std::to_string(lo) + "," +
                          std::to_string(hi) + "), expected (2,2)");
  std::size_t n = net.in_map.size(), m = net.out_map.size();
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> col_of(net.node_count, kNone), row_of(net.node_count, kNone);
  for (std::size_t j = 0; j < n; ++j) col_of[net.in_map[j]] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 0; i < m; ++i) row_of[net.out_map[i]] = static_cast<std::uint32_t>(i);

  std::vector<Rectangle> per_mid(net.node_count);
  std::vector<char> is_mid(net.node_count, 0);
  for (auto [u, v] : net.edges) {
    if (col_of[u] != kNone && row_of[v] == kNone && col_of[v] == kNone) {
      per_mid[v].cols.push_back(col_of[u]);
      is_mid[v] = 1;
    } else if (row_of[v] != kNone && col_of[u] == kNone && row_of[u] == kNone) {
      per_mid[u].rows.push_back(row_of[v]);
      is_mid[u] = 1;
    } else {
      throw ValidationError("edge does not run source -> middle or middle -> sink");
    }
  }
  Covering c;
  c.host_rows = m;
  c.host_cols = n;
  for (NodeId v = 0; v < net.node_count; ++v)
    if (is_mid[v]) {
      std::sort(per_mid[v].rows.begin(), per_mid[v].rows.end());
      std::sort(per_mid[v].cols.begin(), per_mid[v].cols.end());
      c.rectangles.push_back(std::move(per_mid[v]));
    }
  return c;
}

namespace {

void triangular_blocks(std::uint32_t lo, std::uint32_t hi, std::vector<Rectangle>& out) {
  if (hi - lo <= 1) return;
  std::uint32_t mid = lo + (hi - lo) / 2;
  Rectangle block;
  for (std::uint32_t i = lo; i < mid; ++i) block.rows.push_back(i);
  for (std::uint32_t j = mid; j < hi; ++j) block.cols.push_back(j);
  out.push_back(std::move(block));
  triangular_blocks(lo, mid, out);
  triangular_blocks(mid, hi, out);
}

}  // namespace

Covering triangular_partition(std::size_t n) {
  Covering c;
  c.host_rows = c.host_cols = n;
  if (n >= 2) triangular_blocks(0, static_cast<std::uint32_t>(n), c.rectangles);
  return c;
}

BooleanMatrix family_matrix(std::size_t n) {
  BooleanMatrix upper(2, 2);
  upper.set(0, 0, true);
  upper.set(0, 1, true);
  upper.set(1, 1, true);
  return kronecker(upper, all_ones(n, n));
}

RectifierNetwork family_network(std::size_t n) {
  if (n == 0) throw ValidationError("family network needs n >= 1");
  RectifierNetwork net;
  net.node_count = 4 * n + 2;
  NodeId u = static_cast<NodeId>(4 * n), v = static_cast<NodeId>(4 * n + 1);
  net.in_map.resize(2 * n);
  net.out_map.resize(2 * n);
  for (std::size_t j = 0; j < 2 * n; ++j) net.in_map[j] = static_cast<NodeId>(j);
  for (std::size_t i = 0; i < 2 * n; ++i) net.out_map[i] = static_cast<NodeId>(2 * n + i);
  // u collects the left sources and feeds the top sinks; v handles the right
  // half and forwards into u, which yields the all-ones upper blocks.
  for (std::size_t j = 0; j < n; ++j) net.edges.emplace_back(net.in_map[j], u);
  for (std::size_t j = n; j < 2 * n; ++j) net.edges.emplace_back(net.in_map[j], v);
  for (std::size_t i = 0; i < n; ++i) net.edges.emplace_back(u, net.out_map[i]);
  for (std::size_t i = n; i < 2 * n; ++i) net.edges.emplace_back(v, net.out_map[i]);
  net.edges.emplace_back(v, u);
  return net;
}

RectifierNetwork example_network_19() {
  RectifierNetwork net;
  net.node_count = 20;
  net.in_map.resize(8);
  net.out_map.resize(8);
  for (NodeId j = 0; j < 8; ++j) net.in_map[j] = j;
  for (NodeId i = 0; i < 8; ++i) net.out_map[i] = 8 + i;
  NodeId h1 = 16, h2 = 17, h3 = 18, h4 = 19;
  for (NodeId j = 0; j < 4; ++j) net.edges.emplace_back(j, h2);
  for (NodeId i = 0; i < 4; ++i) net.edges.emplace_back(h1, NodeId(8 + i));
  for (NodeId j = 4; j < 8; ++j) net.edges.emplace_back(j, h4);
  for (NodeId i = 4; i < 8; ++i) net.edges.emplace_back(h3, NodeId(8 + i));
  net.edges.emplace_back(h2, h1);
  net.edges.emplace_back(h4, h1);
  net.edges.emplace_back(h4, h3);
  return net;
}

RectifierNetwork example_network_20() {
  RectifierNetwork net;
  net.node_count = 18;
  net.in_map.resize(8);
  net.out_map.resize(8);
  for (NodeId j = 0; j < 8; ++j) net.in_map[j] = j;
  for (NodeId i = 0; i < 8; ++i) net.out_map[i] = 8 + i;
  NodeId h1 = 16, h2 = 17;
  for (NodeId j = 0; j < 4; ++j) net.edges.emplace_back(j, h1);
  for (NodeId i = 0; i < 4; ++i) {
    net.edges.emplace_back(h1, NodeId(8 + i));
    net.edges.emplace_back(h2, NodeId(8 + i));
  }
  for (NodeId j = 4; j < 8; ++j) net.edges.emplace_back(j, h2);
  for (NodeId i = 4; i < 8; ++i) net.edges.emplace_back(h2, NodeId(8 + i));
  return net;
}

RectifierNetwork canonicalize(const RectifierNetwork& net, const BooleanMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  BooleanMatrix expressed = express(net, rows, cols);
  if (expressed != m) throw ValidationError("network does not express the given matrix");

  auto column_key = [&](std::size_t j) {
    std::vector<char> key(rows);
    for (std::size_t i = 0; i < rows; ++i) key[i] = m.get(i, j);
    return key;
  };
  auto row_key = [&](std::size_t i) {
    std::vector<char> key(cols);
    for (std::size_t j = 0; j < cols; ++j) key[j] = m.get(i, j);
    return key;
  };

  RectifierNetwork cur = net;
  // sources: route every column through the cheapest neighborhood in its class
  {
    std::vector<std::vector<NodeId>> nbr(cols);
    for (auto [u, v] : cur.edges)
      for (std::size_t j = 0; j < cols; ++j)
        if (cur.in_map[j] == u) nbr[j].push_back(v);
    for (auto& list : nbr) std::sort(list.begin(), list.end());
    std::vector<std::size_t> rep(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t best = j;
      auto key = column_key(j);
      for (std::size_t j2 = 0; j2 < cols; ++j2)
        if (column_key(j2) == key &&
            (nbr[j2].size() < nbr[best].size() ||
             (nbr[j2].size() == nbr[best].size() && j2 < best)))
          best = j2;
      rep[j] = best;
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<char> is_in(cur.node_count, 0);
    for (NodeId v : cur.in_map) is_in[v] = 1;
    for (auto e : cur.edges)
      if (!is_in[e.first]) edges.push_back(e);
    for (std::size_t j = 0; j < cols; ++j)
      for (NodeId w : nbr[rep[j]]) edges.emplace_back(cur.in_map[j], w);
    cur.edges = std::move(edges);
  }
  // sinks: the same transformation on the modified network
  {
    std::vector<std::vector<NodeId>> nbr(rows);
    for (auto [u, v] : cur.edges)
      for (std::size_t i = 0; i < rows; ++i)
        if (cur.out_map[i] == v) nbr[i].push_back(u);
    for (auto& list : nbr) std::sort(list.begin(), list.end());
    std::vector<std::size_t> rep(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      std::size_t best = i;
      auto key = row_key(i);
      for (std::size_t i2 = 0; i2 < rows; ++i2)
        if (row_key(i2) == key &&
            (nbr[i2].size() < nbr[best].size() ||
             (nbr[i2].size() == nbr[best].size() && i2 < best)))
          best = i2;
      rep[i] = best;
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<char> is_out(cur.node_count, 0);
    for (NodeId v : cur.out_map) is_out[v] = 1;
    for (auto e : cur.edges)
      if (!is_out[e.second]) edges.push_back(e);
    for (std::size_t i = 0; i < rows; ++i)
      for (NodeId w : nbr[rep[i]]) edges.emplace_back(w, cur.out_map[i]);
    cur.edges = std::move(edges);
  }
  if (express(cur, rows, cols) != m)
    throw std::logic_error("canonicalize changed the expressed matrix");
  return cur;
}

std::string write_rn(const RectifierNetwork& net) {
  std::ostringstream out;
  out << "nodes " << net.node_count << " edges " << net.edges.size() << " in "
      << net.in_map.size() << " out " << net.out_map.size() << '\n';
  for (std::size_t j = 0; j < net.in_map.size(); ++j)
    out << "i " << j << ' ' << net.in_map[j] << '\n';
  for (std::size_t i = 0; i < net.out_map.size(); ++i)
    out << "o " << i << ' ' << net.out_map[i] << '\n';
  for (auto [u, v] : net.edges) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

RectifierNetwork read_rn(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ValidationError("network file: missing header line");
  std::istringstream hs(header);
  std::string t1, t2, t3, t4;
  std::size_t nodes = 0, edges = 0, n = 0, m = 0;
  std::string extra;
  if (!(hs >> t1 >> nodes >> t2 >> edges >> t3 >> n >> t4 >> m) || t1 != "nodes" ||
      t2 != "edges" || t3 != "in" || t4 != "out" || (hs >> extra))
    throw ValidationError("network file: header must be 'nodes c edges e in n out m'");
  RectifierNetwork net;
  net.node_count = nodes;
  net.in_map.assign(n, 0);
  net.out_map.assign(m, 0);
  std::vector<char> seen_in(n, 0), seen_out(m, 0);
  std::size_t lineno = 1;
  auto fail = [&](const std::string& why) {
    throw ValidationError("network file line " + std::to_string(lineno) + ": " + why);
  };
  for (std::size_t r = 0; r < n + m + edges; ++r) {
    std::string line;
    ++lineno;
    if (!std::getline(in, line)) fail("unexpected end of file");
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "i") {
      std::size_t j;
      NodeId v;
      if (!(ls >> j >> v) || (ls >> extra) || j >= n) fail("bad source line");
      if (seen_in[j]) fail("duplicate source line");
      seen_in[j] = 1;
      net.in_map[j] = v;
    } else if (kind == "o") {
      std::size_t i;
      NodeId v;
      if (!(ls >> i >> v) || (ls >> extra) || i >= m) fail("bad sink line");
      if (seen_out[i]) fail("duplicate sink line");
      seen_out[i] = 1;
      net.out_map[i] = v;
    } else if (kind == "e") {
      NodeId u, v;
      if (!(ls >> u >> v) || (ls >> extra)) fail("bad edge line");
      net.edges.emplace_back(u, v);
    } else {
      fail("unknown record '" + kind + "'");
    }
  }
  if (net.edges.size() != edges) fail("edge count does not match header");
  for (std::size_t j = 0; j < n; ++j)
    if (!seen_in[j]) throw ValidationError("network file: missing source line for column " +
                                           std::to_string(j));
  for (std::size_t i = 0; i < m; ++i)
    if (!seen_out[i]) throw ValidationError("network file: missing sink line for row " +
                                            std::to_string(i));
  validate_network(net);
  return net;
}

RectifierNetwork read_rn_string(const std::string& text) {
  std::istringstream in(text);
  return read_rn(in);
}

RectifierNetwork load_rn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open network file " + path);
  return read_rn(in);
}

void save_rn(const RectifierNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write network file " + path);
  out << write_rn(net);
}

}  // namespace rectcover
