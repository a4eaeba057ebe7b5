#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rectcover/boolmat.hpp"
#include "rectcover/common.hpp"
#include "rectcover/covers.hpp"

namespace rectcover {

using NodeId = std::uint32_t;

// Directed acyclic graph whose reachability relation from numbered sources to
// numbered sinks expresses a 0/1 matrix: entry (i,j) is 1 iff some path leads
// from in_map[j] to out_map[i].  in_map images must be sources (no incoming
// edges), out_map images sinks, and both maps injective.  A node may serve as
// both in_map[j] and out_map[i]; the trivial path then makes entry (i,j) a 1.
struct RectifierNetwork {
  std::size_t node_count = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> in_map;   // column j -> source node
  std::vector<NodeId> out_map;  // row i -> sink node
};

inline std::size_t network_size(const RectifierNetwork& net) { return net.edges.size(); }

void validate_network(const RectifierNetwork& net);

// Expressed matrix; m and n must match the out/in map sizes.
BooleanMatrix express(const RectifierNetwork& net, std::size_t m, std::size_t n);

// (min, max) number of edges over all maximal paths, where a maximal path
// runs from an in-degree-0 node to an out-degree-0 node along at least one
// edge.  Isolated nodes stand for unused rows or columns and contribute no
// path; an edgeless network reports (0, 0).  Networks without nodes are
// rejected.
std::pair<std::size_t, std::size_t> depth_profile(const RectifierNetwork& net);

// True iff every (source, sink) pair is joined by at most one path.
bool is_unambiguous(const RectifierNetwork& net);

// Depth-2 network with one middle node per rectangle: sources are nodes
// 0..n-1, sinks n..n+m-1, middles follow in rectangle order; each rectangle
// emits its column edges, then its row edges.
RectifierNetwork covering_to_depth2(const BooleanMatrix& host, const Covering& c);

// Inverse direction; requires depth exactly (2,2) and every edge to run
// source -> middle or middle -> sink.  Rectangles come out in middle-node order.
Covering depth2_to_covering(const RectifierNetwork& net);

// Partition of triangular(n) from the halving recursion; rectangle order is
// the pre-order of the recursion (block before the two halves).
Covering triangular_partition(std::size_t n);

// 2n x 2n matrix (1 1; 0 1) (x) J_n and its (4n+1)-edge two-hub network.
BooleanMatrix family_matrix(std::size_t n);
RectifierNetwork family_network(std::size_t n);

// Worked 8x8 examples: a 19-edge depth-3 network and a 20-edge depth-2
// network, both expressing family_matrix(4).
RectifierNetwork example_network_19();
RectifierNetwork example_network_20();

// Reattach equal columns (then equal rows) of m to a cheapest representative
// neighborhood.  Never grows the edge count or the maximum path length, and
// the result still expresses m.
RectifierNetwork canonicalize(const RectifierNetwork& net, const BooleanMatrix& m);

// Text format: header "nodes <c> edges <e> in <n> out <m>", then one
// "i <j> <node>" line per column, "o <i> <node>" per row, "e <u> <v>" per edge.
std::string write_rn(const RectifierNetwork& net);
RectifierNetwork read_rn(std::istream& in);
RectifierNetwork read_rn_string(const std::string& text);
RectifierNetwork load_rn(const std::string& path);
void save_rn(const RectifierNetwork& net, const std::string& path);

}  // namespace rectcover
