#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rectcover/network.hpp"

using namespace rectcover;

namespace {

RectifierNetwork random_layered_net(std::mt19937& rng, std::size_t n, std::size_t m,
                                    std::size_t mids, double density) {
  RectifierNetwork net;
  net.node_count = n + m + mids;
  for (std::size_t j = 0; j < n; ++j) net.in_map.push_back(static_cast<NodeId>(j));
  for (std::size_t i = 0; i < m; ++i) net.out_map.push_back(static_cast<NodeId>(n + i));
  std::bernoulli_distribution pick(density);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t t = 0; t < mids; ++t)
      if (pick(rng)) net.edges.emplace_back(j, n + m + t);
  for (std::size_t t = 0; t < mids; ++t)
    for (std::size_t t2 = t + 1; t2 < mids; ++t2)
      if (pick(rng)) net.edges.emplace_back(n + m + t, n + m + t2);
  for (std::size_t t = 0; t < mids; ++t)
    for (std::size_t i = 0; i < m; ++i)
      if (pick(rng)) net.edges.emplace_back(n + m + t, n + i);
  return net;
}

}  // namespace

TEST_CASE("network validation") {
  RectifierNetwork net;
  net.node_count = 3;
  net.in_map = {0};
  net.out_map = {2};
  net.edges = {{0, 1}, {1, 2}};
  validate_network(net);

  RectifierNetwork cyclic = net;
  cyclic.edges.push_back({1, 1});
  CHECK_THROWS_WITH_AS(validate_network(cyclic), "network has a cycle", ValidationError);

  RectifierNetwork feeding = net;
  feeding.edges.push_back({1, 0});
  CHECK_THROWS_AS(validate_network(feeding), ValidationError);  // source gains an incoming edge

  RectifierNetwork leaking = net;
  leaking.edges.push_back({2, 1});
  CHECK_THROWS_AS(validate_network(leaking), ValidationError);  // sink gains an outgoing edge

  RectifierNetwork repeated = net;
  repeated.in_map = {0, 0};
  CHECK_THROWS_AS(validate_network(repeated), ValidationError);

  RectifierNetwork oob = net;
  oob.edges.push_back({0, 7});
  CHECK_THROWS_AS(validate_network(oob), ValidationError);
}

TEST_CASE("expression and depth of the worked 8x8 examples") {
  BooleanMatrix b = family_matrix(4);
  RectifierNetwork n19 = example_network_19();
  CHECK(network_size(n19) == 19);
  CHECK(express(n19, 8, 8) == b);
  CHECK(depth_profile(n19) == std::pair<std::size_t, std::size_t>{3, 3});
  CHECK(is_unambiguous(n19));

  RectifierNetwork n20 = example_network_20();
  CHECK(network_size(n20) == 20);
  CHECK(express(n20, 8, 8) == b);
  CHECK(depth_profile(n20) == std::pair<std::size_t, std::size_t>{2, 2});
  // each source-sink pair runs through exactly one hub, so path counts stay at 1
  CHECK(is_unambiguous(n20));

  Covering c = depth2_to_covering(n20);
  CHECK(covering_cost(b, c) == 20);
  CHECK(is_partition(b, c));
  CHECK_THROWS_AS(depth2_to_covering(n19), ValidationError);

  CHECK_THROWS_AS(express(n19, 8, 7), ValidationError);
}

TEST_CASE("covering round trip through depth-2 networks") {
  BooleanMatrix t3 = triangular(3);
  Covering c{3, 3, {Rectangle{{0}, {1, 2}}, Rectangle{{1}, {2}}}};
  RectifierNetwork net = covering_to_depth2(t3, c);
  CHECK(network_size(net) == 5);
  CHECK(express(net, 3, 3) == t3);
  CHECK(depth_profile(net) == std::pair<std::size_t, std::size_t>{2, 2});
  Covering back = depth2_to_covering(net);
  CHECK(back.rectangles == c.rectangles);

  Covering empty{3, 3, {}};
  CHECK_THROWS_AS(covering_to_depth2(t3, empty), ValidationError);  // nothing covers the ones
}

TEST_CASE("ambiguity detection") {
  // two parallel middle nodes joining the same source to the same sink
  RectifierNetwork net;
  net.node_count = 4;
  net.in_map = {0};
  net.out_map = {1};
  net.edges = {{0, 2}, {0, 3}, {2, 1}, {3, 1}};
  CHECK_FALSE(is_unambiguous(net));
}

TEST_CASE("trivial paths through a shared source and sink node") {
  RectifierNetwork net;
  net.node_count = 1;
  net.in_map = {0};
  net.out_map = {0};
  CHECK(express(net, 1, 1) == all_ones(1, 1));
  CHECK(depth_profile(net) == std::pair<std::size_t, std::size_t>{0, 0});
  RectifierNetwork none;
  CHECK_THROWS_AS(depth_profile(none), ValidationError);
}

TEST_CASE("triangular partition meets the recurrence value") {
  for (std::size_t n : {1, 2, 3, 4, 5, 6, 7, 8, 12, 16, 17, 31, 32, 33, 64}) {
    Covering c = triangular_partition(n);
    BooleanMatrix t = triangular(n);
    if (n >= 2) {
      CHECK(covering_cost(t, c) == oracle::s_recurrence(n));
      CHECK(is_partition(t, c));
    } else {
      CHECK(c.rectangles.empty());
    }
  }
  // closed form agrees with the recurrence well past the validated range
  for (std::size_t n = 1; n <= 1024; ++n)
    CHECK(oracle::s_recurrence(n) == oracle::s_closed_form(n));
  std::size_t big_cost = 0;
  for (const Rectangle& r : triangular_partition(1024).rectangles) big_cost += rectangle_cost(r);
  CHECK(big_cost == oracle::s_closed_form(1024));
}

TEST_CASE("two-hub family networks") {
  for (std::size_t n = 1; n <= 8; ++n) {
    RectifierNetwork net = family_network(n);
    CHECK(network_size(net) == 4 * n + 1);
    CHECK(express(net, 2 * n, 2 * n) == family_matrix(n));
    CHECK(is_unambiguous(net));
    CHECK(depth_profile(net) == std::pair<std::size_t, std::size_t>{2, 3});
  }
  CHECK_THROWS_AS(family_network(0), ValidationError);
}

TEST_CASE("canonicalize reroutes equal columns through the cheaper neighborhood") {
  RectifierNetwork net;
  net.node_count = 6;
  net.in_map = {0, 1};
  net.out_map = {2, 3};
  net.edges = {{0, 4}, {4, 2}, {4, 3}, {1, 4}, {1, 5}, {5, 2}, {5, 3}};
  BooleanMatrix j2 = all_ones(2, 2);
  CHECK(express(net, 2, 2) == j2);
  RectifierNetwork canon = canonicalize(net, j2);
  CHECK(network_size(canon) == 6);
  CHECK(express(canon, 2, 2) == j2);

  BooleanMatrix other = triangular(2);
  CHECK_THROWS_AS(canonicalize(net, other), ValidationError);
}

TEST_CASE("canonicalize never grows size or maximum path length") {
  std::mt19937 rng(20240813);
  int done = 0;
  for (int trial = 0; trial < 200 && done < 60; ++trial) {
    RectifierNetwork net = random_layered_net(rng, 3, 3, 3, 0.4);
    if (net.edges.empty() || net.edges.size() > 20) continue;
    BooleanMatrix m = express(net, 3, 3);
    RectifierNetwork canon = canonicalize(net, m);
    CHECK(express(canon, 3, 3) == m);
    CHECK(network_size(canon) <= network_size(net));
    CHECK(depth_profile(canon).second <= depth_profile(net).second);
    ++done;
  }
  CHECK(done == 60);
}

TEST_CASE("network file format") {
  RectifierNetwork net = example_network_19();
  std::string text = write_rn(net);
  RectifierNetwork back = read_rn_string(text);
  CHECK(back.node_count == net.node_count);
  CHECK(back.edges == net.edges);
  CHECK(back.in_map == net.in_map);
  CHECK(back.out_map == net.out_map);
  CHECK(write_rn(back) == text);

  CHECK_THROWS_AS(read_rn_string("nodes 2 edges 1 in 1 out 1\ni 0 0\no 0 1\n"),
                  ValidationError);  // missing edge line
  CHECK_THROWS_AS(read_rn_string("nodes 2 edges 0 in 1 out 1\ni 0 0\nx 0 1\n"),
                  ValidationError);  // unknown record
  CHECK_THROWS_AS(read_rn_string("nodes 2 edges 0 in 2 out 0\ni 0 0\ni 0 1\n"),
                  ValidationError);  // duplicate source line
  CHECK_THROWS_AS(read_rn_string("bad header\n"), ValidationError);
}
