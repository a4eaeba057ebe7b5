#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rectcover/greedy.hpp"

using namespace rectcover;

namespace {

Rat block_density(unsigned k, unsigned x, unsigned y, unsigned ell) {
  return Rat(binomial(k - x - y, ell - x)) / binomial(k, ell);
}

std::size_t cover_cost(const Covering& c) {
  std::size_t total = 0;
  for (const auto& r : c.rectangles) total += rectangle_cost(r);
  return total;
}

Rat entry_coverage(const FractionalCovering& c, std::uint32_t i, std::uint32_t j) {
  Rat total = 0;
  for (const auto& wr : c.rectangles)
    if (std::binary_search(wr.rect.rows.begin(), wr.rect.rows.end(), i) &&
        std::binary_search(wr.rect.cols.begin(), wr.rect.cols.end(), j))
      total += wr.weight;
  return total;
}

}  // namespace

TEST_CASE("greedy set cover picks maximal gains with smallest-index ties") {
  SetCoverInstance one{1, {{0}}, {}};
  CHECK(greedy_cover(one) == std::vector<std::size_t>{0});

  SetCoverInstance three{3, {{0, 1}, {1, 2}, {2}}, {}};
  CHECK(greedy_cover(three) == std::vector<std::size_t>{0, 1});

  SetCoverInstance gap{3, {{0, 1}}, {}};
  CHECK_THROWS_AS(greedy_cover(gap), ValidationError);
  SetCoverInstance unsorted{2, {{1, 0}}, {}};
  CHECK_THROWS_AS(greedy_cover(unsorted), ValidationError);
  SetCoverInstance big{2, {{0, 1, 2}}, {}};
  CHECK_THROWS_AS(greedy_cover(big), ValidationError);
  SetCoverInstance weighted{1, {{0}}, {Rat(0)}};
  CHECK_THROWS_AS(greedy_cover(weighted), ValidationError);
}

TEST_CASE("greedy bound closed form") {
  CHECK(greedy_bound(Rat(1), 1) == 1);
  CHECK(greedy_bound(Rat(1, 2), 1) == 2);
  CHECK(greedy_bound(Rat(1, 4), 100) == 17);
  CHECK(greedy_bound(Rat(1, 3), 12) == 8);
  CHECK(greedy_bound(Rat(1), 0) == 1);
  CHECK_THROWS_AS(greedy_bound(Rat(0), 5), ValidationError);
  CHECK_THROWS_AS(greedy_bound(Rat(3, 2), 5), ValidationError);
  CHECK_THROWS_AS(greedy_bound(Rat(-1, 4), 5), ValidationError);
}

TEST_CASE("greedy bound holds on random dense instances") {
  std::mt19937 rng(20240819);
  std::bernoulli_distribution bit(0.5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t universe = 20, count = 40;
    std::vector<std::vector<char>> member(count, std::vector<char>(universe, 0));
    for (std::size_t s = 0; s < count; ++s)
      for (std::size_t e = 0; e < universe; ++e) member[s][e] = bit(rng);
    for (std::size_t e = 0; e < universe; ++e) member[e % count][e] = 1;
    SetCoverInstance inst;
    inst.universe_size = universe;
    inst.sets.resize(count);
    for (std::size_t s = 0; s < count; ++s)
      for (std::size_t e = 0; e < universe; ++e)
        if (member[s][e]) inst.sets[s].push_back(static_cast<std::uint32_t>(e));
    std::size_t rarest = count;
    for (std::size_t e = 0; e < universe; ++e) {
      std::size_t deg = 0;
      for (std::size_t s = 0; s < count; ++s) deg += member[s][e];
      rarest = std::min(rarest, deg);
    }
    Rat gamma = Rat(Int(rarest), Int(count));
    CHECK(Rat(Int(greedy_cover(inst).size())) <= greedy_bound(gamma, universe));
  }
}

TEST_CASE("f values") {
  CHECK(f_value(2, 1, 1) == 2);
  CHECK(f_value(4, 2, 2) == 6);
  CHECK(f_value(4, 1, 1) == 6);
  CHECK(f_value(6, 0, 0) == 1);
  CHECK_THROWS_AS(f_value(3, 1, 1), ValidationError);
  CHECK_THROWS_AS(f_value(4, 1, 2), ValidationError);
  CHECK_THROWS_AS(f_value(4, 3, 2), ValidationError);
}

TEST_CASE("mu and its minimiser") {
  CHECK(mu(4, 1, 1, 2) == 1);
  CHECK(mu(6, 2, 2, 3) == Rat(2, 3));
  CHECK(ell_star(4, 1, 1) == 2);
  CHECK(ell_star(6, 2, 2) == 3);
  CHECK(ell_star(2, 0, 0) == 0);
  CHECK_THROWS_AS(mu(4, 1, 1, 0), ValidationError);
  CHECK_THROWS_AS(mu(4, 1, 1, 4), ValidationError);
  CHECK_THROWS_AS(ell_star(3, 2, 2), ValidationError);
}

TEST_CASE("eta coverings are tight and match the closed form") {
  FractionalCovering small = eta_covering(2, 1, 1, 1);
  REQUIRE(small.rectangles.size() == 2);
  CHECK(small.rectangles[0].weight == 1);
  CHECK(small.rectangles[1].weight == 1);
  BooleanMatrix host2 = kneser_submatrix(2, 1, 1);
  validate_fractional_covering(host2, small);
  CHECK(fractional_cost(host2, small) == 4);

  BooleanMatrix host4 = kneser_submatrix(4, 1, 1);
  CHECK(fractional_cost(host4, eta_covering(4, 1, 1, 2)) == 12);

  for (unsigned k = 1; k <= 5; ++k)
    for (unsigned x = 0; x <= k; ++x)
      for (unsigned y = 0; x + y <= k; ++y)
        for (unsigned ell = x; ell <= k - y; ++ell) {
          BooleanMatrix host = kneser_submatrix(k, x, y);
          FractionalCovering c = eta_covering(k, x, y, ell);
          validate_fractional_covering(host, c);
          CHECK(fractional_cost(host, c) == eta_cost_formula(k, x, y, ell));
          for (std::size_t i = 0; i < host.rows(); ++i)
            for (std::size_t j = 0; j < host.cols(); ++j)
              if (host.get(i, j))
                CHECK(entry_coverage(c, static_cast<std::uint32_t>(i),
                                     static_cast<std::uint32_t>(j)) == 1);
        }

  for (unsigned k = 1; k <= 8; ++k)
    for (unsigned x = 0; x <= k; ++x)
      for (unsigned y = 0; x + y <= k; ++y) {
        unsigned ell = ell_star(k, x, y);
        CHECK(eta_cost_formula(k, x, y, ell) ==
              mu(k, x, y, ell) * binomial(k, x) * binomial(k - x, y));
      }
}

TEST_CASE("trinomial identity") {
  CHECK(binomial(4, 1) * binomial(3, 1) * binomial(2, 1) == 24);
  CHECK(trinomial_identity_check(4, 1, 1, 2));
  for (unsigned k = 0; k <= 9; ++k)
    for (unsigned x = 0; x <= k; ++x)
      for (unsigned y = 0; x + y <= k; ++y)
        for (unsigned ell = x; ell <= k - y; ++ell) CHECK(trinomial_identity_check(k, x, y, ell));
  std::mt19937 rng(20240820);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned k = std::uniform_int_distribution<unsigned>(0, 30)(rng);
    unsigned x = std::uniform_int_distribution<unsigned>(0, k)(rng);
    unsigned y = std::uniform_int_distribution<unsigned>(0, k - x)(rng);
    unsigned ell = std::uniform_int_distribution<unsigned>(x, k - y)(rng);
    CHECK(trinomial_identity_check(k, x, y, ell));
  }
  CHECK_THROWS_AS(trinomial_identity_check(4, 3, 2, 3), ValidationError);
}

TEST_CASE("entropy exponent") {
  EntropyPoint p = entropy_exponent();
  CHECK(std::abs(p.value - std::log2(9.0 / 4.0)) < 1e-9);
  CHECK(std::abs(p.alpha_star - 1.0 / 9.0) < 1e-6);
  CHECK(entropy_g(0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(entropy_g(1.0 / 9.0) == doctest::Approx(std::log2(9.0 / 4.0)).epsilon(1e-12));
}

TEST_CASE("kneser degree ratios") {
  CHECK(kneser_d(0, 2) == 1);
  CHECK(kneser_d(1, 2) == 2);
  CHECK(kneser_d(1, 4) == 6);
  CHECK(kneser_d(0, 4) == 1);
  CHECK_THROWS_AS(kneser_d(0, 3), ValidationError);
  CHECK_THROWS_AS(kneser_d(3, 4), ValidationError);
}

TEST_CASE("disjointness block covers") {
  Covering c2 = disjointness_block_cover(2, 1, 1);
  REQUIRE(c2.rectangles.size() == 2);
  CHECK(cover_cost(c2) == 4);
  validate_covering(kneser_submatrix(2, 1, 1), c2);

  Covering c4 = disjointness_block_cover(4, 1, 1);
  validate_covering(kneser_submatrix(4, 1, 1), c4);
  CHECK(Rat(Int(c4.rectangles.size())) <= greedy_bound(Rat(1, 3), 12));

  Covering zero = disjointness_block_cover(3, 2, 2);
  CHECK(zero.rectangles.empty());
  validate_covering(kneser_submatrix(3, 2, 2), zero);

  Covering trivial = disjointness_block_cover(5, 0, 0);
  REQUIRE(trivial.rectangles.size() == 1);
  CHECK(cover_cost(trivial) == 2);

  CHECK_THROWS_AS(disjointness_block_cover(3, 1, 2), ValidationError);
  CHECK(disjointness_block_cover(6, 2, 1).rectangles ==
        disjointness_block_cover(6, 2, 1).rectangles);
}

TEST_CASE("block covers meet the greedy guarantee and the size target") {
  for (unsigned k = 1; k <= 8; ++k)
    for (unsigned x = 0; x <= k; ++x)
      for (unsigned y = 0; y <= x && x + y <= k; ++y) {
        Covering c = disjointness_block_cover(k, x, y);
        validate_covering(kneser_submatrix(k, x, y), c);
        unsigned ell = x + (k - x - y + 1) / 2;
        std::size_t universe =
            (binomial(k, x) * binomial(k - x, y)).convert_to<std::size_t>();
        CHECK(Rat(Int(c.rectangles.size())) <=
              greedy_bound(block_density(k, x, y, ell), universe));
        if ((k - x - y) % 2 == 0) {
          unsigned z = (k - x - y) / 2;
          long double n_target =
              (Rat(binomial(k, x + z)) / binomial(2 * z, z)).convert_to<long double>() *
                  (1.0L + k * std::log(4.0L)) +
              1.0L;
          long double rhs =
              2.0L * binomial(x + z, z).convert_to<long double>() * n_target;
          CHECK(static_cast<long double>(cover_cost(c)) <= rhs);
        }
      }
}

TEST_CASE("full disjointness covers") {
  Covering c1 = disjointness_full_cover(1);
  validate_covering(disjointness(1), c1);
  CHECK(c1.rectangles.size() == 3);
  CHECK(cover_cost(c1) == 6);

  Covering c2 = disjointness_full_cover(2);
  validate_covering(disjointness(2), c2);
  CHECK(cover_cost(c2) == 16);

  Covering c5 = disjointness_full_cover(5);
  validate_covering(disjointness(5), c5);
  CHECK(c5.rectangles == disjointness_full_cover(5).rectangles);

  for (const auto& r : disjointness_full_cover(3).rectangles) {
    REQUIRE(!r.rows.empty());
    int pop = std::popcount(r.rows.front());
    for (auto i : r.rows) CHECK(std::popcount(i) == pop);
  }

  CHECK_THROWS_AS(disjointness_full_cover(15), BudgetError);
}

TEST_CASE("greedy matrix covers") {
  BooleanMatrix t4 = triangular(4);
  Covering plain = greedy_matrix_cover(t4, false);
  validate_covering(t4, plain);
  CHECK(plain.rectangles.size() == 3);

  Covering ratio = greedy_matrix_cover(t4, true);
  validate_covering(t4, ratio);
  CHECK(cover_cost(ratio) == 12);
  CHECK(ratio.rectangles == greedy_matrix_cover(t4, true).rectangles);

  BooleanMatrix id(4, 4);
  for (std::size_t i = 0; i < 4; ++i) id.set(i, i, true);
  Covering diag = greedy_matrix_cover(id, false);
  CHECK(diag.rectangles.size() == 4);
  CHECK(cover_cost(diag) == 8);

  CHECK(greedy_matrix_cover(BooleanMatrix(3, 3), false).rectangles.empty());
}

TEST_CASE("disjointness sweep and its CSV table") {
  auto rows = disjointness_sweep(4);
  REQUIRE(rows.size() == 9);
  const BlockReport* r11 = nullptr;
  for (const auto& r : rows)
    if (r.x == 1 && r.y == 1) r11 = &r;
  REQUIRE(r11 != nullptr);
  CHECK(r11->ell == 2);
  CHECK(r11->gamma == Rat(1, 3));
  CHECK(r11->universe == 12);
  CHECK(r11->bound == 8);
  CHECK(r11->has_f);
  CHECK(r11->f == 6);
  CHECK(r11->ell_opt == 2);
  CHECK(r11->mu_star == 1);
  CHECK(r11->eta_cost == 12);

  std::string csv = sweep_csv(4, 4);
  CHECK(csv.rfind("k,x,y,ell,gamma,greedy_size,greedy_bound,block_cost,f_value,mu_star,eta_cost\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  CHECK(r11->greedy_size == 4);
  CHECK(csv.find("4,1,1,2,1/3,4,8,16,6,1,12\n") != std::string::npos);
  CHECK(csv.find("4,3,1,3,1/4,") != std::string::npos);
  CHECK_THROWS_AS(sweep_csv(3, 2), ValidationError);
}
