#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rectcover/boolmat.hpp"
#include "rectcover/covers.hpp"
#include "rectcover/exact.hpp"
#include "rectcover/greedy.hpp"
#include "rectcover/lp.hpp"
#include "rectcover/network.hpp"
#include "rectcover/regexlang.hpp"

using namespace rectcover;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file " + path);
  out << text;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 9 ||
      !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ValidationError(what + ": '" + s + "' is not a count");
  return std::stoull(s);
}

void need_args(const std::vector<std::string>& args, std::size_t count, const std::string& use) {
  if (args.size() != count + 1)
    throw ValidationError(args[0] + " expects " + std::to_string(count) + " argument" +
                          (count == 1 ? "" : "s") + ": " + use);
}

std::string nine_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// s(n) through the halving partition, so the printed value and the witness
// construction can never drift apart.
std::size_t triangular_cost(std::size_t n) {
  if (n == 0) throw ValidationError("triangular size must be positive");
  return covering_cost(triangular(n), triangular_partition(n));
}

int run(int argc, char** argv) {
  CLI::App app{"coverings, certificates, and networks for Boolean matrices"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::size_t max_rects = kDefaultMaxRectangles;
  std::size_t max_nodes = kDefaultNodeBudget;

  auto* gen = app.add_subcommand("gen", "write a matrix, certificate, or network");
  std::vector<std::string> gen_args;
  std::string gen_out;
  gen->add_option("kind", gen_args,
                  "triangular n | allones m n | disjointness k | kneser k x y | kron a.bm b.bm | "
                  "certificate n | family n | familymatrix n | net19 | net20")
      ->required()
      ->expected(-1);
  gen->add_option("-o,--output", gen_out, "output file (stdout when absent)");
  gen->callback([&] {
    const std::string& kind = gen_args[0];
    auto num = [&](std::size_t i) { return parse_count(gen_args[i + 1], "gen " + kind); };
    std::string text;
    if (kind == "triangular") {
      need_args(gen_args, 1, "gen triangular n");
      text = write_bm(triangular(num(0)));
    } else if (kind == "allones") {
      need_args(gen_args, 2, "gen allones m n");
      text = write_bm(all_ones(num(0), num(1)));
    } else if (kind == "disjointness") {
      need_args(gen_args, 1, "gen disjointness k");
      text = write_bm(disjointness(static_cast<unsigned>(num(0))));
    } else if (kind == "kneser") {
      need_args(gen_args, 3, "gen kneser k x y");
      text = write_bm(kneser_submatrix(static_cast<unsigned>(num(0)),
                                       static_cast<unsigned>(num(1)),
                                       static_cast<unsigned>(num(2))));
    } else if (kind == "kron") {
      need_args(gen_args, 2, "gen kron a.bm b.bm");
      text = write_bm(kronecker(load_bm(gen_args[1]), load_bm(gen_args[2])));
    } else if (kind == "certificate") {
      need_args(gen_args, 1, "gen certificate n");
      text = write_dc(triangular_certificate(num(0)));
    } else if (kind == "family") {
      need_args(gen_args, 1, "gen family n");
      text = write_rn(family_network(num(0)));
    } else if (kind == "familymatrix") {
      need_args(gen_args, 1, "gen familymatrix n");
      text = write_bm(family_matrix(num(0)));
    } else if (kind == "net19") {
      need_args(gen_args, 0, "gen net19");
      text = write_rn(example_network_19());
    } else if (kind == "net20") {
      need_args(gen_args, 0, "gen net20");
      text = write_rn(example_network_20());
    } else {
      throw ValidationError("unknown gen kind '" + kind + "'");
    }
    emit(text, gen_out);
  });

  auto* cover = app.add_subcommand("cover", "cover a matrix and print the cost");
  std::string cover_in, cover_out, method;
  bool flag_weighted = false, flag_unweighted = false, flag_partition = false;
  cover->add_option("input", cover_in, "host matrix (.bm)")->required();
  cover->add_option("--method", method, "greedy, exact, or lp")
      ->required()
      ->check(CLI::IsMember({"greedy", "exact", "lp"}));
  cover->add_flag("--weighted", flag_weighted, "cost |R|+|C| per rectangle (default)");
  cover->add_flag("--unweighted", flag_unweighted, "cost 1 per rectangle");
  cover->add_flag("--partition", flag_partition, "exact disjoint covering (weighted only)");
  cover->add_option("-o,--output", cover_out, "write the covering (.cov)");
  cover->add_option("--max-rects", max_rects, "rectangle enumeration budget");
  cover->add_option("--max-nodes,--bb-budget", max_nodes, "search node budget");
  cover->callback([&] {
    if (flag_weighted && flag_unweighted)
      throw ValidationError("choose one of --weighted/--unweighted");
    bool weighted = !flag_unweighted;
    if (flag_partition && (method != "exact" || !weighted))
      throw ValidationError("--partition needs --method exact and weighted costs");
    BooleanMatrix a = load_bm(cover_in);
    std::string cost, text;
    if (method == "greedy") {
      Covering c = greedy_matrix_cover(a, weighted, max_rects);
      cost = std::to_string(weighted ? covering_cost(a, c) : c.rectangles.size());
      text = write_cov(c);
    } else if (method == "exact") {
      ExactCover r = flag_partition ? exact_sum2(a, max_nodes, max_rects)
                     : weighted     ? exact_or2(a, max_nodes, max_rects)
                                    : exact_boolean_rank(a, max_nodes, max_rects);
      cost = std::to_string(r.cost);
      text = write_cov(r.cover);
      if (!r.optimal) exit_code = 2;
    } else {
      CoverLpResult r = solve_cover_lp(a, weighted, max_rects);
      cost = rational_to_string(r.optimum);
      text = write_cov(r.cover);
    }
    std::cout << "cost " << cost << "\n";
    if (!cover_out.empty()) emit(text, cover_out);
  });

  auto* verify = app.add_subcommand("verify", "check an artifact against a host");
  std::vector<std::string> verify_args;
  bool flag_sum = false, flag_csv = false;
  verify->add_option("what", verify_args,
                     "covering host.bm c.cov | certificate host.bm c.dc | "
                     "network host.bm n.rn | direct-product k.bm m.bm n.rn")
      ->required()
      ->expected(-1);
  verify->add_flag("--sum", flag_sum, "direct-product: require unambiguous networks");
  verify->add_flag("--csv", flag_csv, "direct-product: CSV report");
  verify->callback([&] {
    const std::string& what = verify_args[0];
    if (what == "covering") {
      need_args(verify_args, 2, "verify covering host.bm c.cov");
      BooleanMatrix host = load_bm(verify_args[1]);
      FractionalCovering fc = load_cov(verify_args[2]);
      bool integral = std::all_of(fc.rectangles.begin(), fc.rectangles.end(),
                                  [](const WeightedRectangle& w) { return w.weight == 1; });
      if (integral) {
        Covering c = to_integral(fc);
        validate_covering(host, c);
        std::cout << "valid, cost " << covering_cost(host, c) << ", partition "
                  << (is_partition(host, c) ? "yes" : "no") << "\n";
      } else {
        validate_fractional_covering(host, fc);
        std::cout << "valid, cost " << rational_to_string(fractional_cost(host, fc)) << "\n";
      }
    } else if (what == "certificate") {
      need_args(verify_args, 2, "verify certificate host.bm c.dc");
      BooleanMatrix host = load_bm(verify_args[1]);
      DualCertificate cert = load_dc(verify_args[2]);
      CertificateCheck check = verify_certificate(host, cert);
      if (check.feasible) {
        std::cout << "feasible, value " << rational_to_string(certificate_value(cert)) << "\n";
      } else {
        std::cout << "infeasible: " << check.violation << "\n";
        exit_code = 1;
      }
    } else if (what == "network") {
      need_args(verify_args, 2, "verify network host.bm n.rn");
      BooleanMatrix host = load_bm(verify_args[1]);
      RectifierNetwork net = load_rn(verify_args[2]);
      if (express(net, host.rows(), host.cols()) == host) {
        std::cout << "expresses, edges " << net.edges.size() << "\n";
      } else {
        std::cout << "does not express the host\n";
        exit_code = 1;
      }
    } else if (what == "direct-product") {
      need_args(verify_args, 3, "verify direct-product k.bm m.bm n.rn");
      BooleanMatrix k = load_bm(verify_args[1]);
      BooleanMatrix m = load_bm(verify_args[2]);
      RectifierNetwork net = load_rn(verify_args[3]);
      DirectProductReport report =
          flag_sum ? verify_direct_product_sum(k, m, net) : verify_direct_product(k, m, net);
      std::cout << (flag_csv ? report_csv(report) : report_text(report));
    } else {
      throw ValidationError("unknown verify target '" + what + "'");
    }
  });

  auto* bounds = app.add_subcommand("bounds", "print bound quantities, one per line");
  std::int64_t bounds_tri = -1;
  std::string bounds_matrix;
  std::vector<unsigned> bounds_fat, bounds_block, bounds_kneser;
  bool bounds_entropy = false;
  bounds->add_option("--triangular", bounds_tri, "s(n) for the triangular host");
  bounds->add_option("--matrix", bounds_matrix, "relaxation, greedy, and rank bounds for a .bm");
  bounds->add_option("--fat", bounds_fat, "k l: ones/(k*l) when no (k+1)x(l+1) all-ones block")
      ->expected(2);
  bounds->add_option("--block", bounds_block, "k x y: disjointness block quantities")->expected(3);
  bounds->add_option("--kneser", bounds_kneser, "m k: the d(m) column ratio")->expected(2);
  bounds->add_flag("--entropy", bounds_entropy, "exponent of the block-cover growth rate");
  bounds->add_option("--max-rects", max_rects, "rectangle enumeration budget");
  bounds->callback([&] {
    bool any = false;
    if (bounds_tri >= 0) {
      std::cout << "s " << triangular_cost(static_cast<std::size_t>(bounds_tri)) << "\n";
      any = true;
    }
    if (!bounds_matrix.empty()) {
      BooleanMatrix a = load_bm(bounds_matrix);
      std::size_t ones = 0;
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) ones += a.get(i, j);
      std::cout << "ones " << ones << "\n";
      std::cout << "fractional_rank " << rational_to_string(fractional_rank(a, max_rects)) << "\n";
      try {
        std::cout << "lp_weighted "
                  << rational_to_string(solve_cover_lp(a, true, max_rects).optimum) << "\n";
      } catch (const BudgetError&) {
        std::cout << "lp_weighted -\n";
      }
      Covering c = greedy_matrix_cover(a, true, max_rects);
      std::cout << "greedy_weighted " << covering_cost(a, c) << "\n";
      if (!bounds_fat.empty())
        std::cout << "fat_bound "
                  << rational_to_string(
                         nechiporuk_bound(a, bounds_fat[0], bounds_fat[1], max_rects))
                  << "\n";
      any = true;
    }
    if (!bounds_block.empty()) {
      unsigned k = bounds_block[0], x = bounds_block[1], y = bounds_block[2];
      if (x < y) std::swap(x, y);
      if (x > k || x + y > k) throw ValidationError("block needs x, y with x + y <= k");
      for (const auto& row : disjointness_sweep(k)) {
        if (row.x != x || row.y != y) continue;
        std::cout << "ell " << row.ell << "\n";
        std::cout << "gamma " << rational_to_string(row.gamma) << "\n";
        std::cout << "universe " << row.universe << "\n";
        std::cout << "greedy_size " << row.greedy_size << "\n";
        std::cout << "greedy_bound " << rational_to_string(row.bound) << "\n";
        std::cout << "block_cost " << row.block_cost.str() << "\n";
        std::cout << "f " << (row.has_f ? rational_to_string(row.f) : "-") << "\n";
        std::cout << "ell_star " << row.ell_opt << "\n";
        std::cout << "mu_star " << rational_to_string(row.mu_star) << "\n";
        std::cout << "eta_cost " << rational_to_string(row.eta_cost) << "\n";
      }
      any = true;
    }
    if (!bounds_kneser.empty()) {
      std::cout << "d " << rational_to_string(kneser_d(bounds_kneser[0], bounds_kneser[1]))
                << "\n";
      any = true;
    }
    if (bounds_entropy) {
      EntropyPoint p = entropy_exponent();
      std::cout << "alpha_star " << nine_digits(p.alpha_star) << "\n";
      std::cout << "entropy_limit " << nine_digits(p.value) << "\n";
      any = true;
    }
    if (!any)
      throw ValidationError(
          "bounds: give at least one of --triangular/--matrix/--block/--kneser/--entropy");
  });

  auto* regex = app.add_subcommand("regex", "emit or measure expressions for a language");
  std::vector<std::string> regex_args;
  std::string regex_family, regex_out;
  regex->add_option("action", regex_args, "emit <lang.l2|n> | length <lang.l2|n>")
      ->required()
      ->expected(-1);
  regex->add_option("--family", regex_family, "interpret the argument as L_n")
      ->check(CLI::IsMember({"Ln"}));
  regex->add_option("-o,--output", regex_out, "output file (stdout when absent)");
  regex->add_option("--max-rects", max_rects, "rectangle enumeration budget");
  regex->add_option("--max-nodes,--bb-budget", max_nodes, "search node budget");
  regex->callback([&] {
    const std::string& action = regex_args[0];
    if (action != "emit" && action != "length")
      throw ValidationError("unknown regex action '" + action + "'");
    need_args(regex_args, 1, "regex " + action + " <lang.l2 | --family Ln n>");
    bool family = !regex_family.empty();
    if (action == "emit" && family) {
      std::size_t n = parse_count(regex_args[1], "regex emit");
      emit(regex_text(divide_and_conquer_regex(n)) + "\n", regex_out);
      return;
    }
    TwoLetterLanguage lang = family
                                 ? language_ln(parse_count(regex_args[1], "regex " + action))
                                 : load_l2(regex_args[1]);
    if (action == "length") {
      RegexLength len = optimal_regex_length(lang, max_nodes, max_rects);
      std::cout << len.length << "\n";
      if (!len.exact) exit_code = 2;
      return;
    }
    BooleanMatrix a = characteristic_matrix(lang);
    Covering c;
    bool exact = false;
    try {
      ExactCover best = exact_or2(a, max_nodes, max_rects);
      c = best.cover;
      exact = best.optimal;
    } catch (const BudgetError&) {
      c = greedy_matrix_cover(a, true, max_rects);
    }
    emit(regex_text(covering_to_regex(c)) + "\n", regex_out);
    if (!exact) exit_code = 2;
  });

  auto* table = app.add_subcommand("table", "CSV tables over the disjointness blocks");
  std::vector<std::string> table_args;
  std::string table_out;
  table->add_option("action", table_args, "sweep k_lo k_hi | exponent k_lo k_hi")
      ->required()
      ->expected(-1);
  table->add_option("-o,--output", table_out, "output file (stdout when absent)");
  table->callback([&] {
    const std::string& action = table_args[0];
    need_args(table_args, 2, "table " + action + " k_lo k_hi");
    unsigned lo = static_cast<unsigned>(parse_count(table_args[1], "table " + action));
    unsigned hi = static_cast<unsigned>(parse_count(table_args[2], "table " + action));
    if (action == "sweep") {
      emit(sweep_csv(lo, hi), table_out);
    } else if (action == "exponent") {
      std::ostringstream out;
      out << "k,cost,exponent\n";
      for (unsigned k = lo; k <= hi; ++k) {
        std::size_t cost = 0;
        for (const auto& r : disjointness_full_cover(k).rectangles) cost += rectangle_cost(r);
        out << k << ',' << cost << ','
            << nine_digits(std::log2(static_cast<double>(cost)) / k) << "\n";
      }
      emit(out.str(), table_out);
    } else {
      throw ValidationError("unknown table action '" + action + "'");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
