#include "rectcover/lp.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "rectcover/common.hpp"

namespace rectcover {

namespace {

constexpr std::size_t kNoIndex = ~std::size_t{0};

// Reduced row echelon solve of g y = h; free unknowns are set to zero and a
// left-over inconsistent row raises logic_error (the callers construct
// systems that are consistent whenever the simplex ran correctly).
std::vector<Rat> gauss_solve(std::vector<std::vector<Rat>> g, std::vector<Rat> h) {
  const std::size_t q = h.size();
  std::vector<std::size_t> pivot_col(q, kNoIndex);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < q && rank < q; ++col) {
    std::size_t sel = kNoIndex;
    for (std::size_t r = rank; r < q; ++r)
      if (g[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel == kNoIndex) continue;
    std::swap(g[sel], g[rank]);
    std::swap(h[sel], h[rank]);
    Rat piv = g[rank][col];
    for (std::size_t c = col; c < q; ++c) g[rank][c] /= piv;
    h[rank] /= piv;
    for (std::size_t r = 0; r < q; ++r) {
      if (r == rank || g[r][col] == 0) continue;
      Rat f = g[r][col];
      for (std::size_t c = col; c < q; ++c) g[r][c] -= f * g[rank][c];
      h[r] -= f * h[rank];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (std::size_t r = rank; r < q; ++r)
    if (h[r] != 0) throw std::logic_error("dual system inconsistent");
  std::vector<Rat> y(q, Rat(0));
  for (std::size_t r = 0; r < rank; ++r) y[pivot_col[r]] = h[r];
  return y;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& p) {
  const std::size_t nvars = p.objective.size();
  if (p.bounds.size() != nvars)
    throw ValidationError("objective and bounds describe different variable counts");
  for (const LpConstraint& row : p.rows)
    if (row.coeffs.size() != nvars)
      throw ValidationError("constraint width does not match the variable count");
  for (std::size_t j = 0; j < nvars; ++j)
    if (p.bounds[j].lower && p.bounds[j].upper && *p.bounds[j].lower > *p.bounds[j].upper)
      throw ValidationError("variable " + std::to_string(j) +
                            " has lower bound above its upper bound");

  const bool maximize = p.sense == LpSense::maximize;

  // Internal minimization over nonnegative columns: bounded-below variables
  // are shifted to start at zero, free ones split into a difference.
  struct VarMap {
    std::size_t pos = 0;
    bool split = false;
    Rat shift = 0;
  };
  std::vector<VarMap> vmap(nvars);
  std::size_t nstruct = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    if (p.bounds[j].lower) {
      vmap[j] = {nstruct, false, *p.bounds[j].lower};
      nstruct += 1;
    } else {
      vmap[j] = {nstruct, true, Rat(0)};
      nstruct += 2;
    }
  }

  std::vector<Rat> cost(nstruct, Rat(0));
  Rat shift_const = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    Rat cj = maximize ? Rat(-p.objective[j]) : p.objective[j];
    cost[vmap[j].pos] += cj;
    if (vmap[j].split)
      cost[vmap[j].pos + 1] -= cj;
    else
      shift_const += cj * vmap[j].shift;
  }

  struct IRow {
    std::vector<Rat> a;
    LpRelation rel = LpRelation::less_equal;
    Rat b = 0;
    std::size_t user = kNoIndex;
    bool negated = false;
  };
  std::vector<IRow> irows;
  auto add_row = [&](const std::vector<Rat>& coeffs, LpRelation rel, Rat rhs, std::size_t user) {
    IRow r;
    r.a.assign(nstruct, Rat(0));
    r.rel = rel;
    r.b = std::move(rhs);
    r.user = user;
    for (std::size_t j = 0; j < nvars; ++j) {
      if (coeffs[j] == 0) continue;
      r.a[vmap[j].pos] += coeffs[j];
      if (vmap[j].split)
        r.a[vmap[j].pos + 1] -= coeffs[j];
      else
        r.b -= coeffs[j] * vmap[j].shift;
    }
    if (r.b < 0) {
      for (Rat& v : r.a) v = -v;
      r.b = -r.b;
      if (r.rel == LpRelation::less_equal)
        r.rel = LpRelation::greater_equal;
      else if (r.rel == LpRelation::greater_equal)
        r.rel = LpRelation::less_equal;
      r.negated = true;
    }
    irows.push_back(std::move(r));
  };
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    add_row(p.rows[i].coeffs, p.rows[i].rel, p.rows[i].rhs, i);
  for (std::size_t j = 0; j < nvars; ++j)
    if (p.bounds[j].upper) {
      std::vector<Rat> unit(nvars, Rat(0));
      unit[j] = 1;
      add_row(unit, LpRelation::less_equal, *p.bounds[j].upper, kNoIndex);
    }

  const std::size_t nrows = irows.size();
  std::size_t nslack = 0, nart = 0;
  for (const IRow& r : irows) {
    if (r.rel != LpRelation::equal) ++nslack;
    if (r.rel != LpRelation::less_equal) ++nart;
  }
  const std::size_t art_start = nstruct + nslack;
  const std::size_t ncols = art_start + nart;
  const std::size_t rhs = ncols;

  std::vector<std::vector<Rat>> tab(nrows, std::vector<Rat>(ncols + 1, Rat(0)));
  std::vector<std::size_t> basis(nrows, kNoIndex);
  std::vector<char> deleted(nrows, 0);
  {
    std::size_t slack_at = nstruct, art_at = art_start;
    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < nstruct; ++j) tab[i][j] = irows[i].a[j];
      tab[i][rhs] = irows[i].b;
      if (irows[i].rel == LpRelation::less_equal) {
        tab[i][slack_at] = 1;
        basis[i] = slack_at++;
      } else if (irows[i].rel == LpRelation::greater_equal) {
        tab[i][slack_at++] = -1;
        tab[i][art_at] = 1;
        basis[i] = art_at++;
      } else {
        tab[i][art_at] = 1;
        basis[i] = art_at++;
      }
    }
  }
  const std::vector<std::vector<Rat>> original = tab;  // pre-pivot snapshot

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    Rat piv = tab[pr][pc];
    for (std::size_t c = 0; c <= rhs; ++c) tab[pr][c] /= piv;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == pr || deleted[r] || tab[r][pc] == 0) continue;
      Rat f = tab[r][pc];
      for (std::size_t c = 0; c <= rhs; ++c) tab[r][c] -= f * tab[pr][c];
    }
    basis[pr] = pc;
  };

  // Entering column: most negative reduced cost, smallest index on ties.
  // After a long degenerate stretch the rule falls back to Bland's (smallest
  // eligible index) until the objective moves again, so cycling cannot occur.
  // Ratio-test ties are broken by the smallest basic variable.  Returns false
  // on unboundedness.
  auto run = [&](std::vector<Rat>& d) -> bool {
    std::size_t stalled = 0;
    for (std::size_t guard = 0;; ++guard) {
      if (guard > 2000000) throw std::logic_error("simplex failed to terminate");
      const bool bland = stalled > nrows + 64;
      std::size_t enter = kNoIndex;
      for (std::size_t j = 0; j < art_start; ++j) {
        if (d[j] >= 0) continue;
        if (enter == kNoIndex || (!bland && d[j] < d[enter])) enter = j;
        if (bland) break;
      }
      if (enter == kNoIndex) return true;
      std::size_t leave = kNoIndex;
      Rat best_ratio = 0;
      for (std::size_t i = 0; i < nrows; ++i) {
        if (deleted[i] || tab[i][enter] <= 0) continue;
        Rat ratio = tab[i][rhs] / tab[i][enter];
        if (leave == kNoIndex || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == kNoIndex) return false;
      if (best_ratio > 0)
        stalled = 0;
      else
        ++stalled;
      Rat f = d[enter];
      pivot(leave, enter);
      if (f != 0)
        for (std::size_t c = 0; c < ncols; ++c) d[c] -= f * tab[leave][c];
    }
  };

  LpSolution sol;
  if (nart > 0) {
    std::vector<Rat> d1(ncols, Rat(0));
    for (std::size_t j = art_start; j < ncols; ++j) d1[j] = 1;
    for (std::size_t i = 0; i < nrows; ++i)
      if (basis[i] >= art_start)
        for (std::size_t j = 0; j < ncols; ++j) d1[j] -= tab[i][j];
    if (!run(d1)) throw std::logic_error("phase one cannot be unbounded");
    Rat art_total = 0;
    for (std::size_t i = 0; i < nrows; ++i)
      if (basis[i] >= art_start) art_total += tab[i][rhs];
    if (art_total > 0) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    for (std::size_t i = 0; i < nrows; ++i) {
      if (basis[i] < art_start) continue;
      std::size_t col = kNoIndex;
      for (std::size_t j = 0; j < art_start; ++j)
        if (tab[i][j] != 0) {
          col = j;
          break;
        }
      if (col == kNoIndex)
        deleted[i] = 1;  // redundant constraint
      else
        pivot(i, col);
    }
  }

  std::vector<Rat> d2(ncols, Rat(0));
  for (std::size_t j = 0; j < ncols; ++j) d2[j] = j < nstruct ? cost[j] : Rat(0);
  for (std::size_t i = 0; i < nrows; ++i) {
    if (deleted[i] || basis[i] >= nstruct) continue;
    const Rat& cb = cost[basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j < ncols; ++j) d2[j] -= cb * tab[i][j];
  }
  if (!run(d2)) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<Rat> xext(ncols, Rat(0));
  for (std::size_t i = 0; i < nrows; ++i)
    if (!deleted[i]) xext[basis[i]] = tab[i][rhs];

  // Dual extraction: solve for multipliers on the surviving rows so that
  // every basic column prices to its cost, then certify the whole solve.
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < nrows; ++i)
    if (!deleted[i]) alive.push_back(i);
  auto ext_cost = [&](std::size_t j) { return j < nstruct ? cost[j] : Rat(0); };
  const std::size_t q = alive.size();
  std::vector<std::vector<Rat>> g(q, std::vector<Rat>(q, Rat(0)));
  std::vector<Rat> h(q, Rat(0));
  for (std::size_t k = 0; k < q; ++k) {
    std::size_t bcol = basis[alive[k]];
    for (std::size_t i = 0; i < q; ++i) g[k][i] = original[alive[i]][bcol];
    h[k] = ext_cost(bcol);
  }
  std::vector<Rat> ysol = gauss_solve(std::move(g), std::move(h));
  std::vector<Rat> yint(nrows, Rat(0));
  for (std::size_t i = 0; i < q; ++i) yint[alive[i]] = ysol[i];

  // Certify: primal feasibility on every original row, dual feasibility on
  // every real column, complementary slackness, and exact strong duality.
  for (std::size_t i = 0; i < nrows; ++i) {
    Rat lhs = 0;
    for (std::size_t j = 0; j < ncols; ++j)
      if (original[i][j] != 0) lhs += original[i][j] * xext[j];
    if (lhs != original[i][rhs]) throw std::logic_error("simplex produced an infeasible basis");
  }
  Rat primal_obj = 0, dual_obj = 0;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (xext[j] < 0) throw std::logic_error("simplex produced a negative basic value");
    primal_obj += ext_cost(j) * xext[j];
  }
  for (std::size_t i = 0; i < nrows; ++i) dual_obj += yint[i] * original[i][rhs];
  if (primal_obj != dual_obj) throw std::logic_error("strong duality check failed");
  for (std::size_t j = 0; j < art_start; ++j) {
    Rat dj = ext_cost(j);
    for (std::size_t i = 0; i < nrows; ++i)
      if (original[i][j] != 0) dj -= yint[i] * original[i][j];
    if (dj < 0) throw std::logic_error("dual infeasibility detected");
    if (dj != 0 && xext[j] != 0) throw std::logic_error("complementary slackness violated");
  }

  sol.status = LpStatus::optimal;
  sol.x.resize(nvars);
  for (std::size_t j = 0; j < nvars; ++j)
    sol.x[j] = vmap[j].split ? Rat(xext[vmap[j].pos] - xext[vmap[j].pos + 1])
                             : Rat(xext[vmap[j].pos] + vmap[j].shift);
  sol.objective = 0;
  for (std::size_t j = 0; j < nvars; ++j) sol.objective += p.objective[j] * sol.x[j];
  Rat internal_obj = primal_obj + shift_const;
  if (sol.objective != (maximize ? Rat(-internal_obj) : internal_obj))
    throw std::logic_error("objective reconstruction mismatch");

  // Final end-to-end feasibility of the reported point.
  for (const LpConstraint& row : p.rows) {
    Rat lhs = 0;
    for (std::size_t j = 0; j < nvars; ++j)
      if (row.coeffs[j] != 0) lhs += row.coeffs[j] * sol.x[j];
    bool ok = row.rel == LpRelation::less_equal      ? lhs <= row.rhs
              : row.rel == LpRelation::greater_equal ? lhs >= row.rhs
                                                     : lhs == row.rhs;
    if (!ok) throw std::logic_error("reported point violates a constraint");
  }
  for (std::size_t j = 0; j < nvars; ++j) {
    if (p.bounds[j].lower && sol.x[j] < *p.bounds[j].lower)
      throw std::logic_error("reported point violates a lower bound");
    if (p.bounds[j].upper && sol.x[j] > *p.bounds[j].upper)
      throw std::logic_error("reported point violates an upper bound");
  }

  sol.row_duals.assign(p.rows.size(), Rat(0));
  for (std::size_t i = 0; i < nrows; ++i) {
    if (irows[i].user == kNoIndex) continue;
    Rat y = yint[i];
    if (irows[i].negated) y = -y;
    if (maximize) y = -y;
    sol.row_duals[irows[i].user] = y;
  }
  return sol;
}

CoverLp build_cover_lp_over(const BooleanMatrix& a, const std::vector<Rectangle>& family,
                            bool weighted) {
  if (family.empty()) throw ValidationError("rectangle family is empty");
  for (const Rectangle& r : family) validate_rectangle(a, r);
  CoverLp out;
  out.columns = family;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j))
        out.row_entries.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  if (out.row_entries.empty()) throw ValidationError("host has no 1-entries");
  out.lp.sense = LpSense::minimize;
  out.lp.objective.reserve(family.size());
  for (const Rectangle& r : family)
    out.lp.objective.push_back(weighted ? Rat(rectangle_cost(r)) : Rat(1));
  out.lp.bounds.assign(family.size(), VarBounds{});
  out.lp.rows.reserve(out.row_entries.size());
  for (auto [i, j] : out.row_entries) {
    LpConstraint row;
    row.coeffs.assign(family.size(), Rat(0));
    for (std::size_t t = 0; t < family.size(); ++t) {
      const Rectangle& r = family[t];
      if (std::binary_search(r.rows.begin(), r.rows.end(), i) &&
          std::binary_search(r.cols.begin(), r.cols.end(), j))
        row.coeffs[t] = 1;
    }
    row.rel = LpRelation::greater_equal;
    row.rhs = 1;
    out.lp.rows.push_back(std::move(row));
  }
  return out;
}

CoverLp build_cover_lp(const BooleanMatrix& a, bool weighted, std::size_t max_rectangles) {
  std::vector<Rectangle> family = weighted ? enumerate_all_rectangles(a, max_rectangles)
                                           : enumerate_maximal_rectangles(a, max_rectangles);
  return build_cover_lp_over(a, family, weighted);
}

CoverLpResult solve_cover_lp(const BooleanMatrix& a, bool weighted, std::size_t max_rectangles) {
  CoverLp built = build_cover_lp(a, weighted, max_rectangles);
  LpSolution sol = solve_lp(built.lp);
  if (sol.status != LpStatus::optimal)
    throw std::logic_error("cover relaxation must be feasible and bounded");
  CoverLpResult res;
  res.optimum = sol.objective;
  res.cover.host_rows = a.rows();
  res.cover.host_cols = a.cols();
  for (std::size_t t = 0; t < built.columns.size(); ++t) {
    if (sol.x[t] == 0) continue;
    if (sol.x[t] > 1) throw std::logic_error("cover relaxation exceeded a unit weight");
    res.cover.rectangles.push_back({built.columns[t], sol.x[t]});
  }
  validate_fractional_covering(a, res.cover);
  res.entry_duals = std::move(sol.row_duals);
  Rat dual_total = 0;
  for (const Rat& y : res.entry_duals) {
    if (y < 0) throw std::logic_error("cover dual has a negative entry");
    dual_total += y;
  }
  if (dual_total != res.optimum) throw std::logic_error("cover dual total mismatch");
  return res;
}

Rat fractional_rank(const BooleanMatrix& k, std::size_t max_rectangles) {
  return solve_cover_lp(k, false, max_rectangles).optimum;
}

Rat certificate_value(const DualCertificate& cert) {
  Rat total = 0;
  for (const auto& [key, v] : cert.values) total += v;
  return total;
}

DualCertificate dual_weights(const BooleanMatrix& a, bool weighted, std::size_t max_rectangles) {
  CoverLpResult res = solve_cover_lp(a, weighted, max_rectangles);
  DualCertificate cert;
  cert.rows = a.rows();
  cert.cols = a.cols();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j))
        cert.values[{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}] =
            res.entry_duals[idx++];
  return cert;
}

DualCertificate triangular_certificate(std::size_t n) {
  if (n < 2) throw ValidationError("certificate needs at least two points");
  DualCertificate cert;
  cert.rows = cert.cols = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t diff = j - i;
      Rat v = diff == 1 ? 2 : (diff & (diff - 1)) == 0 ? 1 : 0;
      cert.values[{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}] = v;
    }
  return cert;
}

namespace {

std::string set_string(const std::vector<std::uint32_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

struct RectSlack {
  bool seen = false;
  Rat worst = 0;
  std::vector<std::uint32_t> rows, cols;

  void offer(const Rat& slack, std::vector<std::uint32_t> r, std::vector<std::uint32_t> c) {
    if (seen && slack >= worst) return;
    seen = true;
    worst = slack;
    rows = std::move(r);
    cols = std::move(c);
  }
};

void check_certificate_domain(const BooleanMatrix& a, const DualCertificate& cert) {
  if (cert.rows != a.rows() || cert.cols != a.cols())
    throw ValidationError("certificate is " + std::to_string(cert.rows) + "x" +
                          std::to_string(cert.cols) + " but the host is " +
                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  for (const auto& [key, v] : cert.values) {
    auto [i, j] = key;
    if (i >= a.rows() || j >= a.cols())
      throw ValidationError("certificate entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is out of range");
    if (!a.get(i, j))
      throw ValidationError("certificate entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is a 0-entry of the host");
  }
}

// Every rectangle of the strict upper triangle splits as rows <= t < cols.
// For a fixed column set the most violating row set keeps exactly the rows
// whose certified row sum exceeds 1 (or the single best row when none does).
RectSlack triangular_worst_slack(std::size_t n, const DualCertificate& cert) {
  std::vector<std::vector<std::pair<std::uint32_t, Rat>>> colvals(n);
  for (const auto& [key, v] : cert.values)
    if (v != 0) colvals[key.second].emplace_back(key.first, v);

  RectSlack best;
  auto positive = [](const Rat& x) { return x > 0 ? x : Rat(0); };
  for (std::size_t t = 0; t + 1 < n; ++t) {
    std::vector<Rat> rowsum(t + 1, Rat(0));
    Rat sum_over = 0;
    std::vector<std::uint32_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == n) return;
      rec(j + 1);
      cur.push_back(static_cast<std::uint32_t>(j));
      for (const auto& [i, v] : colvals[j]) {
        if (i > t) continue;
        Rat old = rowsum[i];
        rowsum[i] += v;
        sum_over += positive(rowsum[i] - 1) - positive(old - 1);
      }
      Rat bound;
      if (sum_over > 0) {
        bound = sum_over;
      } else {
        Rat maxrow = rowsum[0];
        for (std::size_t i = 1; i <= t; ++i)
          if (rowsum[i] > maxrow) maxrow = rowsum[i];
        bound = maxrow - 1;
      }
      Rat slack = Rat(cur.size()) - bound;
      if (!best.seen || slack < best.worst) {
        std::vector<std::uint32_t> rows;
        if (sum_over > 0) {
          for (std::size_t i = 0; i <= t; ++i)
            if (rowsum[i] > 1) rows.push_back(static_cast<std::uint32_t>(i));
        } else {
          std::size_t arg = 0;
          for (std::size_t i = 1; i <= t; ++i)
            if (rowsum[i] > rowsum[arg]) arg = i;
          rows.push_back(static_cast<std::uint32_t>(arg));
        }
        best.offer(slack, std::move(rows), cur);
      }
      rec(j + 1);
      for (const auto& [i, v] : colvals[j]) {
        if (i > t) continue;
        Rat old = rowsum[i];
        rowsum[i] -= v;
        sum_over += positive(rowsum[i] - 1) - positive(old - 1);
      }
      cur.pop_back();
    };
    rec(t + 1);
  }
  return best;
}

RectSlack exhaustive_worst_slack(const BooleanMatrix& a, const DualCertificate& cert) {
  const std::size_t m = a.rows(), nc = a.cols();
  if (m > 16) throw BudgetError("certificate checker supports hosts with at most 16 rows");
  if (nc > 64) throw BudgetError("certificate checker supports hosts with at most 64 columns");
  std::vector<std::uint64_t> rowmask(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      if (a.get(i, j)) rowmask[i] |= std::uint64_t{1} << j;
  std::vector<std::vector<Rat>> y(m, std::vector<Rat>(nc, Rat(0)));
  for (const auto& [key, v] : cert.values) y[key.first][key.second] = v;

  RectSlack best;
  std::vector<Rat> colsum(nc, Rat(0));
  std::vector<std::uint32_t> rset;
  std::uint64_t support = nc == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nc) - 1;
  std::function<void(std::size_t)> rec = [&](std::size_t r0) {
    for (std::size_t i = r0; i < m; ++i) {
      std::uint64_t nsupport = support & rowmask[i];
      if (nsupport == 0) continue;
      std::uint64_t saved = support;
      support = nsupport;
      for (std::uint64_t s = nsupport; s; s &= s - 1) {
        std::size_t j = std::countr_zero(s);
        colsum[j] += y[i][j];
      }
      rset.push_back(static_cast<std::uint32_t>(i));

      Rat sum_over = 0, maxcol = 0;
      std::size_t argmax = kNoIndex;
      for (std::uint64_t s = support; s; s &= s - 1) {
        std::size_t j = std::countr_zero(s);
        if (colsum[j] > 1) sum_over += colsum[j] - 1;
        if (argmax == kNoIndex || colsum[j] > maxcol) {
          maxcol = colsum[j];
          argmax = j;
        }
      }
      Rat bound = sum_over > 0 ? sum_over : Rat(maxcol - 1);
      Rat slack = Rat(rset.size()) - bound;
      if (!best.seen || slack < best.worst) {
        std::vector<std::uint32_t> cols;
        if (sum_over > 0) {
          for (std::uint64_t s = support; s; s &= s - 1) {
            std::size_t j = std::countr_zero(s);
            if (colsum[j] > 1) cols.push_back(static_cast<std::uint32_t>(j));
          }
        } else {
          cols.push_back(static_cast<std::uint32_t>(argmax));
        }
        best.offer(slack, rset, std::move(cols));
      }

      rec(i + 1);
      for (std::uint64_t s = nsupport; s; s &= s - 1) {
        std::size_t j = std::countr_zero(s);
        colsum[j] -= y[i][j];
      }
      rset.pop_back();
      support = saved;
    }
  };
  rec(0);
  return best;
}

CertificateCheck finish_check(const BooleanMatrix& a, const DualCertificate& cert,
                              const RectSlack& best) {
  CertificateCheck out;
  for (const auto& [key, v] : cert.values)
    if (v < 0) {
      out.feasible = false;
      out.worst_slack = best.seen ? best.worst : Rat(0);
      out.violation = "negative value at (" + std::to_string(key.first) + "," +
                      std::to_string(key.second) + ")";
      return out;
    }
  out.worst_slack = best.seen ? best.worst : Rat(0);
  out.feasible = out.worst_slack >= 0;
  if (!out.feasible)
    out.violation = "violated at R=" + set_string(best.rows) + " C=" + set_string(best.cols);
  return out;
}

}  // namespace

CertificateCheck verify_certificate(const BooleanMatrix& a, const DualCertificate& cert) {
  check_certificate_domain(a, cert);
  if (a.ones_count() == 0) return finish_check(a, cert, RectSlack{});
  const std::size_t n = a.rows();
  if (a.rows() == a.cols() && a == triangular(n)) {
    if (n > 24) throw BudgetError("split-point oracle supports triangles up to 24 points");
    return finish_check(a, cert, triangular_worst_slack(n, cert));
  }
  return finish_check(a, cert, exhaustive_worst_slack(a, cert));
}

CertificateCheck verify_certificate_exhaustive(const BooleanMatrix& a,
                                               const DualCertificate& cert) {
  check_certificate_domain(a, cert);
  if (a.ones_count() == 0) return finish_check(a, cert, RectSlack{});
  return finish_check(a, cert, exhaustive_worst_slack(a, cert));
}

std::string write_dc(const DualCertificate& cert) {
  std::ostringstream out;
  out << cert.rows << ' ' << cert.cols << '\n';
  for (const auto& [key, v] : cert.values)
    out << key.first << ' ' << key.second << ' ' << rational_to_string(v) << '\n';
  return out.str();
}

DualCertificate read_dc_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("certificate file is empty");
  DualCertificate cert;
  {
    std::istringstream hs(line);
    long long m = -1, n = -1;
    std::string extra;
    if (!(hs >> m >> n) || m < 0 || n < 0 || (hs >> extra))
      throw ValidationError("bad certificate header: " + line);
    cert.rows = static_cast<std::size_t>(m);
    cert.cols = static_cast<std::size_t>(n);
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    long long i = -1, j = -1;
    std::string value, extra;
    if (!(ls >> i >> j >> value) || (ls >> extra))
      throw ValidationError("bad certificate entry at line " + std::to_string(lineno));
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= cert.rows ||
        static_cast<std::size_t>(j) >= cert.cols)
      throw ValidationError("certificate index out of range at line " + std::to_string(lineno));
    auto key = std::make_pair(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    if (cert.values.count(key))
      throw ValidationError("duplicate certificate entry at line " + std::to_string(lineno));
    cert.values[key] = parse_rational(value);
  }
  return cert;
}

void save_dc(const DualCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open certificate file " + path);
  out << write_dc(cert);
}

DualCertificate load_dc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open certificate file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return read_dc_string(buffer.str());
}

}  // namespace rectcover
