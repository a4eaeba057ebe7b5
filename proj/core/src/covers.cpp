#include "rectcover/covers.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

namespace rectcover {

namespace {

std::string entry_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void check_host_dims(const BooleanMatrix& host, std::size_t m, std::size_t n) {
  if (host.rows() != m || host.cols() != n)
    throw ValidationError("covering host dimensions " + std::to_string(m) + " x " +
                          std::to_string(n) + " do not match matrix " +
                          std::to_string(host.rows()) + " x " + std::to_string(host.cols()));
}

void check_index_list(const std::vector<std::uint32_t>& v, std::size_t limit, const char* what) {
  if (v.empty()) throw ValidationError(std::string("rectangle with empty ") + what + " set");
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (v[p] >= limit)
      throw ValidationError(std::string(what) + " index " + std::to_string(v[p]) +
                            " out of range");
    if (p && v[p] <= v[p - 1])
      throw ValidationError(std::string(what) + " indices not strictly increasing");
  }
}

// Coverage bit planes sized for the host; the second plane marks entries
// covered more than once.
struct CoverageMap {
  std::size_t n;
  std::vector<std::uint64_t> once, twice;

  CoverageMap(std::size_t m, std::size_t cols) : n(cols), once((m * cols + 63) / 64, 0),
                                                 twice((m * cols + 63) / 64, 0) {}
  void mark(std::size_t i, std::size_t j) {
    std::size_t idx = i * n + j;
    std::uint64_t bit = std::uint64_t{1} << (idx % 64);
    if (once[idx / 64] & bit)
      twice[idx / 64] |= bit;
    else
      once[idx / 64] |= bit;
  }
  bool covered(std::size_t i, std::size_t j) const {
    std::size_t idx = i * n + j;
    return once[idx / 64] >> (idx % 64) & 1;
  }
  bool duplicated(std::size_t i, std::size_t j) const {
    std::size_t idx = i * n + j;
    return twice[idx / 64] >> (idx % 64) & 1;
  }
};

}  // namespace

bool operator<(const Rectangle& a, const Rectangle& b) {
  if (a.rows != b.rows) return a.rows < b.rows;
  return a.cols < b.cols;
}

void validate_rectangle(const BooleanMatrix& host, const Rectangle& r) {
  check_index_list(r.rows, host.rows(), "row");
  check_index_list(r.cols, host.cols(), "column");
  for (std::uint32_t i : r.rows)
    for (std::uint32_t j : r.cols)
      if (!host.get(i, j))
        throw ValidationError("rectangle entry " + entry_str(i, j) + " is 0 in the host");
}

void validate_covering(const BooleanMatrix& host, const Covering& c) {
  check_host_dims(host, c.host_rows, c.host_cols);
  for (const Rectangle& r : c.rectangles) validate_rectangle(host, r);
  CoverageMap cov(host.rows(), host.cols());
  for (const Rectangle& r : c.rectangles)
    for (std::uint32_t i : r.rows)
      for (std::uint32_t j : r.cols) cov.mark(i, j);
  for (std::size_t i = 0; i < host.rows(); ++i)
    for (std::size_t j = 0; j < host.cols(); ++j)
      if (host.get(i, j) && !cov.covered(i, j))
        throw ValidationError("uncovered 1-entry " + entry_str(i, j));
}

void validate_fractional_covering(const BooleanMatrix& host, const FractionalCovering& c) {
  check_host_dims(host, c.host_rows, c.host_cols);
  if (host.rows() * host.cols() > (std::size_t{1} << 24))
    throw BudgetError("fractional covering validation limited to 2^24 host entries");
  for (const WeightedRectangle& wr : c.rectangles) {
    validate_rectangle(host, wr.rect);
    if (wr.weight < 0 || wr.weight > 1)
      throw ValidationError("rectangle weight " + rational_to_string(wr.weight) +
                            " outside [0,1]");
  }
  std::vector<Rat> total(host.rows() * host.cols());
  for (const WeightedRectangle& wr : c.rectangles)
    for (std::uint32_t i : wr.rect.rows)
      for (std::uint32_t j : wr.rect.cols) total[i * host.cols() + j] += wr.weight;
  for (std::size_t i = 0; i < host.rows(); ++i)
    for (std::size_t j = 0; j < host.cols(); ++j)
      if (host.get(i, j) && total[i * host.cols() + j] < 1)
        throw ValidationError("1-entry " + entry_str(i, j) + " has total weight " +
                              rational_to_string(total[i * host.cols() + j]) + " < 1");
}

std::size_t covering_cost(const BooleanMatrix& host, const Covering& c) {
  validate_covering(host, c);
  std::size_t cost = 0;
  for (const Rectangle& r : c.rectangles) cost += rectangle_cost(r);
  return cost;
}

Rat fractional_cost(const BooleanMatrix& host, const FractionalCovering& c) {
  validate_fractional_covering(host, c);
  Rat cost = 0;
  for (const WeightedRectangle& wr : c.rectangles)
    cost += wr.weight * Rat(rectangle_cost(wr.rect));
  return cost;
}

bool is_partition(const BooleanMatrix& host, const Covering& c) {
  validate_covering(host, c);
  CoverageMap cov(host.rows(), host.cols());
  for (const Rectangle& r : c.rectangles)
    for (std::uint32_t i : r.rows)
      for (std::uint32_t j : r.cols) cov.mark(i, j);
  for (std::size_t i = 0; i < host.rows(); ++i)
    for (std::size_t j = 0; j < host.cols(); ++j)
      if (cov.duplicated(i, j)) return false;
  return true;
}

namespace {

struct ConceptWalker {
  const BooleanMatrix& a;
  std::size_t m, words;
  std::vector<std::uint64_t> full_cols;

  explicit ConceptWalker(const BooleanMatrix& mat) : a(mat), m(mat.rows()), words(mat.words_per_row()) {
    full_cols.assign(words, ~std::uint64_t{0});
    if (a.cols() % 64) full_cols[words - 1] = (std::uint64_t{1} << (a.cols() % 64)) - 1;
    if (words == 0) full_cols.clear();
  }

  // intersection of the supports of the rows in rmask (all columns for rmask == 0)
  std::vector<std::uint64_t> intent(std::uint32_t rmask) const {
    std::vector<std::uint64_t> c = full_cols;
    for (std::size_t i = 0; i < m; ++i)
      if (rmask >> i & 1)
        for (std::size_t w = 0; w < words; ++w) c[w] &= a.row_words(i)[w];
    return c;
  }

  std::uint32_t extent(const std::vector<std::uint64_t>& colset) const {
    std::uint32_t rmask = 0;
    for (std::size_t i = 0; i < m; ++i) {
      bool contains = true;
      for (std::size_t w = 0; w < words && contains; ++w)
        if ((a.row_words(i)[w] & colset[w]) != colset[w]) contains = false;
      if (contains) rmask |= std::uint32_t{1} << i;
    }
    return rmask;
  }

  std::uint32_t closure(std::uint32_t rmask) const { return extent(intent(rmask)); }
};

bool colset_empty(const std::vector<std::uint64_t>& c) {
  for (std::uint64_t w : c)
    if (w) return false;
  return true;
}

std::vector<std::uint32_t> mask_to_list(std::uint64_t mask) {
  std::vector<std::uint32_t> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

std::vector<std::uint32_t> colset_to_list(const std::vector<std::uint64_t>& c) {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < c.size(); ++w) {
    std::uint64_t bits = c[w];
    while (bits) {
      out.push_back(64 * w + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

}  // namespace

std::vector<Rectangle> enumerate_maximal_rectangles(const BooleanMatrix& a, std::size_t max_rects) {
  if (a.rows() > 24)
    throw BudgetError("maximal rectangle enumeration limited to hosts with 24 rows");
  if (a.ones_count() == 0) throw ValidationError("host has no 1-entries");
  ConceptWalker walker(a);
  std::size_t m = a.rows();
  std::vector<Rectangle> out;

  // walk all closed row sets in lectic order, keep those forming a rectangle
  std::uint32_t cur = walker.closure(0);
  while (true) {
    if (cur) {
      auto cols = walker.intent(cur);
      if (!colset_empty(cols)) {
        out.push_back({mask_to_list(cur), colset_to_list(cols)});
        if (out.size() > max_rects)
          throw BudgetError("maximal rectangle count exceeds budget " + std::to_string(max_rects));
      }
    }
    bool advanced = false;
    for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
      std::uint32_t bit = std::uint32_t{1} << i;
      if (cur & bit) {
        cur &= ~bit;
      } else {
        std::uint32_t next = walker.closure(cur | bit);
        if ((next & ~cur & (bit - 1)) == 0) {
          cur = next;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rectangle> enumerate_all_rectangles(const BooleanMatrix& a, std::size_t max_rects) {
  if (a.cols() > 64)
    throw BudgetError("all-rectangle enumeration limited to hosts with 64 columns");
  auto maximal = enumerate_maximal_rectangles(a, max_rects);
  std::set<std::pair<std::uint32_t, std::uint64_t>> seen;
  for (const Rectangle& r : maximal) {
    std::uint32_t rmask = 0;
    std::uint64_t cmask = 0;
    for (std::uint32_t i : r.rows) rmask |= std::uint32_t{1} << i;
    for (std::uint32_t j : r.cols) cmask |= std::uint64_t{1} << j;
    // every nonempty (row subset, column subset) pair is a rectangle
    for (std::uint32_t rs = rmask;; rs = (rs - 1) & rmask) {
      if (rs) {
        for (std::uint64_t cs = cmask;; cs = (cs - 1) & cmask) {
          if (cs) {
            seen.emplace(rs, cs);
            if (seen.size() > max_rects)
              throw BudgetError("rectangle count exceeds budget " + std::to_string(max_rects));
          }
          if (cs == 0) break;
        }
      }
      if (rs == 0) break;
    }
  }
  std::vector<Rectangle> out;
  out.reserve(seen.size());
  for (const auto& [rs, cs] : seen) out.push_back({mask_to_list(rs), mask_to_list(cs)});
  std::sort(out.begin(), out.end());
  return out;
}

std::string write_cov(const FractionalCovering& c) {
  std::ostringstream out;
  out << c.host_rows << ' ' << c.host_cols << ' ' << c.rectangles.size() << '\n';
  for (const WeightedRectangle& wr : c.rectangles) {
    out << 'R';
    for (std::size_t p = 0; p < wr.rect.rows.size(); ++p)
      out << (p ? "," : " ") << wr.rect.rows[p];
    out << " C";
    for (std::size_t p = 0; p < wr.rect.cols.size(); ++p)
      out << (p ? "," : " ") << wr.rect.cols[p];
    if (wr.weight != 1) out << " W " << rational_to_string(wr.weight);
    out << '\n';
  }
  return out.str();
}

std::string write_cov(const Covering& c) { return write_cov(to_fractional(c)); }

namespace {

std::vector<std::uint32_t> parse_index_list(const std::string& text, std::size_t lineno) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(tok, &used);
      if (used != tok.size() || tok.empty()) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw ValidationError("covering file line " + std::to_string(lineno) +
                            ": bad index list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

FractionalCovering read_cov(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ValidationError("covering file: missing header line");
  std::istringstream hs(header);
  FractionalCovering c;
  std::size_t t = 0;
  std::string extra;
  if (!(hs >> c.host_rows >> c.host_cols >> t) || (hs >> extra))
    throw ValidationError("covering file: header must be 'm n t', got '" + header + "'");
  for (std::size_t r = 0; r < t; ++r) {
    std::string line;
    std::size_t lineno = r + 2;
    if (!std::getline(in, line))
      throw ValidationError("covering file: missing rectangle line " + std::to_string(lineno));
    std::istringstream ls(line);
    std::string tag, rowtext, coltag, coltext;
    if (!(ls >> tag >> rowtext >> coltag >> coltext) || tag != "R" || coltag != "C")
      throw ValidationError("covering file line " + std::to_string(lineno) +
                            ": expected 'R rows C cols [W weight]'");
    WeightedRectangle wr;
    wr.rect.rows = parse_index_list(rowtext, lineno);
    wr.rect.cols = parse_index_list(coltext, lineno);
    for (const auto* list : {&wr.rect.rows, &wr.rect.cols})
      for (std::size_t p = 1; p < list->size(); ++p)
        if ((*list)[p] <= (*list)[p - 1])
          throw ValidationError("covering file line " + std::to_string(lineno) +
                                ": indices not strictly increasing");
    std::string wtag;
    if (ls >> wtag) {
      std::string wtext;
      if (wtag != "W" || !(ls >> wtext))
        throw ValidationError("covering file line " + std::to_string(lineno) +
                              ": trailing tokens after column list");
      wr.weight = parse_rational(wtext);
      if (ls >> wtag)
        throw ValidationError("covering file line " + std::to_string(lineno) +
                              ": trailing tokens after weight");
    }
    c.rectangles.push_back(std::move(wr));
  }
  return c;
}

FractionalCovering read_cov_string(const std::string& text) {
  std::istringstream in(text);
  return read_cov(in);
}

FractionalCovering load_cov(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open covering file " + path);
  return read_cov(in);
}

void save_cov(const FractionalCovering& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write covering file " + path);
  out << write_cov(c);
}

void save_cov(const Covering& c, const std::string& path) { save_cov(to_fractional(c), path); }

FractionalCovering to_fractional(const Covering& c) {
  FractionalCovering f;
  f.host_rows = c.host_rows;
  f.host_cols = c.host_cols;
  for (const Rectangle& r : c.rectangles) f.rectangles.push_back({r, Rat(1)});
  return f;
}

Covering to_integral(const FractionalCovering& c) {
  Covering out;
  out.host_rows = c.host_rows;
  out.host_cols = c.host_cols;
  for (const WeightedRectangle& wr : c.rectangles) {
    if (wr.weight != 1)
      throw ValidationError("covering has fractional weight " + rational_to_string(wr.weight));
    out.rectangles.push_back(wr.rect);
  }
  return out;
}

}  // namespace rectcover
