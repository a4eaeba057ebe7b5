#include "rectcover/boolmat.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "rectcover/arith.hpp"

namespace rectcover {

namespace {

constexpr std::size_t kMaxDim = std::size_t{1} << 20;

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows > kMaxDim || cols > kMaxDim)
    throw BudgetError("matrix dimensions exceed 2^20: " + std::to_string(rows) + " x " +
                      std::to_string(cols));
}

}  // namespace

BooleanMatrix::BooleanMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64) {
  check_dims(rows, cols);
  bits_.assign(rows_ * words_, 0);
}

bool BooleanMatrix::get(std::size_t i, std::size_t j) const {
  return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
}

void BooleanMatrix::set(std::size_t i, std::size_t j, bool value) {
  std::uint64_t& w = bits_[i * words_ + j / 64];
  std::uint64_t mask = std::uint64_t{1} << (j % 64);
  if (value)
    w |= mask;
  else
    w &= ~mask;
}

std::size_t BooleanMatrix::ones_count() const {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += std::popcount(w);
  return total;
}

BooleanMatrix BooleanMatrix::transposed() const {
  BooleanMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) t.set(j, i, true);
  return t;
}

bool BooleanMatrix::operator==(const BooleanMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
}

BooleanMatrix triangular(std::size_t n) {
  BooleanMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, true);
  return a;
}

BooleanMatrix all_ones(std::size_t m, std::size_t n) {
  BooleanMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, true);
  return a;
}

BooleanMatrix disjointness(unsigned k) {
  if (k > 20) throw BudgetError("disjointness order " + std::to_string(k) + " exceeds 20");
  std::size_t n = std::size_t{1} << k;
  BooleanMatrix a(n, n);
  std::uint64_t full = n - 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    // 1-entries of row i are exactly the submasks of the complement of i.
    std::uint64_t free = full & ~i;
    std::uint64_t j = free;
    while (true) {
      a.set(i, j, true);
      if (j == 0) break;
      j = (j - 1) & free;
    }
  }
  return a;
}

BooleanMatrix kneser_submatrix(unsigned k, unsigned x, unsigned y) {
  if (x > k || y > k)
    throw ValidationError("kneser subset size exceeds ground set " + std::to_string(k));
  Int nr = binomial(k, x), nc = binomial(k, y);
  if (nr > kMaxDim || nc > kMaxDim)
    throw BudgetError("kneser host dimensions exceed 2^20");
  auto row_sets = subsets_of_size(k, x);
  auto col_sets = subsets_of_size(k, y);
  std::vector<std::uint64_t> row_bits(row_sets.size()), col_bits(col_sets.size());
  for (std::size_t i = 0; i < row_sets.size(); ++i) row_bits[i] = subset_to_bits(row_sets[i]);
  for (std::size_t j = 0; j < col_sets.size(); ++j) col_bits[j] = subset_to_bits(col_sets[j]);
  BooleanMatrix a(row_sets.size(), col_sets.size());
  for (std::size_t i = 0; i < row_sets.size(); ++i)
    for (std::size_t j = 0; j < col_sets.size(); ++j)
      if ((row_bits[i] & col_bits[j]) == 0) a.set(i, j, true);
  return a;
}

BooleanMatrix kronecker(const BooleanMatrix& a, const BooleanMatrix& b) {
  check_dims(a.rows() * b.rows(), a.cols() * b.cols());
  BooleanMatrix q(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      if (!a.get(i1, j1)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          if (b.get(i2, j2)) q.set(i1 * b.rows() + i2, j1 * b.cols() + j2, true);
    }
  return q;
}

std::vector<std::vector<unsigned>> subsets_of_size(unsigned k, unsigned x) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(x);
  for (unsigned i = 0; i < x; ++i) cur[i] = i + 1;
  if (x > k) return out;
  while (true) {
    out.push_back(cur);
    if (x == 0) break;
    // advance to the next sorted member list in lexicographic order
    int p = static_cast<int>(x) - 1;
    while (p >= 0 && cur[p] == k - (x - 1 - p)) --p;
    if (p < 0) break;
    ++cur[p];
    for (unsigned q = p + 1; q < x; ++q) cur[q] = cur[q - 1] + 1;
  }
  return out;
}

std::size_t subset_lex_rank(const std::vector<unsigned>& members, unsigned k) {
  // count sorted member lists that precede `members` lexicographically
  Int rank = 0;
  unsigned x = members.size();
  unsigned prev = 0;
  for (unsigned p = 0; p < x; ++p) {
    for (unsigned v = prev + 1; v < members[p]; ++v)
      rank += binomial(k - v, x - 1 - p);
    prev = members[p];
  }
  return static_cast<std::size_t>(rank);
}

bool subsets_disjoint(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  return (subset_to_bits(a) & subset_to_bits(b)) == 0;
}

std::uint64_t subset_to_bits(const std::vector<unsigned>& members) {
  std::uint64_t bits = 0;
  for (unsigned e : members) bits |= std::uint64_t{1} << (e - 1);
  return bits;
}

std::vector<unsigned> bits_to_subset(std::uint64_t bits) {
  std::vector<unsigned> members;
  for (unsigned e = 0; bits; ++e, bits >>= 1)
    if (bits & 1) members.push_back(e + 1);
  return members;
}

std::string write_bm(const BooleanMatrix& a) {
  std::ostringstream out;
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out << (a.get(i, j) ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

BooleanMatrix read_bm(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ValidationError("matrix file: missing header line");
  std::istringstream hs(header);
  std::size_t m = 0, n = 0;
  std::string extra;
  if (!(hs >> m >> n) || (hs >> extra))
    throw ValidationError("matrix file: header must be 'm n', got '" + header + "'");
  check_dims(m, n);
  BooleanMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("matrix file: missing row " + std::to_string(i));
    if (line.size() != n)
      throw ValidationError("matrix file: row " + std::to_string(i) + " has length " +
                            std::to_string(line.size()) + ", expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (line[j] == '1')
        a.set(i, j, true);
      else if (line[j] != '0')
        throw ValidationError("matrix file: row " + std::to_string(i) + " column " +
                              std::to_string(j) + " is not '0' or '1'");
    }
  }
  return a;
}

BooleanMatrix read_bm_string(const std::string& text) {
  std::istringstream in(text);
  return read_bm(in);
}

BooleanMatrix load_bm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file " + path);
  return read_bm(in);
}

void save_bm(const BooleanMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write matrix file " + path);
  out << write_bm(a);
}

}  // namespace rectcover
