#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rectcover/common.hpp"

namespace rectcover {

// Dense bit-packed 0/1 matrix, 0-based indices, rows padded to 64-bit words.
class BooleanMatrix {
 public:
  BooleanMatrix() = default;
  BooleanMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool value);

  std::size_t ones_count() const;
  BooleanMatrix transposed() const;
  bool operator==(const BooleanMatrix& other) const;
  bool operator!=(const BooleanMatrix& other) const { return !(*this == other); }

  // Raw row access for bulk set operations; tail bits past cols() are zero.
  std::size_t words_per_row() const { return words_; }
  const std::uint64_t* row_words(std::size_t i) const { return bits_.data() + i * words_; }
  std::uint64_t* row_words(std::size_t i) { return bits_.data() + i * words_; }

 private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// n x n, entry (i,j) = 1 iff i < j.
BooleanMatrix triangular(std::size_t n);

BooleanMatrix all_ones(std::size_t m, std::size_t n);

// 2^k x 2^k, entry (i,j) = 1 iff i AND j == 0 (bitwise).
BooleanMatrix disjointness(unsigned k);

// Rows are the x-subsets of {1..k}, columns the y-subsets, both in
// lexicographic order of their sorted member lists; entry 1 iff disjoint.
BooleanMatrix kneser_submatrix(unsigned k, unsigned x, unsigned y);

// Entry ((i1,i2),(j1,j2)) = a(i1,j1) * b(i2,j2); row index i1*b.rows()+i2.
BooleanMatrix kronecker(const BooleanMatrix& a, const BooleanMatrix& b);

// Subsets of {1..k} are handled as sorted member lists with 1-based elements.
struct SubsetIndex {
  unsigned k = 0;
  std::vector<unsigned> members;
};

// All x-subsets of {1..k} in lexicographic order of sorted member lists.
std::vector<std::vector<unsigned>> subsets_of_size(unsigned k, unsigned x);
std::size_t subset_lex_rank(const std::vector<unsigned>& members, unsigned k);
bool subsets_disjoint(const std::vector<unsigned>& a, const std::vector<unsigned>& b);
// Element e maps to bit e-1.
std::uint64_t subset_to_bits(const std::vector<unsigned>& members);
std::vector<unsigned> bits_to_subset(std::uint64_t bits);

// Text format: header "m n", then m lines of exactly n characters '0'/'1'.
std::string write_bm(const BooleanMatrix& a);
BooleanMatrix read_bm(std::istream& in);
BooleanMatrix read_bm_string(const std::string& text);
BooleanMatrix load_bm(const std::string& path);
void save_bm(const BooleanMatrix& a, const std::string& path);

}  // namespace rectcover
