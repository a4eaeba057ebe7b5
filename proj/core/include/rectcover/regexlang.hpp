#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rectcover/boolmat.hpp"
#include "rectcover/covers.hpp"
#include "rectcover/exact.hpp"

namespace rectcover {

// Finite language of two-letter words a_i b_j: first letters range over an
// alphabet of size sigma_size, second letters over one of size delta_size.
// Words are kept sorted and unique.
struct TwoLetterLanguage {
  std::size_t sigma_size = 0, delta_size = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> words;
};

// Nonempty, all indices in range, words strictly increasing.
void validate_language(const TwoLetterLanguage& l);

// L_n: words a_i a_j with i < j over a single alphabet of size n >= 2.
TwoLetterLanguage language_ln(std::size_t n);

// m x n matrix with a 1 at (i, j) exactly when a_i b_j is a word.  Rows are
// first letters, columns second letters.
BooleanMatrix characteristic_matrix(const TwoLetterLanguage& l);

// Inverse of characteristic_matrix; the matrix must have at least one 1.
TwoLetterLanguage matrix_language(const BooleanMatrix& a);

// Union-of-products expression R_1 C_1 + ... + R_t C_t.  Every regular
// expression for a two-letter language can be brought into this form without
// increasing its alphabetic length, so nothing more general is modeled here.
// Terms are kept sorted by (min row letter, min col letter), then by their
// letter lists.
struct Regex2 {
  struct Term {
    std::vector<std::uint32_t> row_letters, col_letters;
  };
  std::size_t sigma_size = 0, delta_size = 0;
  std::vector<Term> terms;
};

// At least one term, factors nonempty and strictly increasing, in range.
void validate_regex(const Regex2& r);

// Number of letter occurrences: sum of |R_i| + |C_i| over the terms.
std::size_t alphabetic_length(const Regex2& r);

// The language the expression denotes: the union of the R_i x C_i.
TwoLetterLanguage denoted_language(const Regex2& r);

// One term per rectangle.  The result denotes the covering's host language
// and its alphabetic length equals the covering's cost.
Regex2 covering_to_regex(const Covering& c);

// Renders to the surface syntax: letters "a<index>", unions "+", factors
// parenthesized unless a single letter, a space only between two single
// letters.  Example: "a0 a1 + (a0+a1)(a2+a3) + a2 a3".
std::string regex_text(const Regex2& r);

// Smallest alphabetic length of any expression for the language, computed by
// the exact covering search on the characteristic matrix.  If the node budget
// runs out, length is the best upper bound found; if the rectangle budget
// stops the search before it starts, the greedy covering cost stands in.
// Either way exact is false.
struct RegexLength {
  std::size_t length = 0;
  bool exact = false;
};
RegexLength optimal_regex_length(const TwoLetterLanguage& l,
                                 std::size_t max_nodes = kDefaultNodeBudget,
                                 std::size_t max_rects = kDefaultMaxRectangles);

// Divide-and-conquer expression for L_n, n >= 2: split the letter range in
// half, take all pairs across the split as one product, recurse on the two
// halves.  Its alphabetic length obeys t(2n) = 2 t(n) + 2n and
// t(2n+1) = t(n+1) + t(n) + 2n + 1, which solves to the triangular covering
// cost s(n), and its terms partition the triangular matrix.
Regex2 divide_and_conquer_regex(std::size_t n);

// Automaton size accounting.  eps_free is the size of the smallest
// epsilon-free NFA for the language, which equals the optimal alphabetic
// length (exact mirrors the length flag).  eps_upper bounds the size of the
// smallest NFA with epsilon transitions by the best known network size plus
// the two alphabet sizes; it is an upper bound regardless of the flag.
struct NfaSizes {
  std::size_t eps_free = 0;
  bool eps_free_exact = false;
  std::size_t eps_upper = 0;
};
NfaSizes nfa_sizes(const TwoLetterLanguage& l, std::size_t max_nodes = kDefaultNodeBudget,
                   std::size_t max_rects = kDefaultMaxRectangles);

// Language file format ".l2": header "m n", then one "<i> <j>" line per word.
std::string write_l2(const TwoLetterLanguage& l);
TwoLetterLanguage read_l2(std::istream& in);
TwoLetterLanguage read_l2_string(const std::string& text);
TwoLetterLanguage load_l2(const std::string& path);
void save_l2(const TwoLetterLanguage& l, const std::string& path);

}  // namespace rectcover
