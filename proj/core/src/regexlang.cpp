#include "rectcover/regexlang.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rectcover/common.hpp"
#include "rectcover/greedy.hpp"

namespace rectcover {

namespace {

void check_letters(const std::vector<std::uint32_t>& letters, std::size_t size,
                   const std::string& what) {
  if (letters.empty()) throw ValidationError(what + " is empty");
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] >= size)
      throw ValidationError(what + " letter " + std::to_string(letters[i]) + " out of range");
    if (i && letters[i - 1] >= letters[i])
      throw ValidationError(what + " letters must be strictly increasing");
  }
}

void sort_terms(Regex2& r) {
  std::sort(r.terms.begin(), r.terms.end(), [](const Regex2::Term& s, const Regex2::Term& t) {
    if (s.row_letters.front() != t.row_letters.front())
      return s.row_letters.front() < t.row_letters.front();
    if (s.col_letters.front() != t.col_letters.front())
      return s.col_letters.front() < t.col_letters.front();
    if (s.row_letters != t.row_letters) return s.row_letters < t.row_letters;
    return s.col_letters < t.col_letters;
  });
}

std::string factor_text(const std::vector<std::uint32_t>& letters) {
  if (letters.size() == 1) return "a" + std::to_string(letters[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += '+';
    out += "a" + std::to_string(letters[i]);
  }
  return out + ")";
}

// Terms for L_{A,B} = {a_i a_j : A <= i < j <= B}, appended to out.
void split_range(std::uint32_t a, std::uint32_t b, std::vector<Regex2::Term>& out) {
  if (a >= b) return;
  std::uint32_t c = (a + b) / 2;
  split_range(a, c, out);
  split_range(c + 1, b, out);
  Regex2::Term across;
  for (std::uint32_t i = a; i <= c; ++i) across.row_letters.push_back(i);
  for (std::uint32_t j = c + 1; j <= b; ++j) across.col_letters.push_back(j);
  out.push_back(std::move(across));
}

}  // namespace

void validate_language(const TwoLetterLanguage& l) {
  if (l.sigma_size == 0 || l.delta_size == 0)
    throw ValidationError("alphabets must be nonempty");
  if (l.words.empty()) throw ValidationError("language has no words");
  for (std::size_t k = 0; k < l.words.size(); ++k) {
    const auto& [i, j] = l.words[k];
    if (i >= l.sigma_size || j >= l.delta_size)
      throw ValidationError("word (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of range");
    if (k && !(l.words[k - 1] < l.words[k]))
      throw ValidationError("words must be strictly increasing");
  }
}

TwoLetterLanguage language_ln(std::size_t n) {
  if (n < 2) throw ValidationError("L_n needs n >= 2");
  TwoLetterLanguage l;
  l.sigma_size = l.delta_size = n;
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) l.words.push_back({i, j});
  return l;
}

BooleanMatrix characteristic_matrix(const TwoLetterLanguage& l) {
  validate_language(l);
  BooleanMatrix a(l.sigma_size, l.delta_size);
  for (const auto& [i, j] : l.words) a.set(i, j, true);
  return a;
}

TwoLetterLanguage matrix_language(const BooleanMatrix& a) {
  TwoLetterLanguage l;
  l.sigma_size = a.rows();
  l.delta_size = a.cols();
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    for (std::uint32_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j)) l.words.push_back({i, j});
  if (l.words.empty()) throw ValidationError("matrix has no 1-entries");
  return l;
}

void validate_regex(const Regex2& r) {
  if (r.sigma_size == 0 || r.delta_size == 0)
    throw ValidationError("alphabets must be nonempty");
  if (r.terms.empty()) throw ValidationError("expression has no terms");
  for (const auto& t : r.terms) {
    check_letters(t.row_letters, r.sigma_size, "first factor");
    check_letters(t.col_letters, r.delta_size, "second factor");
  }
}

std::size_t alphabetic_length(const Regex2& r) {
  std::size_t total = 0;
  for (const auto& t : r.terms) total += t.row_letters.size() + t.col_letters.size();
  return total;
}

TwoLetterLanguage denoted_language(const Regex2& r) {
  validate_regex(r);
  TwoLetterLanguage l;
  l.sigma_size = r.sigma_size;
  l.delta_size = r.delta_size;
  for (const auto& t : r.terms)
    for (auto i : t.row_letters)
      for (auto j : t.col_letters) l.words.push_back({i, j});
  std::sort(l.words.begin(), l.words.end());
  l.words.erase(std::unique(l.words.begin(), l.words.end()), l.words.end());
  return l;
}

Regex2 covering_to_regex(const Covering& c) {
  Regex2 r;
  r.sigma_size = c.host_rows;
  r.delta_size = c.host_cols;
  for (const auto& rect : c.rectangles) r.terms.push_back({rect.rows, rect.cols});
  sort_terms(r);
  validate_regex(r);
  return r;
}

std::string regex_text(const Regex2& r) {
  validate_regex(r);
  std::string out;
  for (std::size_t k = 0; k < r.terms.size(); ++k) {
    if (k) out += " + ";
    const auto& t = r.terms[k];
    out += factor_text(t.row_letters);
    if (t.row_letters.size() == 1 && t.col_letters.size() == 1) out += ' ';
    out += factor_text(t.col_letters);
  }
  return out;
}

RegexLength optimal_regex_length(const TwoLetterLanguage& l, std::size_t max_nodes,
                                 std::size_t max_rects) {
  BooleanMatrix a = characteristic_matrix(l);
  try {
    ExactCover best = exact_or2(a, max_nodes, max_rects);
    return {best.cost, best.optimal};
  } catch (const BudgetError&) {
    Covering c = greedy_matrix_cover(a, true, max_rects);
    return {covering_cost(a, c), false};
  }
}

Regex2 divide_and_conquer_regex(std::size_t n) {
  if (n < 2) throw ValidationError("L_n needs n >= 2");
  Regex2 r;
  r.sigma_size = r.delta_size = n;
  split_range(0, static_cast<std::uint32_t>(n - 1), r.terms);
  sort_terms(r);
  return r;
}

NfaSizes nfa_sizes(const TwoLetterLanguage& l, std::size_t max_nodes, std::size_t max_rects) {
  RegexLength len = optimal_regex_length(l, max_nodes, max_rects);
  NfaSizes sizes;
  sizes.eps_free = len.length;
  sizes.eps_free_exact = len.exact;
  sizes.eps_upper = len.length + l.sigma_size + l.delta_size;
  return sizes;
}

std::string write_l2(const TwoLetterLanguage& l) {
  validate_language(l);
  std::ostringstream out;
  out << l.sigma_size << ' ' << l.delta_size << '\n';
  for (const auto& [i, j] : l.words) out << i << ' ' << j << '\n';
  return out.str();
}

TwoLetterLanguage read_l2(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ValidationError("language file: missing header line");
  std::istringstream hs(header);
  TwoLetterLanguage l;
  std::string extra;
  if (!(hs >> l.sigma_size >> l.delta_size) || (hs >> extra))
    throw ValidationError("language file: header must be 'm n', got '" + header + "'");
  std::string line;
  std::size_t at = 1;
  while (std::getline(in, line)) {
    ++at;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint32_t i = 0, j = 0;
    if (!(ls >> i >> j) || (ls >> extra))
      throw ValidationError("language file: line " + std::to_string(at) + " must be '<i> <j>'");
    l.words.push_back({i, j});
  }
  std::sort(l.words.begin(), l.words.end());
  l.words.erase(std::unique(l.words.begin(), l.words.end()), l.words.end());
  validate_language(l);
  return l;
}

TwoLetterLanguage read_l2_string(const std::string& text) {
  std::istringstream in(text);
  return read_l2(in);
}

TwoLetterLanguage load_l2(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open language file " + path);
  return read_l2(in);
}

void save_l2(const TwoLetterLanguage& l, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open language file " + path);
  out << write_l2(l);
}

}  // namespace rectcover
