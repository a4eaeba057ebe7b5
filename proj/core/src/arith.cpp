#include "rectcover/arith.hpp"

#include "rectcover/common.hpp"

namespace rectcover {

Int rat_floor(const Rat& x) {
  Int n = numerator(x), d = denominator(x);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

Int rat_ceil(const Rat& x) {
  Int n = numerator(x), d = denominator(x);
  Int q = n / d;
  if (n > 0 && q * d != n) ++q;
  return q;
}

Rat parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int p(text.substr(0, slash));
    Int q(text.substr(slash + 1));
    if (q == 0) throw ValidationError("rational with zero denominator: " + text);
    return Rat(p, q);
  } catch (const std::runtime_error& e) {
    throw ValidationError("bad rational '" + text + "': " + e.what());
  }
}

std::string rational_to_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Int multinomial3(unsigned n, unsigned a, unsigned b, unsigned c) {
  if (a + b + c != n) throw ValidationError("multinomial parts do not sum to n");
  return binomial(n, a) * binomial(n - a, b);
}

}  // namespace rectcover
