#include "lreg/numeric.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "lreg/error.hpp"

namespace lreg {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational q(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt floor(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw InvalidArgument("divisors: n must be positive");
  std::vector<std::int64_t> lo, hi;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      lo.push_back(d);
      if (d != n / d) hi.push_back(n / d);
    }
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

std::map<std::int64_t, int> factorize(std::int64_t n) {
  if (n < 1) throw InvalidArgument("factorize: n must be positive");
  std::map<std::int64_t, int> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

bool is_squarefree(std::int64_t n) {
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, g1 = mod_floor(a, m), x1 = 1;
  while (g1 != 0) {
    const std::int64_t q = g / g1;
    std::int64_t t = g - q * g1;
    g = g1;
    g1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw InvalidArgument("mod_inverse: not invertible");
  return mod_floor(x, m);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvalidArgument("integer overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InvalidArgument("integer overflow");
  return r;
}

namespace {

std::int64_t parse_int(std::string_view s, const std::string& context) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw InvalidArgument("malformed integer '" + std::string(s) + "' in '" + context + "'");
  }
  return v;
}

}  // namespace

std::map<std::int64_t, std::int64_t> parse_exponent_map(const std::string& text) {
  std::map<std::int64_t, std::int64_t> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgument("expected 'delta:exponent' items, got '" + std::string(item) + "'");
    }
    const std::int64_t delta = parse_int(item.substr(0, colon), text);
    const std::int64_t r = parse_int(item.substr(colon + 1), text);
    if (delta < 1) throw InvalidArgument("delta must be positive in '" + text + "'");
    out[delta] += r;
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_exponent_map(const std::map<std::int64_t, std::int64_t>& m) {
  std::string s;
  for (const auto& [d, r] : m) {
    if (!s.empty()) s += ',';
    s += std::to_string(d) + ":" + std::to_string(r);
  }
  return s;
}

}  // namespace lreg
