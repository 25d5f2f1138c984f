#pragma once

// Test-only reference computations. Nothing here calls into the library's
// series kernels.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// prod_{j>=1} (1 - q^{delta j}) by direct polynomial multiplication.
inline std::vector<mpz_class> naive_eta(std::int64_t delta, std::int64_t trunc) {
  std::vector<mpz_class> c(trunc + 1);
  c[0] = 1;
  for (std::int64_t j = delta; j <= trunc; j += delta) {
    for (std::int64_t n = trunc; n >= j; --n) c[n] -= c[n - j];
  }
  return c;
}

// Number of partitions of n into parts not divisible by ell (ell = 0: all
// partitions), by the standard coin-change dynamic programme.
inline std::vector<mpz_class> partition_dp(std::int64_t ell, std::int64_t trunc) {
  std::vector<mpz_class> c(trunc + 1);
  c[0] = 1;
  for (std::int64_t part = 1; part <= trunc; ++part) {
    if (ell != 0 && part % ell == 0) continue;
    for (std::int64_t n = part; n <= trunc; ++n) c[n] += c[n - part];
  }
  return c;
}

inline std::vector<mpz_class> naive_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  const std::size_t t = std::min(a.size(), b.size());
  std::vector<mpz_class> c(t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; i + j < t; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

inline std::vector<mpz_class> random_coeffs(std::mt19937_64& rng, std::size_t n, long lo, long hi,
                                            double density = 1.0) {
  std::uniform_int_distribution<long> dist(lo, hi);
  std::bernoulli_distribution keep(density);
  std::vector<mpz_class> c(n);
  for (auto& v : c) v = keep(rng) ? dist(rng) : 0;
  return c;
}

}  // namespace oracle

namespace oracle {

// Power-series inverse by the schoolbook recurrence; c[0] must be +-1.
inline std::vector<mpz_class> naive_inverse(const std::vector<mpz_class>& a) {
  std::vector<mpz_class> b(a.size());
  b[0] = a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    mpz_class s = 0;
    for (std::size_t j = 1; j <= n; ++j) s += a[j] * b[n - j];
    b[n] = -s * a[0];
  }
  return b;
}

// prod f_delta^{r_delta} from naive products and inverses.
inline std::vector<mpz_class> naive_eta_quotient(const std::vector<std::pair<long, long>>& exps, long trunc) {
  std::vector<mpz_class> acc(trunc + 1);
  acc[0] = 1;
  for (auto [d, r] : exps) {
    auto f = naive_eta(d, trunc);
    if (r < 0) f = naive_inverse(f);
    for (long i = 0; i < (r < 0 ? -r : r); ++i) acc = naive_mul(acc, f);
  }
  return acc;
}

}  // namespace oracle
