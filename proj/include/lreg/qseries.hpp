#pragma once

// Truncated formal power series in q over Z or Z/2^k.
//
// A Series carries its truncation T explicitly: coefficients 0..T are known,
// everything above T is unknown. Binary operations truncate to the smaller
// of the two inputs; nothing is ever silently extended.
//
// Storage depends on the ring: arbitrary-precision integers for the exact
// ring, one machine word per coefficient for Z/2^k with k >= 2, and a packed
// bit vector for Z/2. The representation is not observable through the API.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lreg/numeric.hpp"

namespace lreg {

class Ring {
 public:
  Ring() = default;  // exact

  static Ring exact() { return Ring(0); }
  static Ring mod_pow2(int bits);

  bool is_exact() const { return bits_ == 0; }
  bool is_mod2() const { return bits_ == 1; }
  // k for Z/2^k, 0 for the exact ring.
  int bits() const { return bits_; }
  std::uint64_t mask() const;
  // 2^k, or 0 for the exact ring.
  BigInt modulus() const;
  // "exact" or "mod2^k".
  std::string name() const;
  // Accepts "exact", "mod2^k", "2^k" and plain powers of two ("8").
  static Ring parse(std::string_view text);

  // True when residues mod u are well defined on this ring.
  bool supports_modulus(const BigInt& u) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  explicit Ring(int bits) : bits_(bits) {}
  int bits_ = 0;
};

// r(n) = a n^2 + b n + c with a > 0.
struct QuadraticForm {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t at(std::int64_t n) const { return a * n * n + b * n + c; }
};

enum class ThetaRange { AllIntegers, PositiveOnly };

struct SparseTerm {
  std::int64_t exponent = 0;
  std::int64_t coeff = 0;
};
// Ascending exponents, nonzero coefficients.
using SparseSeries = std::vector<SparseTerm>;

// f_delta = prod_{j>=1} (1 - q^{delta j}) via the pentagonal number theorem,
// all terms with exponent <= trunc.
SparseSeries pentagonal_terms(std::int64_t delta, std::int64_t trunc);

class Series {
 public:
  Series(Ring ring, std::int64_t trunc);  // zero series

  static Series one(Ring ring, std::int64_t trunc);
  static Series monomial(Ring ring, std::int64_t trunc, std::int64_t exponent,
                         const BigInt& coeff = 1);
  static Series from_coeffs(Ring ring, const std::vector<BigInt>& coeffs);
  static Series from_sparse(Ring ring, const SparseSeries& terms, std::int64_t trunc);

  const Ring& ring() const { return ring_; }
  std::int64_t trunc() const { return trunc_; }

  BigInt coeff(std::int64_t n) const;
  // Coefficient as a residue word; mod-2^k rings only.
  std::uint64_t residue(std::int64_t n) const;
  bool coeff_is_zero(std::int64_t n) const;
  std::vector<BigInt> coeffs() const;
  std::int64_t count_nonzero() const;

  Series truncated(std::int64_t trunc) const;
  // Reduction exact -> Z/2^k or Z/2^k -> Z/2^j (j <= k).
  Series reduced(Ring target) const;

  struct ExactData {
    std::vector<BigInt> c;
  };
  struct WordData {
    std::vector<std::uint64_t> c;
  };
  struct BitData {
    std::vector<std::uint64_t> w;
  };
  using Storage = std::variant<ExactData, WordData, BitData>;

  const Storage& storage() const { return data_; }
  Series(Ring ring, std::int64_t trunc, Storage data);

 private:
  void check_index(std::int64_t n) const;

  Ring ring_;
  std::int64_t trunc_ = 0;
  Storage data_;
};

Series add(const Series& x, const Series& y);
Series sub(const Series& x, const Series& y);
Series negate(const Series& x);
Series scale(const Series& x, const BigInt& s);
// Multiplication by q^j; the result is known up to x.trunc() + j.
Series shift(const Series& x, std::int64_t j);

Series mul(const Series& x, const Series& y);
Series inverse(const Series& x);
Series divide(const Series& x, const Series& y);
Series mul_sparse(const Series& x, const SparseSeries& s);
Series div_sparse(const Series& x, const SparseSeries& s);

// (q^delta; q^delta)_inf^r truncated at trunc (the q^{delta r/24} prefactor
// of eta(delta z)^r is not included).
Series eta_factor(std::int64_t delta, std::int64_t r, std::int64_t trunc, Ring ring);
// prod_delta f_delta^{r_delta}.
Series eta_product(const std::map<std::int64_t, std::int64_t>& exponents, std::int64_t trunc,
                   Ring ring);

// Coefficient n of the result is coefficient d*n + rclass of x.
Series dissect(const Series& x, std::int64_t d, std::int64_t rclass);
// q -> q^d. The result is truncated at x.trunc()*d, or at cap when 0 <= cap < that.
Series inflate(const Series& x, std::int64_t d, std::int64_t cap = -1);

Series theta_series(const QuadraticForm& form, ThetaRange range, std::int64_t trunc, Ring ring);

struct Comparison {
  bool equal = true;
  std::optional<std::int64_t> first_mismatch;
  std::int64_t compared_to = 0;
  bool trunc_differs = false;
};
Comparison compare(const Series& x, const Series& y);

inline Series operator+(const Series& x, const Series& y) { return add(x, y); }
inline Series operator-(const Series& x, const Series& y) { return sub(x, y); }
inline Series operator*(const Series& x, const Series& y) { return mul(x, y); }

nlohmann::json to_json(const Series& x);
Series series_from_json(const nlohmann::json& j);

}  // namespace lreg
