#pragma once

// Modular-form metadata of eta quotients prod_{delta | N} eta(delta z)^{r_delta}.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lreg/numeric.hpp"

namespace lreg {

using ExponentMap = std::map<std::int64_t, std::int64_t>;

struct EtaQuotient {
  std::int64_t level = 1;
  ExponentMap exponents;

  // Validates: level >= 1, every key divides level, every exponent nonzero.
  static EtaQuotient make(std::int64_t level, ExponentMap exponents);
  Rational weight() const;
  nlohmann::json to_json() const;
};

// The quadratic character (D / .) with D = sign * prod p^e, e possibly negative.
struct Character {
  int sign = 1;
  std::map<std::int64_t, std::int64_t> primes;

  int at(std::int64_t n) const;
  // Divisible by p in the sense of the p-adic valuation being nonzero.
  bool involves(std::int64_t p) const;
  // "-3*17^3" style rendering.
  std::string to_string() const;
  nlohmann::json to_json() const;
};

struct ModularMeta {
  Rational weight;
  bool integral_weight = false;
  std::int64_t prefactor24 = 0;  // sum delta r_delta
  bool prefactor_ok = false;
  std::int64_t dual24 = 0;  // sum (N/delta) r_delta
  bool dual_ok = false;
  Character character;  // (-1)^weight * prod delta^{r_delta}

  bool all_conditions() const { return integral_weight && prefactor_ok && dual_ok; }
  nlohmann::json to_json() const;
};

ModularMeta check_modularity(const EtaQuotient& eq);

// Order of vanishing at a cusp c/d; depends on d only.
Rational cusp_order(const EtaQuotient& eq, std::int64_t d);

struct HolomorphyReport {
  bool holomorphic = true;
  Rational min_order;
  std::int64_t witness = 1;  // a divisor attaining min_order
  std::vector<std::pair<std::int64_t, Rational>> orders;

  nlohmann::json to_json() const;
};
HolomorphyReport is_holomorphic(const EtaQuotient& eq);

std::int64_t sturm_bound(std::int64_t weight, std::int64_t level, bool same_character);
std::int64_t index_gamma0(std::int64_t n);

struct CotronResult {
  bool lacunary = false;
  std::int64_t gcd = 0;
  BigInt p_power;
  bool divides = false;
  // Square of the threshold sqrt(sum beta s / sum r/alpha).
  Rational threshold_squared;
  bool threshold_ok = false;

  nlohmann::json to_json() const;
};
CotronResult cotron_criterion(const ExponentMap& numerator, const ExponentMap& denominator, std::int64_t p,
                              std::int64_t a);

int kronecker(const BigInt& a, const BigInt& n);

// Named quotients.
EtaQuotient g31();  // eta^4(z) eta^2(51z) eta(17z) / eta(3z), level 51
EtaQuotient g32();  // eta^4(17z) eta^2(3z) eta(z) / eta(51z), level 51
EtaQuotient b_quotient(int k);  // level 324, k >= 1
EtaQuotient f_quotient();  // eta^7(36z) / (eta(12z) eta^2(108z)), level 1296

}  // namespace lreg
