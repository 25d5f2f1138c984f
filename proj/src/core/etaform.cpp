#include "lreg/etaform.hpp"

#include <numeric>

#include "lreg/error.hpp"

namespace lreg {

EtaQuotient EtaQuotient::make(std::int64_t level, ExponentMap exponents) {
  if (level < 1) throw InvalidArgument("eta quotient level must be positive");
  for (const auto& [d, r] : exponents) {
    if (d < 1 || level % d != 0) {
      throw InvalidArgument("eta index " + std::to_string(d) + " does not divide level " + std::to_string(level));
    }
    if (r == 0) throw InvalidArgument("eta exponent for " + std::to_string(d) + " is zero");
  }
  return EtaQuotient{level, std::move(exponents)};
}

Rational EtaQuotient::weight() const {
  std::int64_t sum = 0;
  for (const auto& [d, r] : exponents) sum = checked_add(sum, r);
  return make_rational(sum, 2);
}

nlohmann::json EtaQuotient::to_json() const {
  return {{"level", level}, {"eta", format_exponent_map(exponents)}};
}

int Character::at(std::int64_t n) const {
  if (n == 0) return 0;
  int v = kronecker(sign, n);
  for (const auto& [p, e] : primes) {
    if (e == 0) continue;
    if (n % p == 0) return 0;
    if (e % 2 != 0) v *= kronecker(p, n);
  }
  return v;
}

bool Character::involves(std::int64_t p) const {
  const auto it = primes.find(p);
  return it != primes.end() && it->second != 0;
}

std::string Character::to_string() const {
  std::string out = sign < 0 ? "-" : "";
  bool first = true;
  for (const auto& [p, e] : primes) {
    if (e == 0) continue;
    if (!first) out += "*";
    first = false;
    out += std::to_string(p);
    if (e != 1) out += "^" + std::to_string(e);
  }
  if (first) out += "1";
  return out;
}

nlohmann::json Character::to_json() const {
  nlohmann::json factors = nlohmann::json::object();
  for (const auto& [p, e] : primes) {
    if (e != 0) factors[std::to_string(p)] = e;
  }
  return {{"sign", sign}, {"primes", factors}, {"kernel", to_string()}};
}

nlohmann::json ModularMeta::to_json() const {
  return {{"weight", lreg::to_string(weight)},
          {"conditions",
           {{"integral_weight", integral_weight},
            {"sum_delta_r_mod24", prefactor_ok},
            {"sum_dual_r_mod24", dual_ok}}},
          {"sum_delta_r", prefactor24},
          {"sum_dual_r", dual24},
          {"character", character.to_json()},
          {"modular", all_conditions()}};
}

ModularMeta check_modularity(const EtaQuotient& eq) {
  ModularMeta m;
  m.weight = eq.weight();
  m.integral_weight = m.weight.get_den() == 1;
  for (const auto& [d, r] : eq.exponents) {
    m.prefactor24 = checked_add(m.prefactor24, checked_mul(d, r));
    m.dual24 = checked_add(m.dual24, checked_mul(eq.level / d, r));
    for (const auto& [p, e] : factorize(d)) m.character.primes[p] = checked_add(m.character.primes[p], checked_mul(e, r));
  }
  std::erase_if(m.character.primes, [](const auto& kv) { return kv.second == 0; });
  m.prefactor_ok = m.prefactor24 % 24 == 0;
  m.dual_ok = m.dual24 % 24 == 0;
  if (m.integral_weight) {
    const BigInt w = m.weight.get_num();
    m.character.sign = mpz_odd_p(w.get_mpz_t()) ? -1 : 1;
  }
  return m;
}

Rational cusp_order(const EtaQuotient& eq, std::int64_t d) {
  const std::int64_t n = eq.level;
  if (d < 1 || n % d != 0) {
    throw InvalidArgument("cusp denominator " + std::to_string(d) + " does not divide level " + std::to_string(n));
  }
  Rational sum = 0;
  for (const auto& [delta, r] : eq.exponents) {
    const std::int64_t g = std::gcd(d, delta);
    sum += ratio(BigInt(g) * g * r, delta);
  }
  sum *= ratio(n, BigInt(24) * std::gcd(d, n / d) * d);
  return sum;
}

nlohmann::json HolomorphyReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [d, o] : orders) list.push_back({{"d", d}, {"order", lreg::to_string(o)}});
  return {{"holomorphic", holomorphic},
          {"min_order", lreg::to_string(min_order)},
          {"witness", witness},
          {"cusp_orders", list}};
}

HolomorphyReport is_holomorphic(const EtaQuotient& eq) {
  HolomorphyReport rep;
  bool first = true;
  for (const std::int64_t d : divisors(eq.level)) {
    const Rational o = cusp_order(eq, d);
    rep.orders.emplace_back(d, o);
    if (first || o < rep.min_order) {
      rep.min_order = o;
      rep.witness = d;
      first = false;
    }
  }
  rep.holomorphic = rep.min_order >= 0;
  return rep;
}

std::int64_t sturm_bound(std::int64_t weight, std::int64_t level, bool same_character) {
  if (weight < 1 || level < 1) throw InvalidArgument("sturm_bound requires weight >= 1 and level >= 1");
  Rational b(BigInt(weight) * level, 12);
  if (!same_character) b *= level;
  for (const auto& [p, e] : factorize(level)) {
    b *= same_character ? ratio(p + 1, p) : ratio(BigInt(p) * p - 1, BigInt(p) * p);
  }
  return floor(b).get_si();
}

std::int64_t index_gamma0(std::int64_t n) {
  if (n < 1) throw InvalidArgument("index_gamma0 requires N >= 1");
  std::int64_t idx = n;
  for (const auto& [p, e] : factorize(n)) idx = idx / p * (p + 1);
  return idx;
}

nlohmann::json CotronResult::to_json() const {
  return {{"lacunary", lacunary},
          {"gcd", gcd},
          {"p_power", lreg::to_string(p_power)},
          {"divides", divides},
          {"threshold_squared", lreg::to_string(threshold_squared)},
          {"threshold_ok", threshold_ok}};
}

CotronResult cotron_criterion(const ExponentMap& numerator, const ExponentMap& denominator, std::int64_t p,
                              std::int64_t a) {
  if (numerator.empty()) throw InvalidArgument("cotron criterion needs a nonempty numerator");
  if (!is_prime(p)) throw InvalidArgument("cotron criterion needs a prime p");
  if (a < 1) throw InvalidArgument("cotron criterion needs a >= 1");
  CotronResult res;
  Rational num_sum = 0;
  for (const auto& [alpha, r] : numerator) {
    if (alpha < 1 || r < 1) throw InvalidArgument("numerator entries must be positive");
    res.gcd = std::gcd(res.gcd, alpha);
    num_sum += ratio(r, alpha);
  }
  BigInt den_sum = 0;
  for (const auto& [beta, s] : denominator) {
    if (beta < 1 || s < 1) throw InvalidArgument("denominator entries must be positive");
    den_sum += BigInt(beta) * s;
  }
  mpz_ui_pow_ui(res.p_power.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(a));
  res.divides = mpz_divisible_p(BigInt(res.gcd).get_mpz_t(), res.p_power.get_mpz_t()) != 0;
  res.threshold_squared = Rational(den_sum) / num_sum;
  res.threshold_ok = Rational(res.p_power * res.p_power) >= res.threshold_squared;
  res.lacunary = res.divides && res.threshold_ok;
  return res;
}

int kronecker(const BigInt& a, const BigInt& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

EtaQuotient g31() { return EtaQuotient::make(51, {{1, 4}, {51, 2}, {17, 1}, {3, -1}}); }

EtaQuotient g32() { return EtaQuotient::make(51, {{17, 4}, {3, 2}, {1, 1}, {51, -1}}); }

EtaQuotient b_quotient(int k) {
  if (k < 1 || k > 40) throw InvalidArgument("b_quotient supports 1 <= k <= 40");
  const std::int64_t pk = std::int64_t{1} << k;
  return EtaQuotient::make(324, {{6, 2}, {9, 1}, {54, 2 * pk + 1}, {3, -3}, {18, -1}, {108, -pk}});
}

EtaQuotient f_quotient() { return EtaQuotient::make(1296, {{36, 7}, {12, -1}, {108, -2}}); }

}  // namespace lreg
