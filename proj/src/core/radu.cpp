#include "lreg/radu.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lreg/error.hpp"

namespace lreg {

namespace {

std::int64_t sum_r(const ExponentMap& r) {
  std::int64_t s = 0;
  for (const auto& [d, e] : r) s = checked_add(s, e);
  return s;
}

std::int64_t sum_delta_r(const ExponentMap& r) {
  std::int64_t s = 0;
  for (const auto& [d, e] : r) s = checked_add(s, checked_mul(d, e));
  return s;
}

BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

void RaduTuple::validate() const {
  if (m < 1 || M < 1 || N < 1) throw InvalidArgument("radu tuple needs positive m, M, N");
  if (t < 0 || t >= m) throw InvalidArgument("radu tuple needs 0 <= t < m");
  for (const auto& [d, e] : r) {
    if (d < 1 || M % d != 0) throw InvalidArgument("exponent index " + std::to_string(d) + " does not divide M");
  }
}

nlohmann::json RaduTuple::to_json() const {
  return {{"m", m}, {"M", M}, {"N", N}, {"r", format_exponent_map(r)}, {"t", t}};
}

bool DeltaStarReport::member() const {
  return std::all_of(conditions.begin(), conditions.end(), [](bool b) { return b; });
}

nlohmann::json DeltaStarReport::to_json() const {
  nlohmann::json c = nlohmann::json::object();
  for (std::size_t i = 0; i < conditions.size(); ++i) c[std::to_string(i + 1)] = conditions[i];
  return {{"member", member()}, {"k", k}, {"s", s}, {"j", lreg::to_string(j)}, {"conditions", c}};
}

DeltaStarReport delta_star_check(const RaduTuple& tp) {
  tp.validate();
  DeltaStarReport rep;
  rep.k = std::gcd(checked_mul(tp.m, tp.m) - 1, std::int64_t{24});
  BigInt prod = 1;
  for (const auto& [d, e] : tp.r) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(e < 0 ? -e : e));
    prod *= p;
  }
  rep.s = static_cast<std::int64_t>(mpz_scan1(prod.get_mpz_t(), 0));
  mpz_tdiv_q_2exp(rep.j.get_mpz_t(), prod.get_mpz_t(), static_cast<mp_bitcnt_t>(rep.s));

  const BigInt k = rep.k, m = tp.m, n = tp.N;
  auto divides = [](const BigInt& a, const BigInt& b) { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; };

  rep.conditions[0] = true;
  for (const auto& [p, e] : factorize(tp.m)) rep.conditions[0] = rep.conditions[0] && tp.N % p == 0;

  rep.conditions[1] = true;
  for (const auto& [d, e] : tp.r) {
    if (e != 0) rep.conditions[1] = rep.conditions[1] && divides(d, m * n);
  }

  BigInt s3 = 0;
  for (const auto& [d, e] : tp.r) s3 += BigInt(e) * (m * n / d);
  rep.conditions[2] = divides(24, k * n * s3);
  rep.conditions[3] = divides(8, k * n * sum_r(tp.r));

  const BigInt x = -24 * k * tp.t - k * sum_delta_r(tp.r);
  const BigInt g = big_gcd(x, 24 * m);
  rep.conditions[4] = divides(24 * m / g, n);

  if (tp.m % 2 == 0) {
    const bool a = divides(4, k * n) && divides(8, BigInt(rep.s) * n);
    const bool b = rep.s % 2 == 0 && divides(8, (1 - rep.j) * n);
    rep.conditions[5] = a || b;
  } else {
    rep.conditions[5] = true;
  }
  return rep;
}

std::vector<std::int64_t> squares_mod(std::int64_t n) {
  if (n < 1) throw InvalidArgument("squares_mod requires n >= 1");
  std::set<std::int64_t> out;
  for (std::int64_t u = 0; u < n; ++u) {
    if (std::gcd(u, n) == 1) out.insert(static_cast<std::int64_t>(static_cast<__int128>(u) * u % n));
  }
  return {out.begin(), out.end()};
}

std::vector<std::int64_t> p_set(std::int64_t m, std::int64_t M, const ExponentMap& r, std::int64_t t) {
  if (m < 1 || M < 1) throw InvalidArgument("p_set requires m, M >= 1");
  if (t < 0 || t >= m) throw InvalidArgument("p_set requires 0 <= t < m");
  for (const auto& [d, e] : r) {
    if (d < 1 || M % d != 0) throw InvalidArgument("exponent index " + std::to_string(d) + " does not divide M");
  }
  const std::int64_t sdr = sum_delta_r(r);
  std::set<std::int64_t> out;
  for (const std::int64_t s : squares_mod(checked_mul(24, m))) {
    if ((s - 1) % 24 != 0) throw InternalError("square " + std::to_string(s) + " is not 1 mod 24");
    const __int128 v = static_cast<__int128>(t) * s + static_cast<__int128>((s - 1) / 24) * sdr;
    out.insert(static_cast<std::int64_t>(((v % m) + m) % m));
  }
  return {out.begin(), out.end()};
}

std::vector<CosetRep> coset_reps(std::int64_t n) {
  if (n < 1) throw InvalidArgument("coset_reps requires N >= 1");
  if (!is_squarefree(n) && !(n % 2 == 0 && is_squarefree(n / 2))) {
    throw Inapplicable("neither N = " + std::to_string(n) + " nor N/2 is squarefree");
  }
  std::vector<CosetRep> out;
  for (const std::int64_t d : divisors(n)) out.push_back({d});
  return out;
}

PmrResult p_mr(const CosetRep& gamma, std::int64_t m, std::int64_t M, const ExponentMap& r,
               std::int64_t lambda_cap) {
  if (m < 1) throw InvalidArgument("p_mr requires m >= 1");
  if (m > lambda_cap) throw InvalidArgument("m exceeds the lambda search cap " + std::to_string(lambda_cap));
  for (const auto& [d, e] : r) {
    if (d < 1 || M % d != 0) throw InvalidArgument("exponent index " + std::to_string(d) + " does not divide M");
  }
  const std::int64_t k = std::gcd(checked_mul(m, m) - 1, std::int64_t{24});
  const BigInt a = 1, c = gamma.delta;
  const BigInt mc = BigInt(m) * c;
  PmrResult res;
  bool first = true;
  for (std::int64_t lambda = 0; lambda < m; ++lambda) {
    // 24 m * value, kept integral until the end.
    Rational v = 0;
    for (const auto& [d, e] : r) {
      const BigInt arg = BigInt(d) * a + BigInt(d) * k * lambda * c;
      if (arg == 0 || mc == 0) res.zero_gcd = true;
      const BigInt g = big_gcd(arg, mc);
      v += ratio(BigInt(e) * g * g, d);
    }
    if (first || v < res.value) {
      res.value = v;
      res.argmin = lambda;
      first = false;
    }
  }
  res.value /= 24 * m;
  return res;
}

Rational p_star(const CosetRep& gamma, const ExponentMap& rprime) {
  Rational v = 0;
  for (const auto& [d, e] : rprime) {
    const std::int64_t g = std::gcd(d, gamma.delta);
    v += ratio(BigInt(e) * g * g, d);
  }
  return v / 24;
}

NuBound nu_bound(const RaduTuple& tp, const ExponentMap& rprime) {
  tp.validate();
  for (const auto& [d, e] : rprime) {
    if (d < 1 || tp.N % d != 0) throw InvalidArgument("r' index " + std::to_string(d) + " does not divide N");
  }
  NuBound nb;
  const auto ps = p_set(tp.m, tp.M, tp.r, tp.t);
  nb.t_min = ps.front();
  nb.index = index_gamma0(tp.N);
  const BigInt inner = BigInt(sum_r(tp.r) + sum_r(rprime)) * nb.index - sum_delta_r(rprime);
  nb.nu = ratio(inner, 24) - ratio(sum_delta_r(tp.r), BigInt(24) * tp.m) - ratio(nb.t_min, tp.m);
  nb.nu_floor = floor(nb.nu);
  return nb;
}

std::string to_string(RaduStatus s) {
  switch (s) {
    case RaduStatus::Proven:
      return "proven";
    case RaduStatus::Failed:
      return "failed";
    case RaduStatus::Inapplicable:
      return "inapplicable";
  }
  return "inapplicable";
}

nlohmann::json RaduReport::to_json() const {
  nlohmann::json j;
  j["status"] = to_string(status);
  if (!reason.empty()) j["reason"] = reason;
  j["tuple"] = tuple.to_json();
  j["rprime"] = format_exponent_map(rprime);
  j["modulus"] = lreg::to_string(modulus);
  j["conditions"] = delta_star.to_json();
  j["pset"] = pset;
  if (nu) {
    j["nu"] = {{"num", lreg::to_string(nu->nu.get_num())}, {"den", lreg::to_string(nu->nu.get_den())}};
    j["nu_floor"] = nu->nu_floor.get_si();
    j["t_min"] = nu->t_min;
    j["index"] = nu->index;
  }
  nlohmann::json cos = nlohmann::json::array();
  for (const auto& c : coset_checks) {
    cos.push_back({{"delta", c.delta},
                   {"p_mr", lreg::to_string(c.pmr)},
                   {"p_star", lreg::to_string(c.pstar)},
                   {"sum", lreg::to_string(c.pmr + c.pstar)},
                   {"ok", c.ok}});
  }
  j["coset_checks"] = cos;
  j["zero_gcd_flag"] = zero_gcd_flag;
  nlohmann::json bc = nlohmann::json::array();
  for (const auto& b : bound_checks) {
    nlohmann::json e{{"t_prime", b.tprime}, {"checked_to", b.checked_to}};
    e["first_nonzero"] = b.first_nonzero ? nlohmann::json(*b.first_nonzero) : nlohmann::json(nullptr);
    bc.push_back(std::move(e));
  }
  j["bound_checks"] = bc;
  j["series_trunc"] = series_trunc;
  if (witness) {
    j["witnesses"] = nlohmann::json::array({{{"t_prime", witness->first}, {"n", witness->second}}});
  } else {
    j["witnesses"] = nlohmann::json::array();
  }
  j["note"] =
      "proven is contingent on the finite-check lemma and the double coset lemma; every hypothesis they need "
      "is listed above";
  return j;
}

SeriesProvider eta_series_provider(const ExponentMap& r, const BigInt& modulus) {
  Ring ring = Ring::exact();
  if (modulus > 1 && mpz_popcount(modulus.get_mpz_t()) == 1) {
    const auto bits = static_cast<int>(mpz_sizeinbase(modulus.get_mpz_t(), 2) - 1);
    if (bits <= 63) ring = Ring::mod_pow2(bits);
  }
  return [r, ring](std::int64_t trunc) { return eta_product(r, trunc, ring); };
}

RaduReport radu_verify(const RaduTuple& tp, const ExponentMap& rprime, const BigInt& modulus,
                       const SeriesProvider& provider, std::int64_t lambda_cap) {
  if (modulus < 1) throw InvalidArgument("modulus must be positive");
  RaduReport rep;
  rep.tuple = tp;
  rep.rprime = rprime;
  rep.modulus = modulus;
  rep.delta_star = delta_star_check(tp);
  rep.pset = p_set(tp.m, tp.M, tp.r, tp.t);
  rep.nu = nu_bound(tp, rprime);

  std::vector<std::string> failed;
  if (!rep.delta_star.member()) {
    for (std::size_t i = 0; i < 6; ++i) {
      if (!rep.delta_star.conditions[i]) failed.push_back("condition (" + std::to_string(i + 1) + ") fails");
    }
  }
  try {
    for (const CosetRep& g : coset_reps(tp.N)) {
      const PmrResult pm = p_mr(g, tp.m, tp.M, tp.r, lambda_cap);
      RaduReport::CosetCheck c{g.delta, pm.value, p_star(g, rprime), false};
      c.ok = c.pmr + c.pstar >= 0;
      rep.zero_gcd_flag = rep.zero_gcd_flag || pm.zero_gcd;
      if (!c.ok) failed.push_back("p_mr + p_star < 0 at delta = " + std::to_string(g.delta));
      rep.coset_checks.push_back(c);
    }
  } catch (const Inapplicable& e) {
    failed.push_back(e.what());
  }

  const std::int64_t nmax = rep.nu->nu_floor < 0 ? -1 : rep.nu->nu_floor.get_si();
  const std::int64_t need = std::max<std::int64_t>(0, checked_add(checked_mul(tp.m, std::max<std::int64_t>(nmax, 0)),
                                                                    rep.pset.back()));
  const Series c = provider(need);
  rep.series_trunc = c.trunc();
  if (c.trunc() < need) {
    throw TruncationError("series provider returned truncation " + std::to_string(c.trunc()) + ", need " +
                          std::to_string(need));
  }
  if (!c.ring().supports_modulus(modulus)) {
    throw RingMismatch("modulus " + lreg::to_string(modulus) + " is not defined on ring " + c.ring().name());
  }
  auto vanishes = [&](std::int64_t idx) {
    if (c.ring().is_exact()) return mpz_divisible_p(c.coeff(idx).get_mpz_t(), modulus.get_mpz_t()) != 0;
    return (c.residue(idx) & (modulus.get_ui() - 1)) == 0;
  };
  for (const std::int64_t tprime : rep.pset) {
    RaduReport::BoundCheck b{tprime, -1, std::nullopt};
    for (std::int64_t n = 0; n <= nmax; ++n) {
      b.checked_to = n;
      if (!vanishes(tp.m * n + tprime)) {
        b.first_nonzero = n;
        break;
      }
    }
    if (b.first_nonzero && !rep.witness) rep.witness = std::make_pair(tprime, *b.first_nonzero);
    rep.bound_checks.push_back(b);
  }

  // A nonzero coefficient refutes the congruence whatever the hypotheses say.
  if (rep.witness) {
    rep.status = RaduStatus::Failed;
    rep.reason = "c_r(" + std::to_string(tp.m) + "n + " + std::to_string(rep.witness->first) + ") is nonzero mod " +
                 lreg::to_string(modulus) + " at n = " + std::to_string(rep.witness->second);
  } else if (!failed.empty()) {
    rep.status = RaduStatus::Inapplicable;
    for (const auto& f : failed) rep.reason += (rep.reason.empty() ? "" : "; ") + f;
  } else {
    rep.status = RaduStatus::Proven;
  }
  return rep;
}

}  // namespace lreg
