#include "lreg/hecke.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "lreg/error.hpp"
#include "lreg/partitions.hpp"

namespace lreg {

namespace {

// Above this index the family check switches to b3_even_parities.
constexpr std::int64_t kDirectLimit = 20000000;

BigInt pow_int(std::int64_t base, std::int64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

HeckeContext hecke_context(std::int64_t p, const EtaQuotient& eq) {
  const ModularMeta meta = check_modularity(eq);
  if (!meta.integral_weight) throw InvalidArgument("Hecke operators need an integral weight");
  return HeckeContext{p, meta.weight.get_num().get_si(), meta.character.at(p)};
}

Series hecke_tp(const Series& f, const HeckeContext& ctx) {
  if (!is_prime(ctx.p)) throw InvalidArgument("hecke_tp requires a prime p");
  if (ctx.weight < 1) throw InvalidArgument("hecke_tp requires weight >= 1");
  if (ctx.chi_p < -1 || ctx.chi_p > 1) throw InvalidArgument("chi(p) must be -1, 0 or 1");
  if (f.trunc() < ctx.p) throw TruncationError("hecke_tp needs the series known to at least q^p");
  Series out = dissect(f, ctx.p, 0);
  if (ctx.chi_p != 0) {
    const BigInt factor = ctx.chi_p * pow_int(ctx.p, ctx.weight - 1);
    out = add(out, scale(inflate(f, ctx.p, out.trunc()), factor));
  }
  return out;
}

std::int64_t gamma_of(std::int64_t p) {
  if (p <= 3) throw InvalidArgument("gamma_of requires p > 3");
  if (!is_prime(p)) throw InvalidArgument("gamma_of requires a prime");
  const std::int64_t p2 = checked_mul(p, p);
  return mod_floor(-mod_inverse(24, p2), p2);
}

nlohmann::json SelfSimReport::to_json() const {
  nlohmann::json j{{"p", p}, {"gamma", gamma}, {"checked_to", checked_to}, {"holds", holds}, {"standing", standing}};
  j["first_failure"] = first_failure ? nlohmann::json(*first_failure) : nlohmann::json(nullptr);
  return j;
}

SelfSimReport self_similarity_check(std::int64_t p, std::int64_t bound) {
  if (bound < 0) throw InvalidArgument("bound must be nonnegative");
  SelfSimReport rep;
  rep.p = p;
  rep.gamma = gamma_of(p);
  rep.checked_to = bound;
  rep.standing = (p == 13 || p == 17) ? "proved" : "evidence";
  const std::int64_t top = checked_mul(2, checked_add(checked_mul(p, bound), rep.gamma));
  const Series even = dissect(regular_series(3, top, Ring::mod_pow2(1)), 2, 0);
  rep.holds = true;
  for (std::int64_t n = 0; n <= bound; ++n) {
    const bool a = !even.coeff_is_zero(p * n + rep.gamma);
    const bool b = n % p == 0 && !even.coeff_is_zero(n / p);
    if (a != b) {
      rep.holds = false;
      rep.first_failure = n;
      break;
    }
  }
  return rep;
}

std::vector<SelfSimReport> self_similarity_scan(std::int64_t pmin, std::int64_t pmax, std::int64_t bound,
                                                int jobs) {
  std::vector<std::int64_t> primes;
  for (std::int64_t p = std::max<std::int64_t>(pmin, 5); p <= pmax; ++p) {
    if (is_prime(p)) primes.push_back(p);
  }
  std::vector<SelfSimReport> out(primes.size());
  const std::size_t workers = std::max(1, jobs);
  std::size_t next = 0;
  while (next < primes.size()) {
    std::vector<std::future<void>> batch;
    for (std::size_t w = 0; w < workers && next < primes.size(); ++w, ++next) {
      const std::size_t i = next;
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 [&, i] { out[i] = self_similarity_check(primes[i], bound); }));
    }
    for (auto& f : batch) f.get();
  }
  return out;
}

CongruenceClaim iterated_family(std::int64_t p, std::int64_t k) {
  if (p != 17) throw InvalidArgument("iterated_family is defined for p = 17");
  if (k < 1) throw InvalidArgument("iterated_family requires k >= 1");
  const BigInt p2k = pow_int(17, 2 * k);
  const BigInt p2k2 = pow_int(17, 2 * k - 2);
  const BigInt tail = 24 * (p2k2 - 1);
  if (!mpz_divisible_ui_p(tail.get_mpz_t(), 288)) throw InternalError("family offset is not integral");
  const BigInt A = 2 * p2k;
  const BigInt B = p2k2 * 58 + tail / 288;
  if (!A.fits_slong_p() || !B.fits_slong_p()) throw InvalidArgument("family parameters exceed 64 bits");
  return CongruenceClaim{A.get_si(), B.get_si(), 2, "b3 family k=" + std::to_string(k)};
}

std::vector<int> b3_even_parities(const std::vector<std::int64_t>& n_values) {
  if (n_values.empty()) return {};
  const std::int64_t nmax = *std::max_element(n_values.begin(), n_values.end());
  if (*std::min_element(n_values.begin(), n_values.end()) < 0) throw InvalidArgument("negative index");
  const Ring z2 = Ring::mod_pow2(1);
  // p(m) mod 2 for m <= nmax / 3.
  const Series pinv = div_sparse(Series::one(z2, nmax / 3), pentagonal_terms(1, nmax / 3));
  // f_4 = sum over pentagonal g of (+-1) q^{4g}.
  const SparseSeries f4 = pentagonal_terms(4, nmax);
  std::vector<int> out;
  out.reserve(n_values.size());
  for (const std::int64_t n : n_values) {
    int bit = 0;
    for (const SparseTerm& t : f4) {
      if (t.exponent > n) break;
      const std::int64_t rest = n - t.exponent;
      if (rest % 3 == 0 && !pinv.coeff_is_zero(rest / 3)) bit ^= 1;
    }
    out.push_back(bit);
  }
  return out;
}

VerificationReport family_check(std::int64_t k, std::int64_t nmax) {
  if (nmax < 0) throw InvalidArgument("nmax must be nonnegative");
  const CongruenceClaim claim = iterated_family(17, k);
  const std::int64_t top = checked_add(checked_mul(claim.A, nmax), claim.B);
  if (top <= kDirectLimit) {
    VerificationReport rep = claim_check(claim, regular_series(3, top, Ring::mod_pow2(1)), nmax);
    rep.details["route"] = "direct";
    return rep;
  }
  // A and B are even, so every index is 2N.
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 0; n <= nmax; ++n) ns.push_back((claim.A * n + claim.B) / 2);
  const std::vector<int> bits = b3_even_parities(ns);
  VerificationReport rep;
  rep.subject = claim.label;
  rep.bound = nmax;
  rep.details["claim"] = claim.to_json();
  rep.details["deepest_index"] = top;
  rep.details["route"] = "f4/f3 parity";
  for (std::int64_t n = 0; n <= nmax; ++n) {
    if (bits[n] != 0) {
      rep.status = Verdict::Fail;
      rep.counterexample = n;
      rep.details["witness_index"] = claim.A * n + claim.B;
      break;
    }
  }
  return rep;
}

VerificationReport sturm_congruence_check(const Series& f, const Series& g, std::int64_t weight,
                                          std::int64_t level, bool same_character, std::int64_t p) {
  if (!is_prime(p)) throw InvalidArgument("sturm_congruence_check requires a prime modulus");
  if (f.ring() != g.ring()) throw RingMismatch("series live in different rings");
  if (!f.ring().supports_modulus(p)) throw RingMismatch("residues mod p are not defined on " + f.ring().name());
  const std::int64_t bound = sturm_bound(weight, level, same_character);
  if (f.trunc() < bound || g.trunc() < bound) {
    throw TruncationError("series must be known up to the Sturm bound " + std::to_string(bound));
  }
  VerificationReport rep;
  rep.subject = "sturm congruence mod " + std::to_string(p);
  rep.bound = bound;
  rep.details["sturm_bound"] = bound;
  rep.details["weight"] = weight;
  rep.details["level"] = level;
  rep.details["same_character"] = same_character;
  for (std::int64_t n = 0; n <= bound; ++n) {
    bool same;
    if (f.ring().is_exact()) {
      const BigInt d = f.coeff(n) - g.coeff(n);
      same = mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
    } else {
      same = ((f.residue(n) ^ g.residue(n)) & 1) == 0;
    }
    if (!same) {
      rep.status = Verdict::Fail;
      rep.counterexample = n;
      break;
    }
  }
  return rep;
}

VerificationReport level51_sturm_check() {
  const Ring z2 = Ring::mod_pow2(1);
  const std::int64_t bound = sturm_bound(3, 51, true);
  const std::int64_t deepest = 34 * bound + 24;
  const Series b3 = regular_series(3, deepest, z2);
  std::vector<BigInt> l(static_cast<std::size_t>(bound + 1));
  for (std::int64_t n = 0; n <= bound; ++n) l[n] = b3.coeff(34 * n + 24);
  const Series lseries = Series::from_coeffs(z2, l);
  const Series lhs = shift(mul(lseries, eta_product({{3, 2}, {1, 1}}, bound, z2)), 1).truncated(bound);
  const Series g32 = shift(eta_product({{17, 4}, {3, 2}, {1, 1}, {51, -1}}, bound - 1, z2), 1);
  VerificationReport rep = sturm_congruence_check(lhs, g32, 3, 51, true, 2);
  rep.subject = "level 51 weight 3 congruence";
  rep.details["deepest_b3_index"] = deepest;

  // T_17 of q^5 f1^4 f51^2 f17 / f3, expanded independently of b_3.
  const Series g31_series = shift(eta_product({{1, 4}, {51, 2}, {17, 1}, {3, -1}}, 17 * bound - 5, z2), 5);
  const Series t17 = hecke_tp(g31_series, hecke_context(17, g31()));
  const Comparison c = compare(t17, lhs);
  rep.details["hecke_image_matches"] = c.equal;
  if (!c.equal && rep.status == Verdict::Pass) {
    rep.status = Verdict::Fail;
    rep.counterexample = c.first_mismatch;
    rep.notes.push_back("T_17 of the G31 expansion differs from the b_3 series");
  }
  return rep;
}

}  // namespace lreg
