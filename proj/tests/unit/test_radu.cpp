#include <doctest.h>

#include <numeric>
#include <set>

#include "lreg/error.hpp"
#include "lreg/partitions.hpp"
#include "lreg/radu.hpp"

using namespace lreg;

namespace {

const ExponentMap kR3{{1, 4}, {3, -1}};
const ExponentMap kR21{{1, -1}, {3, 4}};

const std::vector<std::int64_t> kOrbit64{6, 64, 151, 180, 209, 238, 296, 412, 499, 615, 673, 702, 731, 760};
const std::vector<std::int64_t> kOrbit93{93, 122, 267, 325, 354, 383, 441, 470, 528, 557, 586, 644, 789, 818};
const std::vector<std::int64_t> kOrbit414{8, 124, 182, 211, 240, 269, 356, 414, 501, 530, 559, 588, 646, 762};
const std::vector<std::int64_t> kOrbit443{37, 66, 95, 153, 298, 327, 443, 472, 617, 675, 704, 733, 791, 820};

const std::vector<std::int64_t> kAlpha{6,   64,  93,  122, 151, 180, 209, 238, 267, 296, 325, 354, 383, 412,
                                       441, 470, 499, 528, 557, 586, 615, 644, 673, 702, 731, 760, 789, 818};
const std::vector<std::int64_t> kBeta{8,   37,  66,  95,  124, 153, 182, 211, 240, 269, 298, 327, 356, 414,
                                      443, 472, 501, 530, 559, 588, 617, 646, 675, 704, 733, 762, 791, 820};

RaduTuple tuple(const ExponentMap& r, std::int64_t t) { return RaduTuple{841, 3, 87, r, t}; }

}  // namespace

TEST_CASE("squares modulo n") {
  CHECK(squares_mod(24) == std::vector<std::int64_t>{1});
  CHECK(squares_mod(5) == std::vector<std::int64_t>{1, 4});
  // Units mod 24*841 number phi = 8 * 812; each square has 2^2 * 2 * 2 = 16 roots
  // (four mod 8, two mod 3, two mod 841).
  const auto sq = squares_mod(24 * 841);
  CHECK(sq.size() == 8 * 812 / 16);
  for (const auto s : sq) CHECK((s - 1) % 24 == 0);
}

TEST_CASE("P-sets of the four tuples") {
  CHECK(p_set(841, 3, kR3, 64) == kOrbit64);
  CHECK(p_set(841, 3, kR3, 93) == kOrbit93);
  CHECK(p_set(841, 3, kR21, 414) == kOrbit414);
  CHECK(p_set(841, 3, kR21, 443) == kOrbit443);
  CHECK(p_set(1, 5, {{1, 3}, {5, 2}}, 0) == std::vector<std::int64_t>{0});

  std::set<std::int64_t> u3(kOrbit64.begin(), kOrbit64.end());
  u3.insert(kOrbit93.begin(), kOrbit93.end());
  CHECK(std::vector<std::int64_t>(u3.begin(), u3.end()) == kAlpha);
  std::set<std::int64_t> u21(kOrbit414.begin(), kOrbit414.end());
  u21.insert(kOrbit443.begin(), kOrbit443.end());
  CHECK(std::vector<std::int64_t>(u21.begin(), u21.end()) == kBeta);
}

TEST_CASE("property: P-sets are closed orbits containing t") {
  for (const auto& orbit : {kOrbit64, kOrbit93}) {
    for (const auto t : orbit) CHECK(p_set(841, 3, kR3, t) == orbit);
  }
  for (std::int64_t t = 0; t < 29; ++t) {
    const auto ps = p_set(29, 3, kR3, t);
    CHECK(std::binary_search(ps.begin(), ps.end(), t));
    for (const auto x : ps) CHECK(p_set(29, 3, kR3, x) == ps);
  }
}

TEST_CASE("Delta* membership") {
  for (const auto& [r, t] : std::vector<std::pair<ExponentMap, std::int64_t>>{
           {kR3, 64}, {kR3, 93}, {kR21, 414}, {kR21, 443}}) {
    const DeltaStarReport d = delta_star_check(tuple(r, t));
    CHECK(d.member());
    CHECK(d.k == 24);
  }
  const DeltaStarReport bad = delta_star_check(RaduTuple{2, 1, 1, {{1, 1}}, 0});
  CHECK_FALSE(bad.conditions[0]);
  CHECK_FALSE(bad.member());
  CHECK_FALSE(delta_star_check(tuple(kR3, 0)).conditions[4]);
  CHECK_THROWS_AS(delta_star_check(RaduTuple{841, 3, 87, {{2, 1}}, 0}), InvalidArgument);
}

TEST_CASE("coset representatives") {
  const auto reps = coset_reps(87);
  REQUIRE(reps.size() == 4);
  CHECK(reps[0].delta == 1);
  CHECK(reps[3].delta == 87);
  CHECK(coset_reps(1).size() == 1);
  CHECK(coset_reps(12).size() == 6);
  CHECK_THROWS_AS(coset_reps(8), Inapplicable);
}

TEST_CASE("p_mr against an exhaustive oracle") {
  // 24 m p_mr = min over lambda of sum r gcd(delta + 24 delta lambda c, m c)^2 / delta.
  for (const auto& r : {kR3, kR21}) {
    for (const std::int64_t c : {1, 3, 29, 87}) {
      Rational best;
      for (long lambda = 0; lambda < 841; ++lambda) {
        Rational v = 0;
        for (const auto& [d, e] : r) {
          const long g = std::gcd(d + 24L * d * lambda * c, 841L * c);
          v += ratio(BigInt(e) * g * g, d);
        }
        if (lambda == 0 || v < best) best = v;
      }
      const PmrResult got = p_mr({c}, 841, 3, r);
      CHECK(got.value == best / (24 * 841));
      CHECK_FALSE(got.zero_gcd);
      CHECK(got.value + p_star({c}, {}) >= 0);
    }
  }
  // m = 1: a single term.
  CHECK(p_mr({1}, 1, 1, {{1, 24}}).value == 1);
  CHECK_THROWS_AS(p_mr({1}, 1000, 3, kR3, 100), InvalidArgument);
}

TEST_CASE("p_star") {
  CHECK(p_star({5}, {{1, 0}, {3, 0}, {29, 0}, {87, 0}}) == 0);
  CHECK(p_star({1}, {{1, 24}}) == 1);
  CHECK(p_star({87}, {{3, 1}}) == make_rational(1, 8));
}

TEST_CASE("nu bound") {
  const NuBound a = nu_bound(tuple(kR3, 64), {});
  CHECK(a.nu_floor == 14);
  CHECK(a.index == 120);
  CHECK(a.t_min == 6);
  const Rational oracle = Rational(3 * 120, 24) - make_rational(1, 24 * 841) - make_rational(6, 841);
  CHECK(a.nu == oracle);
  CHECK(nu_bound(tuple(kR21, 414), {}).nu_floor == 14);
  CHECK(nu_bound(tuple(kR21, 443), {}).nu_floor == 14);
  CHECK(nu_bound(tuple(kR3, 93), {}).nu_floor == 14);
}

TEST_CASE("end-to-end verification") {
  for (const auto& [r, t] : std::vector<std::pair<ExponentMap, std::int64_t>>{
           {kR3, 64}, {kR3, 93}, {kR21, 414}, {kR21, 443}}) {
    const RaduReport rep = radu_verify(tuple(r, t), {}, 2, eta_series_provider(r, 2));
    CHECK(rep.status == RaduStatus::Proven);
    CHECK(rep.coset_checks.size() == 4);
    CHECK(rep.bound_checks.size() == 14);
    for (const auto& b : rep.bound_checks) CHECK(b.checked_to == 14);
    const auto j = rep.to_json();
    CHECK(j["status"] == "proven");
    CHECK(j["nu_floor"] == 14);
    CHECK(j["pset"].size() == 14);
  }

  const RaduReport bad = radu_verify(tuple(kR3, 0), {}, 2, eta_series_provider(kR3, 2));
  CHECK(bad.status == RaduStatus::Failed);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->first == 0);
  CHECK(bad.witness->second == 0);

  const RaduReport inapp = radu_verify(RaduTuple{841, 3, 8, kR3, 64}, {}, 2, eta_series_provider(kR3, 2));
  CHECK(inapp.status != RaduStatus::Proven);

  // A provider that stops short is rejected.
  CHECK_THROWS_AS(radu_verify(tuple(kR3, 64), {}, 2, [](std::int64_t) { return Series(Ring::mod_pow2(1), 10); }),
                  TruncationError);
}

TEST_CASE("proven orbits agree with direct claim checks") {
  // c_r for r = (4,-1) is sum b_3(2n) q^n mod 2; for (-1,4) it is sum b_21(4n+1) q^n.
  const Series b3 = regular_series(3, 2 * (841 * 100 + 818), Ring::mod_pow2(1));
  for (const auto a : kAlpha) CHECK(claim_check({1682, 2 * a, 2, ""}, b3, 100).status == Verdict::Pass);
  const Series cr = eta_product(kR3, 841 * 100 + 818, Ring::mod_pow2(1));
  for (const auto a : kAlpha) CHECK(claim_check({841, a, 2, ""}, cr, 100).status == Verdict::Pass);
}
