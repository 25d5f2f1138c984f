#include <doctest.h>

#include <random>

#include "lreg/error.hpp"
#include "lreg/qseries.hpp"
#include "unit/oracles.hpp"

using namespace lreg;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

const Ring kExact = Ring::exact();
const Ring kMod2 = Ring::mod_pow2(1);

Series exact_of(const std::vector<BigInt>& c) { return Series::from_coeffs(kExact, c); }

std::vector<Ring> all_rings() {
  return {Ring::exact(), Ring::mod_pow2(1), Ring::mod_pow2(3), Ring::mod_pow2(63)};
}

}  // namespace

TEST_CASE("ring parsing and moduli") {
  CHECK(Ring::parse("exact").is_exact());
  CHECK(Ring::parse("8") == Ring::mod_pow2(3));
  CHECK(Ring::parse("mod2^5") == Ring::mod_pow2(5));
  CHECK(Ring::parse("2^1").is_mod2());
  CHECK_THROWS_AS(Ring::parse("6"), InvalidArgument);
  CHECK_THROWS_AS(Ring::mod_pow2(64), InvalidArgument);
  CHECK(Ring::mod_pow2(3).supports_modulus(4));
  CHECK_FALSE(Ring::mod_pow2(3).supports_modulus(16));
  CHECK_FALSE(Ring::mod_pow2(3).supports_modulus(3));
  CHECK(Ring::exact().supports_modulus(7));
}

TEST_CASE("mul: difference of squares and truncation to the minimum") {
  const Series a = exact_of(ints({1, 1, 0, 0, 0, 0}));
  const Series b = exact_of(ints({1, -1, 0, 0, 0, 0, 0, 0}));
  const Series p = mul(a, b);
  CHECK(p.trunc() == 5);
  CHECK(p.coeffs() == ints({1, 0, -1, 0, 0, 0}));
  CHECK_THROWS_AS(mul(a, a.reduced(kMod2)), RingMismatch);
}

TEST_CASE("inverse: geometric series, partition numbers, non-units") {
  CHECK(inverse(exact_of(ints({1, -1, 0, 0, 0}))).coeffs() == ints({1, 1, 1, 1, 1}));
  const Series pinv = inverse(eta_factor(1, 1, 6, kExact));
  CHECK(pinv.coeffs() == oracle::partition_dp(0, 6));
  CHECK(pinv.coeffs() == ints({1, 1, 2, 3, 5, 7, 11}));
  CHECK(inverse(eta_factor(1, 1, 6, kMod2)).coeffs() == ints({1, 1, 0, 1, 1, 1, 1}));
  CHECK_THROWS_AS(inverse(exact_of(ints({2, 1}))), NonUnit);
  CHECK_THROWS_AS(inverse(Series::monomial(kMod2, 4, 1)), NonUnit);
  CHECK(compare(inverse(exact_of(ints({-1, 3, 0, 1}))) * exact_of(ints({-1, 3, 0, 1})),
                Series::one(kExact, 3))
            .equal);
}

TEST_CASE("f_1 times 1/f_1 is 1 in every ring") {
  for (const Ring& r : all_rings()) {
    const Series f = eta_factor(1, 1, 50, r);
    CHECK(compare(f * inverse(f), Series::one(r, 50)).equal);
    CHECK(compare(inverse(f) * f, Series::one(r, 50)).equal);
  }
}

TEST_CASE("eta_factor matches the pentagonal expansion and the naive product") {
  CHECK(eta_factor(1, 1, 7, kExact).coeffs() == ints({1, -1, -1, 0, 0, 1, 0, 1}));
  CHECK(eta_factor(3, 1, 7, kExact).coeffs() == ints({1, 0, 0, -1, 0, 0, -1, 0}));
  CHECK(compare(eta_factor(1, 0, 9, kExact), Series::one(kExact, 9)).equal);
  CHECK(eta_factor(1, 1, 200, kExact).coeffs() == oracle::naive_eta(1, 200));
  CHECK(eta_factor(7, 1, 200, kExact).coeffs() == oracle::naive_eta(7, 200));
  // Higher powers against repeated naive multiplication.
  auto f2 = oracle::naive_eta(2, 120);
  auto cube = oracle::naive_mul(oracle::naive_mul(f2, f2), f2);
  CHECK(eta_factor(2, 3, 119, kExact).coeffs() == std::vector<BigInt>(cube.begin(), cube.end() - 1));
  CHECK_THROWS_AS(eta_factor(0, 1, 5, kExact), InvalidArgument);
}

TEST_CASE("mod-2 eta products use f^2 = f(q^2) consistently with exact reduction") {
  const std::map<std::int64_t, std::int64_t> e{{1, 8}, {3, -2}, {7, 5}, {2, -3}};
  CHECK(compare(eta_product(e, 700, kMod2), eta_product(e, 700, kExact).reduced(kMod2)).equal);
}

TEST_CASE("f_1^2 mod 2 is the theta series of n(3n-1)") {
  const Series sq = eta_factor(1, 2, 12, kMod2);
  CHECK(sq.coeffs() == ints({1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0}));
  CHECK(compare(sq, theta_series({3, -1, 0}, ThetaRange::AllIntegers, 12, kMod2)).equal);
}

TEST_CASE("theta_series enumerates every exponent up to the truncation") {
  CHECK(theta_series({1, 0, 0}, ThetaRange::AllIntegers, 5, kExact).coeffs() == ints({1, 2, 0, 0, 2, 0}));
  CHECK(theta_series({1, 0, 0}, ThetaRange::PositiveOnly, 5, kExact).coeffs() == ints({0, 1, 0, 0, 1, 0}));
  CHECK(theta_series({1, 0, 10}, ThetaRange::AllIntegers, 5, kExact).count_nonzero() == 0);
  // (f_3^3/f_9)^2 mod 2 = 1 + sum q^{6(3n-1)^2}
  Series lhs = eta_product({{3, 6}, {9, -2}}, 100, kMod2);
  Series rhs = Series::one(kMod2, 100) + theta_series({54, -36, 6}, ThetaRange::AllIntegers, 100, kMod2);
  CHECK(compare(lhs, rhs).equal);
  // Off-centre vertex: r(n) = (n - 10)^2.
  CHECK(theta_series({1, -20, 100}, ThetaRange::AllIntegers, 4, kExact).coeffs() == ints({1, 2, 0, 0, 2}));
  CHECK_THROWS_AS(theta_series({0, 1, 0}, ThetaRange::AllIntegers, 4, kExact), InvalidArgument);
}

TEST_CASE("dissect and inflate") {
  std::vector<BigInt> n_coeffs;
  for (long n = 0; n <= 21; ++n) n_coeffs.emplace_back(n);
  const Series x = exact_of(n_coeffs);
  const Series odd = dissect(x, 2, 1);
  CHECK(odd.trunc() == 10);
  for (long n = 0; n <= 10; ++n) CHECK(odd.coeff(n) == 2 * n + 1);
  CHECK(compare(dissect(x, 1, 0), x).equal);
  CHECK(inflate(exact_of(ints({1, 1})), 3).coeffs() == ints({1, 0, 0, 1}));
  CHECK(compare(dissect(inflate(x, 5), 5, 0), x).equal);
  CHECK(compare(inflate(eta_factor(1, 1, 20, kExact), 17), eta_factor(17, 1, 340, kExact)).equal);
  CHECK(inflate(x, 4, 30).trunc() == 30);
  CHECK_THROWS_AS(dissect(x, 3, 3), InvalidArgument);
  CHECK_THROWS_AS(dissect(Series(kExact, 1), 5, 3), TruncationError);
  // b_3 even part mod 2 is f_1^4/f_3.
  const Series b3 = eta_product({{3, 1}, {1, -1}}, 61, kMod2);
  CHECK(compare(dissect(b3, 2, 0), eta_product({{1, 4}, {3, -1}}, 30, kMod2)).equal);
}

TEST_CASE("property: dissections interleave back to the original") {
  std::mt19937_64 rng(7);
  for (const Ring& r : all_rings()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto t = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 200)(rng));
      const Series x = Series::from_coeffs(r, oracle::random_coeffs(rng, t + 1, -50, 50));
      const std::int64_t d = std::uniform_int_distribution<int>(1, 7)(rng);
      std::vector<Series> pieces;
      for (std::int64_t c = 0; c < d && c <= x.trunc(); ++c) pieces.push_back(shift(inflate(dissect(x, d, c), d), c));
      for (std::int64_t n = 0; n <= x.trunc(); ++n) {
        BigInt total = 0;
        for (const Series& p : pieces) {
          if (n <= p.trunc()) total += p.coeff(n);
        }
        CHECK(Series::monomial(r, n, n, total).coeff(n) == x.coeff(n));
      }
    }
  }
}

TEST_CASE("property: ring laws up to truncation") {
  std::mt19937_64 rng(11);
  for (const Ring& r : all_rings()) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto t = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 256)(rng));
      const double dens = trial % 2 == 0 ? 1.0 : 0.05;
      const Series a = Series::from_coeffs(r, oracle::random_coeffs(rng, t, -1000, 1000, dens));
      const Series b = Series::from_coeffs(r, oracle::random_coeffs(rng, t, -1000, 1000));
      const Series c = Series::from_coeffs(r, oracle::random_coeffs(rng, t, -1000, 1000, dens));
      CHECK(compare(a * b, b * a).equal);
      CHECK(compare((a * b) * c, a * (b * c)).equal);
      CHECK(compare(a * (b + c), a * b + a * c).equal);
      CHECK(compare(a - a, Series(r, a.trunc())).equal);
    }
  }
}

TEST_CASE("property: Z/2^k results equal exact results reduced") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const auto t = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 150)(rng));
    auto ca = oracle::random_coeffs(rng, t, -30, 30, 0.3);
    ca[0] = trial % 2 == 0 ? 1 : -1;
    const auto cb = oracle::random_coeffs(rng, t, -30, 30);
    const Series a = exact_of(ca);
    const Series b = exact_of(cb);
    const std::int64_t d = std::uniform_int_distribution<int>(1, 5)(rng);
    const Series results[] = {a * b, inverse(a), divide(b, a), dissect(b, d, 0), inflate(a, d),
                              scale(b, -7), shift(a, 3), a - b};
    for (const int k : {1, 2, 5, 63}) {
      const Ring r = Ring::mod_pow2(k);
      const Series ar = a.reduced(r);
      const Series br = b.reduced(r);
      const Series reduced[] = {ar * br, inverse(ar), divide(br, ar), dissect(br, d, 0), inflate(ar, d),
                                scale(br, -7), shift(ar, 3), ar - br};
      for (std::size_t i = 0; i < std::size(results); ++i) {
        CHECK_MESSAGE(compare(results[i].reduced(r), reduced[i]).equal, "op ", i, " k=", k);
      }
    }
  }
}

TEST_CASE("long mod-2 division crosses many words") {
  // Bit-packed division against the word kernel over Z/2^2.
  const Series num = eta_product({{3, 1}}, 5000, Ring::mod_pow2(2));
  const Series q2 = div_sparse(num, pentagonal_terms(1, 5000));
  const Series q1 = div_sparse(num.reduced(kMod2), pentagonal_terms(1, 5000));
  CHECK(compare(q2.reduced(kMod2), q1).equal);
  CHECK(compare(divide(num.reduced(kMod2), eta_factor(1, 1, 5000, kMod2)), q1).equal);
}

TEST_CASE("compare reports the first mismatch and differing truncations") {
  const Series a = exact_of(ints({1, 2, 3, 4}));
  const Series b = exact_of(ints({1, 2, 5}));
  const Comparison c = compare(a, b);
  CHECK_FALSE(c.equal);
  CHECK(c.first_mismatch == 2);
  CHECK(c.trunc_differs);
  CHECK(c.compared_to == 2);
}

TEST_CASE("JSON round trip and validation") {
  Series big = eta_product({{1, -1}}, 500, kExact);
  CHECK(big.coeff(500) > BigInt("1000000000000000000000"));
  CHECK(compare(series_from_json(to_json(big)), big).equal);
  const Series m = eta_product({{1, -1}}, 40, Ring::mod_pow2(3));
  const auto j = to_json(m);
  CHECK(j["ring"] == "mod2^3");
  CHECK(j["trunc"] == 40);
  CHECK(j["coeffs"][5] == 7);
  CHECK(compare(series_from_json(j), m).equal);
  nlohmann::json bad = j;
  bad["coeffs"][0] = 9;
  CHECK_THROWS_AS(series_from_json(bad), InvalidArgument);
  bad = j;
  bad["trunc"] = 3;
  CHECK_THROWS_AS(series_from_json(bad), InvalidArgument);
}
