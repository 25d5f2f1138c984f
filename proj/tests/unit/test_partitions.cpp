#include <doctest.h>

#include "lreg/error.hpp"
#include "lreg/partitions.hpp"
#include "unit/oracles.hpp"

using namespace lreg;

namespace {

const Ring kExact = Ring::exact();
const Ring kMod2 = Ring::mod_pow2(1);

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("regular_series small cases") {
  CHECK(regular_series(3, 5, kExact).coeffs() == ints({1, 1, 2, 2, 4, 5}));
  CHECK(regular_series(9, 3, kExact).coeffs() == ints({1, 1, 2, 3}));
  CHECK(regular_series(2, 4, kExact).coeffs() == ints({1, 1, 1, 2, 2}));
  CHECK_THROWS_AS(regular_series(1, 4, kExact), InvalidArgument);
}

TEST_CASE("b_enumerate small cases and range") {
  CHECK(b_enumerate(3, 4) == 4);
  CHECK(b_enumerate(3, 3) == 2);
  CHECK(b_enumerate(7, 0) == 1);
  CHECK_THROWS_AS(b_enumerate(3, 61), InvalidArgument);
  CHECK_THROWS_AS(b_enumerate(3, -1), InvalidArgument);
}

TEST_CASE("enumeration, dynamic programme and eta quotient agree for n <= 60") {
  for (const std::int64_t ell : {2, 3, 9, 21}) {
    const auto dp = oracle::partition_dp(ell, kEnumerateMax);
    const Series s = regular_series(ell, kEnumerateMax, kExact);
    for (std::int64_t n = 0; n <= kEnumerateMax; ++n) {
      const BigInt e = b_enumerate(ell, n);
      CHECK(e == dp[n]);
      CHECK(s.coeff(n) == e);
      CHECK(e >= 1);
    }
  }
}

TEST_CASE("expression parsing") {
  CHECK(Expr::parse("f1").evaluate(5, kExact).coeffs() == ints({1, -1, -1, 0, 0, 1}));
  CHECK(Expr::parse("-q^2 + 3").evaluate(3, kExact).coeffs() == ints({3, 0, -1, 0}));
  CHECK(Expr::parse("(1 - q)^-1").evaluate(3, kExact).coeffs() == ints({1, 1, 1, 1}));
  CHECK(Expr::parse("inflate(1 + q, 3)").evaluate(4, kExact).coeffs() == ints({1, 0, 0, 1, 0}));
  CHECK(Expr::parse("theta_pos(1,0,0)").evaluate(4, kExact).coeffs() == ints({0, 1, 0, 0, 1}));
  CHECK(Expr::parse("q^7").evaluate(3, kExact).count_nonzero() == 0);
  CHECK(compare(Expr::parse("inflate(f1, 17)").evaluate(100, kExact), eta_factor(17, 1, 100, kExact)).equal);
  CHECK(compare(Expr::parse("dissect(f3/f1, 2, 0)").evaluate(30, kMod2),
                eta_product({{1, 4}, {3, -1}}, 30, kMod2))
            .equal);
  CHECK_THROWS_AS(Expr::parse("f0"), InvalidArgument);
  CHECK_THROWS_AS(Expr::parse("f1 +"), InvalidArgument);
  CHECK_THROWS_AS(Expr::parse("g2"), InvalidArgument);
  CHECK_THROWS_AS(Expr::parse("dissect(f1, 2, 2)"), InvalidArgument);
  CHECK_THROWS_AS(Expr::parse("f1/3").evaluate(4, kExact), InvalidArgument);
  CHECK_THROWS_AS(Expr::parse("q^-1").evaluate(4, kExact), InvalidArgument);
}

TEST_CASE("catalog shape") {
  const auto& cat = identity_catalog();
  REQUIRE(cat.size() == 15);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(cat[i].id == "I" + std::to_string(i + 1));
    CHECK_FALSE(cat[i].anchor.empty());
  }
  CHECK(find_identity("I9").checks.size() == 2);
  CHECK_THROWS_AS(find_identity("I99"), InvalidArgument);
  CHECK_THROWS_AS(parse_catalog("[A]\nanchor: x\n[A]\nmod2: f1 = f1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_catalog("[A]\nmod6: f1 = f1\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_catalog("[A]\nanchor: no checks\n"), InvalidArgument);
}

TEST_CASE("every catalog identity holds at several truncations") {
  for (const Identity& id : identity_catalog()) {
    for (const std::int64_t t : {100, 500}) {
      const VerificationReport r = verify_identity(id, t, 1000);
      CHECK_MESSAGE(r.status == Verdict::Pass, id.id, " T=", t);
    }
  }
}

TEST_CASE("exact identities against naive products") {
  const long t = 150;
  // f1^3/f3 = f4^3/f12 - 3q f2^2 f12^3/(f4 f6^2)
  auto lhs = oracle::naive_eta_quotient({{1, 3}, {3, -1}}, t);
  auto a = oracle::naive_eta_quotient({{4, 3}, {12, -1}}, t);
  auto b = oracle::naive_eta_quotient({{2, 2}, {12, 3}, {4, -1}, {6, -2}}, t);
  for (long n = 0; n <= t; ++n) CHECK(lhs[n] == a[n] - 3 * (n >= 1 ? b[n - 1] : mpz_class(0)));
  const Series ev = find_identity("I10").checks[0].rhs.evaluate(t, kExact);
  for (long n = 0; n <= t; ++n) CHECK(ev.coeff(n) == lhs[n]);

  // odd part of f9/f1 equals f2^2 f3 f18/(f1^3 f6)
  auto g = oracle::naive_eta_quotient({{9, 1}, {1, -1}}, 2 * t + 1);
  auto h = oracle::naive_eta_quotient({{2, 2}, {3, 1}, {18, 1}, {1, -3}, {6, -1}}, t);
  for (long n = 0; n <= t; ++n) CHECK(g[2 * n + 1] == h[n]);
}

TEST_CASE("constructed mismatches are caught at the right exponent") {
  const Identity& i1 = find_identity("I1");
  Identity perturbed{"I1+q", i1.anchor,
                     {IdentityCheck{kMod2, i1.checks[0].lhs, Expr::parse(i1.checks[0].rhs.text() + " + q")}}};
  const VerificationReport r = verify_identity(perturbed, 200);
  CHECK(r.status == Verdict::Fail);
  CHECK(r.counterexample == 1);

  // The split with f9^2 in the second numerator does not hold.
  Identity printed{"split", "", {IdentityCheck{kMod2, Expr::parse("dissect(f9/f1, 4, 0)"),
                                               Expr::parse("f3^6*f1^2/f9^2 + q*f3^6*f9^2/f1")}}};
  const VerificationReport bad = verify_identity(printed, 200);
  CHECK(bad.status == Verdict::Fail);
  CHECK(bad.counterexample == 10);
}

TEST_CASE("report JSON") {
  const auto j = verify_identity(find_identity("I9"), 50, 60).to_json();
  CHECK(j["status"] == "pass");
  CHECK(j["details"]["checks"].size() == 2);
  CHECK(j["details"]["checks"][0]["ring"] == "exact");
  CHECK(j["details"]["checks"][0]["trunc"] == 50);
  CHECK(j["details"]["checks"][1]["trunc"] == 60);
}

TEST_CASE("claim_check") {
  const Series b3 = regular_series(3, 2 * (841 * 100 + 760), kMod2);
  CHECK(claim_check({1682, 12, 2, "b3 alpha=6"}, b3, 100).status == Verdict::Pass);
  const VerificationReport even = claim_check({2, 0, 2, "b3 even"}, b3, 10);
  CHECK(even.status == Verdict::Fail);
  CHECK(even.counterexample == 0);
  CHECK_THROWS_AS(claim_check({1682, 12, 2, ""}, b3, 200), TruncationError);
  CHECK_THROWS_AS(claim_check({2, 0, 4, ""}, b3, 10), RingMismatch);

  const Series b21 = regular_series(21, 4 * (841 * 100 + 8) + 1, kMod2);
  CHECK(claim_check({3364, 33, 2, "b21 beta=8"}, b21, 100).status == Verdict::Pass);

  const Series exact = regular_series(3, 40, kExact);
  const VerificationReport r = claim_check({1, 0, 1, ""}, exact, 40);
  CHECK(r.status == Verdict::Pass);
  CHECK(claim_check({1, 3, 3, ""}, exact, 5).counterexample.has_value());
}
