#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "lreg/lreg.h"

namespace {

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  lreg_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(lreg_version()) == "1.0.0");
  CHECK(std::string(lreg_status_name(LREG_OK)) == "ok");
  CHECK(std::string(lreg_status_name(LREG_INAPPLICABLE)) == "inapplicable");
}

TEST_CASE("series handles round trip through JSON") {
  lreg_series* s = nullptr;
  REQUIRE(lreg_series_from_spec("b3", 30, "exact", &s) == LREG_OK);
  CHECK(lreg_series_trunc(s) == 30);
  char* c = nullptr;
  REQUIRE(lreg_series_coeff(s, 10, &c) == LREG_OK);
  CHECK(take(c) == "22");

  char* j = nullptr;
  REQUIRE(lreg_series_to_json(s, &j) == LREG_OK);
  const std::string text = take(j);
  lreg_series* back = nullptr;
  REQUIRE(lreg_series_from_json(text.c_str(), &back) == LREG_OK);
  int equal = 0;
  std::int64_t first = 0;
  REQUIRE(lreg_series_compare(s, back, &equal, &first) == LREG_OK);
  CHECK(equal == 1);
  CHECK(first == -1);

  lreg_series* inv = nullptr;
  lreg_series* prod = nullptr;
  REQUIRE(lreg_series_inverse(s, &inv) == LREG_OK);
  REQUIRE(lreg_series_mul(s, inv, &prod) == LREG_OK);
  lreg_series* one = nullptr;
  REQUIRE(lreg_series_from_spec("eta:1:0", 30, "exact", &one) == LREG_OK);
  REQUIRE(lreg_series_compare(prod, one, &equal, &first) == LREG_OK);
  CHECK(equal == 1);

  for (lreg_series* h : {s, back, inv, prod, one}) lreg_series_free(h);
}

TEST_CASE("errors map to status codes and set the last error") {
  lreg_series* s = nullptr;
  CHECK(lreg_series_from_spec("nonsense", 10, "exact", &s) == LREG_INVALID_ARGUMENT);
  CHECK(s == nullptr);
  CHECK(std::strlen(lreg_last_error()) > 0);
  CHECK(lreg_series_from_json("{not json", &s) == LREG_INVALID_ARGUMENT);
  CHECK(lreg_series_from_spec("b3", 10, nullptr, &s) == LREG_INVALID_ARGUMENT);

  lreg_series* a = nullptr;
  lreg_series* b = nullptr;
  REQUIRE(lreg_series_from_spec("b3", 10, "exact", &a) == LREG_OK);
  REQUIRE(lreg_series_from_spec("b3", 10, "mod2", &b) == LREG_OK);
  CHECK(std::strlen(lreg_last_error()) == 0);
  lreg_series* sum = nullptr;
  CHECK(lreg_series_add(a, b, &sum) == LREG_RING_MISMATCH);

  lreg_series* q = nullptr;
  REQUIRE(lreg_series_from_spec("expr:q", 10, "exact", &q) == LREG_OK);
  lreg_series* inv = nullptr;
  CHECK(lreg_series_inverse(q, &inv) == LREG_NON_UNIT);

  char* report = nullptr;
  lreg_verdict v = LREG_VERDICT_PASS;
  CHECK(lreg_claim_check(b, 2, 0, "2", 100, &v, &report) == LREG_TRUNCATION);
  CHECK(report == nullptr);
  CHECK(lreg_claim_check(b, 1, 0, "4", 5, &v, &report) == LREG_RING_MISMATCH);
  CHECK(lreg_radu_verify(841, 3, 29, "1:4,3:-1", 64, "", "2", &v, &report) == LREG_OK);
  CHECK(v == LREG_VERDICT_INAPPLICABLE);
  take(report);
  for (lreg_series* h : {a, b, q}) lreg_series_free(h);
}

TEST_CASE("reports carry verdicts") {
  char* report = nullptr;
  lreg_verdict v = LREG_VERDICT_FAIL;
  REQUIRE(lreg_identity_verify("I12", 500, 500, &v, &report) == LREG_OK);
  CHECK(v == LREG_VERDICT_PASS);
  const auto j = nlohmann::json::parse(take(report));
  CHECK(j["status"] == "pass");

  REQUIRE(lreg_identity_check("f1^2", "f2", "mod2", 50, &v, &report) == LREG_OK);
  CHECK(v == LREG_VERDICT_PASS);
  take(report);
  REQUIRE(lreg_identity_check("f1", "f2", "mod2", 50, &v, &report) == LREG_OK);
  CHECK(v == LREG_VERDICT_FAIL);
  take(report);

  std::int64_t bound = 0;
  REQUIRE(lreg_sturm_bound(3, 51, 1, &bound) == LREG_OK);
  CHECK(bound == 18);

  lreg_series* b = nullptr;
  REQUIRE(lreg_series_from_spec("b3even", 841 * 3 + 6, "mod2", &b) == LREG_OK);
  REQUIRE(lreg_claim_check(b, 841, 6, "2", 3, &v, &report) == LREG_OK);
  CHECK(v == LREG_VERDICT_PASS);
  take(report);
  lreg_series_free(b);
}

TEST_CASE("density through the C API") {
  const std::int64_t xs[] = {1000};
  char* csv = nullptr;
  REQUIRE(lreg_density_curve("b9odd", "2", xs, 1, 0, &csv, nullptr) == LREG_OK);
  CHECK(take(csv) == "X,M,r,count,delta_num,delta_den\n1000,2,0,490,49,100\n");
}
