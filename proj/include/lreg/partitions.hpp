#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lreg/expr.hpp"
#include "lreg/qseries.hpp"
#include "lreg/report.hpp"

namespace lreg {

// sum b_ell(n) q^n = f_ell / f_1.
Series regular_series(std::int64_t ell, std::int64_t trunc, Ring ring);

// Named coefficient streams:
//   b<ell>     sum b_ell(n) q^n            (e.g. b3, b21)
//   b3even     sum b_3(2n) q^n
//   b9odd      sum b_9(2n+1) q^n
//   b9mult4    sum b_9(4n) q^n
//   b21odd4    sum b_21(4n+1) q^n
//   eta:<map>  prod f_d^{r_d} for "d:r,d:r"
//   expr:<e>   any catalog expression
Series series_from_spec(std::string_view spec, std::int64_t trunc, Ring ring);

// Counts ell-regular partitions of n by listing them one by one.
constexpr std::int64_t kEnumerateMax = 60;
BigInt b_enumerate(std::int64_t ell, std::int64_t n);

struct IdentityCheck {
  Ring ring;
  Expr lhs;
  Expr rhs;
};

struct Identity {
  std::string id;
  std::string anchor;
  std::vector<IdentityCheck> checks;
};

std::vector<Identity> parse_catalog(std::string_view text);
// The built-in catalog, parsed once.
const std::vector<Identity>& identity_catalog();
const std::string& identity_catalog_text();
const Identity& find_identity(std::string_view id);

// Every check of the identity at truncation trunc.
VerificationReport verify_identity(const Identity& identity, std::int64_t trunc);
// Exact checks at trunc_exact, modular checks at trunc_modular.
VerificationReport verify_identity(const Identity& identity, std::int64_t trunc_exact,
                                   std::int64_t trunc_modular);

// Checks claim against source coefficients for 0 <= n <= nmax.
VerificationReport claim_check(const CongruenceClaim& claim, const Series& source, std::int64_t nmax);

}  // namespace lreg
