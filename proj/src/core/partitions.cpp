#include "lreg/partitions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lreg/error.hpp"

namespace lreg {

namespace {

const char kCatalogText[] =
#include "catalog.inc"
    ;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Enumerates partitions of n with parts <= max_part, none divisible by ell.
void enumerate(std::int64_t ell, std::int64_t n, std::int64_t max_part, BigInt& count) {
  if (n == 0) {
    ++count;
    return;
  }
  for (std::int64_t part = std::min(n, max_part); part >= 1; --part) {
    if (part % ell == 0) continue;
    enumerate(ell, n - part, part, count);
  }
}

}  // namespace

Series regular_series(std::int64_t ell, std::int64_t trunc, Ring ring) {
  if (ell < 2) throw InvalidArgument("regular_series requires ell >= 2");
  return eta_product({{ell, 1}, {1, -1}}, trunc, ring);
}

Series series_from_spec(std::string_view spec, std::int64_t trunc, Ring ring) {
  if (trunc < 0) throw InvalidArgument("negative truncation");
  if (spec.starts_with("eta:")) return eta_product(parse_exponent_map(std::string(spec.substr(4))), trunc, ring);
  if (spec.starts_with("expr:")) return Expr::parse(spec.substr(5)).evaluate(trunc, ring);
  static const std::map<std::string, std::string, std::less<>> named{
      {"b3even", "dissect(f3/f1, 2, 0)"},
      {"b9odd", "dissect(f9/f1, 2, 1)"},
      {"b9mult4", "dissect(f9/f1, 4, 0)"},
      {"b21odd4", "dissect(f21/f1, 4, 1)"},
  };
  if (const auto it = named.find(spec); it != named.end()) return Expr::parse(it->second).evaluate(trunc, ring);
  if (spec.size() > 1 && spec[0] == 'b' &&
      std::all_of(spec.begin() + 1, spec.end(), [](char c) { return c >= '0' && c <= '9'; }) && spec.size() < 8) {
    return regular_series(std::stoll(std::string(spec.substr(1))), trunc, ring);
  }
  throw InvalidArgument("unknown series '" + std::string(spec) + "'");
}

BigInt b_enumerate(std::int64_t ell, std::int64_t n) {
  if (ell < 2) throw InvalidArgument("b_enumerate requires ell >= 2");
  if (n < 0 || n > kEnumerateMax) {
    throw InvalidArgument("b_enumerate supports 0 <= n <= " + std::to_string(kEnumerateMax));
  }
  BigInt count = 0;
  enumerate(ell, n, n, count);
  return count;
}

std::vector<Identity> parse_catalog(std::string_view text) {
  std::vector<Identity> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw InvalidArgument("catalog line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) fail("malformed header");
      const std::string id = line.substr(1, line.size() - 2);
      for (const Identity& prev : out) {
        if (prev.id == id) fail("duplicate id " + id);
      }
      out.push_back(Identity{id, {}, {}});
      continue;
    }
    if (out.empty()) fail("entry before any [id] header");
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected 'key: value'");
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "anchor") {
      out.back().anchor = value;
      continue;
    }
    Ring ring;
    try {
      ring = Ring::parse(key);
    } catch (const InvalidArgument&) {
      fail("unknown key '" + key + "'");
    }
    const auto eq = value.find('=');
    if (eq == std::string::npos || value.find('=', eq + 1) != std::string::npos) {
      fail("a check needs exactly one '='");
    }
    out.back().checks.push_back(IdentityCheck{ring, Expr::parse(trim(std::string_view(value).substr(0, eq))),
                                              Expr::parse(trim(std::string_view(value).substr(eq + 1)))});
  }
  for (const Identity& id : out) {
    if (id.checks.empty()) throw InvalidArgument("catalog entry " + id.id + " has no checks");
  }
  return out;
}

const std::string& identity_catalog_text() {
  static const std::string text(kCatalogText);
  return text;
}

const std::vector<Identity>& identity_catalog() {
  static const std::vector<Identity> catalog = parse_catalog(identity_catalog_text());
  return catalog;
}

const Identity& find_identity(std::string_view id) {
  for (const Identity& entry : identity_catalog()) {
    if (entry.id == id) return entry;
  }
  throw InvalidArgument("unknown identity '" + std::string(id) + "'");
}

VerificationReport verify_identity(const Identity& identity, std::int64_t trunc) {
  return verify_identity(identity, trunc, trunc);
}

VerificationReport verify_identity(const Identity& identity, std::int64_t trunc_exact,
                                   std::int64_t trunc_modular) {
  if (trunc_exact < 1 || trunc_modular < 1) throw InvalidArgument("verify_identity requires T >= 1");
  VerificationReport report;
  report.subject = "identity " + identity.id;
  report.details["id"] = identity.id;
  report.details["anchor"] = identity.anchor;
  report.details["checks"] = nlohmann::json::array();
  for (const IdentityCheck& check : identity.checks) {
    const std::int64_t t = check.ring.is_exact() ? trunc_exact : trunc_modular;
    const Comparison cmp = compare(check.lhs.evaluate(t, check.ring), check.rhs.evaluate(t, check.ring));
    nlohmann::json entry{{"ring", check.ring.name()},
                         {"lhs", check.lhs.text()},
                         {"rhs", check.rhs.text()},
                         {"trunc", t},
                         {"status", to_string(cmp.equal ? Verdict::Pass : Verdict::Fail)}};
    if (!cmp.equal) {
      entry["first_mismatch"] = *cmp.first_mismatch;
      if (report.status == Verdict::Pass) {
        report.status = Verdict::Fail;
        report.counterexample = cmp.first_mismatch;
      }
    }
    report.bound = std::max(report.bound, t);
    report.details["checks"].push_back(std::move(entry));
  }
  return report;
}

VerificationReport claim_check(const CongruenceClaim& claim, const Series& source, std::int64_t nmax) {
  if (nmax < 0) throw InvalidArgument("claim_check requires nmax >= 0");
  if (claim.A < 1 || claim.B < 0) throw InvalidArgument("claim needs A >= 1 and B >= 0");
  if (claim.modulus < 1) throw InvalidArgument("claim modulus must be positive");
  if (!source.ring().supports_modulus(claim.modulus)) {
    throw RingMismatch("modulus " + to_string(claim.modulus) + " is not defined on ring " + source.ring().name());
  }
  const std::int64_t top = checked_add(checked_mul(claim.A, nmax), claim.B);
  if (source.trunc() < top) {
    throw TruncationError("claim needs coefficient " + std::to_string(top) + " but the series stops at " +
                          std::to_string(source.trunc()));
  }
  VerificationReport report;
  report.subject = claim.label.empty() ? "congruence claim" : claim.label;
  report.bound = nmax;
  report.details["claim"] = claim.to_json();
  report.details["deepest_index"] = top;
  for (std::int64_t n = 0; n <= nmax; ++n) {
    const std::int64_t idx = claim.A * n + claim.B;
    bool zero;
    if (source.ring().is_exact()) {
      zero = mpz_divisible_p(source.coeff(idx).get_mpz_t(), claim.modulus.get_mpz_t()) != 0;
    } else {
      zero = (source.residue(idx) & (claim.modulus.get_ui() - 1)) == 0;
    }
    if (!zero) {
      report.status = Verdict::Fail;
      report.counterexample = n;
      report.details["witness_index"] = idx;
      report.details["witness_value"] = to_string(source.coeff(idx));
      break;
    }
  }
  return report;
}

}  // namespace lreg
