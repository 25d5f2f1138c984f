// Command-line front end. Talks to the library through the C API only.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lreg/lreg.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kInapplicable = 2, kUsage = 3, kInternal = 4 };

class Owned {
 public:
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { lreg_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ == nullptr ? std::string() : std::string(p_); }

 private:
  char* p_ = nullptr;
};

class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { lreg_series_free(s_); }
  lreg_series** out() { return &s_; }
  const lreg_series* get() const { return s_; }

 private:
  lreg_series* s_ = nullptr;
};

int status_exit(lreg_status s) {
  switch (s) {
    case LREG_OK:
      return kPass;
    case LREG_INAPPLICABLE:
      return kInapplicable;
    case LREG_INVALID_ARGUMENT:
    case LREG_RING_MISMATCH:
    case LREG_NON_UNIT:
    case LREG_TRUNCATION:
      return kUsage;
    default:
      return kInternal;
  }
}

int verdict_exit(lreg_verdict v) {
  switch (v) {
    case LREG_VERDICT_PASS:
      return kPass;
    case LREG_VERDICT_FAIL:
      return kFail;
    case LREG_VERDICT_INAPPLICABLE:
      return kInapplicable;
  }
  return kInternal;
}

// Library failures are reported on stderr; the exit code follows the status.
bool ok(lreg_status s, int& code) {
  if (s == LREG_OK) return true;
  std::cerr << "lreg: " << lreg_status_name(s) << ": " << lreg_last_error() << "\n";
  code = status_exit(s);
  return false;
}

int finish(lreg_status s, const lreg_verdict& v, const Owned& report) {
  int code = kPass;
  if (!ok(s, code)) return code;
  std::cout << report.str();
  return verdict_exit(v);
}

// "2", "8", "2^3" -> ring name understood by the library.
std::string ring_for_mod(const std::string& mod) {
  if (mod == "0" || mod == "exact") return "exact";
  return mod;
}

std::vector<std::int64_t> split_int64(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size() || v < 1) throw CLI::ValidationError("--checkpoints", "expected positive integers: " + text);
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Options {
  int jobs = 0;

  std::string spec;
  std::string ring = "exact";
  std::string format = "json";
  std::int64_t terms = 100;
  int ell = 3;

  std::string id;
  bool list = false;
  std::string lhs, rhs;
  std::int64_t terms_exact = -1;

  std::int64_t A = 1, B = 0, nmax = 100;
  std::string mod = "2";

  std::string eta, eta_den;
  std::int64_t level = 1;
  std::int64_t prime = 2, alpha = 1;

  std::int64_t weight = 2;
  bool same_character = false;
  bool level51 = false;

  std::int64_t m = 0, M = 0, N = 0, t = 0;
  std::string r, rprime, series = "auto";

  std::int64_t p = 17, bound = 2000, pmin = 5, pmax = 97, k = 1, check = 1000;

  std::string checkpoints = "1000,10000,100000,1000000";
  std::string csv_path;
  bool all_residues = false;

  std::string theorem;
};

int run_expand(const Options& o, bool regular) {
  const std::string spec = regular ? "b" + std::to_string(o.ell) : o.spec;
  Handle s;
  int code = kPass;
  if (!ok(lreg_series_from_spec(spec.c_str(), o.terms, o.ring.c_str(), s.out()), code)) return code;
  if (o.format == "plain") {
    for (std::int64_t n = 0; n <= lreg_series_trunc(s.get()); ++n) {
      Owned c;
      if (!ok(lreg_series_coeff(s.get(), n, c.out()), code)) return code;
      std::cout << n << " " << c.str() << "\n";
    }
    return kPass;
  }
  Owned j;
  if (!ok(lreg_series_to_json(s.get(), j.out()), code)) return code;
  std::cout << j.str();
  return kPass;
}

int run_identity(const Options& o) {
  Owned report;
  lreg_verdict v = LREG_VERDICT_FAIL;
  if (o.list) {
    int code = kPass;
    if (!ok(lreg_identity_catalog(report.out()), code)) return code;
    std::cout << report.str();
    return kPass;
  }
  if (!o.id.empty()) {
    const std::int64_t exact = o.terms_exact >= 0 ? o.terms_exact : o.terms;
    return finish(lreg_identity_verify(o.id.c_str(), exact, o.terms, &v, report.out()), v, report);
  }
  if (o.lhs.empty() || o.rhs.empty()) throw CLI::RequiredError("--id, --list or --lhs/--rhs");
  return finish(lreg_identity_check(o.lhs.c_str(), o.rhs.c_str(), o.ring.c_str(), o.terms, &v, report.out()), v,
                report);
}

int run_claim(const Options& o) {
  // The source must reach A*nmax + B unless a longer expansion is requested.
  const std::int64_t need = o.A * o.nmax + o.B;
  const std::int64_t terms = o.terms >= 0 ? o.terms : need;
  Handle s;
  int code = kPass;
  if (!ok(lreg_series_from_spec(o.spec.c_str(), terms, ring_for_mod(o.mod).c_str(), s.out()), code)) return code;
  Owned report;
  lreg_verdict v = LREG_VERDICT_FAIL;
  return finish(lreg_claim_check(s.get(), o.A, o.B, o.mod.c_str(), o.nmax, &v, report.out()), v, report);
}

int run_sturm(const Options& o) {
  Owned report;
  lreg_verdict v = LREG_VERDICT_FAIL;
  if (o.level51) return finish(lreg_sturm_level51(&v, report.out()), v, report);
  std::int64_t bound = 0;
  int code = kPass;
  if (!ok(lreg_sturm_bound(o.weight, o.level, o.same_character ? 1 : 0, &bound), code)) return code;
  std::cout << "{\n  \"bound\": " << bound << ",\n  \"level\": " << o.level
            << ",\n  \"same_character\": " << (o.same_character ? "true" : "false") << ",\n  \"weight\": " << o.weight
            << "\n}\n";
  return kPass;
}

int run_density(const Options& o) {
  const std::vector<std::int64_t> xs = split_int64(o.checkpoints);
  Owned csv, report;
  int code = kPass;
  if (!ok(lreg_density_curve(o.spec.c_str(), o.mod.c_str(), xs.data(), xs.size(), o.all_residues ? 1 : 0,
                             csv.out(), report.out()),
          code)) {
    return code;
  }
  if (!o.csv_path.empty()) {
    std::ofstream f(o.csv_path, std::ios::binary);
    if (!(f << csv.str())) {
      std::cerr << "lreg: cannot write " << o.csv_path << "\n";
      return kInternal;
    }
  }
  std::cout << (o.format == "csv" ? csv.str() : report.str());
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l-regular partition congruences: q-series, eta-quotients, Radu and Hecke checks, lacunarity"};
  app.set_version_flag("--version", lreg_version());
  app.require_subcommand(1);
  Options o;
  app.add_option("--jobs", o.jobs, "Worker cap for parallel scans (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);

  auto add_ring = [&](CLI::App* c) {
    c->add_option("--ring", o.ring, "exact, mod2, mod2^k or a power of two")->capture_default_str();
  };

  auto* expand = app.add_subcommand("expand", "Expand a series spec to a truncated q-series");
  expand->add_option("--series", o.spec, "b<ell>, b3even, b9odd, b9mult4, b21odd4, eta:<d:r,...> or expr:<text>")
      ->required();
  expand->add_option("--terms", o.terms, "Truncation T (coefficients 0..T)")->check(CLI::NonNegativeNumber);
  add_ring(expand);
  expand->add_option("--format", o.format, "json or plain")->check(CLI::IsMember({"json", "plain"}));

  auto* bseries = app.add_subcommand("bseries", "Expand f_ell/f_1");
  bseries->add_option("--ell", o.ell, "ell >= 2")->required()->check(CLI::Range(2, 1000000));
  bseries->add_option("--terms", o.terms, "Truncation T")->check(CLI::NonNegativeNumber);
  add_ring(bseries);
  bseries->add_option("--format", o.format, "json or plain")->check(CLI::IsMember({"json", "plain"}));

  auto* identity = app.add_subcommand("identity", "Verify a catalog identity or an ad hoc one");
  identity->add_option("--id", o.id, "Catalog id, I1..I15");
  identity->add_flag("--list", o.list, "Print the catalog");
  identity->add_option("--terms", o.terms, "Truncation for modular checks (and exact ones unless --terms-exact)")
      ->check(CLI::NonNegativeNumber);
  identity->add_option("--terms-exact", o.terms_exact, "Truncation for exact checks")->check(CLI::NonNegativeNumber);
  identity->add_option("--lhs", o.lhs, "Left-hand expression");
  identity->add_option("--rhs", o.rhs, "Right-hand expression");
  add_ring(identity);

  auto* claim = app.add_subcommand("claim", "Check c(A n + B) == 0 mod u for 0 <= n <= nmax");
  claim->add_option("--series", o.spec, "Series spec")->required();
  claim->add_option("--A", o.A, "Progression step")->required()->check(CLI::PositiveNumber);
  claim->add_option("--B", o.B, "Progression offset")->required()->check(CLI::NonNegativeNumber);
  claim->add_option("--mod", o.mod, "Modulus (2^k shorthand accepted)");
  claim->add_option("--nmax", o.nmax, "Largest n checked")->check(CLI::NonNegativeNumber);
  o.terms = -1;
  claim->add_option("--terms", o.terms, "Source truncation (default A*nmax+B)")->check(CLI::NonNegativeNumber);

  auto* etaform = app.add_subcommand("etaform", "Eta-quotient metadata");
  etaform->require_subcommand(1);
  auto* inspect = etaform->add_subcommand("inspect", "Weight, character, cusp orders and modularity conditions");
  inspect->add_option("--eta", o.eta, "Exponents as d:r,d:r")->required();
  inspect->add_option("--level", o.level, "Level N")->required()->check(CLI::PositiveNumber);
  auto* cotron = etaform->add_subcommand("cotron", "Lacunarity criterion for an eta-quotient modulo p^a");
  cotron->add_option("--eta", o.eta, "Numerator exponents d:r")->required();
  cotron->add_option("--den", o.eta_den, "Denominator exponents d:r");
  cotron->add_option("--p", o.prime, "Prime p")->required()->check(CLI::PositiveNumber);
  cotron->add_option("--a", o.alpha, "Exponent a")->check(CLI::PositiveNumber);

  auto* sturm = app.add_subcommand("sturm", "Sturm bound, or the level-51 weight-3 congruence check");
  sturm->add_option("--weight", o.weight, "Weight k")->check(CLI::PositiveNumber);
  sturm->add_option("--level", o.level, "Level N")->check(CLI::PositiveNumber);
  sturm->add_flag("--same-character", o.same_character, "Both forms share a character");
  sturm->add_flag("--level51", o.level51, "Run the level-51 congruence check instead");

  auto* radu = app.add_subcommand("radu", "Radu congruence verification");
  radu->require_subcommand(1);
  auto* verify = radu->add_subcommand("verify", "Verify c_r(m n + t) == 0 mod u for all n");
  verify->add_option("--m", o.m, "m")->required()->check(CLI::PositiveNumber);
  verify->add_option("--M", o.M, "M")->required()->check(CLI::PositiveNumber);
  verify->add_option("--N", o.N, "N")->required()->check(CLI::PositiveNumber);
  verify->add_option("--r", o.r, "Exponents d:r over divisors of M")->required();
  verify->add_option("--t", o.t, "Residue t, 0 <= t < m")->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--mod", o.mod, "Modulus u");
  verify->add_option("--rprime", o.rprime, "Auxiliary exponents d:r over divisors of N");
  verify->add_option("--series", o.series, "Coefficient source")->check(CLI::IsMember({"auto"}));

  auto* hecke = app.add_subcommand("hecke", "Hecke self-similarity checks");
  hecke->require_subcommand(1);
  auto* selfsim = hecke->add_subcommand("selfsim", "T_p self-similarity for a single prime");
  selfsim->add_option("--p", o.p, "Prime p >= 5")->required();
  selfsim->add_option("--bound", o.bound, "Coefficients checked")->check(CLI::NonNegativeNumber);
  auto* scan = hecke->add_subcommand("scan", "Per-prime self-similarity evidence over a range");
  scan->add_option("--pmin", o.pmin, "Smallest prime")->check(CLI::NonNegativeNumber);
  scan->add_option("--pmax", o.pmax, "Largest prime")->check(CLI::NonNegativeNumber);
  scan->add_option("--bound", o.bound, "Coefficients checked")->check(CLI::NonNegativeNumber);
  auto* family = hecke->add_subcommand("family", "Iterated congruence family for p = 17");
  family->add_option("--k", o.k, "Iteration depth")->required()->check(CLI::PositiveNumber);
  family->add_option("--check", o.check, "Largest n checked")->check(CLI::NonNegativeNumber);

  auto* density = app.add_subcommand("density", "Density of vanishing coefficients modulo M");
  density->add_option("--series", o.spec, "b9odd, b9mult4, eta:<spec>, ...")->required();
  density->add_option("--mod", o.mod, "Modulus M (2^k shorthand accepted)");
  density->add_option("--checkpoints", o.checkpoints, "Comma-separated X values");
  density->add_option("--csv", o.csv_path, "Also write the curve as CSV to this file");
  density->add_flag("--all-residues", o.all_residues, "Measure every residue class r mod M");
  density->add_option("--format", o.format, "json or csv on standard output")->check(CLI::IsMember({"json", "csv"}));

  auto* reproduce = app.add_subcommand("reproduce", "Run the end-to-end pipeline for a theorem");
  reproduce->add_option("theorem", o.theorem, "1.2, 1.3, 1.4, 1.5 or 1.6")
      ->required()
      ->check(CLI::IsMember({"1.2", "1.3", "1.4", "1.5", "1.6"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Owned report;
    lreg_verdict v = LREG_VERDICT_FAIL;
    if (*expand) return run_expand(o, false);
    if (*bseries) return run_expand(o, true);
    if (*identity) return run_identity(o);
    if (*claim) return run_claim(o);
    if (*inspect) {
      int code = kPass;
      if (!ok(lreg_etaform_inspect(o.eta.c_str(), o.level, report.out()), code)) return code;
      std::cout << report.str();
      return kPass;
    }
    if (*cotron) {
      return finish(lreg_cotron(o.eta.c_str(), o.eta_den.empty() ? nullptr : o.eta_den.c_str(), o.prime, o.alpha, &v,
                                report.out()),
                    v, report);
    }
    if (*sturm) return run_sturm(o);
    if (*verify) {
      return finish(lreg_radu_verify(o.m, o.M, o.N, o.r.c_str(), o.t, o.rprime.c_str(), o.mod.c_str(), &v,
                                     report.out()),
                    v, report);
    }
    if (*selfsim) return finish(lreg_hecke_selfsim(o.p, o.bound, &v, report.out()), v, report);
    if (*scan) {
      int code = kPass;
      if (!ok(lreg_hecke_scan(o.pmin, o.pmax, o.bound, o.jobs, report.out()), code)) return code;
      std::cout << report.str();
      return kPass;
    }
    if (*family) return finish(lreg_hecke_family(o.k, o.check, &v, report.out()), v, report);
    if (*density) return run_density(o);
    if (*reproduce) return finish(lreg_reproduce(o.theorem.c_str(), &v, report.out()), v, report);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "lreg: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
