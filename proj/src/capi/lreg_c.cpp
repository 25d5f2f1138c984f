#include "lreg/lreg.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "lreg/error.hpp"
#include "lreg/etaform.hpp"
#include "lreg/hecke.hpp"
#include "lreg/lacunarity.hpp"
#include "lreg/partitions.hpp"
#include "lreg/qseries.hpp"
#include "lreg/radu.hpp"
#include "lreg/reproduce.hpp"

struct lreg_series {
  lreg::Series value;
};

namespace {

thread_local std::string g_last_error;

lreg_status fail(lreg_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
lreg_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LREG_OK;
  } catch (const lreg::NonUnit& e) {
    return fail(LREG_NON_UNIT, e.what());
  } catch (const lreg::RingMismatch& e) {
    return fail(LREG_RING_MISMATCH, e.what());
  } catch (const lreg::TruncationError& e) {
    return fail(LREG_TRUNCATION, e.what());
  } catch (const lreg::Inapplicable& e) {
    return fail(LREG_INAPPLICABLE, e.what());
  } catch (const lreg::InvalidArgument& e) {
    return fail(LREG_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(LREG_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LREG_NOMEM, "out of memory");
  } catch (const std::exception& e) {
    return fail(LREG_INTERNAL, e.what());
  } catch (...) {
    return fail(LREG_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw lreg::InvalidArgument(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const nlohmann::json& j) {
  if (out != nullptr) *out = dup_string(j.dump(2) + "\n");
}

void emit_verdict(lreg_verdict* out, lreg::Verdict v) {
  if (out == nullptr) return;
  switch (v) {
    case lreg::Verdict::Pass:
      *out = LREG_VERDICT_PASS;
      break;
    case lreg::Verdict::Fail:
      *out = LREG_VERDICT_FAIL;
      break;
    case lreg::Verdict::Inapplicable:
      *out = LREG_VERDICT_INAPPLICABLE;
      break;
  }
}

lreg_series* wrap(lreg::Series s) { return new lreg_series{std::move(s)}; }

const lreg::Series& get(const lreg_series* s) {
  require(s != nullptr, "null series handle");
  return s->value;
}

std::string str(const char* s, const char* what) {
  require(s != nullptr, what);
  return s;
}

template <class Op>
lreg_status series_op(lreg_series** out, Op&& op) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    *out = wrap(op());
  });
}

}  // namespace

extern "C" {

const char* lreg_version(void) { return "1.0.0"; }

const char* lreg_status_name(lreg_status status) {
  switch (status) {
    case LREG_OK:
      return "ok";
    case LREG_INVALID_ARGUMENT:
      return "invalid argument";
    case LREG_RING_MISMATCH:
      return "ring mismatch";
    case LREG_NON_UNIT:
      return "non-unit";
    case LREG_TRUNCATION:
      return "insufficient truncation";
    case LREG_INAPPLICABLE:
      return "inapplicable";
    case LREG_NOMEM:
      return "out of memory";
    case LREG_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* lreg_last_error(void) { return g_last_error.c_str(); }

void lreg_string_free(char* s) { std::free(s); }

lreg_status lreg_series_from_spec(const char* spec, int64_t trunc, const char* ring, lreg_series** out) {
  return series_op(out, [&] {
    return lreg::series_from_spec(str(spec, "null series spec"), trunc, lreg::Ring::parse(str(ring, "null ring")));
  });
}

lreg_status lreg_series_from_json(const char* json, lreg_series** out) {
  return series_op(out, [&] { return lreg::series_from_json(nlohmann::json::parse(str(json, "null json"))); });
}

lreg_status lreg_series_theta(int64_t a, int64_t b, int64_t c, int positive_only, int64_t trunc, const char* ring,
                              lreg_series** out) {
  return series_op(out, [&] {
    return lreg::theta_series({a, b, c}, positive_only ? lreg::ThetaRange::PositiveOnly : lreg::ThetaRange::AllIntegers,
                              trunc, lreg::Ring::parse(str(ring, "null ring")));
  });
}

void lreg_series_free(lreg_series* s) { delete s; }

int64_t lreg_series_trunc(const lreg_series* s) { return s == nullptr ? -1 : s->value.trunc(); }

lreg_status lreg_series_coeff(const lreg_series* s, int64_t n, char** out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    *out = dup_string(get(s).coeff(n).get_str());
  });
}

lreg_status lreg_series_to_json(const lreg_series* s, char** out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    *out = dup_string(lreg::to_json(get(s)).dump() + "\n");
  });
}

lreg_status lreg_series_add(const lreg_series* x, const lreg_series* y, lreg_series** out) {
  return series_op(out, [&] { return lreg::add(get(x), get(y)); });
}

lreg_status lreg_series_sub(const lreg_series* x, const lreg_series* y, lreg_series** out) {
  return series_op(out, [&] { return lreg::sub(get(x), get(y)); });
}

lreg_status lreg_series_mul(const lreg_series* x, const lreg_series* y, lreg_series** out) {
  return series_op(out, [&] { return lreg::mul(get(x), get(y)); });
}

lreg_status lreg_series_inverse(const lreg_series* x, lreg_series** out) {
  return series_op(out, [&] { return lreg::inverse(get(x)); });
}

lreg_status lreg_series_dissect(const lreg_series* x, int64_t d, int64_t r, lreg_series** out) {
  return series_op(out, [&] { return lreg::dissect(get(x), d, r); });
}

lreg_status lreg_series_inflate(const lreg_series* x, int64_t d, lreg_series** out) {
  return series_op(out, [&] { return lreg::inflate(get(x), d); });
}

lreg_status lreg_series_hecke(const lreg_series* x, int64_t p, int64_t weight, int chi_p, lreg_series** out) {
  return series_op(out, [&] { return lreg::hecke_tp(get(x), {p, weight, chi_p}); });
}

lreg_status lreg_series_compare(const lreg_series* x, const lreg_series* y, int* equal, int64_t* first_mismatch) {
  return guard([&] {
    const lreg::Comparison c = lreg::compare(get(x), get(y));
    if (equal != nullptr) *equal = c.equal ? 1 : 0;
    if (first_mismatch != nullptr) *first_mismatch = c.first_mismatch.value_or(-1);
  });
}

lreg_status lreg_claim_check(const lreg_series* source, int64_t A, int64_t B, const char* modulus, int64_t nmax,
                             lreg_verdict* verdict, char** report) {
  return guard([&] {
    const lreg::CongruenceClaim claim{A, B, lreg::BigInt(str(modulus, "null modulus")), ""};
    const lreg::VerificationReport r = lreg::claim_check(claim, get(source), nmax);
    nlohmann::json j = r.to_json();
    j["trunc"] = get(source).trunc();
    emit_verdict(verdict, r.status);
    emit(report, j);
  });
}

lreg_status lreg_identity_catalog(char** report) {
  return guard([&] {
    nlohmann::json list = nlohmann::json::array();
    for (const lreg::Identity& id : lreg::identity_catalog()) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : id.checks) {
        checks.push_back({{"ring", c.ring.name()}, {"lhs", c.lhs.text()}, {"rhs", c.rhs.text()}});
      }
      list.push_back({{"id", id.id}, {"anchor", id.anchor}, {"checks", checks}});
    }
    emit(report, list);
  });
}

lreg_status lreg_identity_verify(const char* id, int64_t trunc_exact, int64_t trunc_modular, lreg_verdict* verdict,
                                 char** report) {
  return guard([&] {
    const lreg::VerificationReport r =
        lreg::verify_identity(lreg::find_identity(str(id, "null identity id")), trunc_exact, trunc_modular);
    emit_verdict(verdict, r.status);
    emit(report, r.to_json());
  });
}

lreg_status lreg_identity_check(const char* lhs, const char* rhs, const char* ring, int64_t trunc,
                                lreg_verdict* verdict, char** report) {
  return guard([&] {
    const lreg::Identity id{"custom",
                            "",
                            {lreg::IdentityCheck{lreg::Ring::parse(str(ring, "null ring")),
                                                 lreg::Expr::parse(str(lhs, "null lhs")),
                                                 lreg::Expr::parse(str(rhs, "null rhs"))}}};
    const lreg::VerificationReport r = lreg::verify_identity(id, trunc);
    emit_verdict(verdict, r.status);
    emit(report, r.to_json());
  });
}

lreg_status lreg_etaform_inspect(const char* exponents, int64_t level, char** report) {
  return guard([&] {
    const lreg::EtaQuotient eq =
        lreg::EtaQuotient::make(level, lreg::parse_exponent_map(str(exponents, "null exponents")));
    nlohmann::json j = lreg::check_modularity(eq).to_json();
    j["quotient"] = eq.to_json();
    j["holomorphy"] = lreg::is_holomorphic(eq).to_json();
    j["index"] = lreg::index_gamma0(level);
    emit(report, j);
  });
}

lreg_status lreg_sturm_bound(int64_t weight, int64_t level, int same_character, int64_t* out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    *out = lreg::sturm_bound(weight, level, same_character != 0);
  });
}

lreg_status lreg_sturm_level51(lreg_verdict* verdict, char** report) {
  return guard([&] {
    const lreg::VerificationReport r = lreg::level51_sturm_check();
    emit_verdict(verdict, r.status);
    emit(report, r.to_json());
  });
}

lreg_status lreg_cotron(const char* numerator, const char* denominator, int64_t p, int64_t a, lreg_verdict* verdict,
                        char** report) {
  return guard([&] {
    const auto num = lreg::parse_exponent_map(str(numerator, "null numerator"));
    const auto den = denominator == nullptr ? lreg::ExponentMap{} : lreg::parse_exponent_map(denominator);
    const lreg::CotronResult c = lreg::cotron_criterion(num, den, p, a);
    emit_verdict(verdict, c.lacunary ? lreg::Verdict::Pass : lreg::Verdict::Fail);
    emit(report, c.to_json());
  });
}

lreg_status lreg_radu_verify(int64_t m, int64_t M, int64_t N, const char* r, int64_t t, const char* rprime,
                             const char* modulus, lreg_verdict* verdict, char** report) {
  return guard([&] {
    const lreg::RaduTuple tuple{m, M, N, lreg::parse_exponent_map(str(r, "null exponents")), t};
    const lreg::ExponentMap rp =
        (rprime == nullptr || *rprime == '\0') ? lreg::ExponentMap{} : lreg::parse_exponent_map(rprime);
    const lreg::BigInt u(str(modulus, "null modulus"));
    const lreg::RaduReport rep = lreg::radu_verify(tuple, rp, u, lreg::eta_series_provider(tuple.r, u));
    switch (rep.status) {
      case lreg::RaduStatus::Proven:
        emit_verdict(verdict, lreg::Verdict::Pass);
        break;
      case lreg::RaduStatus::Failed:
        emit_verdict(verdict, lreg::Verdict::Fail);
        break;
      case lreg::RaduStatus::Inapplicable:
        emit_verdict(verdict, lreg::Verdict::Inapplicable);
        break;
    }
    emit(report, rep.to_json());
  });
}

lreg_status lreg_hecke_selfsim(int64_t p, int64_t bound, lreg_verdict* verdict, char** report) {
  return guard([&] {
    const lreg::SelfSimReport r = lreg::self_similarity_check(p, bound);
    emit_verdict(verdict, r.holds ? lreg::Verdict::Pass : lreg::Verdict::Fail);
    emit(report, r.to_json());
  });
}

lreg_status lreg_hecke_scan(int64_t pmin, int64_t pmax, int64_t bound, int jobs, char** report) {
  return guard([&] {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : lreg::self_similarity_scan(pmin, pmax, bound, jobs)) list.push_back(r.to_json());
    emit(report, list);
  });
}

lreg_status lreg_hecke_family(int64_t k, int64_t nmax, lreg_verdict* verdict, char** report) {
  return guard([&] {
    const lreg::VerificationReport r = lreg::family_check(k, nmax);
    emit_verdict(verdict, r.status);
    emit(report, r.to_json());
  });
}

lreg_status lreg_density_curve(const char* spec, const char* modulus, const int64_t* checkpoints,
                               size_t n_checkpoints, int all_residues, char** csv, char** report) {
  return guard([&] {
    require(checkpoints != nullptr || n_checkpoints == 0, "null checkpoint array");
    const lreg::BigInt M(str(modulus, "null modulus"));
    require(M >= 1, "modulus must be positive");
    std::vector<lreg::BigInt> residues{0};
    if (all_residues != 0) {
      require(M <= 1024, "all residues supported for moduli up to 1024");
      residues.clear();
      for (long r = 0; r < M.get_si(); ++r) residues.emplace_back(r);
    }
    const auto pts = lreg::density_curve(str(spec, "null series spec"), M,
                                         std::vector<int64_t>(checkpoints, checkpoints + n_checkpoints), residues);
    if (csv != nullptr) *csv = dup_string(lreg::density_csv(pts));
    if (report != nullptr) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& p : pts) list.push_back(p.to_json());
      emit(report, {{"series", spec}, {"points", list}});
    }
  });
}

lreg_status lreg_reproduce(const char* theorem, lreg_verdict* verdict, char** report) {
  return guard([&] {
    const lreg::CompositeReport r = lreg::reproduce(str(theorem, "null theorem"));
    emit_verdict(verdict, r.status);
    emit(report, r.json);
  });
}

}  // extern "C"
