#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lreg/etaform.hpp"
#include "lreg/qseries.hpp"
#include "lreg/report.hpp"

namespace lreg {

struct HeckeContext {
  std::int64_t p = 2;
  std::int64_t weight = 1;
  int chi_p = 0;
};

// Weight and chi(p) read off the quotient's modularity data.
HeckeContext hecke_context(std::int64_t p, const EtaQuotient& eq);

// sum (a(pn) + chi(p) p^{w-1} a(n/p)) q^n, truncated at floor(T/p).
Series hecke_tp(const Series& f, const HeckeContext& ctx);

// 0 < gamma < p^2 with 24 gamma = -1 (mod p^2).
std::int64_t gamma_of(std::int64_t p);

struct SelfSimReport {
  std::int64_t p = 0;
  std::int64_t gamma = 0;
  std::int64_t checked_to = 0;
  bool holds = false;
  std::optional<std::int64_t> first_failure;
  // "proved" where a proof is known (p = 13, 17), "evidence" otherwise.
  std::string standing;

  nlohmann::json to_json() const;
};

// sum b_3(2(pn + gamma)) q^n against sum b_3(2n) q^{pn} mod 2, n <= bound.
SelfSimReport self_similarity_check(std::int64_t p, std::int64_t bound);
std::vector<SelfSimReport> self_similarity_scan(std::int64_t pmin, std::int64_t pmax, std::int64_t bound,
                                                int jobs = 1);

// b_3(A n + B) = 0 (mod 2) with A = 2 * 17^{2k}.
CongruenceClaim iterated_family(std::int64_t p, std::int64_t k);

// b_3(2N) mod 2 for each requested N, through b_3(2N) = [q^N] f_4/f_3 (mod 2):
// only partition-number parities up to max(N)/3 are expanded.
std::vector<int> b3_even_parities(const std::vector<std::int64_t>& n_values);

// Checks iterated_family(17, k) for n <= nmax. Small instances expand b_3
// directly; large ones use b3_even_parities.
VerificationReport family_check(std::int64_t k, std::int64_t nmax);

VerificationReport sturm_congruence_check(const Series& f, const Series& g, std::int64_t weight,
                                          std::int64_t level, bool same_character, std::int64_t p);

// The weight-3 level-51 comparison: q * sum_{n} b_3(34n+24) q^n * f_3^2 f_1
// against G32, both mod 2 up to the Sturm bound, and T_17 applied to the G31
// expansion against the same series.
VerificationReport level51_sturm_check();

}  // namespace lreg
