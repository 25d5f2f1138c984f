#pragma once

// Finite verification of congruences c_r(m n + t') = 0 (mod u) for the
// coefficients of prod_{delta | M} (q^delta; q^delta)^{r_delta}, via the
// Delta* conditions, the square orbit P_{m,r}(t), double coset
// representatives of Gamma0(N) and the nu bound.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lreg/etaform.hpp"
#include "lreg/qseries.hpp"

namespace lreg {

struct RaduTuple {
  std::int64_t m = 1;
  std::int64_t M = 1;
  std::int64_t N = 1;
  ExponentMap r;  // keys divide M
  std::int64_t t = 0;

  void validate() const;
  nlohmann::json to_json() const;
};

struct DeltaStarReport {
  std::int64_t k = 0;  // gcd(m^2 - 1, 24)
  std::int64_t s = 0;  // prod delta^{|r_delta|} = 2^s j
  BigInt j;
  std::array<bool, 6> conditions{};

  bool member() const;
  nlohmann::json to_json() const;
};

DeltaStarReport delta_star_check(const RaduTuple& tuple);

// { u^2 mod n : gcd(u, n) = 1 }, ascending.
std::vector<std::int64_t> squares_mod(std::int64_t n);

std::vector<std::int64_t> p_set(std::int64_t m, std::int64_t M, const ExponentMap& r, std::int64_t t);

// The matrix [[1, 0], [delta, 1]].
struct CosetRep {
  std::int64_t delta = 1;
};

// Throws Inapplicable unless N or N/2 is squarefree.
std::vector<CosetRep> coset_reps(std::int64_t n);

constexpr std::int64_t kDefaultLambdaCap = 100000;

struct PmrResult {
  Rational value;
  std::int64_t argmin = 0;  // a minimising lambda
  bool zero_gcd = false;     // some gcd had a zero argument
};

PmrResult p_mr(const CosetRep& gamma, std::int64_t m, std::int64_t M, const ExponentMap& r,
               std::int64_t lambda_cap = kDefaultLambdaCap);
Rational p_star(const CosetRep& gamma, const ExponentMap& rprime);

struct NuBound {
  Rational nu;
  BigInt nu_floor;
  std::int64_t t_min = 0;
  std::int64_t index = 0;
};

NuBound nu_bound(const RaduTuple& tuple, const ExponentMap& rprime);

enum class RaduStatus { Proven, Failed, Inapplicable };
std::string to_string(RaduStatus s);

struct RaduReport {
  RaduTuple tuple;
  ExponentMap rprime;
  BigInt modulus;
  DeltaStarReport delta_star;
  std::vector<std::int64_t> pset;
  std::optional<NuBound> nu;
  struct CosetCheck {
    std::int64_t delta = 0;
    Rational pmr;
    Rational pstar;
    bool ok = false;
  };
  std::vector<CosetCheck> coset_checks;
  bool zero_gcd_flag = false;
  struct BoundCheck {
    std::int64_t tprime = 0;
    std::int64_t checked_to = -1;  // last n examined
    std::optional<std::int64_t> first_nonzero;
  };
  std::vector<BoundCheck> bound_checks;
  std::int64_t series_trunc = -1;
  RaduStatus status = RaduStatus::Inapplicable;
  std::string reason;
  std::optional<std::pair<std::int64_t, std::int64_t>> witness;  // (t', n)

  nlohmann::json to_json() const;
};

// Returns the c_r series expanded at least to the requested truncation in a
// ring where residues mod u are defined.
using SeriesProvider = std::function<Series(std::int64_t trunc)>;

// Builds prod (q^delta; q^delta)^{r_delta} over the smallest suitable ring.
SeriesProvider eta_series_provider(const ExponentMap& r, const BigInt& modulus);

RaduReport radu_verify(const RaduTuple& tuple, const ExponentMap& rprime, const BigInt& modulus,
                       const SeriesProvider& provider, std::int64_t lambda_cap = kDefaultLambdaCap);

}  // namespace lreg
