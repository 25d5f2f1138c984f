#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lreg/qseries.hpp"
#include "lreg/report.hpp"

namespace lreg {

// #{1 <= n <= X : a(n) = r (mod M)} / X.
struct DensityPoint {
  std::int64_t X = 0;
  BigInt M;
  BigInt r;
  std::int64_t count = 0;
  Rational delta;

  nlohmann::json to_json() const;
};

DensityPoint density(const Series& series, const BigInt& M, const BigInt& r, std::int64_t X);

// Smallest ring in which residues mod M are defined: Z/2^j for M = 2^j, else exact.
Ring ring_for_modulus(const BigInt& M);

// Expands the named series once, to the largest checkpoint, and measures each
// residue class at every checkpoint.
std::vector<DensityPoint> density_curve(std::string_view series_spec, const BigInt& M,
                                        const std::vector<std::int64_t>& checkpoints,
                                        const std::vector<BigInt>& residues = {0});

// Header "X,M,r,count,delta_num,delta_den", one line per point.
std::string density_csv(const std::vector<DensityPoint>& points);

// (sum_{n in Z} q^{r(n)}) (sum_{n in Z} q^{s(n)}) mod 2.
Series theta_product_parity(const QuadraticForm& form1, const QuadraticForm& form2, std::int64_t trunc);

// f_1^2 f_3^6 / f_9^2 against theta1 + theta1 theta2 mod 2, with theta1 over
// n(3n-1) and theta2 over 6(3n-1)^2.
VerificationReport landau_split_check(std::int64_t trunc);

}  // namespace lreg
