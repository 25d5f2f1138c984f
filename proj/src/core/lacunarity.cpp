#include "lreg/lacunarity.hpp"

#include <algorithm>
#include <sstream>

#include "lreg/error.hpp"
#include "lreg/partitions.hpp"

namespace lreg {

nlohmann::json DensityPoint::to_json() const {
  return {{"X", X},
          {"M", lreg::to_string(M)},
          {"r", lreg::to_string(r)},
          {"count", count},
          {"delta", lreg::to_string(delta)}};
}

Ring ring_for_modulus(const BigInt& M) {
  if (M < 1) throw InvalidArgument("modulus must be positive");
  if (M > 1 && mpz_popcount(M.get_mpz_t()) == 1) {
    const auto bits = static_cast<int>(mpz_sizeinbase(M.get_mpz_t(), 2) - 1);
    if (bits <= 63) return Ring::mod_pow2(bits);
  }
  return Ring::exact();
}

DensityPoint density(const Series& series, const BigInt& M, const BigInt& r, std::int64_t X) {
  if (X < 1) throw InvalidArgument("density requires X >= 1");
  if (M < 1) throw InvalidArgument("density modulus must be positive");
  if (r < 0 || r >= M) throw InvalidArgument("residue must satisfy 0 <= r < M");
  if (!series.ring().supports_modulus(M)) {
    throw RingMismatch("modulus " + to_string(M) + " is not defined on ring " + series.ring().name());
  }
  if (series.trunc() < X) {
    throw TruncationError("density needs coefficients up to " + std::to_string(X) + ", series stops at " +
                          std::to_string(series.trunc()));
  }
  DensityPoint pt{X, M, r, 0, 0};
  if (series.ring().is_exact()) {
    BigInt res;
    for (std::int64_t n = 1; n <= X; ++n) {
      mpz_fdiv_r(res.get_mpz_t(), series.coeff(n).get_mpz_t(), M.get_mpz_t());
      if (res == r) ++pt.count;
    }
  } else {
    const std::uint64_t mask = M.get_ui() - 1;
    const std::uint64_t want = r.get_ui();
    for (std::int64_t n = 1; n <= X; ++n) {
      if ((series.residue(n) & mask) == want) ++pt.count;
    }
  }
  pt.delta = ratio(pt.count, X);
  return pt;
}

std::vector<DensityPoint> density_curve(std::string_view series_spec, const BigInt& M,
                                        const std::vector<std::int64_t>& checkpoints,
                                        const std::vector<BigInt>& residues) {
  if (checkpoints.empty()) throw InvalidArgument("density_curve needs at least one checkpoint");
  const std::int64_t top = *std::max_element(checkpoints.begin(), checkpoints.end());
  const Series s = series_from_spec(series_spec, top, ring_for_modulus(M));
  std::vector<DensityPoint> out;
  for (const std::int64_t x : checkpoints) {
    for (const BigInt& r : residues) out.push_back(density(s, M, r, x));
  }
  return out;
}

std::string density_csv(const std::vector<DensityPoint>& points) {
  std::ostringstream os;
  os << "X,M,r,count,delta_num,delta_den\n";
  for (const DensityPoint& p : points) {
    os << p.X << ',' << p.M.get_str() << ',' << p.r.get_str() << ',' << p.count << ','
       << p.delta.get_num().get_str() << ',' << p.delta.get_den().get_str() << '\n';
  }
  return os.str();
}

Series theta_product_parity(const QuadraticForm& form1, const QuadraticForm& form2, std::int64_t trunc) {
  const Ring z2 = Ring::mod_pow2(1);
  return mul(theta_series(form1, ThetaRange::AllIntegers, trunc, z2),
             theta_series(form2, ThetaRange::AllIntegers, trunc, z2));
}

VerificationReport landau_split_check(std::int64_t trunc) {
  const Ring z2 = Ring::mod_pow2(1);
  const QuadraticForm pent{3, -1, 0};
  const QuadraticForm sq{54, -36, 6};
  const Series theta1 = theta_series(pent, ThetaRange::AllIntegers, trunc, z2);
  const Series rhs = add(theta1, theta_product_parity(pent, sq, trunc));
  const Series lhs = eta_product({{1, 2}, {3, 6}, {9, -2}}, trunc, z2);
  const Comparison c = compare(lhs, rhs);
  VerificationReport rep;
  rep.subject = "f1^2 f3^6/f9^2 = theta1 + theta1*theta2 (mod 2)";
  rep.bound = trunc;
  rep.status = c.equal ? Verdict::Pass : Verdict::Fail;
  rep.counterexample = c.first_mismatch;
  return rep;
}

}  // namespace lreg
