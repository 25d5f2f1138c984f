#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lreg/numeric.hpp"

namespace lreg {

enum class Verdict { Pass, Fail, Inapplicable };

// "pass", "fail", "inapplicable".
std::string to_string(Verdict v);

struct VerificationReport {
  std::string subject;
  Verdict status = Verdict::Pass;
  // Largest exponent or index examined.
  std::int64_t bound = 0;
  std::optional<std::int64_t> counterexample;
  std::vector<std::string> notes;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// c(A n + B) == 0 (mod modulus) for every n >= 0.
struct CongruenceClaim {
  std::int64_t A = 1;
  std::int64_t B = 0;
  BigInt modulus = 2;
  std::string label;

  nlohmann::json to_json() const;
};

}  // namespace lreg
