#include "lreg/report.hpp"

namespace lreg {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inapplicable:
      return "inapplicable";
  }
  return "inapplicable";
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j{{"subject", subject}, {"status", to_string(status)}, {"bound", bound}};
  j["counterexample"] = counterexample ? nlohmann::json(*counterexample) : nlohmann::json(nullptr);
  j["notes"] = notes;
  j["details"] = details;
  return j;
}

nlohmann::json CongruenceClaim::to_json() const {
  return {{"A", A}, {"B", B}, {"modulus", to_string(modulus)}, {"label", label}};
}

}  // namespace lreg
