#pragma once

#include <string>

#include <json.hpp>

#include "lreg/report.hpp"

namespace lreg {

struct CompositeReport {
  Verdict status = Verdict::Pass;
  nlohmann::json json;
};

// Runs the verification pipeline behind one theorem: "1.2" through "1.6".
CompositeReport reproduce(const std::string& theorem);

}  // namespace lreg
