#pragma once

#include "commands.hpp"
#include "json.hpp"

namespace gdl::cli {

struct VerifyReport {
  nlohmann::ordered_json json;
  bool pass = true;
};

/// Runs every comparison and invariant suite. The report holds, per check,
/// the value, its reference, the residual and the tolerance, plus recorded
/// discrepancies and warnings. Deterministic for a given config.
VerifyReport cmd_verify(const RunConfig& config);

}  // namespace gdl::cli
