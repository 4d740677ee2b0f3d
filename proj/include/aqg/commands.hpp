#pragma once

// Command implementations shared by the aqg tool and the acceptance suite.
// Each returns the process exit code: 0 pass, 1 verification failure, 2 bad input.

#include <iosfwd>
#include <optional>
#include <string>

#include "aqg/io.hpp"

namespace aqg {

struct VerifyArgs {
  std::string input;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<int> dense_threshold;
  std::optional<int> spin_cap2;
  std::string report;  // empty: <input stem>-report.json in the working directory
  bool quiet = false;
};

struct DualArgs {
  std::string input;
  std::string output;  // empty: <input stem>-dual.json
  bool check = false;
};

struct InfoArgs {
  std::string input;
};

// Flags win over values in the input file, which win over the defaults.
RunParameters resolve_parameters(const InputSpec& in, const VerifyArgs& args);
MnwReport verify_spec(const InputSpec& in, const RunParameters& run);
std::string default_report_path(const std::string& input, const std::string& suffix);

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_dual(const DualArgs& args, std::ostream& out, std::ostream& err);
int cmd_info(const InfoArgs& args, std::ostream& out, std::ostream& err);

}  // namespace aqg
