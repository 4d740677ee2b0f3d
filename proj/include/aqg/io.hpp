#pragma once

// JSON input files and reports. Complex numbers are [re, im] pairs; matrices are arrays of rows.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "aqg/mnw.hpp"

namespace aqg {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "aqg-report/1";
inline constexpr const char* kPresentationSchema = "aqg-presentation/1";
// Largest presentation dimension accepted from input files (the product table is dense, n x n^2).
inline constexpr int kMaxInputDim = 144;

struct InputSpec {
  std::string kind;  // structure_constants | group_algebra | function_algebra | drinfeld_double | dual_suq2
  std::string group;  // group name or "custom" for the group kinds
  std::optional<QuantumGroupPresentation> pres;
  double q = 0.5;  // dual_suq2
  int spin_cap2 = 3;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<int> dense_threshold;
  std::vector<AutomorphismInput> automorphisms;
  std::vector<std::pair<std::string, Vec>> grouplikes;

  bool is_block() const { return kind == "dual_suq2"; }
};

// All of these throw Error(Schema) on malformed input.
json complex_to_json(cplx z);
cplx complex_from_json(const json& j);
json vector_to_json(const Vec& v);
Vec vector_from_json(const json& j, Eigen::Index size);
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols);

json presentation_to_json(const QuantumGroupPresentation& p);
QuantumGroupPresentation presentation_from_json(const json& j);

InputSpec parse_input(const json& j);
InputSpec load_input(const std::string& path);

json check_to_json(const Check& c);
json checks_to_json(const CheckList& checks);

// Report of a verify run; the run parameters are recorded next to the results.
struct RunParameters {
  double tolerance = kDefaultTol;
  std::uint64_t seed = 42;
  int dense_threshold = 128;
  int spin_cap2 = 3;
};
json report_to_json(const InputSpec& in, const RunParameters& run, const MnwReport& r);
std::string text_summary(const InputSpec& in, const MnwReport& r);

}  // namespace aqg
