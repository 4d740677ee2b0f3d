#pragma once

#include <string>
#include <vector>

namespace aqg {

// One line of a verification report.
struct Check {
  std::string group;
  std::string name;
  std::string identity;
  std::string kind;  // residual | lower_bound | dimension | scalar | value | note
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

using CheckList = std::vector<Check>;

Check residual_check(std::string group, std::string name, std::string identity, double value,
                     double tol);
Check lower_bound_check(std::string group, std::string name, std::string identity, double value,
                        double bound);
Check dimension_check(std::string group, std::string name, std::string identity, long value,
                      long expected);
Check scalar_check(std::string group, std::string name, std::string identity, double value,
                   double expected, double tol);
// Reported value without a pass criterion.
Check value_report(std::string group, std::string name, std::string identity, double value);
Check note_check(std::string group, std::string name, std::string identity, std::string note);
Check failed_check(std::string group, std::string name, std::string identity, std::string note);

bool all_pass(const CheckList& checks);
const Check* find_check(const CheckList& checks, const std::string& name);
void append(CheckList& to, const CheckList& from);

}  // namespace aqg
