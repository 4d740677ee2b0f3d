#include "aqg/report.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace aqg {

Check residual_check(std::string group, std::string name, std::string identity, double value,
                     double tol) {
  Check c{std::move(group), std::move(name), std::move(identity), "residual", value, tol, false, ""};
  c.pass = std::isfinite(value) && value <= tol;
  return c;
}

Check lower_bound_check(std::string group, std::string name, std::string identity, double value,
                        double bound) {
  Check c{std::move(group), std::move(name), std::move(identity), "lower_bound", value, bound, false,
          ""};
  c.pass = std::isfinite(value) && value >= bound;
  return c;
}

Check dimension_check(std::string group, std::string name, std::string identity, long value,
                      long expected) {
  Check c{std::move(group), std::move(name), std::move(identity), "dimension",
          static_cast<double>(value), static_cast<double>(expected), value == expected, ""};
  return c;
}

Check scalar_check(std::string group, std::string name, std::string identity, double value,
                   double expected, double tol) {
  Check c{std::move(group), std::move(name), std::move(identity), "scalar", value, tol, false, ""};
  c.pass = std::isfinite(value) && std::abs(value - expected) <= tol;
  return c;
}

Check value_report(std::string group, std::string name, std::string identity, double value) {
  return {std::move(group), std::move(name), std::move(identity), "value", value, 0.0, true, ""};
}

Check note_check(std::string group, std::string name, std::string identity, std::string note) {
  return {std::move(group), std::move(name), std::move(identity), "note", 0.0, 0.0, true,
          std::move(note)};
}

Check failed_check(std::string group, std::string name, std::string identity, std::string note) {
  return {std::move(group), std::move(name), std::move(identity), "residual",
          std::numeric_limits<double>::quiet_NaN(), 0.0, false, std::move(note)};
}

bool all_pass(const CheckList& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const Check* find_check(const CheckList& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void append(CheckList& to, const CheckList& from) { to.insert(to.end(), from.begin(), from.end()); }

}  // namespace aqg
