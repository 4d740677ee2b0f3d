#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace aqg {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

constexpr double kDefaultTol = 1e-9;

enum class ErrorCode {
  DimensionMismatch,
  NoSolution,
  NonUnique,
  NoHaar,
  NotPositive,
  NotFaithful,
  Inconsistent,
  NotProportional,
  NotUnitary,
  NotPD,
  PreconditionFailed,
  NotGrouplike,
  CGGenerationFailure,
  SupportOverflow,
  Unsupported,
  Schema,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace aqg
