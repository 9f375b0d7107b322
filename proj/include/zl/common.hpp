#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zl {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Invalid input, dimension mismatch, malformed file: maps to exit status 1.
struct SpecError : std::runtime_error {
  std::string kind;
  SpecError(std::string k, const std::string& msg)
      : std::runtime_error(msg), kind(std::move(k)) {}
};

// A computation ran but its result cannot be trusted: exit status 2.
struct NumericalError : std::runtime_error {
  std::string kind;
  NumericalError(std::string k, const std::string& msg)
      : std::runtime_error(msg), kind(std::move(k)) {}
};

// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx x) {
    add1(re_, cre_, x.real());
    add1(im_, cim_, x.imag());
  }
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add1(double& s, double& c, double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

}  // namespace zl
