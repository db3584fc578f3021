#pragma once

#include <complex>
#include <Eigen/Dense>

namespace permpoly {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

constexpr double kPi = 3.14159265358979323846;

} // namespace permpoly
