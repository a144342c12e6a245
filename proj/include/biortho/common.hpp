#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace biortho {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Thrown when a computation produced non-finite values or an evaluation
// failed numerically (as opposed to a caller contract violation, which
// throws std::invalid_argument / std::domain_error).
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits: round-trips any IEEE double through text.
std::string fmt_g17(double v);

// Throws NumericFailure if v is NaN or infinite.
void require_finite(double v, const char* what);

}  // namespace biortho
