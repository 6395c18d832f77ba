#include "planks/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace planks {

Mat orthonormal_complement(const Mat& span) {
  const int d = static_cast<int>(span.rows());
  const int k = static_cast<int>(span.cols());
  Eigen::HouseholderQR<Mat> qr(span);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  return q.rightCols(d - k);
}

double unit_angle(const Vec& p, const Vec& q) {
  const double c = p.dot(q);
  const double s = (p - c * q).norm();
  return std::atan2(s, c);
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

double circular_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

}  // namespace planks
