#pragma once

#include <Eigen/Dense>

#include <complex>

namespace planks {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;

/// Orthonormal basis of the orthogonal complement of the columns of `span`
/// (columns of `span` need not be orthonormal, but must be independent).
Mat orthonormal_complement(const Mat& span);

/// Angle between two unit vectors, accurate near 0 and pi.
double unit_angle(const Vec& p, const Vec& q);

/// Circular distance between two angles, in [0, pi].
double circular_distance(double a, double b);

/// Reduces an angle into [0, 2pi).
double wrap_angle(double theta);

}  // namespace planks
