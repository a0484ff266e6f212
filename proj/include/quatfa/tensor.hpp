#pragma once

#include <Eigen/Dense>

#include "quatfa/linalg.hpp"
#include "quatfa/quaternion.hpp"

namespace quatfa {

/// Element of H (x) H; coefficient(e, f) multiplies e (x) f.
class HTensor {
 public:
  HTensor() = default;
  explicit HTensor(const Eigen::Matrix4d& coefficients) : m_(coefficients) {}

  static HTensor elementary(const Quaternion& a, const Quaternion& b);
  /// sum_e e (x) e.
  static HTensor theta();
  /// Coordinates of hthr (index 4e + f) read back into a tensor.
  static HTensor from_vector(const Vector& v);

  const Eigen::Matrix4d& coefficients() const { return m_; }
  double operator()(Basis e, Basis f) const { return m_(index(e), index(f)); }
  Vector to_vector() const;

  /// (a (x) b)^# = b* (x) a*.
  HTensor sharp() const;
  /// m(a (x) b) = ab.
  Quaternion multiply() const;

  HTensor& operator+=(const HTensor& o) {
    m_ += o.m_;
    return *this;
  }

 private:
  Eigen::Matrix4d m_ = Eigen::Matrix4d::Zero();
};

HTensor operator+(HTensor p, const HTensor& q);
HTensor operator-(const HTensor& p, const HTensor& q);
HTensor operator*(double s, const HTensor& p);
/// (a (x) b)(c (x) d) = ac (x) bd.
HTensor operator*(const HTensor& p, const HTensor& q);

/// 4 x 16 matrix of m on hthr coordinates.
Matrix multiplication_matrix();

/// Whether p = sum alpha_i* (x) alpha_i, decided by J M symmetric positive
/// semidefinite with J = diag(1, -1, -1, -1).
bool cone_membership(const HTensor& p, double tolerance = tol::kPsd);

/// Operator norm of the map H -> H attached to p (a (x) b -> <a, .> b).
double epsilon_norm(const HTensor& p);
/// Euclidean norm of the coefficients.
double hil_norm(const HTensor& p);

}  // namespace quatfa
