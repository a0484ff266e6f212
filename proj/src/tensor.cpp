#include "quatfa/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace quatfa {

namespace {

const Eigen::Matrix4d& conj_diag() {
  static const Eigen::Matrix4d j = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return j;
}

}  // namespace

HTensor HTensor::elementary(const Quaternion& a, const Quaternion& b) {
  return HTensor(a.coords() * b.coords().transpose());
}

HTensor HTensor::theta() { return HTensor(Eigen::Matrix4d::Identity()); }

HTensor HTensor::from_vector(const Vector& v) {
  Eigen::Matrix4d m;
  for (int e = 0; e < 4; ++e)
    for (int f = 0; f < 4; ++f) m(e, f) = v(4 * e + f);
  return HTensor(m);
}

Vector HTensor::to_vector() const {
  Vector v(16);
  for (int e = 0; e < 4; ++e)
    for (int f = 0; f < 4; ++f) v(4 * e + f) = m_(e, f);
  return v;
}

HTensor HTensor::sharp() const { return HTensor(conj_diag() * m_.transpose() * conj_diag()); }

Quaternion HTensor::multiply() const {
  Quaternion out;
  for (Basis e : kBasis)
    for (Basis f : kBasis) out += m_(index(e), index(f)) * (Quaternion::unit(e) * Quaternion::unit(f));
  return out;
}

HTensor operator+(HTensor p, const HTensor& q) { return p += q; }

HTensor operator-(const HTensor& p, const HTensor& q) { return HTensor(p.coefficients() - q.coefficients()); }

HTensor operator*(double s, const HTensor& p) { return HTensor(s * p.coefficients()); }

HTensor operator*(const HTensor& p, const HTensor& q) {
  HTensor out;
  for (Basis e : kBasis)
    for (Basis f : kBasis) {
      const double pef = p(e, f);
      if (pef == 0.0) continue;
      for (Basis g : kBasis)
        for (Basis h : kBasis) {
          const double qgh = q(g, h);
          if (qgh == 0.0) continue;
          out += pef * qgh *
                 HTensor::elementary(Quaternion::unit(e) * Quaternion::unit(g),
                                     Quaternion::unit(f) * Quaternion::unit(h));
        }
    }
  return out;
}

Matrix multiplication_matrix() {
  Matrix m(4, 16);
  for (Basis e : kBasis)
    for (Basis f : kBasis) m.col(4 * index(e) + index(f)) = (Quaternion::unit(e) * Quaternion::unit(f)).coords();
  return m;
}

bool cone_membership(const HTensor& p, double tolerance) {
  const Eigen::Matrix4d s = conj_diag() * p.coefficients();
  const double scale = s.cwiseAbs().maxCoeff() + 1.0;
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > tolerance * scale) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
  const Eigen::Vector4d& ev = eig.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  return ev.minCoeff() >= -tolerance * (largest + 1.0);
}

double epsilon_norm(const HTensor& p) { return spectral_norm(p.coefficients()); }

double hil_norm(const HTensor& p) { return p.coefficients().norm(); }

}  // namespace quatfa
