#include "quatfa/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "quatfa/error.hpp"

namespace quatfa {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "division-by-zero";
    case ErrorCode::InvalidGenerator: return "invalid-generator";
    case ErrorCode::InvalidBimodule: return "invalid-bimodule";
    case ErrorCode::NotIntertwining: return "not-intertwining";
    case ErrorCode::RankDeficient: return "rank-deficient";
    case ErrorCode::InvalidSubspace: return "invalid-subspace";
    case ErrorCode::NoSeparator: return "no-separator";
    case ErrorCode::UnsupportedNorm: return "unsupported-norm";
    case ErrorCode::InvalidRepresentation: return "invalid-representation";
    case ErrorCode::InvalidModule: return "invalid-module";
    case ErrorCode::InvalidAlgebra: return "invalid-algebra";
    case ErrorCode::NotCommutative: return "not-commutative";
    case ErrorCode::Parse: return "parse-error";
  }
  return "unknown";
}

const char* to_string(Basis e) noexcept {
  switch (e) {
    case Basis::One: return "1";
    case Basis::I: return "i";
    case Basis::J: return "j";
    case Basis::K: return "k";
  }
  return "?";
}

Quaternion& Quaternion::operator+=(const Quaternion& o) {
  a += o.a;
  b += o.b;
  c += o.c;
  d += o.d;
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
  a -= o.a;
  b -= o.b;
  c -= o.c;
  d -= o.d;
  return *this;
}

Quaternion& Quaternion::operator*=(double s) {
  a *= s;
  b *= s;
  c *= s;
  d *= s;
  return *this;
}

Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
Quaternion operator-(const Quaternion& q) { return {-q.a, -q.b, -q.c, -q.d}; }
Quaternion operator*(double s, Quaternion q) { return q *= s; }
Quaternion operator*(Quaternion q, double s) { return q *= s; }
Quaternion operator/(Quaternion q, double s) { return q *= 1.0 / s; }

Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }

bool operator==(const Quaternion& p, const Quaternion& q) {
  return p.a == q.a && p.b == q.b && p.c == q.c && p.d == q.d;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.a << ", " << q.b << ", " << q.c << ", " << q.d << ']';
}

// Hamilton product from ij = k = -ji, jk = i = -kj, ki = j = -ik.
Quaternion mul(const Quaternion& p, const Quaternion& q) {
  return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
          p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
          p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
          p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

Quaternion conj(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

double norm_squared(const Quaternion& q) { return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d; }

double norm(const Quaternion& q) { return std::sqrt(norm_squared(q)); }

Quaternion inv(const Quaternion& q) {
  const double n2 = norm_squared(q);
  if (n2 == 0.0) {
    throw Error(ErrorCode::DivisionByZero, "inverse of the zero quaternion");
  }
  return conj(q) / n2;
}

double distance(const Quaternion& p, const Quaternion& q) {
  return std::max({std::abs(p.a - q.a), std::abs(p.b - q.b), std::abs(p.c - q.c),
                   std::abs(p.d - q.d)});
}

Eigen::Matrix4d to_m4(const Quaternion& q) {
  const double a = q.a, b = q.b, c = q.c, d = q.d;
  Eigen::Matrix4d m;
  // clang-format off
  m <<  a,  b,  c,  d,
       -b,  a, -d,  c,
       -c,  d,  a, -b,
       -d, -c,  b,  a;
  // clang-format on
  return m;
}

Eigen::Matrix4d left_matrix(const Quaternion& q) {
  Eigen::Matrix4d m;
  for (Basis e : kBasis) m.col(index(e)) = mul(q, Quaternion::unit(e)).coords();
  return m;
}

Eigen::Matrix4d right_matrix(const Quaternion& q) {
  Eigen::Matrix4d m;
  for (Basis e : kBasis) m.col(index(e)) = mul(Quaternion::unit(e), q).coords();
  return m;
}

DualFunctional hat(const Quaternion& q) { return DualFunctional{q.coords()}; }

DualFunctional hat_action(const Quaternion& beta, const DualFunctional& f, Side side) {
  // f(x beta) = lambda . R(beta) x and f(beta x) = lambda . L(beta) x.
  const Eigen::Matrix4d m = side == Side::Left ? right_matrix(beta) : left_matrix(beta);
  return DualFunctional{m.transpose() * f.coefficients};
}

bool is_unit_imaginary(const Quaternion& alpha, double tolerance) {
  return std::abs(alpha.a) <= tolerance && std::abs(norm(alpha) - 1.0) <= tolerance;
}

ComplexEmbedding::ComplexEmbedding(const Quaternion& alpha) : alpha_(alpha) {
  if (!is_unit_imaginary(alpha)) {
    throw Error(ErrorCode::InvalidGenerator,
                "complex generator must be purely imaginary with norm 1",
                std::max(std::abs(alpha.a), std::abs(norm(alpha) - 1.0)));
  }
}

ComplexEmbedding embed_complex(const Quaternion& alpha) { return ComplexEmbedding(alpha); }

}  // namespace quatfa
