#pragma once

#include <array>
#include <complex>
#include <iosfwd>

#include <Eigen/Dense>

namespace quatfa {

/// Element of the basis {1, i, j, k}.
enum class Basis : int { One = 0, I = 1, J = 2, K = 3 };

inline constexpr std::array<Basis, 4> kBasis{Basis::One, Basis::I, Basis::J, Basis::K};
inline constexpr std::array<Basis, 3> kImaginaryBasis{Basis::I, Basis::J, Basis::K};

constexpr int index(Basis e) noexcept { return static_cast<int>(e); }

/// e* = sign(e) e.
constexpr double conj_sign(Basis e) noexcept { return e == Basis::One ? 1.0 : -1.0; }

const char* to_string(Basis e) noexcept;

/// Real quaternion a + bi + cj + dk.
struct Quaternion {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double real) : a(real) {}  // NOLINT(google-explicit-constructor)
  constexpr Quaternion(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

  static constexpr Quaternion unit(Basis e) {
    Quaternion q;
    q[e] = 1.0;
    return q;
  }
  static Quaternion from_coords(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

  constexpr double& operator[](Basis e) {
    switch (e) {
      case Basis::One: return a;
      case Basis::I: return b;
      case Basis::J: return c;
      default: return d;
    }
  }
  constexpr double operator[](Basis e) const {
    switch (e) {
      case Basis::One: return a;
      case Basis::I: return b;
      case Basis::J: return c;
      default: return d;
    }
  }

  Eigen::Vector4d coords() const { return {a, b, c, d}; }
  constexpr double real() const { return a; }
  constexpr bool is_zero() const { return a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0; }

  Quaternion& operator+=(const Quaternion& o);
  Quaternion& operator-=(const Quaternion& o);
  Quaternion& operator*=(double s);
};

Quaternion operator+(Quaternion p, const Quaternion& q);
Quaternion operator-(Quaternion p, const Quaternion& q);
Quaternion operator-(const Quaternion& q);
Quaternion operator*(const Quaternion& p, const Quaternion& q);
Quaternion operator*(double s, Quaternion q);
Quaternion operator*(Quaternion q, double s);
Quaternion operator/(Quaternion q, double s);
bool operator==(const Quaternion& p, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const Quaternion& q);

Quaternion mul(const Quaternion& p, const Quaternion& q);
Quaternion conj(const Quaternion& q);
double norm_squared(const Quaternion& q);
double norm(const Quaternion& q);
/// Throws Error(DivisionByZero) on q = 0.
Quaternion inv(const Quaternion& q);
/// Max-coefficient distance.
double distance(const Quaternion& p, const Quaternion& q);

/// The regular representation H -> M4(R) with rows
///   [ a  b  c  d; -b  a -d  c; -c  d  a -b; -d -c  b  a ].
/// Unital, multiplicative, to_m4(conj q) = to_m4(q)^T, operator norm = norm(q).
Eigen::Matrix4d to_m4(const Quaternion& q);

/// Matrix of x -> q x on coefficient columns.
Eigen::Matrix4d left_matrix(const Quaternion& q);
/// Matrix of x -> x q on coefficient columns.
Eigen::Matrix4d right_matrix(const Quaternion& q);

/// Real linear functional sum_e lambda_e e^ on H, where e^(f) = delta_{e,f}.
struct DualFunctional {
  Eigen::Vector4d coefficients = Eigen::Vector4d::Zero();

  double operator()(const Quaternion& x) const { return coefficients.dot(x.coords()); }
  /// Dual norm over the Euclidean unit ball of H.
  double norm() const { return coefficients.norm(); }
};

enum class Side { Left, Right };

/// q -> q^, a linear isometry H -> H*.
DualFunctional hat(const Quaternion& q);

/// Module actions on H*: (beta . f)(x) = f(x beta) for Side::Left and
/// (f . beta)(x) = f(beta x) for Side::Right. With these,
/// beta* . alpha^ = (alpha beta)^ = beta^ . alpha*.
DualFunctional hat_action(const Quaternion& beta, const DualFunctional& f, Side side);

/// Phi_alpha : C -> R + alpha R with Phi(1) = 1, Phi(i) = alpha.
class ComplexEmbedding {
 public:
  /// Throws Error(InvalidGenerator) unless alpha is purely imaginary of norm 1.
  explicit ComplexEmbedding(const Quaternion& alpha);

  const Quaternion& generator() const { return alpha_; }
  Quaternion operator()(std::complex<double> z) const { return z.real() + z.imag() * alpha_; }

 private:
  Quaternion alpha_;
};

ComplexEmbedding embed_complex(const Quaternion& alpha);

/// Whether alpha is a unit purely imaginary quaternion (to `tolerance`).
bool is_unit_imaginary(const Quaternion& alpha, double tolerance = 1e-12);

}  // namespace quatfa
