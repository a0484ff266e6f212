#pragma once

#include <utility>
#include <vector>

#include "quatfa/bimodule.hpp"
#include "quatfa/normed.hpp"
#include "quatfa/tensor.hpp"

namespace quatfa {

using QVector = std::vector<Quaternion>;

/// Dense n x m quaternion matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Quaternion& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Quaternion& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  /// Conjugate transpose.
  QMatrix adjoint() const;
  QVector operator*(const QVector& x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Quaternion> data_;
};

/// Realification with blocks left_matrix(q_pq): the matrix of x -> Q x on H^n.
Matrix left_realify(const QMatrix& q);
Vector realify(const QVector& x);
QVector dequaternize(const Vector& x);

/// H^n with <x, y> = sum x_p* G_pq y_q.
class RightHModule {
 public:
  /// Throws Error(InvalidModule) unless G = G*, Error(RankDeficient) unless
  /// G is positive definite.
  static RightHModule make(QMatrix gram, double tolerance = tol::kAction);
  static RightHModule standard(int n) { return make(QMatrix::identity(n)); }

  int rank() const { return gram_.rows(); }
  const QMatrix& gram() const { return gram_; }

  Quaternion inner(const QVector& x, const QVector& y) const;
  /// Re <x, y> on realified coordinates.
  const Matrix& real_form() const { return real_form_; }
  /// x -> x alpha on realified coordinates.
  Matrix right(const Quaternion& alpha) const;
  Matrix right(Basis e) const { return right(Quaternion::unit(e)); }

 private:
  QMatrix gram_;
  Matrix real_form_;
};

/// Orthonormal basis of M by modified Gram-Schmidt with pivoting on the
/// residual norm. Throws Error(RankDeficient) on a degenerate Gram.
std::vector<QVector> gram_schmidt(const RightHModule& module);

/// An H-bimodule with a real positive definite form F = Re <., .> satisfying
/// <alpha x, y> = <x, alpha* y> and <x beta, y> = beta* <x, y>.
class HilbertHBimodule {
 public:
  /// Throws Error(InvalidModule) when F is not compatible with the actions.
  static HilbertHBimodule make(ModulePtr module, Matrix form, double tolerance = tol::kAction);

  const ModulePtr& module() const { return module_; }
  const Matrix& form() const { return form_; }
  HNorm norm() const;

  /// <x, y> = sum_e F(x e, y) e.
  Quaternion inner(const Vector& x, const Vector& y) const;
  double norm(const Vector& x) const;

  /// F-orthonormal basis of the real part (columns).
  const Matrix& real_onb() const { return onb_; }
  /// Isometric bimodule map quaternionize(r) -> X sending p (x) e to E_p e.
  const Matrix& frame() const { return frame_; }

  /// Largest violation of the compatibility identities.
  double compatibility_residual() const { return residual_; }

 private:
  ModulePtr module_;
  Matrix form_;
  Matrix onb_;
  Matrix frame_;
  double residual_ = 0.0;
};

/// H^n (x) with identity form.
HilbertHBimodule standard_hilbert(int n);

/// Left multiplication transported from standard H^n through an
/// orthonormal basis of M.
HilbertHBimodule induce_left_mult(const RightHModule& module);

/// Images of i and j under a left H-structure on realified H^n.
struct LeftStructure {
  Matrix i;
  Matrix j;
};

/// The unitary right-module map U with Lambda2(alpha) = U Lambda1(alpha) U^-1,
/// as a bimodule map between the two structures.
BoundedHMap intertwine_left_structures(const RightHModule& module, const LeftStructure& first,
                                       const LeftStructure& second);

/// <<x, y>> = sum_{e,f} F(x_e, y_f) e* (x) f for polarization components.
class TwoSidedInner {
 public:
  TwoSidedInner(ModulePtr module, Matrix form) : module_(std::move(module)), form_(std::move(form)) {}

  const ModulePtr& module() const { return module_; }
  const Matrix& form() const { return form_; }

  HTensor pair(const Vector& x, const Vector& y) const;
  /// sqrt(m(<<x, x>>)).
  double norm(const Vector& x) const;
  /// 16 x d matrix of x -> <<y, x>>.
  Matrix pairing_matrix(const Vector& y) const;

 private:
  ModulePtr module_;
  Matrix form_;
};

TwoSidedInner two_sided_from_bimodule(const HilbertHBimodule& y);
/// Hilbert bimodule with <x, y> = m(<<x, y>>).
HilbertHBimodule collapse_two_sided(const TwoSidedInner& p);

/// K^op on K_Re (x) H in orthonormal coordinates:
/// alpha . (x (x) g) . beta = x (x) beta* g alpha*.
HilbertHBimodule opposite(const HilbertHBimodule& k);

/// A unitary bimodule isomorphism between Hilbert bimodules of equal rank.
/// Throws Error(InvalidModule) when the real dimensions differ.
BoundedHMap hilbert_isomorphism(const HilbertHBimodule& from, const HilbertHBimodule& to);

/// A real Hilbert space (R^m, form) with the images of i and j under a
/// *-representation of H.
struct Representation {
  Matrix form;
  Matrix pi_i;
  Matrix pi_j;

  Matrix operator()(const Quaternion& alpha) const;
};

/// Checks unitality, multiplicativity and pi(alpha*) = pi(alpha)^T in the form.
/// Throws Error(InvalidRepresentation).
void validate_representation(const Representation& pi, double tolerance = tol::kAction);

struct PiModule {
  RightHModule module;
  /// m x m matrix sending realified coordinates over the chosen H-basis to H.
  Matrix coords;
};

/// x . alpha = pi(alpha*) x, [x, y] = sum_e (x, pi(e) y) e.
PiModule from_pi(const Representation& pi);
/// [x, y] on the underlying real space.
Quaternion pi_bracket(const Representation& pi, const Vector& x, const Vector& y);

/// V with V pi1(alpha) = pi2(alpha) V and V^T F2 V = F1.
/// Throws Error(InvalidRepresentation) when the dimensions differ.
Matrix intertwine_representations(const Representation& first, const Representation& second);

/// x -> sum_e x_e (x) e into quaternionize(r) with the identity form.
BoundedHMap delta_iso(const HilbertHBimodule& x);

/// (||Phi(T)||, ||T||), Phi(T) the restriction X_Re -> Y_Re.
std::pair<double, double> phi_isometry_check(const BoundedHMap& t, const HilbertHBimodule& x,
                                             const HilbertHBimodule& y);

/// T : Y -> H (x) H with T(alpha x beta) = (1 (x) alpha) T(x) (1 (x) beta),
/// i.e. a bimodule map into hthr.
struct DualElementYr {
  BoundedHMap map;
  double norm = 0.0;    // sup over unit f in H* of ||(f (x) id) T||
  double norm_l = 0.0;  // ||m o T||
};

/// Throws Error(NotIntertwining) for maps that are not Y -> hthr bimodule maps.
DualElementYr make_dual_element(const HilbertHBimodule& y, const Matrix& t);
std::pair<double, double> dual_norms(const DualElementYr& t);

/// T_y(x) = <<y, x>>.
DualElementYr t_y(const HilbertHBimodule& space, const Vector& y);

/// Y = C (x) H = quaternionize(2) and T(x) = 1 (x) x_1 + i (x) x_i, where
/// ||T|| = 1 and ||T||_L = sqrt(2).
struct GapFixture {
  HilbertHBimodule space;
  DualElementYr t;
};
GapFixture example_gap_fixture();

struct RieszResult {
  Vector y;
  double residual = 0.0;  // max over coordinate vectors x of |m(T x) - <y, x>|
  double norm_l = 0.0;
  double norm_y = 0.0;
};

/// The unique y with m(T(x)) = <y, x>.
RieszResult riesz_represent(const HilbertHBimodule& space, const DualElementYr& t);

}  // namespace quatfa
