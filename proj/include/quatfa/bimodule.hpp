#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "quatfa/linalg.hpp"
#include "quatfa/quaternion.hpp"

namespace quatfa {

/// A finite-dimensional H-vector space: R^d with commuting unital left and
/// right H-actions. Given by the images of i and j; the image of k is derived
/// (L(k) = L(i) L(j), R(k) = R(j) R(i)).
///
/// Construction validates the full multiplication table for both actions,
/// their commutation, 4 | d and dim X_Re = d / 4, and throws
/// Error(InvalidBimodule) otherwise. Real-part data is cached.
class HBimodule {
 public:
  static HBimodule from_generators(Matrix left_i, Matrix left_j, Matrix right_i, Matrix right_j,
                                   std::string name = {});

  int dim() const { return dim_; }
  int real_dim() const { return static_cast<int>(real_basis_.cols()); }
  const std::string& name() const { return name_; }

  const Matrix& left(Basis e) const { return left_[index(e)]; }
  const Matrix& right(Basis e) const { return right_[index(e)]; }
  Matrix left(const Quaternion& q) const;
  Matrix right(const Quaternion& q) const;

  Vector act_left(const Quaternion& q, const Vector& x) const { return left(q) * x; }
  Vector act_right(const Vector& x, const Quaternion& q) const { return right(q) * x; }

  /// Matrix of Re(x) = 1/4 sum_e e* x e.
  const Matrix& re_projector() const { return re_projector_; }
  /// Canonical (echelon) basis of X_Re, d x d/4.
  const Matrix& real_basis() const { return real_basis_; }
  /// r x d map sending z in X_Re to its coordinates against real_basis().
  const Matrix& real_coordinates() const { return real_coordinates_; }

  /// Largest violation found by validation (multiplication table, commutation).
  double validation_residual() const { return residual_; }

 private:
  HBimodule() = default;

  int dim_ = 0;
  std::string name_;
  std::array<Matrix, 4> left_;
  std::array<Matrix, 4> right_;
  Matrix re_projector_;
  Matrix real_basis_;
  Matrix real_coordinates_;
  double residual_ = 0.0;
};

using ModulePtr = std::shared_ptr<const HBimodule>;

ModulePtr share(HBimodule module);

/// R^n (x) H, coordinates (p, e) at index 4p + e, scalar actions slot-wise.
ModulePtr quaternionize(int n);
/// H (x) H with alpha (a (x) b) beta = a (x) alpha b beta; coordinate (e, f) at 4e + f.
ModulePtr make_hthr();
/// H (x) H with alpha (a (x) b) beta = alpha a (x) b beta.
ModulePtr make_hthlr();
/// The bimodule transported along the invertible change of coordinates s
/// (x -> s x), i.e. with actions s L s^-1 and s R s^-1.
ModulePtr transport(const HBimodule& module, const Matrix& s, std::string name = {});

/// Re(x) = 1/4 sum_e e* x e.
Vector re_project(const HBimodule& module, const Vector& x);

/// Basis of X_Re as vectors of X (the columns of real_basis()).
std::vector<Vector> real_part_basis(const HBimodule& module);

/// The decomposition x = sum_e x_e e with x_e = Re(e* x) in X_Re.
struct Polarization {
  std::array<Vector, 4> components;

  const Vector& operator[](Basis e) const { return components[index(e)]; }
  Vector reassemble(const HBimodule& module) const;
};

Polarization polarize(const HBimodule& module, const Vector& x);

/// Matrix (r x d) of x -> coordinates of Re(e* x) against real_basis().
Matrix polar_coordinate_map(const HBimodule& module, Basis e);

/// Real-linear map X -> Y intertwining both scalar actions.
class BoundedHMap {
 public:
  /// Throws Error(NotIntertwining) with the residual when the matrix fails
  /// T L_X(e) = L_Y(e) T or T R_X(e) = R_Y(e) T beyond `tolerance` (relative
  /// to max(1, |T|)).
  static BoundedHMap make(ModulePtr domain, ModulePtr codomain, Matrix matrix,
                          double tolerance = tol::kAction);

  const ModulePtr& domain() const { return domain_; }
  const ModulePtr& codomain() const { return codomain_; }
  const Matrix& matrix() const { return matrix_; }
  double intertwining_residual() const { return residual_; }

  Vector operator()(const Vector& x) const { return matrix_ * x; }

  /// this o other.
  BoundedHMap after(const BoundedHMap& other) const;

 private:
  BoundedHMap() = default;

  ModulePtr domain_;
  ModulePtr codomain_;
  Matrix matrix_;
  double residual_ = 0.0;
};

/// max over e in {i, j} of |T L_X(e) - L_Y(e) T| and |T R_X(e) - R_Y(e) T|.
double intertwining_residual(const HBimodule& domain, const HBimodule& codomain, const Matrix& t);

/// The isomorphism X -> quaternionize(d/4), x -> sum_p b_p (x) (sum_e c_pe e)
/// where Re(e* x) = sum_p c_pe b_p against the real_basis().
BoundedHMap structure_iso(const ModulePtr& module);
/// Same against an arbitrary basis (columns) of X_Re.
BoundedHMap structure_iso(const ModulePtr& module, const Matrix& real_basis);
/// Inverse of structure_iso(module, real_basis).
BoundedHMap structure_iso_inverse(const ModulePtr& module, const Matrix& real_basis);

/// T -> T restricted to X_Re, in real_basis() coordinates (r_Y x r_X).
/// Throws Error(NotIntertwining) when T does not intertwine.
Matrix psi_restrict(const BoundedHMap& t);
/// S -> S (x) id_H, transported to X -> Y.
BoundedHMap psi_inverse(const Matrix& s, const ModulePtr& domain, const ModulePtr& codomain);

/// X_{1,alpha} = { x : alpha x = x alpha } with its complex structure x -> alpha x.
struct ComplexSlice {
  ModulePtr module;
  Quaternion alpha;
  Matrix basis;              // d x 2r, orthonormal columns
  Matrix complex_structure;  // action of alpha in basis coordinates, squares to -1
};

/// Throws Error(InvalidGenerator) unless alpha is a unit imaginary quaternion.
ComplexSlice complexify(const ModulePtr& module, const Quaternion& alpha);

}  // namespace quatfa
