#pragma once

#include <functional>
#include <optional>

#include "quatfa/bimodule.hpp"

namespace quatfa {

enum class NormKind {
  Hilbertian,          // x -> sqrt(x^T G x) for an action-compatible form G
  QuaternionAbsolute,  // |q| on H itself
  General,             // arbitrary evaluator; not supported by operator norms
};

/// A bimodule norm: ||alpha x beta|| = |alpha| ||x|| |beta||.
class HNorm {
 public:
  /// Validates that `form` is symmetric positive definite and invariant under
  /// L(u), R(u) for unit u. Throws Error(InvalidBimodule) or Error(RankDeficient).
  static HNorm hilbertian(const HBimodule& module, Matrix form, double tolerance = tol::kAction);
  /// The compatible form sum_e g(x_e, x_e) induced by a positive definite form
  /// g on X_Re (in real_basis() coordinates).
  static HNorm from_real_form(const HBimodule& module, const Matrix& real_form);
  /// Euclidean coordinates on quaternionize(n).
  static HNorm standard(int n);
  static HNorm quaternion_absolute();
  static HNorm general(std::function<double(const Vector&)> evaluate);

  NormKind kind() const { return kind_; }
  bool is_hilbertian() const { return kind_ != NormKind::General; }
  /// Throws Error(UnsupportedNorm) for general norms.
  const Matrix& form() const;

  double operator()(const Vector& x) const;

 private:
  NormKind kind_ = NormKind::Hilbertian;
  Matrix form_;
  std::function<double(const Vector&)> evaluate_;
};

/// | ||alpha x beta|| - |alpha| ||x|| |beta| |.
double bimodule_law_residual(const HBimodule& module, const HNorm& norm, const Vector& x,
                             const Quaternion& alpha, const Quaternion& beta);

/// Operator norm of T for Hilbertian norms; largest singular value in the
/// norm-adapted coordinates. Throws Error(UnsupportedNorm) otherwise.
double op_norm(const BoundedHMap& t, const HNorm& domain_norm, const HNorm& codomain_norm);
double op_norm(const Matrix& t, const HNorm& domain_norm, const HNorm& codomain_norm);

/// Gram matrix of the norm restricted to X_Re, in real_basis() coordinates.
Matrix real_part_form(const HBimodule& module, const HNorm& norm);

/// ||f|| for a real functional f on X_Re given by its values on real_basis().
double functional_norm(const HBimodule& module, const HNorm& norm, const Vector& f);

/// f~(x) = sum_e f(Re(e* x)) e, a bimodule map X -> H with Psi(f~) = f.
BoundedHMap functional_tilde(const ModulePtr& module, const Vector& f);

/// Some T in B_H(X; H) with T(x) != 0, built from the largest polarization
/// component x_e and the functional <x_e, .> on X_Re.
/// Throws Error(NoSeparator) when x = 0.
BoundedHMap separate_point(const ModulePtr& module, const HNorm& norm, const Vector& x);

/// A sub-bimodule Y of X with an orthonormal basis and its induced actions.
struct SubBimodule {
  ModulePtr ambient;
  Matrix basis;  // d_X x d_Y, orthonormal columns
  ModulePtr induced;

  /// Span of the columns of `spanning`. Throws Error(InvalidSubspace) unless
  /// the span is invariant under every left and right basis action.
  static SubBimodule span(const ModulePtr& ambient, const Matrix& spanning,
                          double tolerance = tol::kAction);

  /// Ambient norm restricted to Y.
  HNorm restrict_norm(const HNorm& ambient_norm) const;
};

/// Norm-preserving extension of g : Y -> H to X -> H: Psi(g) on Y_Re is
/// extended by zero on the orthogonal complement of Y_Re in X_Re, then lifted
/// by functional_tilde. Throws Error(UnsupportedNorm) for non-Hilbertian norms.
BoundedHMap hahn_banach_extend(const SubBimodule& sub, const HNorm& ambient_norm, const BoundedHMap& g);

/// X* with (alpha . f)(x) = f(x alpha) and (f . alpha)(x) = f(alpha x);
/// functionals are coordinate vectors, f(x) = f . x.
struct DualModule {
  ModulePtr base;
  ModulePtr module;
  HNorm norm;  // dual norm, form G^-1
};

DualModule dual_module(const ModulePtr& base, const HNorm& norm);

/// f -> f o Re for f on X_Re (values on real_basis()); the result lies in (X*)_Re.
Vector dual_re_iso(const HBimodule& module, const Vector& f);

struct NormPair {
  double restricted = 0.0;  // ||T restricted to X_Re||
  double full = 0.0;        // ||T||
};

/// Both norms; ||T|_Re|| <= ||T|| <= 4 ||T|_Re|| always holds.
NormPair check_norm_equivalence(const BoundedHMap& t, const HNorm& domain_norm, const HNorm& codomain_norm);

}  // namespace quatfa
