#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quatfa/error.hpp"
#include "quatfa/hilbert.hpp"

namespace quatfa {

class HStarAlgebra;

/// a = sum_e a_e (x) e acting on R^n (x) H, stored realified (4n x 4n).
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(Matrix realified) : m_(std::move(realified)) {}

  /// sum_e kron(a_e, left_matrix(e)).
  static AlgebraElement from_components(const std::array<Matrix, 4>& components);
  static AlgebraElement scalar(int n, const Quaternion& alpha);

  int n() const { return static_cast<int>(m_.rows() / 4); }
  const Matrix& matrix() const { return m_; }

  AlgebraElement star() const { return AlgebraElement(m_.transpose()); }

 private:
  Matrix m_;
};

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const Quaternion& alpha, const AlgebraElement& a);
AlgebraElement operator*(const AlgebraElement& a, const Quaternion& alpha);

/// Re(a) = 1/4 sum_f f* a f.
AlgebraElement re_part(const AlgebraElement& a);

/// Components a_e with Re(e* a) = a_e (x) 1.
std::array<Matrix, 4> decompose(const AlgebraElement& a);

/// Operator norm of the defining representation.
double bstar_norm(const AlgebraElement& a);

/// A_Re (x) H for a unital real *-subalgebra A_Re of M_n(R).
class HStarAlgebra {
 public:
  /// Closes span(generators, 1) under products and transposes. Throws
  /// Error(InvalidAlgebra) for non-unital requests, bad shapes, or when the
  /// closure does not stabilize.
  static HStarAlgebra make(int n, const std::vector<Matrix>& generators, bool unital = true,
                           std::string name = {});

  int n() const { return n_; }
  const std::string& name() const { return name_; }
  /// Canonical (echelon) basis of A_Re.
  const std::vector<Matrix>& real_basis() const { return basis_; }
  int real_dim() const { return static_cast<int>(basis_.size()); }
  /// Largest distance of a product or transpose of basis elements from A_Re.
  double closure_residual() const { return residual_; }

  AlgebraElement one() const { return AlgebraElement::scalar(n_, 1.0); }
  /// sum_k basis_k (x) coeffs_k.
  AlgebraElement element(const std::vector<Quaternion>& coeffs) const;
  /// Coordinates of a matrix in A_Re against real_basis().
  Vector coordinates(const Matrix& a_re) const;
  /// Distance of a matrix from A_Re.
  double membership_residual(const Matrix& a_re) const;

 private:
  int n_ = 0;
  std::string name_;
  std::vector<Matrix> basis_;
  Matrix vec_basis_;  // n^2 x m, row-major vectorization
  Matrix vec_pinv_;
  double residual_ = 0.0;
};

HStarAlgebra quaternion_algebra();
/// Diagonal 3 x 3 real matrices, tensored with H.
HStarAlgebra diag3_algebra();
/// M_2(R) (x) H.
HStarAlgebra m2r_algebra();

/// rho(a) = sum_e kron(kron(a_e, I_2), left_matrix(e)) on K0 (x) H with
/// K0 = C^n as R^{2n}; the right action is kron(I, right_matrix(beta)).
struct GnRepresentation {
  int k0_dim = 0;
  Matrix operator()(const AlgebraElement& a) const;
  Matrix right_action(const Quaternion& beta) const;
};

GnRepresentation gn_representation(const HStarAlgebra& a);

/// Realified representation on R^n (x) H = R^{4n}; the defining one.
struct RealRepresentation {
  int n = 0;
  Matrix operator()(const AlgebraElement& a) const { return a.matrix(); }
};

RealRepresentation real_representation(const HStarAlgebra& a);

/// J_K(T (x) alpha)(x (x) beta) = T(x) (x) alpha beta, transported to K by an
/// orthonormal frame of K_Re.
class JkEmbedding {
 public:
  explicit JkEmbedding(HilbertHBimodule k);

  int real_rank() const { return k_.module()->real_dim(); }
  /// T is an operator on K_Re in orthonormal coordinates.
  Matrix operator()(const Matrix& t, const Quaternion& alpha) const;
  const HilbertHBimodule& space() const { return k_; }

 private:
  HilbertHBimodule k_;
  Matrix frame_inv_;
};

struct NormalityReport {
  bool normal = true;
  std::optional<AlgebraElement> witness;
  double commutator_norm = 0.0;  // ||a*a - aa*|| for the witness
  std::string reason;
};

/// Normal iff A_Re is commutative and every basis element is symmetric.
NormalityReport is_normal_algebra(const HStarAlgebra& a);

class NotNormalError : public Error {
 public:
  explicit NotNormalError(NormalityReport report);
  const NormalityReport& report() const { return report_; }

 private:
  NormalityReport report_;
};

/// A ~= H^m with the sup norm, by the characters of A_Re.
class GelfandTransform {
 public:
  int points() const { return static_cast<int>(projectors_.size()); }
  /// Values of character k on real_basis().
  const std::vector<Vector>& characters() const { return characters_; }
  /// Spectral projectors in A_Re.
  const std::vector<Matrix>& projectors() const { return projectors_; }

  std::vector<Quaternion> apply(const AlgebraElement& a) const;
  AlgebraElement inverse(const std::vector<Quaternion>& values) const;

 private:
  friend GelfandTransform gelfand_transform(const HStarAlgebra& a, std::uint64_t seed);
  int n_ = 0;
  std::vector<Matrix> projectors_;
  std::vector<Vector> unit_vectors_;
  std::vector<Vector> characters_;
};

/// Throws NotNormalError (code NotCommutative) carrying the witness.
GelfandTransform gelfand_transform(const HStarAlgebra& a, std::uint64_t seed = 1);

/// A_{1,i} = A_Re + A_Re i.
struct ComplexAlgebra {
  std::vector<AlgebraElement> basis;  // real basis, 2 dim A_Re elements
  int complex_dim = 0;
  double product_residual = 0.0;
  double involution_residual = 0.0;
  bool commutative = false;
  int self_adjoint_dim = 0;
};

ComplexAlgebra complexify_algebra(const HStarAlgebra& a);

}  // namespace quatfa
