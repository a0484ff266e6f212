#include "quatfa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "quatfa/error.hpp"

namespace quatfa {

namespace {

Eigen::JacobiSVD<Matrix> full_svd(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int rank_from(const Vector& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++r;
  }
  return r;
}

}  // namespace

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return rank_from(svd.singularValues(), rel_tol);
}

Matrix null_space(const Matrix& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Matrix::Identity(n, n);
  auto svd = full_svd(m);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(n - r);
}

Matrix range_basis(const Matrix& m, double rel_tol) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  auto svd = full_svd(m);
  const int r = rank_from(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Matrix canonical_basis(const Matrix& spanning, double rel_tol) {
  const Matrix q = range_basis(spanning, rel_tol);
  const Eigen::Index r = q.cols();
  const Eigen::Index d = q.rows();
  // Pivot coordinates by greedy pivoted Cholesky of the projector q q^T.
  // The projector depends only on the subspace, so the pivots do too, and
  // greedy pivoting keeps the pivot block well conditioned.
  Vector residual = q.rowwise().squaredNorm();
  Matrix l = Matrix::Zero(d, r);
  std::vector<Eigen::Index> pivots;
  for (Eigen::Index step = 0; step < r; ++step) {
    const double top = residual.maxCoeff();
    Eigen::Index c = 0;
    while (residual(c) < top * (1.0 - 1e-9)) ++c;
    pivots.push_back(c);
    Vector col = q * q.row(c).transpose();
    for (Eigen::Index k = 0; k < step; ++k) col -= l(c, k) * l.col(k);
    col /= std::sqrt(residual(c));
    l.col(step) = col;
    residual -= col.cwiseAbs2();
    residual(c) = -1.0;
  }
  std::sort(pivots.begin(), pivots.end());
  Matrix block(r, r);
  for (Eigen::Index k = 0; k < r; ++k) block.row(k) = q.row(pivots[k]);
  Matrix basis = q * block.fullPivLu().inverse();
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
      if (std::abs(basis(i, j)) < 1e-14) basis(i, j) = 0.0;
    }
    basis(pivots[j], j) = 1.0;
  }
  return basis;
}

double span_residual(const Matrix& q, const Matrix& vectors) {
  if (vectors.cols() == 0) return 0.0;
  const Matrix residual = vectors - q * (q.transpose() * vectors);
  return residual.colwise().norm().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix cholesky_upper(const Matrix& form) {
  Eigen::LLT<Matrix> llt(symmetrize(form));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::RankDeficient, "form is not positive definite");
  }
  return llt.matrixU();
}

double operator_norm(const Matrix& t, const Matrix& form_in, const Matrix& form_out) {
  const Matrix u_in = cholesky_upper(form_in);
  const Matrix u_out = cholesky_upper(form_out);
  // |U_out T U_in^{-1} v| over unit v.
  const Matrix adapted =
      u_in.transpose().triangularView<Eigen::Lower>().solve((u_out * t).transpose()).transpose();
  return spectral_norm(adapted);
}

}  // namespace quatfa
