#pragma once

#include <Eigen/Dense>

#include "quatfa/tolerances.hpp"

namespace quatfa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const Matrix& m);

/// Singular values below rel_tol * (largest singular value) count as zero.
int numerical_rank(const Matrix& m, double rel_tol = tol::kRank);

/// Orthonormal basis (columns) of the kernel of m.
Matrix null_space(const Matrix& m, double rel_tol = tol::kRank);

/// Orthonormal basis (columns) of the column space of m.
Matrix range_basis(const Matrix& m, double rel_tol = tol::kRank);

/// Basis of the column space of `spanning` that restricts to the identity on
/// a set of pivot coordinates chosen from the orthogonal projector alone
/// (greedy pivoted Cholesky). Two spanning sets of the same subspace yield
/// the same basis.
Matrix canonical_basis(const Matrix& spanning, double rel_tol = tol::kRank);

/// Distance of each column of `vectors` from span(orthonormal columns of q),
/// maximized over columns.
double span_residual(const Matrix& q, const Matrix& vectors);

Matrix kron(const Matrix& a, const Matrix& b);

/// Symmetrized matrix (m + m^T) / 2.
Matrix symmetrize(const Matrix& m);

/// Max absolute entry; 0 for empty matrices.
double max_abs(const Matrix& m);

/// Upper-triangular U with form = U^T U; ||x||_form = |U x|.
/// Throws Error(RankDeficient) if the form is not positive definite.
Matrix cholesky_upper(const Matrix& form);

/// Operator norm of t: (R^n, form_in) -> (R^m, form_out).
double operator_norm(const Matrix& t, const Matrix& form_in, const Matrix& form_out);

}  // namespace quatfa
