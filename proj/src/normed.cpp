#include "quatfa/normed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "quatfa/error.hpp"

namespace quatfa {

HNorm HNorm::hilbertian(const HBimodule& module, Matrix form, double tolerance) {
  if (form.rows() != module.dim() || form.cols() != module.dim()) {
    throw Error(ErrorCode::InvalidBimodule, "norm form has the wrong size");
  }
  const double scale = std::max(1.0, max_abs(form));
  const double asym = max_abs(form - form.transpose());
  if (asym > tolerance * scale) {
    throw Error(ErrorCode::InvalidBimodule, "norm form is not symmetric", asym);
  }
  cholesky_upper(form);  // throws on indefinite forms
  double invariance = 0.0;
  for (Basis e : {Basis::I, Basis::J}) {
    invariance = std::max(invariance, max_abs(module.left(e).transpose() * form * module.left(e) - form));
    invariance = std::max(invariance, max_abs(module.right(e).transpose() * form * module.right(e) - form));
  }
  if (invariance > tolerance * scale) {
    throw Error(ErrorCode::InvalidBimodule, "form is not invariant under the unit scalar actions", invariance);
  }
  HNorm n;
  n.kind_ = NormKind::Hilbertian;
  n.form_ = symmetrize(form);
  return n;
}

HNorm HNorm::from_real_form(const HBimodule& module, const Matrix& real_form) {
  if (real_form.rows() != module.real_dim() || real_form.cols() != module.real_dim()) {
    throw Error(ErrorCode::InvalidBimodule, "real form must be r x r with r = d/4");
  }
  Matrix g = Matrix::Zero(module.dim(), module.dim());
  for (Basis e : kBasis) {
    const Matrix c = polar_coordinate_map(module, e);
    g += c.transpose() * real_form * c;
  }
  return hilbertian(module, symmetrize(g));
}

HNorm HNorm::standard(int n) {
  HNorm norm;
  norm.kind_ = NormKind::Hilbertian;
  norm.form_ = Matrix::Identity(4 * n, 4 * n);
  return norm;
}

HNorm HNorm::quaternion_absolute() {
  HNorm norm;
  norm.kind_ = NormKind::QuaternionAbsolute;
  norm.form_ = Matrix::Identity(4, 4);
  return norm;
}

HNorm HNorm::general(std::function<double(const Vector&)> evaluate) {
  HNorm norm;
  norm.kind_ = NormKind::General;
  norm.evaluate_ = std::move(evaluate);
  return norm;
}

const Matrix& HNorm::form() const {
  if (kind_ == NormKind::General) {
    throw Error(ErrorCode::UnsupportedNorm, "operation requires a Hilbertian norm");
  }
  return form_;
}

double HNorm::operator()(const Vector& x) const {
  if (kind_ == NormKind::General) return evaluate_(x);
  return std::sqrt(std::max(0.0, x.dot(form_ * x)));
}

double bimodule_law_residual(const HBimodule& module, const HNorm& norm, const Vector& x,
                             const Quaternion& alpha, const Quaternion& beta) {
  const Vector y = module.left(alpha) * (module.right(beta) * x);
  return std::abs(norm(y) - quatfa::norm(alpha) * norm(x) * quatfa::norm(beta));
}

double op_norm(const Matrix& t, const HNorm& domain_norm, const HNorm& codomain_norm) {
  return operator_norm(t, domain_norm.form(), codomain_norm.form());
}

double op_norm(const BoundedHMap& t, const HNorm& domain_norm, const HNorm& codomain_norm) {
  return op_norm(t.matrix(), domain_norm, codomain_norm);
}

Matrix real_part_form(const HBimodule& module, const HNorm& norm) {
  const Matrix& b = module.real_basis();
  return symmetrize(b.transpose() * norm.form() * b);
}

double functional_norm(const HBimodule& module, const HNorm& norm, const Vector& f) {
  return operator_norm(f.transpose(), real_part_form(module, norm), Matrix::Identity(1, 1));
}

BoundedHMap functional_tilde(const ModulePtr& module, const Vector& f) {
  if (f.size() != module->real_dim()) {
    throw Error(ErrorCode::InvalidSubspace, "functional must have one value per real-part basis vector");
  }
  Matrix t(4, module->dim());
  for (Basis e : kBasis) t.row(index(e)) = f.transpose() * polar_coordinate_map(*module, e);
  return BoundedHMap::make(module, quaternionize(1), std::move(t));
}

BoundedHMap separate_point(const ModulePtr& module, const HNorm& norm, const Vector& x) {
  const Matrix g = norm.is_hilbertian() ? real_part_form(*module, norm)
                                        : Matrix::Identity(module->real_dim(), module->real_dim());
  Vector best_coords;
  double best = 0.0;
  for (Basis e : kBasis) {
    const Vector c = polar_coordinate_map(*module, e) * x;
    const double size = c.dot(g * c);
    if (size > best) {
      best = size;
      best_coords = c;
    }
  }
  if (best <= std::numeric_limits<double>::min()) {
    throw Error(ErrorCode::NoSeparator, "cannot separate the zero vector");
  }
  return functional_tilde(module, g * best_coords);
}

SubBimodule SubBimodule::span(const ModulePtr& ambient, const Matrix& spanning, double tolerance) {
  if (spanning.rows() != ambient->dim()) {
    throw Error(ErrorCode::InvalidSubspace, "spanning vectors have the wrong dimension");
  }
  SubBimodule sub;
  sub.ambient = ambient;
  sub.basis = range_basis(spanning);
  if (sub.basis.cols() == 0) {
    throw Error(ErrorCode::InvalidSubspace, "sub-bimodule must be nonzero");
  }
  double residual = 0.0;
  for (Basis e : kImaginaryBasis) {
    residual = std::max(residual, span_residual(sub.basis, ambient->left(e) * sub.basis));
    residual = std::max(residual, span_residual(sub.basis, ambient->right(e) * sub.basis));
  }
  if (residual > tolerance * std::max(1.0, max_abs(ambient->left(Basis::I)))) {
    throw Error(ErrorCode::InvalidSubspace, "span is not invariant under the scalar actions", residual);
  }
  const Matrix& q = sub.basis;
  sub.induced = share(HBimodule::from_generators(
      q.transpose() * ambient->left(Basis::I) * q, q.transpose() * ambient->left(Basis::J) * q,
      q.transpose() * ambient->right(Basis::I) * q, q.transpose() * ambient->right(Basis::J) * q,
      ambient->name() + "|sub"));
  return sub;
}

HNorm SubBimodule::restrict_norm(const HNorm& ambient_norm) const {
  return HNorm::hilbertian(*induced, symmetrize(basis.transpose() * ambient_norm.form() * basis));
}

BoundedHMap hahn_banach_extend(const SubBimodule& sub, const HNorm& ambient_norm, const BoundedHMap& g) {
  if (g.domain()->dim() != sub.induced->dim() || g.codomain()->dim() != 4) {
    throw Error(ErrorCode::InvalidSubspace, "g must map the sub-bimodule into H");
  }
  const HBimodule& x = *sub.ambient;
  const Matrix gx = real_part_form(x, ambient_norm);
  // Y_Re in X_Re coordinates.
  const Matrix c = x.real_coordinates() * sub.basis * sub.induced->real_basis();
  const Matrix phi = psi_restrict(g);  // 1 x r_Y
  // Orthogonal projection of X_Re onto Y_Re followed by Psi(g).
  const Matrix h = phi * (c.transpose() * gx * c).ldlt().solve(c.transpose() * gx);
  return functional_tilde(sub.ambient, h.transpose());
}

DualModule dual_module(const ModulePtr& base, const HNorm& norm) {
  DualModule dual;
  dual.base = base;
  dual.module = share(HBimodule::from_generators(
      base->right(Basis::I).transpose(), base->right(Basis::J).transpose(),
      base->left(Basis::I).transpose(), base->left(Basis::J).transpose(), base->name() + "*"));
  const Matrix& g = norm.form();
  dual.norm = HNorm::hilbertian(*dual.module, symmetrize(g.ldlt().solve(Matrix::Identity(g.rows(), g.cols()))));
  return dual;
}

Vector dual_re_iso(const HBimodule& module, const Vector& f) {
  return (f.transpose() * module.real_coordinates() * module.re_projector()).transpose();
}

NormPair check_norm_equivalence(const BoundedHMap& t, const HNorm& domain_norm, const HNorm& codomain_norm) {
  const HBimodule& x = *t.domain();
  NormPair out;
  out.restricted = operator_norm(t.matrix() * x.real_basis(), real_part_form(x, domain_norm), codomain_norm.form());
  out.full = op_norm(t, domain_norm, codomain_norm);
  return out;
}

}  // namespace quatfa
