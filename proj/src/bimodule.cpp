#include "quatfa/bimodule.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "quatfa/error.hpp"

namespace quatfa {

namespace {

// e f = sign * g for basis elements.
std::pair<double, Basis> basis_product(Basis e, Basis f) {
  const Quaternion p = Quaternion::unit(e) * Quaternion::unit(f);
  for (Basis g : kBasis) {
    if (p[g] != 0.0) return {p[g], g};
  }
  return {0.0, Basis::One};
}

Matrix combine(const std::array<Matrix, 4>& images, const Quaternion& q) {
  Matrix m = q.a * images[0];
  m += q.b * images[1];
  m += q.c * images[2];
  m += q.d * images[3];
  return m;
}

[[noreturn]] void reject(const std::string& name, const std::string& why, double residual) {
  std::ostringstream msg;
  msg << "invalid bimodule";
  if (!name.empty()) msg << " '" << name << "'";
  msg << ": " << why << " (residual " << residual << ")";
  throw Error(ErrorCode::InvalidBimodule, msg.str(), residual);
}

}  // namespace

HBimodule HBimodule::from_generators(Matrix left_i, Matrix left_j, Matrix right_i, Matrix right_j,
                                     std::string name) {
  const Eigen::Index d = left_i.rows();
  for (const Matrix* m : {&left_i, &left_j, &right_i, &right_j}) {
    if (m->rows() != d || m->cols() != d) reject(name, "generator matrices must be d x d", 0.0);
  }
  if (d == 0 || d % 4 != 0) reject(name, "real dimension must be a positive multiple of 4", 0.0);

  HBimodule x;
  x.dim_ = static_cast<int>(d);
  x.name_ = std::move(name);
  const Matrix id = Matrix::Identity(d, d);
  x.left_ = {id, std::move(left_i), std::move(left_j), Matrix()};
  x.left_[3] = x.left_[1] * x.left_[2];
  x.right_ = {id, std::move(right_i), std::move(right_j), Matrix()};
  x.right_[3] = x.right_[2] * x.right_[1];

  double scale = 1.0;
  for (int e = 1; e < 3; ++e) scale = std::max({scale, max_abs(x.left_[e]), max_abs(x.right_[e])});

  double table = 0.0;
  for (Basis e : kBasis) {
    for (Basis f : kBasis) {
      const auto [s, g] = basis_product(e, f);
      table = std::max(table, max_abs(x.left(e) * x.left(f) - s * x.left(g)));
      // R is an anti-homomorphism: R(e) R(f) = R(f e).
      const auto [t, h] = basis_product(f, e);
      table = std::max(table, max_abs(x.right(e) * x.right(f) - t * x.right(h)));
    }
  }
  if (table > tol::kAction * scale * scale) reject(x.name_, "multiplication table fails", table);

  double commute = 0.0;
  for (Basis e : kImaginaryBasis) {
    for (Basis f : kImaginaryBasis) {
      commute = std::max(commute, max_abs(x.left(e) * x.right(f) - x.right(f) * x.left(e)));
    }
  }
  if (commute > tol::kAction * scale * scale) reject(x.name_, "left and right actions do not commute", commute);
  x.residual_ = std::max(table, commute);

  x.re_projector_ = Matrix::Zero(d, d);
  for (Basis e : kBasis) x.re_projector_ += conj_sign(e) * x.left(e) * x.right(e);
  x.re_projector_ *= 0.25;

  Matrix stacked(3 * d, d);
  for (Basis e : kImaginaryBasis) {
    stacked.middleRows((index(e) - 1) * d, d) = x.left(e) - x.right(e);
  }
  x.real_basis_ = canonical_basis(null_space(stacked));
  if (x.real_basis_.cols() * 4 != d) {
    reject(x.name_, "real part has dimension " + std::to_string(x.real_basis_.cols()) +
                        ", expected d/4", static_cast<double>(x.real_basis_.cols()));
  }
  x.real_coordinates_ = (x.real_basis_.transpose() * x.real_basis_)
                            .ldlt()
                            .solve(x.real_basis_.transpose());
  return x;
}

Matrix HBimodule::left(const Quaternion& q) const { return combine(left_, q); }
Matrix HBimodule::right(const Quaternion& q) const { return combine(right_, q); }

ModulePtr share(HBimodule module) { return std::make_shared<const HBimodule>(std::move(module)); }

ModulePtr quaternionize(int n) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidBimodule, "quaternionize: n must be at least 1");
  }
  const Matrix id = Matrix::Identity(n, n);
  return share(HBimodule::from_generators(
      kron(id, left_matrix(Quaternion::unit(Basis::I))), kron(id, left_matrix(Quaternion::unit(Basis::J))),
      kron(id, right_matrix(Quaternion::unit(Basis::I))), kron(id, right_matrix(Quaternion::unit(Basis::J))),
      "quaternionize(" + std::to_string(n) + ")"));
}

ModulePtr make_hthr() {
  const Matrix id = Matrix::Identity(4, 4);
  const Quaternion i = Quaternion::unit(Basis::I), j = Quaternion::unit(Basis::J);
  return share(HBimodule::from_generators(kron(id, left_matrix(i)), kron(id, left_matrix(j)),
                                          kron(id, right_matrix(i)), kron(id, right_matrix(j)),
                                          "hthr"));
}

ModulePtr make_hthlr() {
  const Matrix id = Matrix::Identity(4, 4);
  const Quaternion i = Quaternion::unit(Basis::I), j = Quaternion::unit(Basis::J);
  return share(HBimodule::from_generators(kron(left_matrix(i), id), kron(left_matrix(j), id),
                                          kron(id, right_matrix(i)), kron(id, right_matrix(j)),
                                          "hthlr"));
}

ModulePtr transport(const HBimodule& module, const Matrix& s, std::string name) {
  Eigen::PartialPivLU<Matrix> lu(s);
  const Matrix s_inv = lu.inverse();
  auto conj_by = [&](const Matrix& m) -> Matrix { return s * m * s_inv; };
  return share(HBimodule::from_generators(conj_by(module.left(Basis::I)), conj_by(module.left(Basis::J)),
                                          conj_by(module.right(Basis::I)), conj_by(module.right(Basis::J)),
                                          name.empty() ? module.name() + "~" : std::move(name)));
}

Vector re_project(const HBimodule& module, const Vector& x) { return module.re_projector() * x; }

std::vector<Vector> real_part_basis(const HBimodule& module) {
  std::vector<Vector> out;
  for (Eigen::Index p = 0; p < module.real_basis().cols(); ++p) out.emplace_back(module.real_basis().col(p));
  return out;
}

Vector Polarization::reassemble(const HBimodule& module) const {
  Vector x = Vector::Zero(module.dim());
  for (Basis e : kBasis) x += module.right(e) * components[index(e)];
  return x;
}

Polarization polarize(const HBimodule& module, const Vector& x) {
  Polarization out;
  for (Basis e : kBasis) {
    out.components[index(e)] = module.re_projector() * (conj_sign(e) * (module.left(e) * x));
  }
  return out;
}

Matrix polar_coordinate_map(const HBimodule& module, Basis e) {
  return module.real_coordinates() * module.re_projector() * (conj_sign(e) * module.left(e));
}

double intertwining_residual(const HBimodule& domain, const HBimodule& codomain, const Matrix& t) {
  double r = 0.0;
  for (Basis e : {Basis::I, Basis::J}) {
    r = std::max(r, max_abs(t * domain.left(e) - codomain.left(e) * t));
    r = std::max(r, max_abs(t * domain.right(e) - codomain.right(e) * t));
  }
  return r;
}

BoundedHMap BoundedHMap::make(ModulePtr domain, ModulePtr codomain, Matrix matrix, double tolerance) {
  if (matrix.rows() != codomain->dim() || matrix.cols() != domain->dim()) {
    throw Error(ErrorCode::NotIntertwining, "map has the wrong shape for its domain and codomain");
  }
  BoundedHMap t;
  t.residual_ = quatfa::intertwining_residual(*domain, *codomain, matrix);
  if (t.residual_ > tolerance * std::max(1.0, max_abs(matrix))) {
    std::ostringstream msg;
    msg << "map does not intertwine the scalar actions (residual " << t.residual_ << ")";
    throw Error(ErrorCode::NotIntertwining, msg.str(), t.residual_);
  }
  t.domain_ = std::move(domain);
  t.codomain_ = std::move(codomain);
  t.matrix_ = std::move(matrix);
  return t;
}

BoundedHMap BoundedHMap::after(const BoundedHMap& other) const {
  return make(other.domain_, codomain_, matrix_ * other.matrix_);
}

namespace {

Matrix structure_matrix(const HBimodule& x, const Matrix& basis) {
  const Eigen::Index r = basis.cols();
  if (r * 4 != x.dim()) {
    throw Error(ErrorCode::InvalidSubspace, "real-part basis must have d/4 vectors");
  }
  const Matrix coords = (basis.transpose() * basis).ldlt().solve(basis.transpose());
  Matrix s(x.dim(), x.dim());
  for (Basis e : kBasis) {
    const Matrix rows = coords * x.re_projector() * (conj_sign(e) * x.left(e));
    for (Eigen::Index p = 0; p < r; ++p) s.row(4 * p + index(e)) = rows.row(p);
  }
  return s;
}

}  // namespace

BoundedHMap structure_iso(const ModulePtr& module) { return structure_iso(module, module->real_basis()); }

BoundedHMap structure_iso(const ModulePtr& module, const Matrix& real_basis) {
  return BoundedHMap::make(module, quaternionize(module->real_dim()), structure_matrix(*module, real_basis));
}

BoundedHMap structure_iso_inverse(const ModulePtr& module, const Matrix& real_basis) {
  const Eigen::Index r = real_basis.cols();
  Matrix inv(module->dim(), 4 * r);
  for (Eigen::Index p = 0; p < r; ++p) {
    for (Basis e : kBasis) inv.col(4 * p + index(e)) = module->right(e) * real_basis.col(p);
  }
  return BoundedHMap::make(quaternionize(static_cast<int>(r)), module, std::move(inv));
}

Matrix psi_restrict(const BoundedHMap& t) {
  const HBimodule& x = *t.domain();
  const HBimodule& y = *t.codomain();
  const double r = intertwining_residual(x, y, t.matrix());
  if (r > tol::kAction * std::max(1.0, max_abs(t.matrix()))) {
    throw Error(ErrorCode::NotIntertwining, "psi_restrict: map is not a bimodule map", r);
  }
  return y.real_coordinates() * t.matrix() * x.real_basis();
}

BoundedHMap psi_inverse(const Matrix& s, const ModulePtr& domain, const ModulePtr& codomain) {
  if (s.rows() != codomain->real_dim() || s.cols() != domain->real_dim()) {
    throw Error(ErrorCode::InvalidSubspace, "psi_inverse: S must map X_Re coordinates to Y_Re coordinates");
  }
  const Matrix lifted = kron(s, Matrix::Identity(4, 4));
  const Matrix m = structure_iso_inverse(codomain, codomain->real_basis()).matrix() * lifted *
                   structure_matrix(*domain, domain->real_basis());
  return BoundedHMap::make(domain, codomain, m);
}

ComplexSlice complexify(const ModulePtr& module, const Quaternion& alpha) {
  const ComplexEmbedding phi(alpha);  // validates alpha
  const Matrix la = module->left(alpha);
  const Matrix ra = module->right(alpha);
  ComplexSlice slice;
  slice.module = module;
  slice.alpha = alpha;
  slice.basis = null_space(la - ra);
  if (slice.basis.cols() != 2 * module->real_dim()) {
    throw Error(ErrorCode::InvalidBimodule, "complex slice has unexpected dimension",
                static_cast<double>(slice.basis.cols()));
  }
  slice.complex_structure = slice.basis.transpose() * la * slice.basis;
  return slice;
}

}  // namespace quatfa
