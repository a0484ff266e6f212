#include "quatfa/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quatfa/error.hpp"

namespace quatfa {

namespace {

const ModulePtr& hthr_shared() {
  static const ModulePtr m = make_hthr();
  return m;
}

Matrix unit_frame(const Matrix& onb, const HBimodule& module) {
  const int r = static_cast<int>(onb.cols());
  Matrix w(module.dim(), 4 * r);
  for (int p = 0; p < r; ++p)
    for (Basis e : kBasis) w.col(4 * p + index(e)) = module.right(e) * onb.col(p);
  return w;
}

Matrix inverse(const Matrix& m) { return m.fullPivLu().inverse(); }

}  // namespace

QMatrix QMatrix::identity(int n) {
  QMatrix q(n, n);
  for (int p = 0; p < n; ++p) q(p, p) = 1.0;
  return q;
}

QMatrix QMatrix::adjoint() const {
  QMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = conj((*this)(r, c));
  return out;
}

QVector QMatrix::operator*(const QVector& x) const {
  QVector out(static_cast<size_t>(rows_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * x[c];
  return out;
}

Matrix left_realify(const QMatrix& q) {
  Matrix m(4 * q.rows(), 4 * q.cols());
  for (int r = 0; r < q.rows(); ++r)
    for (int c = 0; c < q.cols(); ++c) m.block<4, 4>(4 * r, 4 * c) = left_matrix(q(r, c));
  return m;
}

Vector realify(const QVector& x) {
  Vector v(4 * static_cast<int>(x.size()));
  for (size_t p = 0; p < x.size(); ++p) v.segment<4>(4 * p) = x[p].coords();
  return v;
}

QVector dequaternize(const Vector& x) {
  QVector out(static_cast<size_t>(x.size() / 4));
  for (size_t p = 0; p < out.size(); ++p) out[p] = Quaternion::from_coords(x.segment<4>(4 * p));
  return out;
}

RightHModule RightHModule::make(QMatrix gram, double tolerance) {
  if (gram.rows() != gram.cols() || gram.rows() < 1) {
    throw Error(ErrorCode::InvalidModule, "Gram matrix must be square and nonempty");
  }
  double scale = 1.0;
  double asym = 0.0;
  for (int p = 0; p < gram.rows(); ++p)
    for (int q = 0; q < gram.cols(); ++q) {
      scale = std::max(scale, norm(gram(p, q)));
      asym = std::max(asym, distance(gram(q, p), conj(gram(p, q))));
    }
  if (asym > tolerance * scale) {
    throw Error(ErrorCode::InvalidModule, "Gram matrix is not Hermitian", asym);
  }
  RightHModule m;
  m.real_form_ = symmetrize(left_realify(gram));
  cholesky_upper(m.real_form_);
  m.gram_ = std::move(gram);
  return m;
}

Quaternion RightHModule::inner(const QVector& x, const QVector& y) const {
  Quaternion out;
  for (int p = 0; p < rank(); ++p)
    for (int q = 0; q < rank(); ++q) out += conj(x[p]) * gram_(p, q) * y[q];
  return out;
}

Matrix RightHModule::right(const Quaternion& alpha) const {
  return kron(Matrix::Identity(rank(), rank()), right_matrix(alpha));
}

std::vector<QVector> gram_schmidt(const RightHModule& module) {
  const int n = module.rank();
  std::vector<QVector> remaining;
  for (int p = 0; p < n; ++p) {
    QVector c(n);
    c[p] = 1.0;
    remaining.push_back(std::move(c));
  }
  double scale = 0.0;
  for (int p = 0; p < n; ++p) scale = std::max(scale, module.gram()(p, p).a);

  std::vector<QVector> basis;
  while (!remaining.empty()) {
    size_t best = 0;
    double best_norm = -1.0;
    QVector best_vec;
    for (size_t k = 0; k < remaining.size(); ++k) {
      QVector v = remaining[k];
      for (const QVector& b : basis) {
        const Quaternion coeff = module.inner(b, v);
        for (int p = 0; p < n; ++p) v[p] -= b[p] * coeff;
      }
      const double size = module.inner(v, v).a;
      if (size > best_norm) {
        best_norm = size;
        best = k;
        best_vec = std::move(v);
      }
    }
    if (best_norm <= tol::kRank * std::max(1.0, scale)) {
      throw Error(ErrorCode::RankDeficient, "Gram matrix is degenerate", best_norm);
    }
    const double s = 1.0 / std::sqrt(best_norm);
    for (Quaternion& q : best_vec) q *= s;
    basis.push_back(std::move(best_vec));
    remaining.erase(remaining.begin() + static_cast<long>(best));
  }
  return basis;
}

HilbertHBimodule HilbertHBimodule::make(ModulePtr module, Matrix form, double tolerance) {
  const int d = module->dim();
  if (form.rows() != d || form.cols() != d) {
    throw Error(ErrorCode::InvalidModule, "form has the wrong size");
  }
  const double scale = std::max(1.0, max_abs(form));
  double residual = max_abs(form - form.transpose());
  for (Basis e : {Basis::I, Basis::J}) {
    residual = std::max(residual, max_abs(module->left(e).transpose() * form + form * module->left(e)));
    residual = std::max(residual, max_abs(module->right(e).transpose() * form + form * module->right(e)));
  }
  if (residual > tolerance * scale) {
    throw Error(ErrorCode::InvalidModule, "form is not compatible with the scalar actions", residual);
  }
  HilbertHBimodule h;
  h.form_ = symmetrize(form);
  cholesky_upper(h.form_);
  const Matrix& b = module->real_basis();
  const Matrix u = cholesky_upper(symmetrize(b.transpose() * h.form_ * b));
  h.onb_ = u.transpose().triangularView<Eigen::Lower>().solve(b.transpose()).transpose();
  h.frame_ = unit_frame(h.onb_, *module);
  h.module_ = std::move(module);
  h.residual_ = residual;
  return h;
}

HNorm HilbertHBimodule::norm() const { return HNorm::hilbertian(*module_, form_); }

Quaternion HilbertHBimodule::inner(const Vector& x, const Vector& y) const {
  const Vector fy = form_ * y;
  Quaternion out;
  for (Basis e : kBasis) out[e] = (module_->right(e) * x).dot(fy);
  return out;
}

double HilbertHBimodule::norm(const Vector& x) const { return std::sqrt(std::max(0.0, x.dot(form_ * x))); }

HilbertHBimodule standard_hilbert(int n) {
  return HilbertHBimodule::make(quaternionize(n), Matrix::Identity(4 * n, 4 * n));
}

HilbertHBimodule induce_left_mult(const RightHModule& module) {
  const int n = module.rank();
  const std::vector<QVector> onb = gram_schmidt(module);
  Matrix omega(4 * n, 4 * n);
  for (int p = 0; p < n; ++p) {
    const Vector u = realify(onb[p]);
    for (Basis e : kBasis) omega.col(4 * p + index(e)) = module.right(Quaternion::unit(e)) * u;
  }
  const Matrix omega_inv = inverse(omega);
  const Matrix id = Matrix::Identity(n, n);
  auto left = [&](Basis e) -> Matrix {
    return omega * kron(id, left_matrix(Quaternion::unit(e))) * omega_inv;
  };
  ModulePtr m = share(HBimodule::from_generators(left(Basis::I), left(Basis::J), module.right(Basis::I),
                                                 module.right(Basis::J), "induced"));
  return HilbertHBimodule::make(std::move(m), module.real_form());
}

BoundedHMap intertwine_left_structures(const RightHModule& module, const LeftStructure& first,
                                       const LeftStructure& second) {
  auto build = [&](const LeftStructure& s) {
    return HilbertHBimodule::make(share(HBimodule::from_generators(s.i, s.j, module.right(Basis::I),
                                                                   module.right(Basis::J))),
                                  module.real_form());
  };
  const HilbertHBimodule a = build(first);
  const HilbertHBimodule b = build(second);
  return hilbert_isomorphism(a, b);
}

HTensor TwoSidedInner::pair(const Vector& x, const Vector& y) const {
  const Polarization px = polarize(*module_, x);
  const Polarization py = polarize(*module_, y);
  Eigen::Matrix4d m;
  for (Basis e : kBasis) {
    const Vector fx = form_ * px[e];
    for (Basis f : kBasis) m(index(e), index(f)) = conj_sign(e) * fx.dot(py[f]);
  }
  return HTensor(m);
}

double TwoSidedInner::norm(const Vector& x) const { return std::sqrt(std::max(0.0, pair(x, x).multiply().a)); }

Matrix TwoSidedInner::pairing_matrix(const Vector& y) const {
  const Polarization py = polarize(*module_, y);
  Matrix out(16, module_->dim());
  for (Basis e : kBasis) {
    const Vector fy = form_ * py[e];
    for (Basis f : kBasis) {
      const Matrix pf = module_->re_projector() * module_->left(conj(Quaternion::unit(f)));
      out.row(4 * index(e) + index(f)) = conj_sign(e) * (pf.transpose() * fy).transpose();
    }
  }
  return out;
}

TwoSidedInner two_sided_from_bimodule(const HilbertHBimodule& y) { return {y.module(), y.form()}; }

HilbertHBimodule collapse_two_sided(const TwoSidedInner& p) {
  const HBimodule& m = *p.module();
  // Re m(<<x, y>>) = sum_e F(x_e, y_e).
  Matrix form = Matrix::Zero(m.dim(), m.dim());
  for (Basis e : kBasis) {
    const Matrix pe = m.re_projector() * m.left(conj(Quaternion::unit(e)));
    form += pe.transpose() * p.form() * pe;
  }
  return HilbertHBimodule::make(p.module(), symmetrize(form));
}

HilbertHBimodule opposite(const HilbertHBimodule& k) {
  const int r = k.module()->real_dim();
  const Matrix id = Matrix::Identity(r, r);
  auto left = [&](Basis e) -> Matrix { return kron(id, right_matrix(conj(Quaternion::unit(e)))); };
  auto right = [&](Basis e) -> Matrix { return kron(id, left_matrix(conj(Quaternion::unit(e)))); };
  ModulePtr m = share(HBimodule::from_generators(left(Basis::I), left(Basis::J), right(Basis::I), right(Basis::J),
                                                 k.module()->name() + "^op"));
  return HilbertHBimodule::make(std::move(m), Matrix::Identity(4 * r, 4 * r));
}

BoundedHMap hilbert_isomorphism(const HilbertHBimodule& from, const HilbertHBimodule& to) {
  if (from.module()->real_dim() != to.module()->real_dim()) {
    throw Error(ErrorCode::InvalidModule, "Hilbert bimodules of different rank are not isomorphic");
  }
  return BoundedHMap::make(from.module(), to.module(), to.frame() * inverse(from.frame()), tol::kNorm);
}

Matrix Representation::operator()(const Quaternion& alpha) const {
  const int m = static_cast<int>(pi_i.rows());
  return alpha.a * Matrix::Identity(m, m) + alpha.b * pi_i + alpha.c * pi_j + alpha.d * (pi_i * pi_j);
}

void validate_representation(const Representation& pi, double tolerance) {
  const int m = static_cast<int>(pi.pi_i.rows());
  if (m == 0 || m % 4 != 0 || pi.pi_i.cols() != m || pi.pi_j.rows() != m || pi.pi_j.cols() != m ||
      pi.form.rows() != m || pi.form.cols() != m) {
    throw Error(ErrorCode::InvalidRepresentation, "representation matrices must be m x m with 4 | m");
  }
  const Matrix id = Matrix::Identity(m, m);
  const Matrix& a = pi.pi_i;
  const Matrix& b = pi.pi_j;
  double r = max_abs(a * a + id);
  r = std::max(r, max_abs(b * b + id));
  r = std::max(r, max_abs(a * b + b * a));
  r = std::max(r, max_abs(a.transpose() * pi.form + pi.form * a));
  r = std::max(r, max_abs(b.transpose() * pi.form + pi.form * b));
  r = std::max(r, max_abs(pi.form - pi.form.transpose()));
  const double scale = std::max({1.0, max_abs(a), max_abs(b), max_abs(pi.form)});
  if (r > tolerance * scale * scale) {
    std::ostringstream msg;
    msg << "not a unital *-representation of H (residual " << r << ")";
    throw Error(ErrorCode::InvalidRepresentation, msg.str(), r);
  }
  try {
    cholesky_upper(pi.form);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidRepresentation, "inner product is not positive definite");
  }
}

Quaternion pi_bracket(const Representation& pi, const Vector& x, const Vector& y) {
  const Vector fx = pi.form * x;
  Quaternion out;
  for (Basis e : kBasis) out[e] = fx.dot(pi(Quaternion::unit(e)) * y);
  return out;
}

PiModule from_pi(const Representation& pi) {
  validate_representation(pi);
  const int m = static_cast<int>(pi.pi_i.rows());
  std::array<Matrix, 4> right;
  for (Basis e : kBasis) right[index(e)] = pi(conj(Quaternion::unit(e)));

  std::vector<Vector> chosen;
  Matrix spanned(m, 0);
  for (int c = 0; c < m && static_cast<int>(chosen.size()) * 4 < m; ++c) {
    const Vector v = Vector::Unit(m, c);
    if (spanned.cols() > 0 && span_residual(range_basis(spanned), v) < 1e-6) continue;
    chosen.push_back(v);
    Matrix grown(m, spanned.cols() + 4);
    grown << spanned, right[0] * v, right[1] * v, right[2] * v, right[3] * v;
    spanned = std::move(grown);
  }
  const int n = static_cast<int>(chosen.size());
  QMatrix gram(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) gram(p, q) = pi_bracket(pi, chosen[p], chosen[q]);
  return {RightHModule::make(std::move(gram)), std::move(spanned)};
}

Matrix intertwine_representations(const Representation& first, const Representation& second) {
  if (first.pi_i.rows() != second.pi_i.rows()) {
    throw Error(ErrorCode::InvalidRepresentation, "representations act on spaces of different dimension");
  }
  auto frame = [](const Representation& pi) -> Matrix {
    const PiModule pm = from_pi(pi);
    const std::vector<QVector> onb = gram_schmidt(pm.module);
    QMatrix u(pm.module.rank(), pm.module.rank());
    for (int p = 0; p < u.cols(); ++p)
      for (int q = 0; q < u.rows(); ++q) u(q, p) = onb[p][q];
    return pm.coords * left_realify(u);
  };
  return frame(second) * inverse(frame(first));
}

BoundedHMap delta_iso(const HilbertHBimodule& x) {
  return BoundedHMap::make(x.module(), quaternionize(x.module()->real_dim()), inverse(x.frame()), tol::kNorm);
}

std::pair<double, double> phi_isometry_check(const BoundedHMap& t, const HilbertHBimodule& x,
                                             const HilbertHBimodule& y) {
  const Matrix phi = y.real_onb().transpose() * y.form() * t.matrix() * x.real_onb();
  return {spectral_norm(phi), operator_norm(t.matrix(), x.form(), y.form())};
}

DualElementYr make_dual_element(const HilbertHBimodule& y, const Matrix& t) {
  DualElementYr out{BoundedHMap::make(y.module(), hthr_shared(), t)};
  const Matrix& onb = y.real_onb();
  const Matrix images = t * onb;
  Matrix a(4, onb.cols());
  for (int e = 0; e < 4; ++e) a.row(e) = images.row(4 * e);
  out.norm = spectral_norm(a);
  out.norm_l = operator_norm(multiplication_matrix() * t, y.form(), Matrix::Identity(4, 4));
  return out;
}

std::pair<double, double> dual_norms(const DualElementYr& t) { return {t.norm, t.norm_l}; }

DualElementYr t_y(const HilbertHBimodule& space, const Vector& y) {
  return make_dual_element(space, two_sided_from_bimodule(space).pairing_matrix(y));
}

GapFixture example_gap_fixture() {
  HilbertHBimodule space = standard_hilbert(2);
  Matrix t = Matrix::Zero(16, 8);
  t.topRows(8).setIdentity();
  DualElementYr d = make_dual_element(space, t);
  return {std::move(space), std::move(d)};
}

RieszResult riesz_represent(const HilbertHBimodule& space, const DualElementYr& t) {
  const Matrix mt = multiplication_matrix() * t.map.matrix();
  RieszResult out;
  out.y = space.form().ldlt().solve(mt.row(0).transpose());
  const Vector fy = space.form() * out.y;
  Matrix pairing(4, space.module()->dim());
  // <y, x>_e = F(y e, x).
  for (Basis e : kBasis) pairing.row(index(e)) = (space.module()->right(e) * out.y).transpose() * space.form();
  out.residual = max_abs(mt - pairing);
  out.norm_l = t.norm_l;
  out.norm_y = std::sqrt(std::max(0.0, out.y.dot(fy)));
  return out;
}

}  // namespace quatfa
