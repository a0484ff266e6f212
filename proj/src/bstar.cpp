#include "quatfa/bstar.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

namespace quatfa {

namespace {

Vector vec(const Matrix& m) {
  Vector v(m.size());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  return v;
}

Matrix unvec(const Vector& v, int n) {
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = v(r * n + c);
  return m;
}

Matrix scalar_matrix(int n, const Quaternion& alpha) {
  return kron(Matrix::Identity(n, n), left_matrix(alpha));
}

Matrix stack(const std::vector<Vector>& cols) {
  Matrix m(cols.empty() ? 0 : cols.front().size(), static_cast<int>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) m.col(static_cast<int>(k)) = cols[k];
  return m;
}

// Splits span(v) into eigenspaces of v^T s v.
std::vector<Matrix> split(const Matrix& v, const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(v.transpose() * s * v));
  const Vector& ev = eig.eigenvalues();
  const double gap = tol::kGap * std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<Matrix> out;
  int start = 0;
  for (int k = 1; k <= ev.size(); ++k) {
    if (k == ev.size() || ev(k) - ev(k - 1) > gap) {
      out.push_back(v * eig.eigenvectors().middleCols(start, k - start));
      start = k;
    }
  }
  return out;
}

}  // namespace

AlgebraElement AlgebraElement::from_components(const std::array<Matrix, 4>& components) {
  Matrix m = Matrix::Zero(4 * components[0].rows(), 4 * components[0].cols());
  for (Basis e : kBasis) m += kron(components[index(e)], left_matrix(Quaternion::unit(e)));
  return AlgebraElement(std::move(m));
}

AlgebraElement AlgebraElement::scalar(int n, const Quaternion& alpha) {
  return AlgebraElement(scalar_matrix(n, alpha));
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(a.matrix() * b.matrix());
}
AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(a.matrix() + b.matrix());
}
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(a.matrix() - b.matrix());
}
AlgebraElement operator*(const Quaternion& alpha, const AlgebraElement& a) {
  return AlgebraElement(scalar_matrix(a.n(), alpha) * a.matrix());
}
AlgebraElement operator*(const AlgebraElement& a, const Quaternion& alpha) {
  return AlgebraElement(a.matrix() * scalar_matrix(a.n(), alpha));
}

AlgebraElement re_part(const AlgebraElement& a) {
  Matrix sum = Matrix::Zero(a.matrix().rows(), a.matrix().cols());
  for (Basis f : kBasis) {
    const Quaternion u = Quaternion::unit(f);
    sum += scalar_matrix(a.n(), conj(u)) * a.matrix() * scalar_matrix(a.n(), u);
  }
  return AlgebraElement(0.25 * sum);
}

std::array<Matrix, 4> decompose(const AlgebraElement& a) {
  const int n = a.n();
  std::array<Matrix, 4> out;
  for (Basis e : kBasis) {
    const AlgebraElement re = re_part(conj(Quaternion::unit(e)) * a);
    Matrix c(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) c(p, q) = re.matrix()(4 * p, 4 * q);
    out[index(e)] = std::move(c);
  }
  return out;
}

double bstar_norm(const AlgebraElement& a) { return spectral_norm(a.matrix()); }

HStarAlgebra HStarAlgebra::make(int n, const std::vector<Matrix>& generators, bool unital, std::string name) {
  if (!unital) throw Error(ErrorCode::InvalidAlgebra, "only unital algebras are supported");
  if (n < 1) throw Error(ErrorCode::InvalidAlgebra, "matrix size must be positive");
  std::vector<Vector> spanning{vec(Matrix::Identity(n, n))};
  for (const Matrix& g : generators) {
    if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::InvalidAlgebra, "generator has the wrong shape");
    spanning.push_back(vec(g));
  }
  Matrix basis = canonical_basis(stack(spanning));
  for (int round = 0;; ++round) {
    if (round > n * n) throw Error(ErrorCode::InvalidAlgebra, "closure under products did not stabilize");
    std::vector<Vector> grown;
    for (int k = 0; k < basis.cols(); ++k) grown.push_back(basis.col(k));
    for (int k = 0; k < basis.cols(); ++k) {
      const Matrix a = unvec(basis.col(k), n);
      grown.push_back(vec(a.transpose()));
      for (int l = 0; l < basis.cols(); ++l) grown.push_back(vec(a * unvec(basis.col(l), n)));
    }
    Matrix next = canonical_basis(stack(grown));
    const bool stable = next.cols() == basis.cols();
    basis = std::move(next);
    if (stable) break;
  }
  HStarAlgebra alg;
  alg.n_ = n;
  alg.name_ = std::move(name);
  alg.vec_basis_ = basis;
  alg.vec_pinv_ = basis.completeOrthogonalDecomposition().pseudoInverse();
  for (int k = 0; k < basis.cols(); ++k) alg.basis_.push_back(unvec(basis.col(k), n));
  const Matrix q = range_basis(basis);
  for (const Matrix& a : alg.basis_) {
    alg.residual_ = std::max(alg.residual_, span_residual(q, vec(a.transpose())));
    for (const Matrix& b : alg.basis_) alg.residual_ = std::max(alg.residual_, span_residual(q, vec(a * b)));
  }
  return alg;
}

AlgebraElement HStarAlgebra::element(const std::vector<Quaternion>& coeffs) const {
  Matrix m = Matrix::Zero(4 * n_, 4 * n_);
  for (size_t k = 0; k < basis_.size() && k < coeffs.size(); ++k) m += kron(basis_[k], left_matrix(coeffs[k]));
  return AlgebraElement(std::move(m));
}

Vector HStarAlgebra::coordinates(const Matrix& a_re) const { return vec_pinv_ * vec(a_re); }

double HStarAlgebra::membership_residual(const Matrix& a_re) const {
  const Vector v = vec(a_re);
  return (v - vec_basis_ * (vec_pinv_ * v)).cwiseAbs().maxCoeff();
}

HStarAlgebra quaternion_algebra() { return HStarAlgebra::make(1, {Matrix::Identity(1, 1)}, true, "H"); }

HStarAlgebra diag3_algebra() {
  std::vector<Matrix> gens;
  for (int k = 0; k < 3; ++k) {
    Matrix e = Matrix::Zero(3, 3);
    e(k, k) = 1.0;
    gens.push_back(e);
  }
  return HStarAlgebra::make(3, gens, true, "diag3");
}

HStarAlgebra m2r_algebra() {
  std::vector<Matrix> gens;
  for (int k = 0; k < 4; ++k) {
    Matrix e = Matrix::Zero(2, 2);
    e(k / 2, k % 2) = 1.0;
    gens.push_back(e);
  }
  return HStarAlgebra::make(2, gens, true, "M2R");
}

Matrix GnRepresentation::operator()(const AlgebraElement& a) const {
  const std::array<Matrix, 4> c = decompose(a);
  const Matrix id2 = Matrix::Identity(2, 2);
  Matrix out = Matrix::Zero(4 * k0_dim, 4 * k0_dim);
  for (Basis e : kBasis) out += kron(kron(c[index(e)], id2), left_matrix(Quaternion::unit(e)));
  return out;
}

Matrix GnRepresentation::right_action(const Quaternion& beta) const {
  return kron(Matrix::Identity(k0_dim, k0_dim), right_matrix(beta));
}

GnRepresentation gn_representation(const HStarAlgebra& a) { return {2 * a.n()}; }

RealRepresentation real_representation(const HStarAlgebra& a) { return {a.n()}; }

JkEmbedding::JkEmbedding(HilbertHBimodule k) : k_(std::move(k)), frame_inv_(k_.frame().fullPivLu().inverse()) {}

Matrix JkEmbedding::operator()(const Matrix& t, const Quaternion& alpha) const {
  return k_.frame() * kron(t, left_matrix(alpha)) * frame_inv_;
}

NormalityReport is_normal_algebra(const HStarAlgebra& a) {
  NormalityReport report;
  const int n = a.n();
  const double eps = tol::kNorm;
  auto element = [n](const Matrix& m) { return AlgebraElement(kron(m, Matrix::Identity(4, 4))); };
  auto conclude = [&](AlgebraElement w, std::string reason) {
    report.normal = false;
    report.commutator_norm = spectral_norm((w.star() * w - w * w.star()).matrix());
    report.witness = std::move(w);
    report.reason = std::move(reason);
    return report;
  };
  for (const Matrix& b : a.real_basis()) {
    if (max_abs(b * b.transpose() - b.transpose() * b) > eps * std::max(1.0, max_abs(b))) {
      return conclude(element(b), "basis element of A_Re is not normal");
    }
  }
  for (const Matrix& d : a.real_basis()) {
    if (max_abs(d - d.transpose()) > eps * std::max(1.0, max_abs(d))) {
      return conclude(AlgebraElement::scalar(n, Quaternion::unit(Basis::J)) +
                          AlgebraElement(kron(d, left_matrix(Quaternion::unit(Basis::K)))),
                      "involution is not trivial on A_Re");
    }
  }
  const auto& basis = a.real_basis();
  for (size_t k = 0; k < basis.size(); ++k)
    for (size_t l = k + 1; l < basis.size(); ++l) {
      const Matrix& x = basis[k];
      const Matrix& y = basis[l];
      if (max_abs(x * y - y * x) > eps * std::max({1.0, max_abs(x), max_abs(y)})) {
        return conclude(element(x) + AlgebraElement(kron(y, left_matrix(Quaternion::unit(Basis::I)))),
                        "A_Re is not commutative");
      }
    }
  return report;
}

NotNormalError::NotNormalError(NormalityReport report)
    : Error(ErrorCode::NotCommutative, "algebra is not normal: " + report.reason, report.commutator_norm),
      report_(std::move(report)) {}

std::vector<Quaternion> GelfandTransform::apply(const AlgebraElement& a) const {
  const std::array<Matrix, 4> c = decompose(a);
  std::vector<Quaternion> out;
  for (const Vector& v : unit_vectors_) {
    Quaternion q;
    for (Basis e : kBasis) q[e] = v.dot(c[index(e)] * v);
    out.push_back(q);
  }
  return out;
}

AlgebraElement GelfandTransform::inverse(const std::vector<Quaternion>& values) const {
  Matrix m = Matrix::Zero(4 * n_, 4 * n_);
  for (size_t k = 0; k < projectors_.size() && k < values.size(); ++k)
    m += kron(projectors_[k], left_matrix(values[k]));
  return AlgebraElement(std::move(m));
}

GelfandTransform gelfand_transform(const HStarAlgebra& a, std::uint64_t seed) {
  NormalityReport report = is_normal_algebra(a);
  if (!report.normal) throw NotNormalError(std::move(report));

  const int n = a.n();
  const auto& basis = a.real_basis();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix combo = Matrix::Zero(n, n);
  for (const Matrix& b : basis) combo += gauss(rng) * b;

  std::vector<Matrix> spaces = split(Matrix::Identity(n, n), combo);
  for (const Matrix& b : basis) {
    std::vector<Matrix> refined;
    for (const Matrix& v : spaces)
      for (Matrix& w : split(v, b)) refined.push_back(std::move(w));
    spaces = std::move(refined);
  }

  struct Point {
    Vector chi;
    Matrix space;
  };
  std::vector<Point> points;
  for (const Matrix& v : spaces) {
    Vector chi(static_cast<int>(basis.size()));
    for (size_t k = 0; k < basis.size(); ++k) chi(static_cast<int>(k)) = v.col(0).dot(basis[k] * v.col(0));
    auto same = std::find_if(points.begin(), points.end(), [&](const Point& p) {
      return (p.chi - chi).cwiseAbs().maxCoeff() <= 1e-7;
    });
    if (same != points.end()) {
      Matrix merged(n, same->space.cols() + v.cols());
      merged << same->space, v;
      same->space = std::move(merged);
    } else {
      points.push_back({chi, v});
    }
  }
  std::sort(points.begin(), points.end(), [](const Point& p, const Point& q) {
    for (int k = 0; k < p.chi.size(); ++k) {
      if (std::abs(p.chi(k) - q.chi(k)) > 1e-7) return p.chi(k) > q.chi(k);
    }
    return false;
  });
  if (static_cast<int>(points.size()) != a.real_dim()) {
    throw Error(ErrorCode::InvalidAlgebra, "character count differs from dim A_Re");
  }

  GelfandTransform g;
  g.n_ = n;
  for (Point& p : points) {
    g.projectors_.push_back(p.space * p.space.transpose());
    g.unit_vectors_.push_back(p.space.col(0));
    g.characters_.push_back(std::move(p.chi));
  }
  return g;
}

ComplexAlgebra complexify_algebra(const HStarAlgebra& a) {
  const int m = a.real_dim();
  const ComplexSlice slice = complexify(quaternionize(m), Quaternion::unit(Basis::I));
  auto to_element = [&](const Vector& c) {
    std::vector<Quaternion> coeffs(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) coeffs[k] = Quaternion::from_coords(c.segment<4>(4 * k));
    return a.element(coeffs);
  };
  auto to_coords = [&](const AlgebraElement& x) {
    const std::array<Matrix, 4> comps = decompose(x);
    Vector c(4 * m);
    for (Basis e : kBasis) {
      const Vector k = a.coordinates(comps[index(e)]);
      for (int p = 0; p < m; ++p) c(4 * p + index(e)) = k(p);
    }
    return c;
  };

  ComplexAlgebra out;
  out.complex_dim = m;
  for (int k = 0; k < slice.basis.cols(); ++k) out.basis.push_back(to_element(slice.basis.col(k)));

  double commutator = 0.0;
  for (const AlgebraElement& x : out.basis) {
    out.involution_residual = std::max(out.involution_residual, span_residual(slice.basis, to_coords(x.star())));
    for (const AlgebraElement& y : out.basis) {
      out.product_residual = std::max(out.product_residual, span_residual(slice.basis, to_coords(x * y)));
      commutator = std::max(commutator, max_abs((x * y - y * x).matrix()));
    }
  }
  out.commutative = commutator <= tol::kNorm;

  const int r = static_cast<int>(slice.basis.cols());
  Matrix star(r, r);
  for (int k = 0; k < r; ++k) star.col(k) = slice.basis.transpose() * to_coords(out.basis[k].star());
  out.self_adjoint_dim = static_cast<int>(null_space(star - Matrix::Identity(r, r)).cols());
  return out;
}

}  // namespace quatfa
