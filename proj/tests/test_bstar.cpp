#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "quatfa/bstar.hpp"
#include "quatfa/error.hpp"

using namespace quatfa;
using testing_support::max_diff;
using testing_support::near_q;

namespace {

const Quaternion kI = Quaternion::unit(Basis::I);
const Quaternion kJ = Quaternion::unit(Basis::J);
const Quaternion kK = Quaternion::unit(Basis::K);

AlgebraElement random_element(Rng& rng, const HStarAlgebra& a) {
  std::vector<Quaternion> c;
  for (int k = 0; k < a.real_dim(); ++k) c.push_back(random_quaternion(rng));
  return a.element(c);
}

// Block (p, q) of the realified matrix is left_matrix(x_pq); its first
// column holds the coordinates of x_pq.
std::array<Matrix, 4> components_by_blocks(const Matrix& m) {
  const int n = static_cast<int>(m.rows() / 4);
  std::array<Matrix, 4> out;
  for (auto& c : out) c = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int e = 0; e < 4; ++e) out[e](p, q) = m(4 * p + e, 4 * q);
  return out;
}

Matrix unit_matrix(int n, int r, int c) {
  Matrix m = Matrix::Zero(n, n);
  m(r, c) = 1.0;
  return m;
}

std::vector<HStarAlgebra> fixtures() { return {quaternion_algebra(), diag3_algebra(), m2r_algebra()}; }

}  // namespace

TEST(BStar, Fixtures) {
  EXPECT_EQ(quaternion_algebra().real_dim(), 1);
  EXPECT_EQ(diag3_algebra().real_dim(), 3);
  EXPECT_EQ(m2r_algebra().real_dim(), 4);
  for (const HStarAlgebra& a : fixtures()) EXPECT_LE(a.closure_residual(), 1e-12) << a.name();

  // One off-diagonal unit generates all of M2(R).
  EXPECT_EQ(HStarAlgebra::make(2, {unit_matrix(2, 0, 1)}).real_dim(), 4);
  // diag(1, 1, 0) with the unit spans a two-dimensional algebra.
  EXPECT_EQ(HStarAlgebra::make(3, {Matrix(Eigen::Vector3d(1, 1, 0).asDiagonal())}).real_dim(), 2);

  try {
    HStarAlgebra::make(2, {unit_matrix(2, 0, 0)}, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidAlgebra);
  }
}

TEST(BStar, Decompose) {
  const HStarAlgebra h = quaternion_algebra();
  const auto ci = decompose(AlgebraElement::scalar(1, kI));
  for (int e = 0; e < 4; ++e) EXPECT_NEAR(ci[e](0, 0), e == 1 ? 1.0 : 0.0, 1e-15);

  const HStarAlgebra d = diag3_algebra();
  const Matrix real = Eigen::Vector3d(1, -2, 3).asDiagonal();
  const auto cr = decompose(AlgebraElement(kron(real, Matrix::Identity(4, 4))));
  EXPECT_LE(max_diff(cr[0], real), 1e-15);
  for (int e = 1; e < 4; ++e) EXPECT_LE(max_abs(cr[e]), 1e-15);

  auto rng = testing_support::rng_for("decompose");
  for (const HStarAlgebra& a : fixtures()) {
    for (int t = 0; t < 200; ++t) {
      const AlgebraElement x = random_element(rng, a);
      const auto c = decompose(x);
      const auto oracle = components_by_blocks(x.matrix());
      for (int e = 0; e < 4; ++e) {
        ASSERT_LE(max_diff(c[e], oracle[e]), 1e-13 * (1 + max_abs(x.matrix())));
        ASSERT_LE(a.membership_residual(c[e]), 1e-12 * (1 + max_abs(c[e])));
      }
      ASSERT_LE(max_diff(AlgebraElement::from_components(c).matrix(), x.matrix()), 1e-13 * (1 + max_abs(x.matrix())));
      ASSERT_LE(max_diff(re_part(x).matrix(), kron(c[0], Matrix::Identity(4, 4))), 1e-13 * (1 + max_abs(x.matrix())));
    }
  }
}

TEST(BStar, NormAndStar) {
  EXPECT_NEAR(bstar_norm(quaternion_algebra().one()), 1.0, 1e-15);
  EXPECT_NEAR(bstar_norm(AlgebraElement::scalar(2, Quaternion(1, 2, -2, 4))), 5.0, 1e-13);

  auto rng = testing_support::rng_for("cstar");
  for (const HStarAlgebra& a : fixtures()) {
    for (int t = 0; t < 500; ++t) {
      const AlgebraElement x = random_element(rng, a), y = random_element(rng, a);
      const double nx = bstar_norm(x);
      ASSERT_NEAR(bstar_norm(x.star() * x), nx * nx, 1e-9 * nx * nx);
      ASSERT_LE(bstar_norm(x * y), nx * bstar_norm(y) * (1 + 1e-12));
      ASSERT_LE(max_diff((x * y).star().matrix(), (y.star() * x.star()).matrix()), 1e-12 * (1 + nx * bstar_norm(y)));
      const Quaternion alpha = random_quaternion(rng);
      ASSERT_NEAR(bstar_norm(alpha * x), norm(alpha) * nx, 1e-12 * (1 + norm(alpha) * nx));
      // Products stay in A.
      for (const Matrix& c : decompose(x * y)) ASSERT_LE(a.membership_residual(c), 1e-11 * (1 + max_abs(c)));
    }
  }
}

TEST(BStar, GnRepresentation) {
  auto rng = testing_support::rng_for("gn");
  for (const HStarAlgebra& a : fixtures()) {
    const GnRepresentation rho = gn_representation(a);
    EXPECT_EQ(rho.k0_dim, 2 * a.n());
    EXPECT_LE(max_diff(rho(a.one()), Matrix::Identity(8 * a.n(), 8 * a.n())), 1e-14);
    for (int t = 0; t < 100; ++t) {
      const AlgebraElement x = random_element(rng, a), y = random_element(rng, a);
      const double s = 1 + bstar_norm(x) * bstar_norm(y);
      ASSERT_NEAR(spectral_norm(rho(x)), bstar_norm(x), 1e-9 * (1 + bstar_norm(x)));
      ASSERT_LE(max_diff(rho(x * y), rho(x) * rho(y)), 1e-12 * s);
      ASSERT_LE(max_diff(rho(x.star()), rho(x).transpose()), 1e-12 * s);
      const Quaternion beta = random_quaternion(rng);
      ASSERT_LE(max_diff(rho(x) * rho.right_action(beta), rho.right_action(beta) * rho(x)), 1e-12 * s * (1 + norm(beta)));
    }
  }
  // The defining representation of H is left multiplication.
  const RealRepresentation real = real_representation(quaternion_algebra());
  const Quaternion alpha(0.5, -1, 2, 3);
  EXPECT_LE(max_diff(real(AlgebraElement::scalar(1, alpha)), oracle::left({0.5, -1, 2, 3})), 1e-15);
}

TEST(BStar, JkEmbedding) {
  auto rng = testing_support::rng_for("jk");
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 3;
    const HilbertHBimodule k = random_hilbert(rng, n);
    const JkEmbedding jk(k);
    ASSERT_EQ(jk.real_rank(), n);
    const Matrix t1 = random_matrix(rng, n, n), t2 = random_matrix(rng, n, n);
    const Quaternion a1 = random_quaternion(rng), a2 = random_quaternion(rng);
    const double s = 1 + max_abs(t1) * max_abs(t2) * norm(a1) * norm(a2) * n;
    ASSERT_LE(max_diff(jk(t1, a1) * jk(t2, a2), jk(t1 * t2, a1 * a2)), 1e-10 * s);
    for (Basis e : kBasis)
      ASSERT_LE(max_diff(jk(t1, a1) * k.module()->right(e), k.module()->right(e) * jk(t1, a1)), 1e-10 * s);
    // Adjoint in the form of K.
    const Matrix adj = k.form().ldlt().solve(jk(t1, a1).transpose() * k.form());
    ASSERT_LE(max_diff(adj, jk(t1.transpose(), conj(a1))), 1e-9 * s);
  }
}

TEST(BStar, Normality) {
  EXPECT_TRUE(is_normal_algebra(quaternion_algebra()).normal);
  EXPECT_TRUE(is_normal_algebra(diag3_algebra()).normal);

  const NormalityReport m2 = is_normal_algebra(m2r_algebra());
  ASSERT_FALSE(m2.normal);
  ASSERT_TRUE(m2.witness.has_value());
  EXPECT_GT(m2.commutator_norm, 1e-6);
  const AlgebraElement w = *m2.witness;
  EXPECT_NEAR(spectral_norm((w.star() * w - w * w.star()).matrix()), m2.commutator_norm, 1e-14);

  // C as rotations: commutative, but the involution moves the rotation.
  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  const NormalityReport c = is_normal_algebra(HStarAlgebra::make(2, {rot}));
  ASSERT_FALSE(c.normal);
  EXPECT_GT(c.commutator_norm, 1e-6);
  ASSERT_TRUE(c.witness.has_value());
  // The witness mixes j with a k-component.
  const auto parts = decompose(*c.witness);
  EXPECT_GT(max_abs(parts[2]), 0.5);
  EXPECT_GT(max_abs(parts[3]), 0.5);
}

TEST(BStar, Gelfand) {
  const GelfandTransform gh = gelfand_transform(quaternion_algebra());
  ASSERT_EQ(gh.points(), 1);
  EXPECT_TRUE(near_q(gh.apply(AlgebraElement::scalar(1, Quaternion(1, 2, 3, 4)))[0], Quaternion(1, 2, 3, 4), 1e-14));

  const HStarAlgebra d = diag3_algebra();
  const GelfandTransform g = gelfand_transform(d);
  ASSERT_EQ(g.points(), 3);
  // Values at the three points are the diagonal entries, in some order.
  const std::vector<Quaternion> diag = {Quaternion(1, 0, 2, 0), Quaternion(-3, 1, 0, 0), Quaternion(0, 0, 0, 5)};
  std::array<Matrix, 4> comps;
  for (int e = 0; e < 4; ++e) {
    comps[e] = Matrix::Zero(3, 3);
    for (int k = 0; k < 3; ++k) comps[e](k, k) = diag[k][kBasis[e]];
  }
  const std::vector<Quaternion> values = g.apply(AlgebraElement::from_components(comps));
  for (const Quaternion& q : diag) {
    EXPECT_TRUE(std::any_of(values.begin(), values.end(), [&](const Quaternion& v) { return distance(v, q) < 1e-12; }))
        << q;
  }

  auto rng = testing_support::rng_for("gelfand");
  for (int t = 0; t < 200; ++t) {
    const AlgebraElement x = random_element(rng, d), y = random_element(rng, d);
    const std::vector<Quaternion> vx = g.apply(x), vy = g.apply(y), vxy = g.apply(x * y), vs = g.apply(x.star());
    double sup = 0.0;
    for (int k = 0; k < 3; ++k) {
      sup = std::max(sup, norm(vx[k]));
      ASSERT_TRUE(near_q(vxy[k], vx[k] * vy[k], 1e-11 * (1 + norm(vx[k]) * norm(vy[k]))));
      ASSERT_TRUE(near_q(vs[k], conj(vx[k]), 1e-11 * (1 + norm(vx[k]))));
    }
    ASSERT_NEAR(sup, bstar_norm(x), 1e-9 * (1 + sup));
    ASSERT_LE(max_diff(g.inverse(vx).matrix(), x.matrix()), 1e-11 * (1 + sup));
  }

  // Repeated blocks collapse to one point.
  const HStarAlgebra rep = HStarAlgebra::make(3, {Matrix(Eigen::Vector3d(1, 1, 0).asDiagonal())});
  EXPECT_EQ(gelfand_transform(rep).points(), 2);

  try {
    gelfand_transform(m2r_algebra());
    FAIL();
  } catch (const NotNormalError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCommutative);
    EXPECT_GT(e.report().commutator_norm, 1e-6);
    EXPECT_TRUE(e.report().witness.has_value());
  }
}

TEST(BStar, Complexification) {
  const ComplexAlgebra ch = complexify_algebra(quaternion_algebra());
  EXPECT_EQ(ch.complex_dim, 1);
  EXPECT_TRUE(ch.commutative);
  EXPECT_EQ(ch.self_adjoint_dim, 1);

  const ComplexAlgebra cd = complexify_algebra(diag3_algebra());
  EXPECT_EQ(cd.complex_dim, 3);
  EXPECT_TRUE(cd.commutative);
  EXPECT_EQ(cd.basis.size(), 6u);

  const ComplexAlgebra cm = complexify_algebra(m2r_algebra());
  EXPECT_EQ(cm.complex_dim, 4);
  EXPECT_FALSE(cm.commutative);
  for (const ComplexAlgebra* c : {&ch, &cd, &cm}) {
    EXPECT_LE(c->product_residual, 1e-12);
    EXPECT_LE(c->involution_residual, 1e-12);
  }
}
