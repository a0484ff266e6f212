#include <cmath>

#include "support.hpp"
#include "quatfa/error.hpp"
#include "quatfa/hilbert.hpp"
#include "quatfa/tensor.hpp"

using namespace quatfa;
using testing_support::max_diff;
using testing_support::near_q;

namespace {

const Quaternion kI = Quaternion::unit(Basis::I);
const Quaternion kJ = Quaternion::unit(Basis::J);

Vector from_quaternions(std::initializer_list<Quaternion> qs) { return realify(QVector(qs)); }

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Hilbert, GramSchmidt) {
  const std::vector<QVector> std2 = gram_schmidt(RightHModule::standard(2));
  const RightHModule s2 = RightHModule::standard(2);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) EXPECT_TRUE(near_q(s2.inner(std2[p], std2[q]), p == q ? 1.0 : 0.0, 1e-15));

  QMatrix g(2, 2);
  g(0, 0) = 2.0;
  g(0, 1) = kI;
  g(1, 0) = -kI;
  g(1, 1) = 2.0;
  const RightHModule m = RightHModule::make(g);
  const std::vector<QVector> onb = gram_schmidt(m);
  ASSERT_EQ(onb.size(), 2u);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) EXPECT_TRUE(near_q(m.inner(onb[p], onb[q]), p == q ? 1.0 : 0.0, 1e-14));

  QMatrix zero_row(2, 2);
  zero_row(0, 0) = 1.0;
  expect_code(ErrorCode::RankDeficient, [&] { RightHModule::make(zero_row); });
  QMatrix not_hermitian(1, 1);
  not_hermitian(0, 0) = kI;
  expect_code(ErrorCode::InvalidModule, [&] { RightHModule::make(not_hermitian); });
}

TEST(Hilbert, InnerProductAxioms) {
  auto rng = testing_support::rng_for("inner-axioms");
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 4;
    const RightHModule mod = RightHModule::make(random_gram(rng, n));
    const HilbertHBimodule y = induce_left_mult(mod);
    const HBimodule& m = *y.module();
    const Vector x = random_vector(rng, m.dim()), z = random_vector(rng, m.dim());
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng);
    const double s = 1 + y.norm(x) * y.norm(z) * norm(a) * norm(b);
    // The bimodule inner product agrees with the right-module one.
    ASSERT_TRUE(near_q(y.inner(x, z), mod.inner(dequaternize(x), dequaternize(z)), 1e-11 * s));
    ASSERT_TRUE(near_q(y.inner(m.left(a) * x, z), y.inner(x, m.left(conj(a)) * z), 1e-11 * s));
    ASSERT_TRUE(near_q(y.inner(x, m.right(b) * z), y.inner(x, z) * b, 1e-11 * s));
    ASSERT_TRUE(near_q(y.inner(m.right(b) * x, z), conj(b) * y.inner(x, z), 1e-11 * s));
    ASSERT_TRUE(near_q(y.inner(z, x), conj(y.inner(x, z)), 1e-11 * s));
    ASSERT_LE(norm(y.inner(x, z)), y.norm(x) * y.norm(z) * (1 + 1e-12));
    ASSERT_LE(y.compatibility_residual(), 1e-10);
  }
}

TEST(Hilbert, StandardExamples) {
  const HilbertHBimodule h1 = standard_hilbert(1);
  EXPECT_NEAR(h1.norm(from_quaternions({Quaternion(1, 1, 1, 1)})), 2.0, 1e-15);
  EXPECT_NEAR(delta_iso(h1)(from_quaternions({Quaternion(1, 1, 1, 1)})).norm(), 2.0, 1e-15);
  EXPECT_TRUE(near_q(h1.inner(from_quaternions({kI}), from_quaternions({kJ})), -Quaternion::unit(Basis::K), 1e-15));

  // induce_left_mult on the standard module is coordinatewise left multiplication.
  const HilbertHBimodule s = induce_left_mult(RightHModule::standard(2));
  EXPECT_LE(max_diff(s.module()->left(kI), kron(Matrix::Identity(2, 2), left_matrix(kI))), 1e-14);
}

TEST(Hilbert, TwoSidedPairing) {
  // On H itself, <<a, b>> = a* (x) b.
  const TwoSidedInner two = two_sided_from_bimodule(standard_hilbert(1));
  auto rng = testing_support::rng_for("two-sided");
  for (int t = 0; t < 200; ++t) {
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng);
    const double s = 1 + norm(a) * norm(b);
    const HTensor p = two.pair(from_quaternions({a}), from_quaternions({b}));
    ASSERT_LE(max_diff(p.coefficients(), HTensor::elementary(conj(a), b).coefficients()), 1e-14 * s);
    ASSERT_NEAR(two.norm(from_quaternions({a})), norm(a), 1e-14 * s);
  }
  for (int t = 0; t < 200; ++t) {
    const HilbertHBimodule y = random_hilbert(rng, 1 + t % 3);
    const TwoSidedInner tw = two_sided_from_bimodule(y);
    const Vector x = random_vector(rng, y.module()->dim()), z = random_vector(rng, y.module()->dim());
    const double s = 1 + y.norm(x) * y.norm(z);
    ASSERT_TRUE(near_q(tw.pair(x, z).multiply(), y.inner(x, z), 1e-11 * s));
    ASSERT_LE(max_diff(tw.pair(z, x).coefficients(), tw.pair(x, z).sharp().coefficients()), 1e-11 * s);
    ASSERT_TRUE(cone_membership(tw.pair(x, x)));
    ASSERT_LE(max_diff(tw.pairing_matrix(z) * x, tw.pair(z, x).to_vector()), 1e-11 * s);
    ASSERT_LE(max_diff(collapse_two_sided(tw).form(), y.form()), 1e-10 * (1 + max_abs(y.form())));
  }
}

TEST(Hilbert, LeftStructures) {
  auto rng = testing_support::rng_for("left-structures");
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 3;
    const RightHModule mod = RightHModule::make(random_gram(rng, n));
    const HilbertHBimodule y = induce_left_mult(mod);
    const HBimodule& m = *y.module();
    // A random unitary right-linear V, built from an orthogonal mix and unit phases.
    Matrix phases = Matrix::Zero(4 * n, 4 * n);
    for (int p = 0; p < n; ++p) phases.block<4, 4>(4 * p, 4 * p) = left_matrix(random_unit(rng));
    const Matrix v = y.frame() * kron(random_orthogonal(rng, n), Matrix::Identity(4, 4)) * phases *
                     y.frame().fullPivLu().inverse();
    const Matrix v_inv = v.fullPivLu().inverse();
    const LeftStructure l1{m.left(Basis::I), m.left(Basis::J)};
    const LeftStructure l2{v * l1.i * v_inv, v * l1.j * v_inv};
    const Matrix u = intertwine_left_structures(mod, l1, l2).matrix();
    ASSERT_LE(max_diff(u * l1.i, l2.i * u), 1e-9);
    ASSERT_LE(max_diff(u * l1.j, l2.j * u), 1e-9);
    ASSERT_LE(max_diff(u.transpose() * y.form() * u, y.form()), 1e-9 * (1 + max_abs(y.form())));
    for (Basis e : {Basis::I, Basis::J}) ASSERT_LE(max_diff(u * m.right(e), m.right(e) * u), 1e-9);
  }
}

TEST(Hilbert, Opposite) {
  const HilbertHBimodule op = opposite(standard_hilbert(1));
  auto rng = testing_support::rng_for("opposite");
  for (int t = 0; t < 100; ++t) {
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng), g = random_quaternion(rng);
    const double s = 1 + norm(a) * norm(b) * norm(g);
    // a . g . b = b* g a*.
    const Vector lhs = op.module()->left(a) * (op.module()->right(b) * g.coords());
    ASSERT_LE(max_diff(lhs, Vector((conj(b) * g * conj(a)).coords())), 1e-13 * s);
  }
  for (int t = 0; t < 50; ++t) {
    const HilbertHBimodule k = random_hilbert(rng, 1 + t % 3);
    const HilbertHBimodule kop = opposite(k);
    ASSERT_LE(kop.compatibility_residual(), 1e-10);
    const HilbertHBimodule back = opposite(kop);
    const Matrix iso = hilbert_isomorphism(k, back).matrix();
    ASSERT_LE(max_diff(iso.transpose() * back.form() * iso, k.form()), 1e-9 * (1 + max_abs(k.form())));
  }
  expect_code(ErrorCode::InvalidModule, [] { hilbert_isomorphism(standard_hilbert(1), standard_hilbert(2)); });
}

TEST(Hilbert, Representations) {
  const Representation reg{Matrix::Identity(4, 4), to_m4(kI), to_m4(kJ)};
  validate_representation(reg);
  const PiModule pm = from_pi(reg);
  ASSERT_EQ(pm.module.rank(), 1);
  EXPECT_TRUE(near_q(pm.module.gram()(0, 0), 1.0, 1e-14));
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  EXPECT_TRUE(near_q(pi_bracket(reg, e0, e0), 1.0, 1e-15));

  const Matrix id2 = Matrix::Identity(2, 2);
  const Representation doubled{Matrix::Identity(8, 8), kron(id2, to_m4(kI)), kron(id2, to_m4(kJ))};
  const PiModule pm2 = from_pi(doubled);
  ASSERT_EQ(pm2.module.rank(), 2);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) EXPECT_TRUE(near_q(pm2.module.gram()(p, q), p == q ? 1.0 : 0.0, 1e-14));

  expect_code(ErrorCode::InvalidRepresentation,
              [] { validate_representation({Matrix::Identity(4, 4), Matrix::Identity(4, 4), to_m4(kJ)}); });
  expect_code(ErrorCode::InvalidRepresentation, [&] { intertwine_representations(reg, doubled); });

  auto rng = testing_support::rng_for("representations");
  for (int t = 0; t < 50; ++t) {
    const HilbertHBimodule y = random_hilbert(rng, 1 + t % 3);
    const HBimodule& m = *y.module();
    const Representation pi{y.form(), -m.right(Basis::I), -m.right(Basis::J)};
    validate_representation(pi);
    const Vector x = random_vector(rng, m.dim());
    ASSERT_TRUE(near_q(pi_bracket(pi, x, x), x.dot(y.form() * x), 1e-10 * (1 + x.dot(y.form() * x))));
  }
}

TEST(Hilbert, RealRestriction) {
  auto rng = testing_support::rng_for("phi");
  const HilbertHBimodule h2 = standard_hilbert(2);
  const BoundedHMap id = BoundedHMap::make(h2.module(), h2.module(), Matrix::Identity(8, 8));
  const auto [p1, n1] = phi_isometry_check(id, h2, h2);
  EXPECT_NEAR(p1, 1.0, 1e-14);
  EXPECT_NEAR(n1, 1.0, 1e-14);
  const BoundedHMap twice = BoundedHMap::make(h2.module(), h2.module(), 2.0 * Matrix::Identity(8, 8));
  EXPECT_NEAR(phi_isometry_check(twice, h2, h2).first, 2.0, 1e-14);
  for (int t = 0; t < 100; ++t) {
    const HilbertHBimodule x = random_hilbert(rng, 1 + t % 3), y = random_hilbert(rng, 1 + (t / 3) % 3);
    const BoundedHMap m = psi_inverse(random_matrix(rng, y.module()->real_dim(), x.module()->real_dim()), x.module(),
                                      y.module());
    const auto [phi, full] = phi_isometry_check(m, x, y);
    ASSERT_NEAR(phi, full, 1e-9 * std::max(1.0, full));
  }
}

TEST(Hilbert, DualNormGap) {
  const GapFixture fx = example_gap_fixture();
  const auto [n, nl] = dual_norms(fx.t);
  EXPECT_NEAR(n, 1.0, 1e-10);
  EXPECT_NEAR(nl, std::sqrt(2.0), 1e-9);
  // The maximizer for ||m o T||: x = (1, -i) / sqrt 2 maps to sqrt 2.
  const Vector x = from_quaternions({Quaternion(1.0), -kI}) / std::sqrt(2.0);
  const Vector mt = multiplication_matrix() * fx.t.map.matrix() * x;
  EXPECT_NEAR(mt.norm(), std::sqrt(2.0), 1e-15);

  const HilbertHBimodule h2 = standard_hilbert(2);
  const DualElementYr zero = make_dual_element(h2, Matrix::Zero(16, 8));
  EXPECT_EQ(dual_norms(zero).first, 0.0);
  EXPECT_EQ(dual_norms(zero).second, 0.0);
  auto rng = testing_support::rng_for("gap");
  expect_code(ErrorCode::NotIntertwining, [&] { make_dual_element(h2, random_matrix(rng, 16, 8)); });
}

TEST(Hilbert, Riesz) {
  const HilbertHBimodule h2 = standard_hilbert(2);
  const RieszResult z = riesz_represent(h2, make_dual_element(h2, Matrix::Zero(16, 8)));
  EXPECT_EQ(z.y.norm(), 0.0);

  auto rng = testing_support::rng_for("riesz");
  for (int t = 0; t < 150; ++t) {
    const int n = 1 + t % 5;
    const HilbertHBimodule y = random_hilbert(rng, n);
    const BoundedHMap m = psi_inverse(random_matrix(rng, 4, n), y.module(), make_hthr());
    const DualElementYr d = make_dual_element(y, m.matrix());
    const RieszResult r = riesz_represent(y, d);
    // m(T x) = <y, x> checked on fresh vectors.
    const Vector x = random_vector(rng, y.module()->dim());
    const Vector lhs = multiplication_matrix() * (m.matrix() * x);
    ASSERT_LE(max_diff(lhs, y.inner(r.y, x).coords()), 1e-9 * (1 + lhs.norm()));
    ASSERT_NEAR(r.norm_l, r.norm_y, 1e-8);
    ASSERT_LE(d.norm, d.norm_l * (1 + 1e-12));

    const Vector v = random_vector(rng, y.module()->dim());
    const DualElementYr ty = t_y(y, v);
    ASSERT_LE(dual_norms(ty).first, y.norm(v) * (1 + 1e-12));
    ASSERT_LE(max_diff(riesz_represent(y, ty).y, v), 1e-10);
  }
}
