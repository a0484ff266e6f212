#include <cmath>

#include "support.hpp"
#include "quatfa/error.hpp"
#include "quatfa/normed.hpp"

using namespace quatfa;
using testing_support::max_diff;

namespace {

const Quaternion kI = Quaternion::unit(Basis::I);

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Sampled lower bound for an operator norm; never exceeds the true value.
double sampled_norm(Rng& rng, const Matrix& t, const Matrix& form_in, const Matrix& form_out, int samples) {
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector x = random_vector(rng, static_cast<int>(t.cols()));
    const Vector y = t * x;
    best = std::max(best, std::sqrt(y.dot(form_out * y) / x.dot(form_in * x)));
  }
  return best;
}

}  // namespace

TEST(Normed, OperatorNormExamples) {
  const ModulePtr h = quaternionize(1);
  const HNorm abs = HNorm::quaternion_absolute();
  EXPECT_NEAR(op_norm(Matrix::Identity(4, 4), abs, abs), 1.0, 1e-15);
  const Quaternion alpha(1, 2, -2, 4);
  EXPECT_NEAR(op_norm(h->left(alpha), abs, abs), 5.0, 1e-13);
  EXPECT_NEAR(op_norm(h->re_projector(), abs, abs), 1.0, 1e-14);

  const HNorm general = HNorm::general([](const Vector& x) { return x.lpNorm<1>(); });
  try {
    op_norm(Matrix::Identity(4, 4), general, abs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedNorm);
  }
}

TEST(Normed, BimoduleNormLaw) {
  auto rng = testing_support::rng_for("norm-law");
  for (int t = 0; t < 200; ++t) {
    const HilbertHBimodule h = random_hilbert(rng, 1 + t % 3);
    const Vector x = random_vector(rng, h.module()->dim());
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng);
    ASSERT_LE(bimodule_law_residual(*h.module(), h.norm(), x, a, b), 1e-11 * (1 + norm(a) * norm(b) * x.norm()));
  }
  // A form that is not action-invariant.
  Matrix skew = Matrix::Identity(4, 4);
  skew(0, 0) = 2.0;
  EXPECT_THROW(HNorm::hilbertian(*quaternionize(1), skew), Error);
}

TEST(Normed, FunctionalTilde) {
  const ModulePtr h = quaternionize(1);
  Vector one(1);
  one << 1.0;
  EXPECT_LE(max_diff(functional_tilde(h, one).matrix(), Matrix::Identity(4, 4)), 1e-15);
  EXPECT_LE(max_abs(functional_tilde(quaternionize(3), Vector::Zero(3)).matrix()), 0.0);

  auto rng = testing_support::rng_for("tilde");
  const HNorm abs = HNorm::quaternion_absolute();
  for (int t = 0; t < 200; ++t) {
    const HilbertHBimodule hx = random_hilbert(rng, 1 + t % 4);
    const ModulePtr& x = hx.module();
    const Vector f = random_vector(rng, x->real_dim());
    // Dual norm of f against the restricted form, in closed form.
    const Matrix g = real_part_form(*x, hx.norm());
    const double expect = std::sqrt(f.dot(g.ldlt().solve(f)));
    const BoundedHMap ft = functional_tilde(x, f);
    ASSERT_NEAR(functional_norm(*x, hx.norm(), f), expect, 1e-10 * (1 + expect));
    ASSERT_NEAR(op_norm(ft, hx.norm(), abs), expect, 1e-9 * (1 + expect));
    ASSERT_LE(sampled_norm(rng, ft.matrix(), hx.form(), Matrix::Identity(4, 4), 20), expect * (1 + 1e-12));
    ASSERT_LE(max_diff(psi_restrict(ft).transpose(), f), 1e-11);
  }
}

TEST(Normed, Separation) {
  const ModulePtr q3 = quaternionize(3);
  const HNorm std3 = HNorm::standard(3);
  Vector v(3);
  v << 1, -2, 2;
  Vector x = Vector::Zero(12);
  for (int p = 0; p < 3; ++p) x(4 * p + 1) = v(p);  // v (x) i
  const Vector tx = separate_point(q3, std3, x)(x);
  Vector expect = Vector::Zero(4);
  expect(1) = v.squaredNorm();
  EXPECT_LE(max_diff(tx, expect), 1e-13);

  try {
    separate_point(q3, std3, Vector::Zero(12));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSeparator);
  }

  auto rng = testing_support::rng_for("separate");
  for (int t = 0; t < 200; ++t) {
    const HilbertHBimodule h = random_hilbert(rng, 1 + t % 4);
    const Vector y = random_vector(rng, h.module()->dim());
    const BoundedHMap s = separate_point(h.module(), h.norm(), y);
    ASSERT_GT(s(y).norm(), 1e-9);
    ASSERT_LE(s.intertwining_residual(), 1e-10);
  }
}

TEST(Normed, SubBimoduleSpan) {
  const ModulePtr q2 = quaternionize(2);
  Matrix first = Matrix::Zero(8, 4);
  first.topRows(4) = Matrix::Identity(4, 4);
  const SubBimodule sub = SubBimodule::span(q2, first);
  EXPECT_EQ(sub.induced->dim(), 4);
  EXPECT_EQ(sub.induced->real_dim(), 1);

  // A single real line is not invariant.
  Matrix line = Matrix::Zero(8, 1);
  line(0, 0) = 1.0;
  try {
    SubBimodule::span(q2, line);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSubspace);
  }
}

TEST(Normed, HahnBanach) {
  const HNorm abs = HNorm::quaternion_absolute();
  // Y = X returns g itself.
  const ModulePtr q2 = quaternionize(2);
  const SubBimodule whole = SubBimodule::span(q2, Matrix::Identity(8, 8));
  const BoundedHMap g0 = functional_tilde(whole.induced, Vector::Ones(2));
  const BoundedHMap e0 = hahn_banach_extend(whole, HNorm::standard(2), g0);
  EXPECT_LE(max_diff(e0.matrix() * whole.basis, g0.matrix()), 1e-13);

  // g = 0 extends to 0.
  Matrix first = Matrix::Zero(8, 4);
  first.topRows(4) = Matrix::Identity(4, 4);
  const SubBimodule sub = SubBimodule::span(q2, first);
  const BoundedHMap zero = functional_tilde(sub.induced, Vector::Zero(1));
  EXPECT_LE(max_abs(hahn_banach_extend(sub, HNorm::standard(2), zero).matrix()), 1e-15);

  auto rng = testing_support::rng_for("hahn-banach");
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 3;
    const int k = 1 + (t / 3) % (n - 1);
    const HilbertHBimodule h = random_hilbert(rng, n);
    const Matrix spanning = h.frame() * kron(random_matrix(rng, n, k), Matrix::Identity(4, 4));
    const SubBimodule y = SubBimodule::span(h.module(), spanning);
    const BoundedHMap g = functional_tilde(y.induced, random_vector(rng, y.induced->real_dim()));
    const BoundedHMap ext = hahn_banach_extend(y, h.norm(), g);
    ASSERT_LE(max_diff(ext.matrix() * y.basis, g.matrix()), 1e-10 * (1 + max_abs(g.matrix())));
    ASSERT_LE(rel(op_norm(ext, h.norm(), abs), op_norm(g, y.restrict_norm(h.norm()), abs)), 1e-9);
  }

  const HNorm general = HNorm::general([](const Vector& x) { return x.norm(); });
  EXPECT_THROW(hahn_banach_extend(sub, general, zero), Error);
}

TEST(Normed, DualModule) {
  const ModulePtr h = quaternionize(1);
  const DualModule d = dual_module(h, HNorm::standard(1));
  ASSERT_EQ(d.module->real_dim(), 1);
  // (H*)_Re is spanned by 1^.
  Vector one = Vector::Zero(4);
  one(0) = 1.0;
  EXPECT_LE(max_diff(d.module->real_basis(), one), 1e-14);

  auto rng = testing_support::rng_for("dual");
  for (int t = 0; t < 100; ++t) {
    const HilbertHBimodule hx = random_hilbert(rng, 1 + t % 3);
    const ModulePtr& x = hx.module();
    const DualModule dm = dual_module(x, hx.norm());
    const Vector f = random_vector(rng, x->dim());
    const Vector y = random_vector(rng, x->dim());
    const Quaternion a = random_quaternion(rng);
    const double s = 1 + norm(a) * f.norm() * y.norm();
    // (a . f)(y) = f(y a) and (f . a)(y) = f(a y).
    ASSERT_NEAR((dm.module->left(a) * f).dot(y), f.dot(x->right(a) * y), 1e-11 * s);
    ASSERT_NEAR((dm.module->right(a) * f).dot(y), f.dot(x->left(a) * y), 1e-11 * s);
    // f o Re lies in (X*)_Re and keeps its norm.
    const Vector fr = random_vector(rng, x->real_dim());
    const Vector g = dual_re_iso(*x, fr);
    ASSERT_LE(max_diff(dm.module->re_projector() * g, g), 1e-11);
    ASSERT_NEAR(std::sqrt(g.dot(dm.norm.form() * g)), functional_norm(*x, hx.norm(), fr), 1e-9);
  }
}

TEST(Normed, NormEquivalence) {
  const ModulePtr q2 = quaternionize(2);
  const NormPair id = check_norm_equivalence(BoundedHMap::make(q2, q2, Matrix::Identity(8, 8)), HNorm::standard(2),
                                             HNorm::standard(2));
  EXPECT_NEAR(id.restricted, 1.0, 1e-14);
  EXPECT_NEAR(id.full, 1.0, 1e-14);

  auto rng = testing_support::rng_for("norm-equivalence");
  for (int t = 0; t < 100; ++t) {
    const HilbertHBimodule x = random_hilbert(rng, 1 + t % 3);
    const HilbertHBimodule y = random_hilbert(rng, 1 + (t / 3) % 3);
    const BoundedHMap m = psi_inverse(random_matrix(rng, y.module()->real_dim(), x.module()->real_dim()), x.module(),
                                      y.module());
    const NormPair np = check_norm_equivalence(m, x.norm(), y.norm());
    ASSERT_LE(np.restricted, np.full * (1 + 1e-12));
    ASSERT_LE(np.full, 4 * np.restricted * (1 + 1e-12));
  }
}
