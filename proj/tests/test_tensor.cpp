#include <cmath>

#include "support.hpp"
#include "quatfa/tensor.hpp"

using namespace quatfa;
using testing_support::as_q;
using testing_support::max_diff;
using testing_support::near_q;

namespace {

// Coefficients of a (x) b: the outer product of coordinate vectors.
Eigen::Matrix4d outer(const Quaternion& a, const Quaternion& b) { return a.coords() * b.coords().transpose(); }

// sum_i alpha_i* (x) alpha_i, assembled from coordinates.
HTensor cone_element(Rng& rng, int terms) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int t = 0; t < terms; ++t) {
    const Quaternion a = random_quaternion(rng);
    m += outer(conj(a), a);
  }
  return HTensor(m);
}

}  // namespace

TEST(Tensor, ThetaNorms) {
  EXPECT_NEAR(epsilon_norm(HTensor::theta()), 1.0, 1e-12);
  EXPECT_NEAR(hil_norm(HTensor::theta()), 2.0, 1e-12);
  EXPECT_NEAR(epsilon_norm(HTensor::elementary(1.0, 1.0)), 1.0, 1e-15);
  EXPECT_NEAR(hil_norm(HTensor::elementary(1.0, 1.0)), 1.0, 1e-15);
}

TEST(Tensor, ElementaryTensors) {
  auto rng = testing_support::rng_for("elementary");
  for (int t = 0; t < 500; ++t) {
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng);
    const Quaternion c = random_quaternion(rng), d = random_quaternion(rng);
    const double s = 1 + norm(a) * norm(b) * norm(c) * norm(d);
    const HTensor ab = HTensor::elementary(a, b);
    ASSERT_LE(max_diff(ab.coefficients(), outer(a, b)), 1e-14 * s);
    // Both norms are cross norms.
    ASSERT_NEAR(epsilon_norm(ab), norm(a) * norm(b), 1e-13 * s);
    ASSERT_NEAR(hil_norm(ab), norm(a) * norm(b), 1e-13 * s);
    ASSERT_LE(max_diff(ab.sharp().coefficients(), outer(conj(b), conj(a))), 1e-14 * s);
    ASSERT_TRUE(near_q(ab.multiply(), a * b, 1e-13 * s));
    ASSERT_LE(max_diff((ab * HTensor::elementary(c, d)).coefficients(), outer(a * c, b * d)), 1e-13 * s);
    ASSERT_LE(max_diff(HTensor::from_vector(ab.to_vector()).coefficients(), ab.coefficients()), 0.0);
  }
}

TEST(Tensor, NormInequalities) {
  auto rng = testing_support::rng_for("tensor-norms");
  for (int t = 0; t < 500; ++t) {
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = gaussian(rng);
    const HTensor p(m);
    const double eps = epsilon_norm(p);
    ASSERT_LE(eps, hil_norm(p) * (1 + 1e-14));
    ASSERT_LE(hil_norm(p), 2.0 * eps * (1 + 1e-14));
    // Any pair of unit vectors gives a lower bound for epsilon.
    const Eigen::Vector4d f = random_unit(rng).coords(), g = random_unit(rng).coords();
    ASSERT_LE(std::abs(f.dot(m * g)), eps * (1 + 1e-14));
    ASSERT_LE(max_diff(p.sharp().sharp().coefficients(), m), 0.0);
    Vector mv = multiplication_matrix() * p.to_vector();
    ASSERT_LE(max_diff(mv, p.multiply().coords()), 1e-13 * (1 + m.norm()));
  }
}

TEST(Tensor, Cone) {
  const Quaternion i = Quaternion::unit(Basis::I);
  EXPECT_TRUE(cone_membership(HTensor::elementary(conj(i), i)));
  EXPECT_TRUE(cone_membership(HTensor::elementary(1.0, 1.0)));
  EXPECT_FALSE(cone_membership(HTensor::elementary(1.0, i)));
  EXPECT_FALSE(cone_membership(-1.0 * HTensor::elementary(1.0, 1.0)));
  EXPECT_TRUE(cone_membership(HTensor()));

  auto rng = testing_support::rng_for("cone");
  for (int t = 0; t < 500; ++t) {
    ASSERT_TRUE(cone_membership(cone_element(rng, 1 + t % 5)));
    // A generic rank-one tensor is not of the form sum a* (x) a.
    ASSERT_FALSE(cone_membership(HTensor::elementary(random_quaternion(rng), random_quaternion(rng))));
    const HTensor c = cone_element(rng, 2);
    ASSERT_LE(max_diff(c.sharp().coefficients(), c.coefficients()), 1e-13 * (1 + c.coefficients().norm()));
  }
}
