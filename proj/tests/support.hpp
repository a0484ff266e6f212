#pragma once

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "quatfa/quaternion.hpp"
#include "quatfa/random.hpp"

namespace testing_support {

inline oracle::Q as_q(const quatfa::Quaternion& q) { return {q.a, q.b, q.c, q.d}; }
inline quatfa::Quaternion from_q(const oracle::Q& q) { return {q[0], q[1], q[2], q[3]}; }

inline quatfa::Rng rng_for(const char* name, int k = 0) {
  return quatfa::Rng(quatfa::trial_seed(20261018, name, static_cast<std::uint64_t>(k)));
}

inline ::testing::AssertionResult near_q(const quatfa::Quaternion& p, const quatfa::Quaternion& q, double tol) {
  const double d = quatfa::distance(p, q);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << p << " vs " << q << " (distance " << d << ")";
}

template <class A, class B>
double max_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testing_support
