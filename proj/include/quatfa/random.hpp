#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "quatfa/bimodule.hpp"
#include "quatfa/hilbert.hpp"

namespace quatfa {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);
/// Seed of trial `trial` in suite `id`; independent of thread scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::string_view id, std::uint64_t trial);

double gaussian(Rng& rng);
Quaternion random_quaternion(Rng& rng);
Quaternion random_unit(Rng& rng);
Quaternion random_unit_imaginary(Rng& rng);
Vector random_vector(Rng& rng, int n);
Matrix random_matrix(Rng& rng, int rows, int cols);
/// Symmetric positive definite with condition number below ~10.
Matrix random_spd(Rng& rng, int n);
/// Invertible, well conditioned.
Matrix random_invertible(Rng& rng, int n);
Matrix random_orthogonal(Rng& rng, int n);
/// Hermitian positive definite quaternion Gram matrix.
QMatrix random_gram(Rng& rng, int n);

/// quaternionize(n) transported by a random invertible map, with a random
/// compatible form.
HilbertHBimodule random_hilbert(Rng& rng, int n);

}  // namespace quatfa
