#include "quatfa/random.hpp"

#include <cmath>

namespace quatfa {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t trial_seed(std::uint64_t seed, std::string_view id, std::uint64_t trial) {
  return splitmix64(splitmix64(seed ^ fnv1a(id)) + trial);
}

double gaussian(Rng& rng) {
  // A fresh distribution per draw: no cached state leaks between streams.
  std::normal_distribution<double> dist;
  return dist(rng);
}

Quaternion random_quaternion(Rng& rng) {
  Quaternion q;
  q.a = gaussian(rng);
  q.b = gaussian(rng);
  q.c = gaussian(rng);
  q.d = gaussian(rng);
  return q;
}

Quaternion random_unit(Rng& rng) {
  Quaternion q = random_quaternion(rng);
  while (norm(q) < 1e-3) q = random_quaternion(rng);
  return q / norm(q);
}

Quaternion random_unit_imaginary(Rng& rng) {
  Quaternion q = random_quaternion(rng);
  q.a = 0.0;
  while (norm(q) < 1e-3) {
    q = random_quaternion(rng);
    q.a = 0.0;
  }
  return q / norm(q);
}

Vector random_vector(Rng& rng, int n) {
  Vector v(n);
  for (int k = 0; k < n; ++k) v(k) = gaussian(rng);
  return v;
}

Matrix random_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = gaussian(rng);
  return m;
}

Matrix random_spd(Rng& rng, int n) {
  const Matrix a = random_matrix(rng, n, n);
  return symmetrize(a.transpose() * a / std::max(1, n) + Matrix::Identity(n, n) * 0.5);
}

Matrix random_invertible(Rng& rng, int n) {
  return Matrix::Identity(n, n) + 0.3 * random_matrix(rng, n, n) / std::sqrt(static_cast<double>(n));
}

Matrix random_orthogonal(Rng& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

QMatrix random_gram(Rng& rng, int n) {
  QMatrix a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = random_quaternion(rng) * (0.5 / std::sqrt(static_cast<double>(n)));
  QMatrix g(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Quaternion s = p == q ? Quaternion(1.0) : Quaternion();
      for (int k = 0; k < n; ++k) s += conj(a(k, p)) * a(k, q);
      g(p, q) = s;
    }
  return g;
}

HilbertHBimodule random_hilbert(Rng& rng, int n) {
  const Matrix s = random_invertible(rng, 4 * n);
  const Matrix s_inv = s.fullPivLu().inverse();
  const Matrix g = random_spd(rng, n);
  ModulePtr m = transport(*quaternionize(n), s, "random");
  return HilbertHBimodule::make(std::move(m),
                                symmetrize(s_inv.transpose() * kron(g, Matrix::Identity(4, 4)) * s_inv));
}

}  // namespace quatfa
