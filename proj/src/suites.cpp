#include "quatfa/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "quatfa/bstar.hpp"
#include "quatfa/error.hpp"
#include "quatfa/hilbert.hpp"
#include "quatfa/normed.hpp"
#include "quatfa/random.hpp"
#include "quatfa/tensor.hpp"

namespace quatfa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Trial = std::function<double(Rng&, long)>;

struct Context {
  const SuiteOptions& options;
  SuiteReport& report;

  void detail(std::string key, std::string value) { report.details.emplace_back(std::move(key), std::move(value)); }
  void detail(std::string key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    detail(std::move(key), std::string(buf));
  }
};

std::string format_residual(double r) {
  if (std::isinf(r)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

// Runs trials on a thread pool; each trial draws from its own seeded stream,
// so the reduction is independent of scheduling.
void run_trials(Context& ctx, const Trial& trial, double fixed_residual = 0.0) {
  const long n = std::max(0L, ctx.options.trials);
  std::vector<double> residuals(static_cast<size_t>(n), 0.0);
  std::vector<std::string> errors(static_cast<size_t>(n));
  unsigned jobs = ctx.options.jobs ? ctx.options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<long>(jobs, std::max(1L, n)));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long t = next++; t < n; t = next++) {
      Rng rng(trial_seed(ctx.options.seed, ctx.report.id, static_cast<std::uint64_t>(t)));
      try {
        const double r = trial(rng, t);
        residuals[t] = std::isnan(r) ? kInf : r;
      } catch (const std::exception& e) {
        residuals[t] = kInf;
        errors[t] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  double worst = n > 0 ? fixed_residual : 0.0;
  for (long t = 0; t < n; ++t) {
    worst = std::max(worst, residuals[t]);
    if (ctx.report.failure.empty() && !(residuals[t] <= ctx.options.tol)) {
      ctx.report.failure = "trial " + std::to_string(t) + ": " +
                           (errors[t].empty() ? "residual " + format_residual(residuals[t]) : errors[t]);
    }
  }
  if (ctx.report.failure.empty() && n > 0 && !(fixed_residual <= ctx.options.tol)) {
    ctx.report.failure = "fixture check: residual " + format_residual(fixed_residual);
  }
  ctx.report.trials = n;
  ctx.report.max_residual = worst;
  ctx.report.pass = worst <= ctx.options.tol;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double qdist(const Quaternion& p, const Quaternion& q) { return distance(p, q); }

Matrix qunit_left(Basis e) { return left_matrix(Quaternion::unit(e)); }

// ---- fixtures -------------------------------------------------------------

std::vector<ModulePtr> bimodule_fixtures(const SuiteOptions& options) {
  std::vector<ModulePtr> out{quaternionize(1), quaternionize(2), quaternionize(5), make_hthr(), make_hthlr()};
  if (options.spec && options.spec->contains("left_i")) out.push_back(io::bimodule_from_json(*options.spec));
  return out;
}

std::optional<HStarAlgebra> spec_algebra(const SuiteOptions& options) {
  if (options.spec && options.spec->contains("generators")) return io::algebra_from_json(*options.spec);
  return std::nullopt;
}

std::vector<HStarAlgebra> algebra_fixtures(const SuiteOptions& options) {
  std::vector<HStarAlgebra> out{quaternion_algebra(), diag3_algebra(), m2r_algebra()};
  if (auto a = spec_algebra(options)) out.push_back(std::move(*a));
  return out;
}

AlgebraElement random_element(Rng& rng, const HStarAlgebra& a) {
  std::vector<Quaternion> coeffs;
  for (int k = 0; k < a.real_dim(); ++k) coeffs.push_back(random_quaternion(rng));
  return a.element(coeffs);
}

// ---- suites ---------------------------------------------------------------

void suite_quat_core(Context& ctx) {
  run_trials(ctx, [](Rng& rng, long) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    double r = max_abs(to_m4(p * q) - to_m4(p) * to_m4(q));
    r = std::max(r, max_abs(to_m4(conj(q)) - to_m4(q).transpose()));
    r = std::max(r, std::abs(spectral_norm(to_m4(q)) - norm(q)));
    r = std::max(r, std::abs(norm(p * q) - norm(p) * norm(q)));
    r = std::max(r, qdist(conj(conj(q)), q));
    r = std::max(r, qdist(conj(p * q), conj(q) * conj(p)));
    r = std::max(r, std::abs(norm_squared(q) - (conj(q) * q).a));
    r = std::max({r, qdist(q * inv(q), 1.0), qdist(inv(q) * q, 1.0)});
    r = std::max(r, std::abs(norm(inv(q)) - 1.0 / norm(q)));
    r = std::max(r, std::abs(hat(q).norm() - norm(q)));
    const DualFunctional lhs = hat_action(conj(q), hat(p), Side::Left);
    const DualFunctional rhs = hat_action(conj(p), hat(q), Side::Right);
    r = std::max(r, (lhs.coefficients - hat(p * q).coefficients).cwiseAbs().maxCoeff());
    r = std::max(r, (rhs.coefficients - hat(p * q).coefficients).cwiseAbs().maxCoeff());
    const ComplexEmbedding phi(random_unit_imaginary(rng));
    const std::complex<double> z(gaussian(rng), gaussian(rng));
    const std::complex<double> w(gaussian(rng), gaussian(rng));
    r = std::max(r, qdist(phi(z * w), phi(z) * phi(w)));
    r = std::max(r, std::abs(norm(phi(z)) - std::abs(z)));
    r = std::max(r, qdist(phi(std::complex<double>(0, 1)) * phi(std::complex<double>(0, 1)), -1.0));
    return r;
  });
}

void suite_polarization(Context& ctx) {
  const auto fixtures = bimodule_fixtures(ctx.options);
  ctx.detail("fixtures", static_cast<double>(fixtures.size()));
  run_trials(ctx, [&](Rng& rng, long t) {
    const HBimodule& x = *fixtures[static_cast<size_t>(t) % fixtures.size()];
    const Vector v = random_vector(rng, x.dim());
    const Polarization pol = polarize(x, v);
    double r = max_abs(pol.reassemble(x) - v);
    const Vector re = re_project(x, v);
    r = std::max(r, max_abs(re_project(x, re) - re));
    const Quaternion alpha = random_quaternion(rng);
    r = std::max(r, max_abs(re_project(x, x.left(alpha) * v) - re_project(x, x.right(alpha) * v)));
    for (Basis e : kBasis) r = std::max(r, max_abs(re_project(x, pol[e]) - pol[e]));

    // Uniqueness: components chosen in X_Re come back unchanged.
    std::array<Vector, 4> c;
    Vector sum = Vector::Zero(x.dim());
    for (Basis e : kBasis) {
      c[index(e)] = x.real_basis() * random_vector(rng, x.real_dim());
      sum += x.right(e) * c[index(e)];
    }
    const Polarization back = polarize(x, sum);
    for (Basis e : kBasis) r = std::max(r, max_abs(back[e] - c[index(e)]));

    // A component pushed out of X_Re is no longer what polarization returns.
    const Vector w = random_vector(rng, x.dim());
    const Vector off = w - re_project(x, w);
    if (off.norm() > 1e-6) {
      Vector bumped = sum + off;
      const Polarization moved = polarize(x, bumped);
      if (max_abs(moved[Basis::One] - (c[0] + off)) < 1e-6) r = kInf;
    }
    return r;
  });
}

void suite_category(Context& ctx) {
  const auto fixtures = bimodule_fixtures(ctx.options);
  const ModulePtr hthr = fixtures[3];
  const ModulePtr hthlr = fixtures[4];
  const BoundedHMap to_q = structure_iso(hthr);
  const BoundedHMap from_q = structure_iso_inverse(hthlr, hthlr->real_basis());
  const BoundedHMap iso = from_q.after(to_q);
  ctx.detail("hthr_to_hthlr_residual", format_residual(iso.intertwining_residual()));
  const double iso_rank = numerical_rank(iso.matrix());
  ctx.detail("hthr_to_hthlr_rank", iso_rank);
  const double fixed = std::max(iso.intertwining_residual(), iso_rank == 16 ? 0.0 : kInf);

  run_trials(
      ctx,
      [&](Rng& rng, long t) {
        const ModulePtr& x = fixtures[static_cast<size_t>(t) % fixtures.size()];
        const ModulePtr& y = fixtures[static_cast<size_t>(t + 1) % fixtures.size()];
        double r = x->real_dim() * 4 == x->dim() ? 0.0 : kInf;
        const BoundedHMap s = structure_iso(x);
        const BoundedHMap s_inv = structure_iso_inverse(x, x->real_basis());
        r = std::max(r, s.intertwining_residual());
        r = std::max(r, max_abs(s_inv.matrix() * s.matrix() - Matrix::Identity(x->dim(), x->dim())));
        const Matrix m = random_matrix(rng, y->real_dim(), x->real_dim());
        const BoundedHMap t_map = psi_inverse(m, x, y);
        r = std::max(r, t_map.intertwining_residual());
        r = std::max(r, max_abs(psi_restrict(t_map) - m));
        r = std::max(r, max_abs(psi_inverse(psi_restrict(t_map), x, y).matrix() - t_map.matrix()));
        return r;
      },
      fixed);
}

void suite_complexify(Context& ctx) {
  const auto fixtures = bimodule_fixtures(ctx.options);
  run_trials(ctx, [&](Rng& rng, long t) {
    const ModulePtr& x = fixtures[static_cast<size_t>(t) % fixtures.size()];
    const Quaternion alpha = random_unit_imaginary(rng);
    const ComplexSlice s = complexify(x, alpha);
    double r = s.basis.cols() == 2 * x->real_dim() ? 0.0 : kInf;
    const Matrix j = s.complex_structure;
    r = std::max(r, max_abs(j * j + Matrix::Identity(j.rows(), j.cols())));
    r = std::max(r, span_residual(s.basis, x->left(alpha) * s.basis));
    Matrix w(x->dim(), 2 * x->real_dim());
    w << x->real_basis(), x->left(alpha) * x->real_basis();
    r = std::max(r, span_residual(s.basis, w));
    r = std::max(r, span_residual(range_basis(w), s.basis));
    return r;
  });
}

void suite_functional_norm(Context& ctx) {
  run_trials(ctx, [](Rng& rng, long t) {
    const int n = 1 + static_cast<int>(t % 3);
    const HilbertHBimodule h = random_hilbert(rng, n);
    const ModulePtr& x = h.module();
    const HNorm norm = h.norm();
    const Vector f = random_vector(rng, n);
    const BoundedHMap ft = functional_tilde(x, f);
    const double fn = functional_norm(*x, norm, f);
    double r = rel(op_norm(ft, norm, HNorm::quaternion_absolute()), fn);
    r = std::max(r, max_abs(psi_restrict(ft).transpose() - f));
    const NormPair np = check_norm_equivalence(ft, norm, HNorm::quaternion_absolute());
    r = std::max(r, rel(np.restricted, np.full));
    // ||Re|| <= 1.
    r = std::max(r, std::max(0.0, op_norm(x->re_projector(), norm, norm) - 1.0));

    const DualModule dual = dual_module(x, norm);
    const Vector g = dual_re_iso(*x, f);
    r = std::max(r, max_abs(dual.module->re_projector() * g - g));
    const double gn = std::sqrt(g.dot(dual.norm.form() * g));
    r = std::max(r, rel(gn, fn));
    for (int p = 0; p < n; ++p) {
      const Vector z = x->real_basis().col(p);
      for (Basis e : kImaginaryBasis) r = std::max(r, std::abs(g.dot(x->left(e) * z)));
    }
    return r;
  });
}

void suite_separation(Context& ctx) {
  run_trials(ctx, [](Rng& rng, long t) {
    const int n = 1 + static_cast<int>(t % 4);
    const HilbertHBimodule h = random_hilbert(rng, n);
    const ModulePtr& x = h.module();
    Vector v = random_vector(rng, x->dim());
    // Every other trial uses a vector with a single polarization component.
    if (t % 2 == 1) {
      const Basis e = kBasis[static_cast<size_t>(t / 2) % 4];
      v = x->right(e) * (x->real_basis() * random_vector(rng, n));
    }
    const BoundedHMap sep = separate_point(x, h.norm(), v);
    if (sep(v).norm() < 1e-9) return kInf;
    return sep.intertwining_residual();
  });
}

void suite_hahn_banach(Context& ctx) {
  run_trials(ctx, [](Rng& rng, long t) {
    const int n = 2 + static_cast<int>(t % 3);
    const int k = 1 + static_cast<int>((t / 3) % (n - 1));
    const HilbertHBimodule h = random_hilbert(rng, n);
    const HNorm norm = h.norm();
    const Matrix spanning = h.frame() * kron(random_matrix(rng, n, k), Matrix::Identity(4, 4));
    const SubBimodule sub = SubBimodule::span(h.module(), spanning);
    const BoundedHMap g = functional_tilde(sub.induced, random_vector(rng, sub.induced->real_dim()));
    const BoundedHMap ext = hahn_banach_extend(sub, norm, g);
    const HNorm abs = HNorm::quaternion_absolute();
    double r = max_abs(ext.matrix() * sub.basis - g.matrix());
    r = std::max(r, rel(op_norm(ext, norm, abs), op_norm(g, sub.restrict_norm(norm), abs)));
    return r;
  });
}

void suite_norm_equivalence(Context& ctx) {
  run_trials(ctx, [](Rng& rng, long t) {
    const int n1 = 1 + static_cast<int>(t % 3);
    const int n2 = 1 + static_cast<int>((t / 3) % 3);
    const HilbertHBimodule x = random_hilbert(rng, n1);
    const HilbertHBimodule y = random_hilbert(rng, n2);
    const BoundedHMap tm = psi_inverse(random_matrix(rng, n2, n1), x.module(), y.module());
    const NormPair np = check_norm_equivalence(tm, x.norm(), y.norm());
    const double slack = 1e-12 * std::max(1.0, np.full);
    return std::max({0.0, np.restricted - np.full - slack, np.full - 4.0 * np.restricted - slack});
  });
}

void suite_theta_norms(Context& ctx) {
  const HTensor theta = HTensor::theta();
  ctx.detail("epsilon", epsilon_norm(theta));
  ctx.detail("hilbert", hil_norm(theta));
  const double fixed = std::max(std::abs(epsilon_norm(theta) - 1.0), std::abs(hil_norm(theta) - 2.0));
  run_trials(
      ctx,
      [](Rng& rng, long) {
        const Quaternion a = random_quaternion(rng);
        const Quaternion b = random_quaternion(rng);
        const HTensor ab = HTensor::elementary(a, b);
        double r = rel(epsilon_norm(ab), norm(a) * norm(b));
        r = std::max(r, rel(hil_norm(ab), norm(a) * norm(b)));
        const HTensor p(Eigen::Matrix4d(random_matrix(rng, 4, 4)));
        r = std::max(r, std::max(0.0, epsilon_norm(p) - hil_norm(p) * (1.0 + 1e-14)));
        r = std::max(r, rel(epsilon_norm(p.sharp()), epsilon_norm(p)));
        r = std::max(r, rel(hil_norm(p.sharp()), hil_norm(p)));
        HTensor cone;
        for (int k = 0; k < 3; ++k) {
          const Quaternion g = random_quaternion(rng);
          cone += HTensor::elementary(conj(g), g);
        }
        if (!cone_membership(cone)) r = kInf;
        if (cone_membership(ab) || cone_membership(HTensor::elementary(1.0, Quaternion::unit(Basis::I)))) r = kInf;
        return r;
      },
      fixed);
}

void suite_example_tl(Context& ctx) {
  const GapFixture fx = example_gap_fixture();
  ctx.detail("norm", fx.t.norm);
  ctx.detail("norm_L", fx.t.norm_l);
  const double fixed = std::max(std::abs(fx.t.norm - 1.0), std::abs(fx.t.norm_l - std::sqrt(2.0)));
  run_trials(
      ctx,
      [](Rng& rng, long t) {
        const int n = 1 + static_cast<int>(t % 3);
        const HilbertHBimodule y = random_hilbert(rng, n);
        const Vector v = random_vector(rng, y.module()->dim());
        const DualElementYr ty = t_y(y, v);
        const double slack = 1e-12 * std::max(1.0, y.norm(v));
        double r = std::max(0.0, ty.norm - y.norm(v) - slack);
        const BoundedHMap m = psi_inverse(random_matrix(rng, 4, n), y.module(), make_hthr());
        const DualElementYr d = make_dual_element(y, m.matrix());
        r = std::max(r, std::max(0.0, d.norm - d.norm_l - 1e-12 * std::max(1.0, d.norm_l)));
        // Sampled lower bound for ||T||: eps(T x) / ||x|| never exceeds it.
        for (int k = 0; k < 4; ++k) {
          const Vector x = random_vector(rng, y.module()->dim());
          const double ratio = epsilon_norm(HTensor::from_vector(m.matrix() * x)) / y.norm(x);
          r = std::max(r, std::max(0.0, ratio - d.norm * (1.0 + 1e-12)));
        }
        return r;
      },
      fixed);
}

void suite_hilbert(Context& ctx) {
  run_trials(ctx, [](Rng& rng, long t) {
    const int n = 1 + static_cast<int>(t % 4);
    const RightHModule mod = RightHModule::make(random_gram(rng, n));
    const std::vector<QVector> onb = gram_schmidt(mod);
    double r = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) r = std::max(r, qdist(mod.inner(onb[p], onb[q]), p == q ? 1.0 : 0.0));

    const HilbertHBimodule y = induce_left_mult(mod);
    const HBimodule& m = *y.module();
    const Vector x = random_vector(rng, m.dim());
    const Vector z = random_vector(rng, m.dim());
    const Quaternion alpha = random_quaternion(rng);
    const Quaternion beta = random_quaternion(rng);
    const double scale = std::max(1.0, y.norm(x) * y.norm(z) * norm(alpha) * norm(beta));
    r = std::max(r, qdist(y.inner(m.left(alpha) * x, z), y.inner(x, m.left(conj(alpha)) * z)) / scale);
    r = std::max(r, qdist(y.inner(x, m.right(beta) * z), y.inner(x, z) * beta) / scale);
    r = std::max(r, qdist(y.inner(z, x), conj(y.inner(x, z))) / scale);
    const Quaternion xx = y.inner(x, x);
    r = std::max({r, std::abs(xx.b) / scale, std::abs(xx.c) / scale, std::abs(xx.d) / scale});
    if (xx.a < 0.0) r = kInf;
    r = std::max(r, max_abs(m.right(1.0) * x - x));
    const Vector z0 = m.real_basis() * random_vector(rng, n);
    const Vector z1 = m.real_basis() * random_vector(rng, n);
    const Quaternion real_pair = y.inner(z0, z1);
    r = std::max({r, std::abs(real_pair.b), std::abs(real_pair.c), std::abs(real_pair.d)});

    // Two-sided pairing.
    const TwoSidedInner two = two_sided_from_bimodule(y);
    const HTensor pxz = two.pair(x, z);
    r = std::max(r, qdist(pxz.multiply(), y.inner(x, z)) / scale);
    r = std::max(r, max_abs(two.pair(z, x).coefficients() - pxz.sharp().coefficients()) / scale);
    if (!cone_membership(two.pair(x, x))) r = kInf;
    r = std::max(r, std::max(0.0, norm(pxz.multiply()) - two.norm(x) * two.norm(z) * (1.0 + 1e-12)) / scale);
    const HTensor lhs = two.pair(m.left(alpha) * (m.right(beta) * z), x);
    const HTensor rhs = HTensor::elementary(conj(beta), 1.0) * two.pair(z, x) * HTensor::elementary(conj(alpha), 1.0);
    r = std::max(r, max_abs(lhs.coefficients() - rhs.coefficients()) / scale);
    r = std::max(r, max_abs(collapse_two_sided(two).form() - y.form()) / std::max(1.0, max_abs(y.form())));

    // Representations: pi(alpha) = x -> x alpha*.
    const Representation pi{y.form(), -m.right(Basis::I), -m.right(Basis::J)};
    const PiModule pm = from_pi(pi);
    r = std::max(r, qdist(pi_bracket(pi, x, x), x.dot(y.form() * x)) / scale);
    const RightHModule& pm_mod = pm.module;
    const Representation back{pm_mod.real_form(), pm_mod.right(conj(Quaternion::unit(Basis::I))),
                              pm_mod.right(conj(Quaternion::unit(Basis::J)))};
    const Matrix v = intertwine_representations(pi, back);
    for (Basis e : {Basis::I, Basis::J}) {
      const Quaternion u = Quaternion::unit(e);
      r = std::max(r, max_abs(v * pi(u) - back(u) * v));
    }
    r = std::max(r, max_abs(v.transpose() * back.form * v - pi.form) / std::max(1.0, max_abs(pi.form)));

    // Left structures Lambda2 = Ad(V) Lambda1 for a random unitary V.
    Matrix unitary = kron(random_orthogonal(rng, n), Matrix::Identity(4, 4));
    Matrix phases = Matrix::Zero(4 * n, 4 * n);
    for (int p = 0; p < n; ++p) phases.block<4, 4>(4 * p, 4 * p) = left_matrix(random_unit(rng));
    const Matrix big_v = y.frame() * unitary * phases * y.frame().fullPivLu().inverse();
    const Matrix big_v_inv = big_v.fullPivLu().inverse();
    const LeftStructure l1{m.left(Basis::I), m.left(Basis::J)};
    const LeftStructure l2{big_v * l1.i * big_v_inv, big_v * l1.j * big_v_inv};
    const BoundedHMap u = intertwine_left_structures(mod, l1, l2);
    r = std::max(r, max_abs(u.matrix() * l1.i - l2.i * u.matrix()));
    r = std::max(r, max_abs(u.matrix() * l1.j - l2.j * u.matrix()));
    r = std::max(r, max_abs(u.matrix().transpose() * y.form() * u.matrix() - y.form()) /
                        std::max(1.0, max_abs(y.form())));
    for (Basis e : {Basis::I, Basis::J}) r = std::max(r, max_abs(u.matrix() * m.right(e) - m.right(e) * u.matrix()));

    // Opposite and double opposite.
    const HilbertHBimodule op = opposite(y);
    r = std::max(r, op.compatibility_residual());
    const HilbertHBimodule opop = opposite(op);
    const BoundedHMap iso = hilbert_isomorphism(y, opop);
    r = std::max(r, max_abs(iso.matrix().transpose() * opop.form() * iso.matrix() - y.form()) /
                        std::max(1.0, max_abs(y.form())));

    // Delta and Phi.
    const BoundedHMap delta = delta_iso(y);
    const Polarization pol = polarize(m, x);
    double parts = 0.0;
    for (Basis e : kBasis) parts += pol[e].dot(y.form() * pol[e]);
    const double nx2 = x.dot(y.form() * x);
    r = std::max(r, rel(delta(x).squaredNorm(), nx2));
    r = std::max(r, rel(parts, nx2));
    const HilbertHBimodule other = random_hilbert(rng, 1 + static_cast<int>((t / 4) % 3));
    const BoundedHMap tm = psi_inverse(random_matrix(rng, other.module()->real_dim(), n), y.module(), other.module());
    const auto [phi_norm, t_norm] = phi_isometry_check(tm, y, other);
    r = std::max(r, rel(phi_norm, t_norm));
    return r;
  });
}

void suite_riesz(Context& ctx) {
  static constexpr int kRanks[] = {1, 3, 6};
  run_trials(ctx, [](Rng& rng, long t) {
    const int n = kRanks[t % 3];
    const HilbertHBimodule y = random_hilbert(rng, n);
    const BoundedHMap m = psi_inverse(random_matrix(rng, 4, n), y.module(), make_hthr());
    const DualElementYr d = make_dual_element(y, m.matrix());
    const RieszResult res = riesz_represent(y, d);
    double r = res.residual / std::max(1.0, max_abs(m.matrix()));
    r = std::max(r, std::abs(res.norm_l - res.norm_y) * 0.1);  // criterion is 1e-8
    r = std::max(r, std::max(0.0, d.norm - d.norm_l - 1e-12 * std::max(1.0, d.norm_l)));
    const Vector v = random_vector(rng, y.module()->dim());
    const RieszResult back = riesz_represent(y, t_y(y, v));
    r = std::max(r, max_abs(back.y - v) * 10.0);  // criterion is 1e-10
    return r;
  });
}

void suite_cstar(Context& ctx) {
  const auto algebras = algebra_fixtures(ctx.options);
  double fixed = 0.0;
  for (const HStarAlgebra& a : algebras) {
    ctx.detail(a.name() + ".dim_re", static_cast<double>(a.real_dim()));
    fixed = std::max(fixed, a.closure_residual());
    const ComplexAlgebra c = complexify_algebra(a);
    fixed = std::max({fixed, c.product_residual, c.involution_residual});
  }
  run_trials(
      ctx,
      [&](Rng& rng, long t) {
        const HStarAlgebra& alg = algebras[static_cast<size_t>(t) % algebras.size()];
        const AlgebraElement a = random_element(rng, alg);
        const AlgebraElement b = random_element(rng, alg);
        const double na = bstar_norm(a);
        double r = std::abs(bstar_norm(a.star() * a) - na * na) / std::max(1e-300, na * na);
        r = std::max(r, std::max(0.0, bstar_norm(a * b) - na * bstar_norm(b) * (1.0 + 1e-12)));
        const std::array<Matrix, 4> ca = decompose(a);
        const std::array<Matrix, 4> cb = decompose(b);
        r = std::max(r, max_abs(AlgebraElement::from_components(ca).matrix() - a.matrix()));
        for (const Matrix& c : ca) r = std::max(r, alg.membership_residual(c));
        // decompose(ab) = sum_{e,f} a_e b_f (x) ef.
        std::array<Matrix, 4> prod;
        for (auto& m : prod) m = Matrix::Zero(alg.n(), alg.n());
        for (Basis e : kBasis)
          for (Basis f : kBasis) {
            const Quaternion ef = Quaternion::unit(e) * Quaternion::unit(f);
            for (Basis g : kBasis) prod[index(g)] += ef[g] * (ca[index(e)] * cb[index(f)]);
          }
        const std::array<Matrix, 4> cab = decompose(a * b);
        for (Basis g : kBasis) r = std::max(r, max_abs(cab[index(g)] - prod[index(g)]) / std::max(1.0, na * na));
        const std::array<Matrix, 4> cstar = decompose(a.star());
        for (Basis e : kBasis)
          r = std::max(r, max_abs(cstar[index(e)] - conj_sign(e) * ca[index(e)].transpose()));
        const Quaternion gamma = random_quaternion(rng);
        r = std::max(r, max_abs(((gamma * a) * b).matrix() - (gamma * (a * b)).matrix()));
        r = std::max(r, max_abs(((a * gamma) * b).matrix() - (a * (gamma * b)).matrix()));
        r = std::max(r, max_abs(((gamma * b).star()).matrix() - (b.star() * conj(gamma)).matrix()));
        r = std::max(r, rel(bstar_norm(AlgebraElement::scalar(alg.n(), gamma)), norm(gamma)));
        return r;
      },
      fixed);
}

void suite_gn(Context& ctx) {
  const auto algebras = algebra_fixtures(ctx.options);
  // H against to_m4.
  const Representation left{Matrix::Identity(4, 4), qunit_left(Basis::I), qunit_left(Basis::J)};
  const Representation regular{Matrix::Identity(4, 4), to_m4(Quaternion::unit(Basis::I)),
                               to_m4(Quaternion::unit(Basis::J))};
  const Matrix v = intertwine_representations(left, regular);
  double fixed = max_abs(v.transpose() * v - Matrix::Identity(4, 4));
  for (Basis e : kBasis) {
    const Quaternion u = Quaternion::unit(e);
    fixed = std::max(fixed, max_abs(v * left(u) - regular(u) * v));
  }
  ctx.detail("H_to_m4_intertwiner_residual", format_residual(fixed));

  run_trials(
      ctx,
      [&](Rng& rng, long t) {
        const HStarAlgebra& alg = algebras[static_cast<size_t>(t) % algebras.size()];
        const GnRepresentation rho = gn_representation(alg);
        const RealRepresentation real = real_representation(alg);
        const AlgebraElement a = random_element(rng, alg);
        const AlgebraElement b = random_element(rng, alg);
        const Matrix ra = rho(a);
        double r = rel(spectral_norm(ra), bstar_norm(a));
        r = std::max(r, rel(spectral_norm(real(a)), bstar_norm(a)));
        const Matrix rb = rho.right_action(random_quaternion(rng));
        r = std::max(r, max_abs(ra * rb - rb * ra));
        r = std::max(r, max_abs(rho(a.star()) - ra.transpose()));
        r = std::max(r, max_abs(rho(a * b) - ra * rho(b)) / std::max(1.0, bstar_norm(a) * bstar_norm(b)));
        r = std::max(r, max_abs(rho(alg.one()) - Matrix::Identity(ra.rows(), ra.cols())));

        const int n = 1 + static_cast<int>(t % 3);
        const JkEmbedding jk(random_hilbert(rng, n));
        const HBimodule& km = *jk.space().module();
        const Matrix id = Matrix::Identity(n, n);
        for (Basis e : kBasis) r = std::max(r, max_abs(jk(id, Quaternion::unit(e)) - km.left(e)));
        const Matrix t1 = random_matrix(rng, n, n);
        const Matrix t2 = random_matrix(rng, n, n);
        const Quaternion a1 = random_quaternion(rng);
        const Quaternion a2 = random_quaternion(rng);
        const Matrix j1 = jk(t1, a1);
        const double s = std::max(1.0, max_abs(j1) * max_abs(jk(t2, a2)));
        r = std::max(r, max_abs(j1 * jk(t2, a2) - jk(t1 * t2, a1 * a2)) / s);
        const Matrix kr = km.right(random_quaternion(rng));
        r = std::max(r, max_abs(j1 * kr - kr * j1) / std::max(1.0, max_abs(j1) * max_abs(kr)));
        return r;
      },
      fixed);
}

void suite_gelfand(Context& ctx) {
  std::optional<HStarAlgebra> normal_alg;
  std::optional<HStarAlgebra> non_normal_alg;
  if (auto spec = spec_algebra(ctx.options)) {
    if (is_normal_algebra(*spec).normal) {
      normal_alg = std::move(*spec);
    } else {
      non_normal_alg = std::move(*spec);
    }
  } else {
    normal_alg = diag3_algebra();
    non_normal_alg = m2r_algebra();
  }

  double fixed = 0.0;
  if (non_normal_alg) {
    try {
      gelfand_transform(*non_normal_alg);
      fixed = kInf;
      ctx.detail("witness", "none");
    } catch (const NotNormalError& e) {
      const double c = e.report().commutator_norm;
      ctx.detail("witness_commutator_norm", c);
      if (!(c > 1e-6)) fixed = kInf;
    }
  }
  if (!normal_alg) {
    run_trials(ctx, [](Rng&, long) { return 0.0; }, fixed);
    return;
  }
  const GelfandTransform g = gelfand_transform(*normal_alg, ctx.options.seed);
  ctx.detail("points", static_cast<double>(g.points()));
  if (g.points() != normal_alg->real_dim()) fixed = kInf;
  const ComplexAlgebra c = complexify_algebra(*normal_alg);
  ctx.detail("complex_dim", static_cast<double>(c.complex_dim));
  if (!c.commutative || c.self_adjoint_dim != normal_alg->real_dim()) fixed = kInf;

  run_trials(
      ctx,
      [&](Rng& rng, long) {
        const HStarAlgebra& alg = *normal_alg;
        const AlgebraElement a = random_element(rng, alg);
        const AlgebraElement b = random_element(rng, alg);
        const std::vector<Quaternion> ga = g.apply(a);
        const std::vector<Quaternion> gb = g.apply(b);
        const std::vector<Quaternion> gab = g.apply(a * b);
        const std::vector<Quaternion> gs = g.apply(a.star());
        const std::vector<Quaternion> g1 = g.apply(alg.one());
        double sup = 0.0;
        for (const Quaternion& q : ga) sup = std::max(sup, norm(q));
        const double na = bstar_norm(a);
        double r = rel(sup, na);
        const double s = std::max(1.0, na * bstar_norm(b));
        for (int k = 0; k < g.points(); ++k) {
          r = std::max(r, qdist(gab[k], ga[k] * gb[k]) / s);
          r = std::max(r, qdist(gs[k], conj(ga[k])));
          r = std::max(r, qdist(g1[k], 1.0));
        }
        r = std::max(r, max_abs(g.inverse(ga).matrix() - a.matrix()) / std::max(1.0, na));
        std::vector<Quaternion> vals;
        for (int k = 0; k < g.points(); ++k) vals.push_back(random_quaternion(rng));
        const std::vector<Quaternion> round = g.apply(g.inverse(vals));
        for (int k = 0; k < g.points(); ++k) r = std::max(r, qdist(round[k], vals[k]));
        return r;
      },
      fixed);
}

struct Entry {
  SuiteInfo info;
  void (*run)(Context&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list{
      {{"quat-core", "quaternion arithmetic, M4(R) image, dual identification, complex embeddings"}, suite_quat_core},
      {{"polarization", "x = sum Re(e* x) e on the fixture bimodules, Re idempotent, uniqueness"}, suite_polarization},
      {{"category", "real parts of dimension d/4, structure isomorphisms, Psi round trips, hthr ~ hthlr"},
       suite_category},
      {{"complexify", "X_{1,alpha} = X_Re + alpha X_Re"}, suite_complexify},
      {{"functional-norm", "||f~|| = ||f||, dual real part, ||Re|| <= 1"}, suite_functional_norm},
      {{"separation", "bimodule maps into H separate points"}, suite_separation},
      {{"hahn-banach", "norm-preserving extension from sub-bimodules"}, suite_hahn_banach},
      {{"norm-equivalence", "||T|_Re|| <= ||T|| <= 4 ||T|_Re||"}, suite_norm_equivalence},
      {{"theta-norms", "injective and Hilbert norms on H (x) H, the cone (H (x) H)_p"}, suite_theta_norms},
      {{"example-TL", "||T|| = 1 < ||T||_L = sqrt 2 on C (x) H, ||T|| <= ||T||_L"}, suite_example_tl},
      {{"hilbert", "inner product structures, converters, left structures, opposite, Delta, Phi"}, suite_hilbert},
      {{"riesz", "m(T x) = <y, x> and ||T||_L = ||y||"}, suite_riesz},
      {{"cstar", "C*-identity, decomposition *-isomorphism, bimodule laws"}, suite_cstar},
      {{"gn", "Gelfand-Naimark representations and the J_K embedding"}, suite_gn},
      {{"gelfand", "Gelfand transform of normal algebras, witnesses for non-normal ones"}, suite_gelfand},
  };
  return list;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = [] {
    std::vector<SuiteInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

bool is_suite(const std::string& id) {
  const auto& c = suite_catalog();
  return std::any_of(c.begin(), c.end(), [&](const SuiteInfo& s) { return s.id == id; });
}

SuiteReport run_suite(const std::string& id, const SuiteOptions& options) {
  const auto& list = entries();
  const auto it = std::find_if(list.begin(), list.end(), [&](const Entry& e) { return e.info.id == id; });
  if (it == list.end()) throw std::invalid_argument("unknown suite: " + id);
  SuiteReport report;
  report.id = id;
  report.seed = options.seed;
  Context ctx{options, report};
  const auto start = std::chrono::steady_clock::now();
  try {
    it->run(ctx);
  } catch (const std::exception& e) {
    report.pass = false;
    report.max_residual = kInf;
    report.trials = std::max(0L, options.trials);
    report.failure = std::string("setup: ") + e.what();
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SuiteReport> run_suites(const std::string& selection, const SuiteOptions& options) {
  std::vector<SuiteReport> out;
  if (selection == "all") {
    for (const SuiteInfo& s : suite_catalog()) out.push_back(run_suite(s.id, options));
  } else {
    out.push_back(run_suite(selection, options));
  }
  return out;
}

std::string format_text(const std::vector<SuiteReport>& reports, bool timing) {
  std::ostringstream os;
  bool all = true;
  for (const SuiteReport& r : reports) {
    all = all && r.pass;
    os << (r.pass ? "PASS " : "FAIL ") << r.id << " trials=" << r.trials
       << " max_residual=" << format_residual(r.max_residual) << " seed=" << r.seed;
    if (timing) os << " wall_ms=" << static_cast<long long>(r.wall_ms);
    os << '\n';
    for (const auto& [k, v] : r.details) os << "  " << k << " = " << v << '\n';
    if (!r.failure.empty()) os << "  failure: " << r.failure << '\n';
  }
  os << (all ? "ALL PASS" : "SOME FAILED") << '\n';
  return os.str();
}

std::string format_json(const std::vector<SuiteReport>& reports, bool timing) {
  io::Json suites = io::Json::array();
  bool all = true;
  for (const SuiteReport& r : reports) {
    all = all && r.pass;
    io::Json details = io::Json::object();
    for (const auto& [k, v] : r.details) details[k] = v;
    io::Json s{{"id", r.id},
               {"trials", r.trials},
               {"max_residual", format_residual(r.max_residual)},
               {"pass", r.pass},
               {"seed", r.seed},
               {"details", std::move(details)}};
    if (!r.failure.empty()) s["failure"] = r.failure;
    if (timing) s["wall_ms"] = r.wall_ms;
    suites.push_back(std::move(s));
  }
  io::Json out{{"pass", all}, {"suites", std::move(suites)}};
  return out.dump(2) + "\n";
}

}  // namespace quatfa
