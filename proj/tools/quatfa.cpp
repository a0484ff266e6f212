// quatfa: verification suites and computations on quaternionic structures.
//
// Exit codes: 0 pass, 1 a suite failed, 2 usage, 3 parse/schema, 4 precondition.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "quatfa/bstar.hpp"
#include "quatfa/error.hpp"
#include "quatfa/hilbert.hpp"
#include "quatfa/io.hpp"
#include "quatfa/suites.hpp"
#include "quatfa/tensor.hpp"

namespace {

using quatfa::io::Json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kParse = 3, kPrecondition = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string suite_help() {
  std::string s = "Suites:\n";
  for (const auto& info : quatfa::suite_catalog()) s += "  " + info.id + "  " + info.description + "\n";
  s += "Exit codes: 0 pass, 1 failure, 2 usage, 3 parse/schema error, 4 precondition failure.\n";
  return s;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("QUATFA_SEED");
  if (!env || !*env) return 0;
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("QUATFA_SEED is not an unsigned integer: ") + env);
  }
}

const Json& sub(const Json& spec, const char* key) { return spec.contains(key) ? spec.at(key) : spec; }

quatfa::HilbertHBimodule space_from(const Json& spec) {
  if (spec.contains("gram")) return quatfa::induce_left_mult(quatfa::io::module_from_json(spec));
  if (!spec.contains("rank") || !spec["rank"].is_number_integer() || spec["rank"].get<int>() < 1) {
    throw quatfa::Error(quatfa::ErrorCode::Parse, "schema error: missing positive integer \"rank\"");
  }
  return quatfa::standard_hilbert(spec["rank"].get<int>());
}

quatfa::DualElementYr dual_from(const quatfa::HilbertHBimodule& y, const Json& spec) {
  if (!spec.contains("t")) throw quatfa::Error(quatfa::ErrorCode::Parse, "schema error: missing field \"t\"");
  const quatfa::Matrix t = quatfa::io::matrix_from_json(spec["t"], "t");
  if (t.rows() != 16 || t.cols() != y.module()->dim()) {
    throw quatfa::Error(quatfa::ErrorCode::Parse, "schema error: t must be 16 x 4 rank");
  }
  return quatfa::make_dual_element(y, t);
}

Json compute(const std::string& kind, const Json& spec) {
  using namespace quatfa;
  if (kind == "riesz") {
    const HilbertHBimodule y = space_from(spec);
    const DualElementYr t = dual_from(y, spec);
    const RieszResult r = riesz_represent(y, t);
    return Json{{"y", io::to_json(r.y)},
                {"y_norm", r.norm_y},
                {"norm", t.norm},
                {"norm_L", t.norm_l},
                {"residual", r.residual}};
  }
  if (kind == "norms") {
    if (spec.is_array() || spec.contains("tensor")) {
      const HTensor p = io::tensor_from_json(sub(spec, "tensor"));
      return Json{{"epsilon", epsilon_norm(p)}, {"hilbert", hil_norm(p)}, {"cone", cone_membership(p)}};
    }
    const HilbertHBimodule y = space_from(spec);
    const DualElementYr t = dual_from(y, spec);
    return Json{{"norm", t.norm}, {"norm_L", t.norm_l}};
  }
  if (kind == "decompose") {
    const HStarAlgebra a = io::algebra_from_json(sub(spec, "algebra"));
    AlgebraElement x;
    if (spec.contains("matrix")) {
      x = AlgebraElement(io::matrix_from_json(spec["matrix"], "matrix"));
      if (x.matrix().rows() != 4 * a.n() || x.matrix().cols() != 4 * a.n()) {
        throw Error(ErrorCode::Parse, "schema error: matrix must be 4n x 4n");
      }
    } else if (spec.contains("coefficients") && spec["coefficients"].is_array()) {
      std::vector<Quaternion> coeffs;
      for (const Json& q : spec["coefficients"]) coeffs.push_back(io::quaternion_from_json(q, "coefficient"));
      if (static_cast<int>(coeffs.size()) != a.real_dim()) {
        throw Error(ErrorCode::Parse, "schema error: one coefficient per basis element of A_Re is required");
      }
      x = a.element(coeffs);
    } else {
      throw Error(ErrorCode::Parse, "schema error: expected \"matrix\" or \"coefficients\"");
    }
    Json comps = Json::array();
    for (const Matrix& c : decompose(x)) comps.push_back(io::to_json(c));
    double membership = 0.0;
    for (const Matrix& c : decompose(x)) membership = std::max(membership, a.membership_residual(c));
    return Json{{"components", std::move(comps)}, {"norm", bstar_norm(x)}, {"membership_residual", membership}};
  }
  if (kind == "gelfand") {
    const HStarAlgebra a = io::algebra_from_json(sub(spec, "algebra"));
    const GelfandTransform g = gelfand_transform(a);
    Json chars = Json::array();
    for (const Vector& c : g.characters()) chars.push_back(io::to_json(c));
    Json basis = Json::array();
    for (const Matrix& b : a.real_basis()) basis.push_back(io::to_json(b));
    return Json{{"points", g.points()}, {"characters", std::move(chars)}, {"basis", std::move(basis)}};
  }
  throw UsageError("unknown compute kind: " + kind);
}

Json build(const std::string& kind, int n) {
  using namespace quatfa;
  if (kind == "quaternionize") return io::to_json(*quaternionize(n));
  if (kind == "hthr") return io::to_json(*make_hthr());
  if (kind == "hthlr") return io::to_json(*make_hthlr());
  if (kind == "algebra-h") return io::to_json(quaternion_algebra());
  if (kind == "diag3") return io::to_json(diag3_algebra());
  if (kind == "m2r") return io::to_json(m2r_algebra());
  if (kind == "theta") return Json{{"tensor", io::to_json(HTensor::theta())}};
  if (kind == "example-TL") {
    const GapFixture fx = example_gap_fixture();
    return Json{{"rank", 2}, {"t", io::to_json(fx.t.map.matrix())}};
  }
  throw UsageError("unknown build kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic functional analysis: verification suites and computations"};
  app.footer(suite_help());
  app.require_subcommand(1);

  std::string suite;
  std::uint64_t seed = 0;
  bool seed_given = false;
  long trials = 1000;
  double tolerance = 1e-9;
  std::string format = "text";
  std::string spec_path;
  unsigned jobs = 0;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run seeded verification suites");
  verify->add_option("--suite", suite, "suite id or \"all\"")->required();
  verify->add_option_function<std::uint64_t>(
      "--seed", [&](const std::uint64_t& s) { seed = s, seed_given = true; }, "seed (default: QUATFA_SEED or 0)");
  verify->add_option("--trials", trials, "trials per suite")->check(CLI::NonNegativeNumber);
  verify->add_option("--tol", tolerance, "pass threshold on the max residual")->check(CLI::PositiveNumber);
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--spec", spec_path, "bimodule or algebra spec (JSON)");
  verify->add_option("--jobs", jobs, "worker threads (0: all cores)");
  verify->add_flag("--timing", timing, "include wall time in reports");

  std::string kind;
  std::string compute_spec;
  auto* comp = app.add_subcommand("compute", "compute an artifact from a spec file");
  comp->add_option("kind", kind, "riesz | norms | decompose | gelfand")
      ->required()
      ->check(CLI::IsMember({"riesz", "norms", "decompose", "gelfand"}));
  comp->add_option("--spec", compute_spec, "input spec (JSON)")->required();
  comp->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

  std::string build_kind;
  int build_n = 1;
  auto* bld = app.add_subcommand("build", "emit a fixture spec");
  bld->add_option("kind", build_kind, "quaternionize | hthr | hthlr | algebra-h | diag3 | m2r | theta | example-TL")
      ->required();
  bld->add_option("--n", build_n, "rank for quaternionize")->check(CLI::PositiveNumber);

  app.add_subcommand("suites", "list suite ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand("suites")) {
      for (const auto& info : quatfa::suite_catalog()) std::cout << info.id << '\n';
      return kPass;
    }
    if (app.got_subcommand("build")) {
      std::cout << build(build_kind, build_n).dump(2) << '\n';
      return kPass;
    }
    if (app.got_subcommand("compute")) {
      try {
        std::cout << compute(kind, quatfa::io::load(compute_spec)).dump(2) << '\n';
        return kPass;
      } catch (const quatfa::NotNormalError& e) {
        const auto& rep = e.report();
        Json out{{"error", "not-normal"}, {"reason", rep.reason}, {"commutator_norm", rep.commutator_norm}};
        if (rep.witness) {
          Json comps = Json::array();
          for (const auto& c : quatfa::decompose(*rep.witness)) comps.push_back(quatfa::io::to_json(c));
          out["witness"] = std::move(comps);
        }
        std::cout << out.dump(2) << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return kPrecondition;
      }
    }

    // verify
    if (suite != "all" && !quatfa::is_suite(suite)) {
      std::cerr << "error: unknown suite \"" << suite << "\"\n" << suite_help();
      return kUsage;
    }
    quatfa::SuiteOptions options;
    options.seed = seed_given ? seed : default_seed();
    options.trials = trials;
    options.tol = tolerance;
    options.jobs = jobs;
    if (!spec_path.empty()) options.spec = quatfa::io::load(spec_path);
    const auto reports = quatfa::run_suites(suite, options);
    std::cout << (format == "json" ? quatfa::format_json(reports, timing) : quatfa::format_text(reports, timing));
    for (const auto& r : reports)
      if (!r.pass) return kFail;
    return kPass;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const quatfa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == quatfa::ErrorCode::Parse ? kParse : kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  }
}
