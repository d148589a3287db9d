// Command-line driver: loads JSON scenario files, runs chiral-algebra
// computations and verification suites, and writes machine-readable reports.
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 input error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "chiral/algebra.hpp"
#include "chiral/bulk.hpp"
#include "chiral/descriptors.hpp"
#include "chiral/verification.hpp"

namespace fs = std::filesystem;
using chiral::ExactScalar;
using chiral::Rational;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string scenario_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int hbar_order = 4;
  double tol = 1e-9;
};

struct Assertion {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

class Runner {
 public:
  explicit Runner(const Options& opt) : opt_(opt) {}

  nlohmann::json load_scenario() {
    std::ifstream in(opt_.scenario_path);
    if (!in) throw std::invalid_argument("cannot open scenario " + opt_.scenario_path);
    nlohmann::json j;
    in >> j;
    if (j.contains("seed")) opt_.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("hbarOrder")) opt_.hbar_order = j.at("hbarOrder").get<int>();
    if (j.contains("tol")) opt_.tol = j.at("tol").get<double>();
    scenario_ = j;
    return j;
  }

  chiral::CauchySurface surface() {
    auto host = scenario_.contains("spacetime")
                    ? chiral::spacetime_from_json(scenario_.at("spacetime"))
                    : chiral::Spacetime::minkowski();
    if (!scenario_.contains("surface"))
      return chiral::CauchySurface::sigma0(host);
    return chiral::surface_from_json(scenario_.at("surface"), host);
  }

  chiral::TestFunction test_function(const std::string& key) {
    const auto& tf = scenario_.at("testFunctions");
    if (!tf.contains(key))
      throw std::invalid_argument("scenario: missing test function " + key);
    nlohmann::json j = tf.at(key);
    j["name"] = key;
    return chiral::test_function_from_json(j);
  }

  chiral::LocalField local_field(const std::string& key) {
    const auto& fj = scenario_.at("fields").at(key);
    chiral::LocalField lf;
    lf.power = fj.value("power", 1);
    lf.coeff = ExactScalar(Rational::parse(fj.value("coefficient", std::string("1"))));
    return lf;
  }

  chiral::Observable field(const chiral::CauchySurface& surf, const std::string& key) {
    const auto& fj = scenario_.at("fields").at(key);
    return chiral::smear(surf, local_field(key),
                         test_function(fj.at("smear").get<std::string>()));
  }

  const nlohmann::json& scenario() const { return scenario_; }

  std::vector<chiral::ChiralConfiguration> configurations(bool periodic) {
    std::vector<chiral::ChiralConfiguration> out;
    if (scenario_.contains("configurations")) {
      for (const auto& c : scenario_.at("configurations"))
        out.push_back(chiral::configuration_from_json(c, periodic));
    } else {
      std::mt19937_64 rng(opt_.seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int i = 0; i < 5; ++i) {
        double b = periodic ? double(1 + (rng() % 3)) : 1.0 + 0.5 * u(rng);
        chiral::SmoothFn fn = chiral::SmoothFn::sine(u(rng), b, u(rng)) +
                              chiral::SmoothFn::constant(u(rng));
        out.push_back({fn, periodic});
      }
    }
    return out;
  }

  void add(Assertion a) { assertions_.push_back(std::move(a)); }
  bool all_pass() const {
    for (const auto& a : assertions_) {
      if (!a.pass) return false;
    }
    return true;
  }

  void write_report(const std::string& operation, ordered_json outputs) {
    ordered_json rep;
    rep["operation"] = operation;
    rep["seed"] = opt_.seed;
    rep["hbarOrder"] = opt_.hbar_order;
    rep["scenario"] = scenario_.empty() ? ordered_json(nullptr)
                                        : ordered_json(scenario_);
    rep["outputs"] = std::move(outputs);
    ordered_json as = ordered_json::array();
    for (const auto& a : assertions_) {
      as.push_back({{"name", a.name},
                    {"pass", a.pass},
                    {"measured", a.measured},
                    {"tolerance", a.tolerance},
                    {"detail", a.detail}});
    }
    rep["assertions"] = as;
    fs::create_directories(opt_.out_dir);
    std::ofstream out(fs::path(opt_.out_dir) / (operation + "_report.json"));
    out << rep.dump(2) << "\n";
    for (const auto& a : assertions_)
      std::cout << (a.pass ? "PASS " : "FAIL ") << a.name << " (measured " << a.measured
                << ", tol " << a.tolerance << ")\n";
  }

  void write_text(const std::string& name, const std::string& content) {
    fs::create_directories(opt_.out_dir);
    std::ofstream out(fs::path(opt_.out_dir) / name);
    out << content;
  }

  const Options& opt() const { return opt_; }

 private:
  Options opt_;
  nlohmann::json scenario_;
  std::vector<Assertion> assertions_;
};

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_bracket(Runner& r) {
  auto surf = r.surface();
  chiral::Observable F = r.field(surf, "F");
  chiral::Observable G = r.field(surf, "G");
  chiral::Observable bracket = chiral::poisson_bracket(F, G);

  ordered_json outputs;
  outputs["bracket"] = chiral::observable_to_json(bracket);
  ordered_json evals = ordered_json::array();
  auto psis = r.configurations(surf.periodic());
  for (const auto& psi : psis) {
    auto v = bracket.evaluate(psi);
    evals.push_back({{"re", v.real()}, {"im", v.imag()}});
  }
  outputs["evaluations"] = evals;

  // requested identities
  const double tol = r.opt().tol;
  chiral::Observable self = chiral::poisson_bracket(F, F);
  double self_worst = 0;
  for (const auto& psi : psis) self_worst = std::max(self_worst, std::abs(self.evaluate(psi)));
  r.add({"self-bracket vanishes", self_worst <= tol, self_worst, tol, "{F, F} = 0"});

  chiral::Observable anti = bracket + chiral::poisson_bracket(G, F);
  double anti_worst = 0;
  for (const auto& psi : psis) anti_worst = std::max(anti_worst, std::abs(anti.evaluate(psi)));
  r.add({"antisymmetry", anti_worst <= tol, anti_worst, tol, "{F, G} + {G, F} = 0"});

  bool both_linear = true;
  for (const chiral::Observable* obs : {&F, &G})
    for (const auto& t : obs->terms()) both_linear = both_linear && t.vertices[0].psi_pow == 1;
  if (both_linear) {
    const auto& f = F.terms()[0].vertices[0].f;
    const auto& g = G.terms()[0].vertices[0].f;
    double lo = std::max(f.lo(), g.lo()), hi = std::min(f.hi(), g.hi());
    double expected =
        lo < hi ? chiral::integrate(
                      [&](double s) { return -0.5 * f(s) * g.jet(s).deriv(1); }, lo, hi)
                : 0.0;
    chiral::ChiralConfiguration zero{chiral::SmoothFn::constant(0.0), surf.periodic()};
    double got = bracket.evaluate(zero).real();
    double dev = std::abs(got - expected) / std::max(std::abs(expected), 1e-300);
    r.add({"two-boson value", dev <= tol, dev, tol, "{Psi(f), Psi(g)} = -1/2 Int f g'"});
  }
  r.write_report("bracket", std::move(outputs));
  return r.all_pass() ? 0 : 1;
}

int run_star(Runner& r) {
  auto surf = r.surface();
  chiral::Observable F = r.field(surf, "F");
  chiral::Observable G = r.field(surf, "G");
  chiral::HadamardChiralKernel W{surf};
  auto series = chiral::star_product(F, G, W, r.opt().hbar_order);

  ordered_json outputs;
  outputs["series"] = chiral::series_to_json(series);
  chiral::ChiralConfiguration zero{chiral::SmoothFn::constant(0.0), surf.periodic()};
  chiral::GaussianState state{W, zero};
  auto w = state(series);
  ordered_json evals = ordered_json::array();
  for (int k = 0; k <= w.order(); ++k)
    evals.push_back({{"hbarPow", k}, {"re", w[k].real()}, {"im", w[k].imag()}});
  outputs["stateAtZero"] = evals;

  // order-0 factorization check
  auto psis = r.configurations(surf.periodic());
  double worst = 0;
  for (const auto& psi : psis) {
    auto lhs = series[0].evaluate(psi);
    auto rhs = F.evaluate(psi) * G.evaluate(psi);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
  }
  r.add({"order-0 factorization", worst <= r.opt().tol, worst, r.opt().tol,
         "(F star G)_0 = F G pointwise"});
  r.write_report("star", std::move(outputs));
  return r.all_pass() ? 0 : 1;
}

int run_ope(Runner& r) {
  auto surf = r.surface();
  chiral::LocalField fi = r.local_field("Fi");
  chiral::LocalField fj = r.local_field("Fj");
  chiral::HadamardChiralKernel W{surf};
  chiral::OpeTable table = chiral::ope_extract(fi, fj, W, r.opt().hbar_order);
  ordered_json outputs;
  outputs["ope"] = table.to_json();
  r.add({"table extracted", true, 0.0, 0.0,
         std::to_string(table.rows.size()) + " singular rows"});
  r.write_report("ope", std::move(outputs));
  return r.all_pass() ? 0 : 1;
}

int run_verify(Runner& r, const std::string& suite, const Options& opt) {
  std::vector<chiral::CheckResult> results;
  if (suite == "acceptance" || suite == "all")
    results = chiral::run_acceptance(opt.seed);
  else
    results = chiral::run_suite(suite, opt.seed);
  ordered_json outputs = ordered_json::array();
  bool all = true;
  for (const auto& c : results) {
    outputs.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"measured", c.measured},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured " << c.measured
              << "  tol " << c.tolerance << "\n";
    all = all && c.pass;
  }
  ordered_json rep;
  rep["operation"] = "verify";
  rep["suite"] = suite;
  rep["seed"] = opt.seed;
  rep["checks"] = outputs;
  fs::create_directories(opt.out_dir);
  std::ofstream out(fs::path(opt.out_dir) / "verify_report.json");
  out << rep.dump(2) << "\n";
  return all ? 0 : 1;
}

int run_embed(Runner& r) {
  auto j = r.scenario();
  auto host = j.contains("spacetime") ? chiral::spacetime_from_json(j.at("spacetime"))
                                      : chiral::Spacetime::minkowski();
  chiral::CauchySurface src = j.contains("surface")
                                  ? chiral::surface_from_json(j.at("surface"), host)
                                  : chiral::CauchySurface::sigma0(host);
  auto dst_host = j.contains("targetSpacetime")
                      ? chiral::spacetime_from_json(j.at("targetSpacetime"))
                      : chiral::Spacetime::minkowski();
  chiral::CauchySurface dst =
      j.contains("targetSurface")
          ? chiral::surface_from_json(j.at("targetSurface"), dst_host)
          : chiral::CauchySurface::sigma0(dst_host);

  chiral::Diffeo rho =
      j.contains("dilation")
          ? chiral::dilation_diffeo(chiral::smooth_from_json(j.at("dilation").at("tPlus")),
                                    chiral::smooth_from_json(j.at("dilation").at("tMinus")))
          : chiral::diffeo_from_json(j.at("rho"));
  chiral::ConformalEmbedding emb = chiral::extend_diffeo(rho, src, dst);

  double defect = emb.square_defect(128);
  r.add({"commuting square", defect <= r.opt().tol, defect, r.opt().tol,
         "chi restricted to the surface equals (-rho(s), gamma(rho(s)))"});

  std::ostringstream csv;
  csv.precision(17);
  csv << "s,chi_u,chi_v,omega_l,omega_r\n";
  for (int i = 0; i <= 64; ++i) {
    double s = -4.0 + 8.0 * i / 64;
    chiral::Point p = emb.apply(src.point_at(s));
    csv << s << ',' << p.u << ',' << p.v << ',' << emb.omega_l(-s).value() << ','
        << emb.omega_r(src.gamma()(s)).value() << "\n";
  }
  r.write_text("embed_map.csv", csv.str());

  ordered_json outputs;
  outputs["squareDefect"] = defect;
  if (j.contains("dilation")) {
    chiral::SmoothFn tp = chiral::smooth_from_json(j.at("dilation").at("tPlus"));
    chiral::SmoothFn tm = chiral::smooth_from_json(j.at("dilation").at("tMinus"));
    double min_plus = 1e300, min_minus = 1e300;
    for (int i = 0; i < 401; ++i) {
      double x = -6.0 + 12.0 * i / 400;
      min_plus = std::min(min_plus, chiral::dilation_margin(tp, tm, tp, x));
      min_minus = std::min(min_minus, chiral::dilation_margin(tp, tm, tm, x));
    }
    outputs["dilationMargins"] = {{"plus", min_plus}, {"minus", min_minus}};
    r.add({"dilation clears the unit slab", min_plus > 2.0 && min_minus > 2.0,
           std::min(min_plus, min_minus), 2.0,
           "rho(x + t) - rho(x - t) > 2 on the sample grid"});
  }
  r.write_report("embed", std::move(outputs));
  return r.all_pass() ? 0 : 1;
}

int run_propagator(Runner& r) {
  auto j = r.scenario();
  double eps = j.value("epsilon", 1e-6);
  double lambda = j.value("lambda", 1.0);
  auto host = j.contains("spacetime") ? chiral::spacetime_from_json(j.at("spacetime"))
                                      : chiral::Spacetime::minkowski();
  chiral::PauliJordanKernel E{host};
  chiral::HadamardBulkKernel W{eps, lambda};
  std::vector<double> us, vs;
  auto grid = [&](const char* key, std::vector<double>& out) {
    if (j.contains(key)) {
      for (const auto& x : j.at(key)) out.push_back(x.get<double>());
    } else {
      for (int i = 0; i <= 16; ++i) out.push_back(-2.0 + 4.0 * i / 16);
    }
  };
  grid("uGrid", us);
  grid("vGrid", vs);
  chiral::Point ref{j.value("refU", 0.25), j.value("refV", -0.4)};
  r.write_text("propagator.csv", chiral::propagator_table_csv(E, W, us, vs, ref));
  r.add({"tabulated", true, 0.0, 0.0,
         std::to_string(us.size() * vs.size()) + " grid rows written"});
  r.write_report("propagator", ordered_json::object());
  return r.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiral: chiral algebra of the 2d massless scalar field"};
  app.require_subcommand(1);

  Options opt;
  std::string suite = "acceptance";

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    if (needs_scenario)
      cmd->add_option("--scenario", opt.scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--seed", opt.seed, "random seed (recorded in the report)");
    cmd->add_option("--hbar-order", opt.hbar_order, "hbar truncation order");
    cmd->add_option("--tol", opt.tol, "assertion tolerance");
  };

  CLI::App* bracket = app.add_subcommand("bracket", "Poisson bracket of two functionals");
  add_common(bracket, true);
  CLI::App* star = app.add_subcommand("star", "star product series");
  add_common(star, true);
  CLI::App* ope = app.add_subcommand("ope", "operator product expansion table");
  add_common(ope, true);
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "suite name (acceptance, commutator, ope, stress, covariance, "
                     "dilation, causality, mollifier, scaling, fourier, hadamard, "
                     "roundtrip, semiclassical)");
  add_common(verify, false);
  CLI::App* embed = app.add_subcommand("embed", "conformal embedding from a surface map");
  add_common(embed, true);
  CLI::App* propagator = app.add_subcommand("propagator", "tabulate E and W kernels");
  add_common(propagator, true);

  CLI11_PARSE(app, argc, argv);

  return guarded([&]() -> int {
    auto t0 = std::chrono::steady_clock::now();
    int rc = 2;
    Runner r(opt);
    if (app.got_subcommand(verify)) {
      rc = run_verify(r, suite, opt);
    } else {
      r.load_scenario();
      if (app.got_subcommand(bracket)) rc = run_bracket(r);
      if (app.got_subcommand(star)) rc = run_star(r);
      if (app.got_subcommand(ope)) rc = run_ope(r);
      if (app.got_subcommand(embed)) rc = run_embed(r);
      if (app.got_subcommand(propagator)) rc = run_propagator(r);
    }
    double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "elapsed " << dt << " s\n";
    return rc;
  });
}
