#include <catch2/catch_amalgamated.hpp>

#include "chiral/descriptors.hpp"
#include "chiral/geometry.hpp"
#include "chiral/quadrature.hpp"

using namespace chiral;

namespace {
// independent bisection oracle for gamma(s) = v
double bisect_oracle(const SmoothFn& gamma, double v, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (gamma(mid) < v ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("null projections on the flat surface") {
  auto mink = Spacetime::minkowski();
  CauchySurface sigma0 = CauchySurface::sigma0(mink);
  Point p{-2.0, 5.0};
  REQUIRE(sigma0.null_project(p, Side::Left) == Catch::Approx(2.0));
  REQUIRE(sigma0.null_project(p, Side::Right) == Catch::Approx(5.0));
}

TEST_CASE("right projection solves gamma(s) = v to 1e-12") {
  auto mink = Spacetime::minkowski();
  CauchySurface surf(mink, SmoothFn::sine_perturbed_identity(0.3, 1.0));
  double s = surf.null_project({-1.0, 2.0}, Side::Right);
  double oracle = bisect_oracle(surf.gamma(), 2.0, -10.0, 10.0);
  REQUIRE(std::abs(s - oracle) < 1e-12);
  REQUIRE(surf.gamma()(s) == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("projection errors outside the surface domain") {
  auto mink = Spacetime::minkowski();
  CauchySurface finite(mink, SmoothFn::identity(), -1.0, 1.0);
  REQUIRE_THROWS_AS(finite.null_project({-5.0, 0.0}, Side::Left), std::domain_error);
  REQUIRE_THROWS_AS(finite.null_project({0.0, 7.0}, Side::Right), std::domain_error);
}

TEST_CASE("cylinder points canonicalize and project periodically") {
  auto cyl = Spacetime::cylinder();
  Point p = cyl->canonical(Point::from_tx(0.3, 7.0));
  REQUIRE(p.x() >= 0.0);
  REQUIRE(p.x() < kTwoPi);
  REQUIRE(p.t() == Catch::Approx(0.3));
  CauchySurface s0 = CauchySurface::sigma0(cyl);
  double s = s0.null_project(Point::from_tx(0.0, 7.0), Side::Left);
  REQUIRE(s >= 0.0);
  REQUIRE(s < kTwoPi);
}

TEST_CASE("identity and isometry embeddings") {
  auto mink = Spacetime::minkowski();
  CauchySurface sigma0 = CauchySurface::sigma0(mink);

  ConformalEmbedding id = extend_diffeo(Diffeo(SmoothFn::identity(), -30, 30), sigma0, sigma0);
  Point q = id.apply({-0.7, 1.9});
  REQUIRE(q.u == Catch::Approx(-0.7));
  REQUIRE(q.v == Catch::Approx(1.9));
  REQUIRE(id.omega_l(0.3).value() == Catch::Approx(1.0));
  REQUIRE(id.omega_r(0.3).value() == Catch::Approx(1.0));

  ConformalEmbedding shift =
      extend_diffeo(Diffeo(SmoothFn::affine(1.0, 0.4), -30, 30), sigma0, sigma0);
  REQUIRE(shift.omega_l(1.1).value() == Catch::Approx(1.0));
  REQUIRE(shift.omega_r(-0.2).value() == Catch::Approx(1.0));

  const double lam = 1.7;
  ConformalEmbedding dil =
      extend_diffeo(Diffeo(SmoothFn::affine(lam, 0.0), -30, 30), sigma0, sigma0);
  Point d = dil.apply({-1.0, 2.0});
  REQUIRE(d.u == Catch::Approx(-lam));
  REQUIRE(d.v == Catch::Approx(2.0 * lam));
  REQUIRE(dil.omega_l(0.9).value() == Catch::Approx(lam));
  REQUIRE(dil.omega_r(-0.4).value() == Catch::Approx(lam));
}

TEST_CASE("embeddings compose with multiplying factors") {
  auto mink = Spacetime::minkowski();
  CauchySurface sigma0 = CauchySurface::sigma0(mink);
  Diffeo r1(SmoothFn::sine_perturbed_identity(0.25, 1.0), -30, 30);
  Diffeo r2(SmoothFn::affine(1.5, 0.3), -40, 40);
  ConformalEmbedding e1 = extend_diffeo(r1, sigma0, sigma0);
  ConformalEmbedding e2 = extend_diffeo(r2, sigma0, sigma0);
  SmoothFn comp_fn = r2.fn().compose_with(r1.fn());
  ConformalEmbedding e21 = extend_diffeo(Diffeo(comp_fn, -30, 30), sigma0, sigma0);

  for (double u : {-1.2, 0.5}) {
    for (double v : {-0.4, 2.0}) {
      Point a = e2.apply(e1.apply({u, v}));
      Point b = e21.apply({u, v});
      REQUIRE(std::abs(a.u - b.u) < 1e-12);
      REQUIRE(std::abs(a.v - b.v) < 1e-12);
    }
    double w_chain = e2.omega_l(e1.apply({u, 0.0}).u).value() * e1.omega_l(u).value();
    REQUIRE(std::abs(w_chain - e21.omega_l(u).value()) < 1e-12);
  }
  REQUIRE(e21.square_defect() < 1e-12);
}

TEST_CASE("extend_diffeo rejects bad maps") {
  auto mink = Spacetime::minkowski();
  CauchySurface sigma0 = CauchySurface::sigma0(mink);
  Diffeo bad(SmoothFn::sine(2.0, 1.0), -10, 10);  // not monotone
  REQUIRE_THROWS_AS(extend_diffeo(bad, sigma0, sigma0), std::invalid_argument);
  CauchySurface small(mink, SmoothFn::identity(), -1.0, 1.0);
  Diffeo big(SmoothFn::affine(5.0, 0.0), -10, 10);
  REQUIRE_THROWS_AS(extend_diffeo(big, sigma0, small), std::invalid_argument);
}

TEST_CASE("dilation map closed forms") {
  SmoothFn one = SmoothFn::constant(1.0);
  Diffeo rho = dilation_diffeo(one, one, -10, 10, 128);
  REQUIRE(rho(1.0) == Catch::Approx(4.0).epsilon(1e-12));  // rho = 4x
  REQUIRE(dilation_margin(one, one, one, 0.3) == Catch::Approx(8.0).epsilon(1e-12));

  SmoothFn two = SmoothFn::constant(2.0);
  Diffeo rho2 = dilation_diffeo(two, one, -10, 10, 128);
  REQUIRE(rho2(1.0) == Catch::Approx(3.0).epsilon(1e-12));  // rho = 3x
  REQUIRE(dilation_margin(two, one, two, -0.7) == Catch::Approx(12.0).epsilon(1e-12));
  REQUIRE(dilation_margin(two, one, one, 0.2) == Catch::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("dilation validates spacelike boundaries") {
  SmoothFn steep = SmoothFn::sine(2.0, 1.0) + SmoothFn::constant(3.0);  // |t'| up to 2
  SmoothFn one = SmoothFn::constant(1.0);
  REQUIRE_THROWS_AS(dilation_diffeo(steep, one), std::invalid_argument);
  SmoothFn negative = SmoothFn::constant(-1.0);
  REQUIRE_THROWS_AS(dilation_diffeo(negative, one), std::invalid_argument);
}

TEST_CASE("dilation output is strictly increasing with positive margin") {
  SmoothFn t = SmoothFn::gaussian(0.0, std::sqrt(0.5));  // e^{-x^2}
  Diffeo rho = dilation_diffeo(t, t, -7, 7, 256);
  double prev = rho(-6.0);
  for (int i = 1; i <= 60; ++i) {
    double x = -6.0 + 12.0 * i / 60;
    double cur = rho(x);
    REQUIRE(cur > prev);
    prev = cur;
    REQUIRE(dilation_margin(t, t, t, x) > 2.0);
  }
}

TEST_CASE("cauchy developments and causal boxes") {
  auto mink = Spacetime::minkowski();
  CauchySurface sigma0 = CauchySurface::sigma0(mink);
  CausalDiamond d = cauchy_development(sigma0, 0.0, 1.0);
  REQUIRE(d.u_lo == Catch::Approx(-1.0));
  REQUIRE(d.u_hi == Catch::Approx(0.0));
  REQUIRE(d.v_lo == Catch::Approx(0.0));
  REQUIRE(d.v_hi == Catch::Approx(1.0));
  REQUIRE_THROWS_AS(cauchy_development(sigma0, 1.0, 1.0), std::invalid_argument);

  CausalDiamond far = cauchy_development(sigma0, 2.0, 3.0);
  REQUIRE(causally_disjoint(d, far));
  REQUIRE_FALSE(causally_disjoint(d, d));
  CausalDiamond nested = cauchy_development(sigma0, 0.25, 0.75);
  REQUIRE_FALSE(causally_disjoint(d, nested));
}

TEST_CASE("cylinder developments see their images") {
  auto cyl = Spacetime::cylinder();
  CauchySurface s0 = CauchySurface::sigma0(cyl);
  CausalDiamond a = cauchy_development(s0, 0.2, 0.8);
  CausalDiamond b = cauchy_development(s0, 2.5, 3.1);
  REQUIRE(causally_disjoint(a, b));
  // a translate by a full period is the same region
  CausalDiamond b_far{b.u_lo - kTwoPi, b.u_hi - kTwoPi, b.v_lo + kTwoPi, b.v_hi + kTwoPi,
                      true};
  REQUIRE_FALSE(causally_disjoint(b, b_far));
}

TEST_CASE("no conformal extension into a truncated spacetime") {
  auto mink = Spacetime::minkowski();
  const double T = 0.5;
  auto truncated = Spacetime::subset(mink, SmoothFn::constant(-1e6), SmoothFn::constant(T));
  CauchySurface src = CauchySurface::sigma0(mink);
  CauchySurface dst = CauchySurface::sigma0(truncated);
  ConformalEmbedding id = extend_diffeo(Diffeo(SmoothFn::identity(), -30, 30), src, dst);
  // the identity surface map extends to the identity chart map, which sends
  // events above t = T outside the truncation
  REQUIRE_FALSE(id.image_contained(-3.0, 3.0, -3.0, 3.0));
  Point outside = id.apply({2 * T, 2 * T});
  REQUIRE_FALSE(truncated->contains(outside));
}

TEST_CASE("subset invariants are enforced") {
  auto mink = Spacetime::minkowski();
  REQUIRE_THROWS_AS(
      Spacetime::subset(mink, SmoothFn::constant(1.0), SmoothFn::constant(-1.0)),
      std::invalid_argument);
  SmoothFn fast = SmoothFn::sine(3.0, 1.0) + SmoothFn::constant(5.0);
  REQUIRE_THROWS_AS(Spacetime::subset(mink, SmoothFn::constant(-6.0), fast),
                    std::invalid_argument);
  auto slab = Spacetime::subset(mink, SmoothFn::constant(-1.0), SmoothFn::constant(1.0));
  REQUIRE(slab->contains(Point::from_tx(0.5, 3.0)));
  REQUIRE_FALSE(slab->contains(Point::from_tx(1.5, 0.0)));
}

TEST_CASE("surfaces stay inside their hosts") {
  auto mink = Spacetime::minkowski();
  auto slab = Spacetime::subset(mink, SmoothFn::constant(-0.2), SmoothFn::constant(0.2));
  REQUIRE_NOTHROW(CauchySurface::sigma0(slab));
  // a graph with t-range beyond the slab must be rejected
  REQUIRE_THROWS_AS(CauchySurface(slab, SmoothFn::affine(1.0, 1.0)), std::invalid_argument);
}

TEST_CASE("descriptor ingestion") {
  auto mink = Spacetime::minkowski();

  nlohmann::json s0 = {{"family", "identity"}};
  CauchySurface flat = surface_from_json(s0, mink);
  REQUIRE(flat.gamma()(1.7) == Catch::Approx(1.7));

  nlohmann::json sp = {{"family", "sinePerturbedIdentity"},
                       {"params", {{"amplitude", 0.3}, {"frequency", 1.0}}}};
  CauchySurface wavy = surface_from_json(sp, mink);
  REQUIRE(wavy.gamma()(0.5) == Catch::Approx(0.5 + 0.3 * std::sin(0.5)));

  // sampled table ingested through the cubic spline
  nlohmann::json table;
  for (int i = 0; i <= 60; ++i) {
    double x = -3.0 + 6.0 * i / 60;
    table.push_back({x, x + 0.2 * std::tanh(x)});
  }
  nlohmann::json sampled = {{"samples", table}, {"domain", {-2.5, 2.5}}};
  CauchySurface tab = surface_from_json(sampled, mink);
  REQUIRE(tab.gamma()(0.8) == Catch::Approx(0.8 + 0.2 * std::tanh(0.8)).margin(1e-4));
  REQUIRE(tab.null_project({-0.3, 1.1}, Side::Left) == Catch::Approx(0.3));

  nlohmann::json tf = {{"family", "bump"},
                       {"params", {{"center", 0.2}, {"halfwidth", 0.7}}}};
  TestFunction f = test_function_from_json(tf);
  REQUIRE(f.lo() == Catch::Approx(-0.5));
  REQUIRE(f.hi() == Catch::Approx(0.9));

  nlohmann::json st = {{"kind", "subset"},
                       {"lower", {{"family", "constant"}, {"params", {{"value", -0.4}}}}},
                       {"upper", {{"family", "constant"}, {"params", {{"value", 0.4}}}}}};
  auto slab = spacetime_from_json(st);
  REQUIRE(slab->contains(Point::from_tx(0.2, 1.0)));
  REQUIRE_FALSE(slab->contains(Point::from_tx(0.6, 1.0)));

  REQUIRE_THROWS_AS(smooth_from_json(nlohmann::json{{"family", "nope"}}),
                    std::invalid_argument);
}
