#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chiral/algebra.hpp"

using namespace chiral;

namespace {

struct Fx {
  SpacetimePtr mink = Spacetime::minkowski();
  CauchySurface sigma0;
  HadamardChiralKernel W;
  ChiralConfiguration zero{SmoothFn::constant(0.0), false};
  Fx() : sigma0(CauchySurface::sigma0(mink)), W{sigma0} {}
};

ChiralConfiguration rnd_cfg(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {SmoothFn::sine(u(rng), 1.0 + 0.4 * u(rng), u(rng)) +
              SmoothFn::gaussian(0.4 * u(rng), 1.1, u(rng)) + SmoothFn::constant(u(rng)),
          false};
}

Observable pointwise_product(const Fx& fx, const Observable& A, const Observable& B) {
  return star_product(A, B, fx.W, 0)[0];
}

}  // namespace

TEST_CASE("bracket of two bosons is -1/2 Int f g'") {
  Fx fx;
  TestFunction f = TestFunction::bump(-0.3, 1.0, 1.0, "f");
  TestFunction g = TestFunction::bump(0.4, 0.8, 1.0, "g");
  Observable F = smear(fx.sigma0, chiral_boson_field(), f);
  Observable G = smear(fx.sigma0, chiral_boson_field(), g);

  Observable self = poisson_bracket(F, F);
  REQUIRE(std::abs(self.evaluate(fx.zero)) < 1e-15);

  Observable fg = poisson_bracket(F, G);
  double expected = integrate(
      [&](double s) { return -0.5 * f(s) * g.jet(s).deriv(1); },
      std::max(f.lo(), g.lo()), std::min(f.hi(), g.hi()));
  REQUIRE(fg.evaluate(fx.zero).real() == Catch::Approx(expected).epsilon(1e-11));

  // invariance under reparametrization: the paired value is gamma-independent
  CauchySurface curved(fx.mink, SmoothFn::sine_perturbed_identity(0.3, 1.0));
  Observable Fc = smear(curved, chiral_boson_field(), f);
  Observable Gc = smear(curved, chiral_boson_field(), g);
  REQUIRE(poisson_bracket(Fc, Gc).evaluate(fx.zero).real() ==
          Catch::Approx(expected).epsilon(1e-10));
}

TEST_CASE("stress tensor bracket reduces to a reparametrization generator") {
  Fx fx;
  TestFunction h = TestFunction::bump(0.1, 1.2, 1.0, "h");
  TestFunction f = TestFunction::bump(-0.2, 0.9, 1.0, "f");
  Observable bracket = poisson_bracket(smear(fx.sigma0, stress_tensor_field(), h),
                                       smear(fx.sigma0, chiral_boson_field(), f));
  Observable half_gen = smear(fx.sigma0, chiral_boson_field(), h.times(f.derivative()))
                            .scaled(ExactScalar(Rational(-1, 2)));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 4; ++i) {
    ChiralConfiguration psi = rnd_cfg(rng);
    REQUIRE(std::abs(bracket.evaluate(psi) - half_gen.evaluate(psi)) < 1e-12);
  }
}

TEST_CASE("bracket disjoint smearings vanish and surfaces must match") {
  Fx fx;
  Observable F = smear(fx.sigma0, chiral_boson_field(), TestFunction::bump(-3, 0.5, 1, "f"));
  Observable G = smear(fx.sigma0, chiral_boson_field(), TestFunction::bump(3, 0.5, 1, "g"));
  REQUIRE(poisson_bracket(F, G).is_zero());

  CauchySurface other(fx.mink, SmoothFn::sine_perturbed_identity(0.1, 1.0));
  Observable H = smear(other, chiral_boson_field(), TestFunction::bump(0, 1, 1, "h"));
  REQUIRE_THROWS_AS(poisson_bracket(F, H), std::invalid_argument);
}

TEST_CASE("leibniz rule at the contraction level") {
  Fx fx;
  Observable F = smear(fx.sigma0, stress_tensor_field(), TestFunction::bump(0.0, 1.1, 1, "F"));
  Observable G = smear(fx.sigma0, chiral_boson_field(), TestFunction::bump(0.2, 0.9, 1, "G"));
  Observable H = smear(fx.sigma0, stress_tensor_field(), TestFunction::bump(-0.3, 1.0, 1, "H"));
  Observable GH = pointwise_product(fx, G, H);
  Observable lhs = poisson_contraction(F, GH);
  Observable rhs = pointwise_product(fx, poisson_contraction(F, G), H) +
                   pointwise_product(fx, G, poisson_contraction(F, H));
  REQUIRE((lhs - rhs).is_zero());
}

TEST_CASE("jacobi identity on monomial triples") {
  Fx fx;
  Observable A = smear(fx.sigma0, chiral_boson_field(), TestFunction::bump(-0.3, 1.0, 1, "a"));
  Observable B = smear(fx.sigma0, stress_tensor_field(), TestFunction::bump(0.4, 0.8, 1, "b"));
  Observable C = smear(fx.sigma0, stress_tensor_field(), TestFunction::bump(0.1, 1.2, 1, "c"));
  Observable j = poisson_bracket(A, poisson_bracket(B, C)) +
                 poisson_bracket(B, poisson_bracket(C, A)) +
                 poisson_bracket(C, poisson_bracket(A, B));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3; ++i) {
    ChiralConfiguration psi = rnd_cfg(rng);
    double scale = std::abs(poisson_bracket(A, poisson_bracket(B, C)).evaluate(psi)) + 1e-12;
    REQUIRE(std::abs(j.evaluate(psi)) / scale < 1e-12);
  }
}

TEST_CASE("diffeo equivariance of bracket and action") {
  Fx fx;
  TestFunction f = TestFunction::bump(-0.2, 0.9, 1.0, "f");
  TestFunction g = TestFunction::bump(0.3, 1.1, 1.0, "g");
  Observable F = smear(fx.sigma0, stress_tensor_field(), f);
  Observable G = smear(fx.sigma0, chiral_boson_field(), g);
  std::mt19937_64 rng(17);

  std::vector<Diffeo> rhos;
  rhos.emplace_back(SmoothFn::affine(1.5, 0.0), -40, 40, "dil");
  rhos.emplace_back(SmoothFn::sine_perturbed_identity(0.2, 1.0), -40, 40, "sin");
  for (const auto& rho : rhos) {
    Observable lhs = diffeo_action_on_functional(rho, poisson_bracket(F, G));
    Observable rhs = poisson_bracket(diffeo_action_on_functional(rho, F),
                                     diffeo_action_on_functional(rho, G));
    for (int i = 0; i < 3; ++i) {
      ChiralConfiguration psi = rnd_cfg(rng);
      std::complex<double> a = lhs.evaluate(psi), b = rhs.evaluate(psi);
      REQUIRE(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(b)));
    }
  }

  // action itself: F o rho*_(1) evaluated as image functional
  Diffeo rho(SmoothFn::affine(2.0, 0.0), -40, 40, "m2");
  Observable image = diffeo_action_on_functional(rho, G);
  for (int i = 0; i < 5; ++i) {
    ChiralConfiguration psi = rnd_cfg(rng);
    ChiralConfiguration pulled = weighted_pullback(rho, rho.fn().derivative(), 1.0, psi);
    REQUIRE(std::abs(G.evaluate(pulled) - image.evaluate(psi)) < 1e-9);
  }
}

TEST_CASE("star product lowest orders") {
  Fx fx;
  TestFunction f = TestFunction::bump(-0.3, 1.0, 1.0, "f");
  TestFunction g = TestFunction::bump(0.4, 0.8, 1.0, "g");
  Observable F = smear(fx.sigma0, chiral_boson_field(), f);
  Observable G = smear(fx.sigma0, chiral_boson_field(), g);
  ObservableSeries s = star_product(F, G, fx.W, 2);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 3; ++i) {
    ChiralConfiguration psi = rnd_cfg(rng);
    REQUIRE(std::abs(s[0].evaluate(psi) - F.evaluate(psi) * G.evaluate(psi)) < 1e-10);
  }
  std::complex<double> hbar1 = s[1].evaluate(fx.zero);
  std::complex<double> w_pair = pair2(fx.W.kernel(), f.compact(), g.compact());
  REQUIRE(std::abs(hbar1 - w_pair) < 1e-12);
  REQUIRE(s[2].is_zero());  // linear fields stop at one contraction

  // TT at hbar^2 and psi = 0: (1/(32 pi^2)) <BV(4,+), f x g>
  Observable Tf = smear(fx.sigma0, stress_tensor_field(), f);
  Observable Tg = smear(fx.sigma0, stress_tensor_field(), g);
  ObservableSeries tt = star_product(Tf, Tg, fx.W, 4);
  KernelExpr bv4(KernelTerm{KernelShape::boundary(4, BoundarySide::PlusI0), ExactScalar(1), {}, {}});
  std::complex<double> expected =
      pair2(bv4, f.compact(), g.compact()) / (32.0 * M_PI * M_PI);
  REQUIRE(std::abs(tt[2].evaluate(fx.zero) - expected) < 1e-10);
}

TEST_CASE("star associativity on linear fields to hbar^2") {
  Fx fx;
  Observable A = smear(fx.sigma0, chiral_boson_field(), TestFunction::bump(-0.4, 0.9, 1, "a"));
  Observable B = smear(fx.sigma0, chiral_boson_field(), TestFunction::bump(0.0, 1.0, 1, "b"));
  Observable C = smear(fx.sigma0, chiral_boson_field(), TestFunction::bump(0.5, 0.8, 1, "c"));
  ObservableSeries ab_c = star_product(star_product(A, B, fx.W, 2),
                                       to_series(C, 2), fx.W, 2);
  ObservableSeries a_bc = star_product(to_series(A, 2),
                                       star_product(B, C, fx.W, 2), fx.W, 2);
  for (int h = 0; h <= 2; ++h) REQUIRE((ab_c[h] - a_bc[h]).is_zero());
}

TEST_CASE("commutators: locality, semiclassical limit and gaussian states") {
  Fx fx;
  TestFunction f = TestFunction::bump(-0.3, 1.0, 1.0, "f");
  TestFunction g = TestFunction::bump(0.4, 0.8, 1.0, "g");
  Observable F = smear(fx.sigma0, chiral_boson_field(), f);
  Observable G = smear(fx.sigma0, chiral_boson_field(), g);

  ObservableSeries c = commutator(F, G, fx.W, 3);
  REQUIRE(c[0].is_zero());
  // order-hbar part: i hbar <E-shape, f x g> times the unit
  ChiralCommutator E{fx.sigma0};
  std::complex<double> expected =
      std::complex<double>(0, 1) * pair2(E.kernel(), f.compact(), g.compact());
  REQUIRE(std::abs(c[1].evaluate(fx.zero) - expected) < 1e-12);
  for (int k = 2; k <= 3; ++k) REQUIRE(c[k].is_zero());

  REQUIRE((c[1] - poisson_contraction(F, G).scaled(ExactScalar::i())).is_zero());

  Observable FF = smear(fx.sigma0, chiral_boson_field(), f);
  ObservableSeries self = commutator(F, FF, fx.W, 3);
  for (int k = 0; k <= 3; ++k) REQUIRE(self[k].is_zero());

  // gaussian state examples
  GaussianState omega0{fx.W, fx.zero};
  ScalarSeries sF = omega0(to_series(F, 2));
  REQUIRE(std::abs(sF[0]) < 1e-15);  // linear functional at psi = 0

  Observable unit_obs(fx.sigma0);
  Term unit_term;
  unit_term.coeff = ExactScalar(1);
  unit_obs.add_term(std::move(unit_term));
  REQUIRE(std::abs(omega0(to_series(unit_obs, 1))[0] - 1.0) < 1e-15);

  ScalarSeries star_state = omega0(star_product(F, G, fx.W, 2));
  std::complex<double> w_pair = pair2(fx.W.kernel(), f.compact(), g.compact());
  REQUIRE(std::abs(star_state[1] - w_pair) < 1e-12);
}

TEST_CASE("state invariance under translations and dilations") {
  Fx fx;
  TestFunction f = TestFunction::bump(-0.3, 1.0, 1.0, "f");
  TestFunction g = TestFunction::bump(0.4, 0.8, 1.0, "g");
  GaussianState omega0{fx.W, fx.zero};
  auto value = [&](const TestFunction& a, const TestFunction& b) {
    ObservableSeries s = star_product(smear(fx.sigma0, chiral_boson_field(), a),
                                      smear(fx.sigma0, stress_tensor_field(), b), fx.W, 3);
    return omega0(s);
  };
  ScalarSeries base = value(f, g);
  for (const Diffeo& rho :
       {Diffeo(SmoothFn::affine(1.0, 0.9), -40, 40), Diffeo(SmoothFn::affine(2.2, 0.0), -40, 40)}) {
    TestFunction fa = field_pushforward(rho, 1.0, f);
    TestFunction gb = field_pushforward(rho, 2.0, g);
    ScalarSeries moved = value(fa, gb);
    for (int k = 0; k <= 3; ++k) REQUIRE(std::abs(moved[k] - base[k]) < 1e-10);
  }
}

TEST_CASE("beta transform basics") {
  Fx fx;
  Observable T = smear(fx.sigma0, stress_tensor_field(), TestFunction::bump(0.1, 1.0, 1, "h"));
  ObservableSeries Ts = to_series(T, 2);
  ObservableSeries same = beta_transform(Ts, SymmetricSmoothKernel());
  for (int k = 0; k <= 2; ++k) REQUIRE((same[k] - Ts[k]).is_zero());

  // a Lambda rescaling shifts the bulk kernel by a constant whose chiral
  // derivative vanishes: the induced chiral deltaH is the zero kernel
  ObservableSeries lam = beta_transform(Ts, SymmetricSmoothKernel::constant(0.0));
  for (int k = 0; k <= 2; ++k) REQUIRE((lam[k] - Ts[k]).is_zero());

  SymmetricSmoothKernel dH = SymmetricSmoothKernel::rank_one(SmoothFn::gaussian(0.0, 2.0, 0.4));
  ObservableSeries moved = beta_transform(Ts, dH);
  REQUIRE(moved[1].terms().size() == 1);  // quadratic gains one loop insertion
  REQUIRE(moved[1].terms()[0].vertices[0].psi_pow == 0);
  REQUIRE((moved[2]).is_zero());  // F^(4) of a quadratic vanishes
}

TEST_CASE("beta intertwines the shifted star product") {
  Fx fx;
  Observable F = smear(fx.sigma0, stress_tensor_field(), TestFunction::bump(-0.3, 1.0, 1, "F"));
  Observable G = smear(fx.sigma0, stress_tensor_field(), TestFunction::bump(0.4, 0.8, 1, "G"));
  SymmetricSmoothKernel dH =
      SymmetricSmoothKernel::symmetrized(SmoothFn::gaussian(0.0, 1.8, 0.5),
                                         SmoothFn::gaussian(0.3, 2.2, 0.3));
  const int N = 2;
  ObservableSeries lhs = beta_transform(star_product(F, G, fx.W, N), dH);
  ObservableSeries rhs = star_product_shifted(beta_transform(to_series(F, N), dH),
                                              beta_transform(to_series(G, N), dH), fx.W, dH, N);
  for (int h = 0; h <= N; ++h) REQUIRE((lhs[h] - rhs[h]).is_zero());
}

TEST_CASE("ope tables") {
  Fx fx;
  OpeTable psi2 = ope_extract(chiral_boson_field(), chiral_boson_field(), fx.W);
  REQUIRE(psi2.rows.size() == 1);
  REQUIRE(psi2.rows[0].power == 2);
  REQUIRE(psi2.rows[0].hbar_pow == 1);
  REQUIRE(psi2.rows[0].coeff == ExactScalar::monomial(Rational(-1, 4), -1, 0));
  REQUIRE(psi2.rows[0].attached == JetPolynomial::one());

  OpeTable tt = ope_extract(stress_tensor_field(), stress_tensor_field(), fx.W);
  REQUIRE(tt.rows.size() == 3);
  REQUIRE(tt.rows[0].power == 4);
  REQUIRE(tt.rows[0].coeff == ExactScalar::monomial(Rational(1, 32), -2, 0));
  REQUIRE(tt.rows[0].hbar_pow == 2);
  REQUIRE(tt.rows[1].power == 2);
  REQUIRE(tt.rows[1].coeff == ExactScalar::monomial(Rational(-1, 4), -1, 0));
  REQUIRE(tt.rows[1].attached == JetPolynomial::psi_power(2));
  REQUIRE(tt.rows[2].power == 1);
  JetPolynomial::Monomial m{};
  m[0] = 1;
  m[1] = 1;
  REQUIRE(tt.rows[2].attached == JetPolynomial::monomial(m, ExactScalar(1)));

  OpeTable empty = ope_extract(unit_field(), stress_tensor_field(), fx.W);
  REQUIRE(empty.rows.empty());

  CauchySurface curved(fx.mink, SmoothFn::sine_perturbed_identity(0.2, 1.0));
  HadamardChiralKernel Wc{curved};
  REQUIRE_THROWS_AS(ope_extract(chiral_boson_field(), chiral_boson_field(), Wc),
                    std::invalid_argument);
}

TEST_CASE("scaling constraint fits") {
  Fx fx;
  ScalingFit s1 = scaling_constraint_fit(chiral_boson_field(), chiral_boson_field(), fx.W);
  REQUIRE(s1.delta_order == 1);
  REQUIRE(s1.hbar_pow == 1);
  REQUIRE(std::abs(s1.a - std::complex<double>(0, -0.5)) < 1e-12);
  REQUIRE(s1.residual < 1e-10);

  ScalingFit s2 = scaling_constraint_fit(stress_tensor_field(), stress_tensor_field(), fx.W);
  REQUIRE(s2.delta_order == 3);
  REQUIRE(s2.hbar_pow == 2);
  REQUIRE(std::abs(s2.a - std::complex<double>(0, 1.0 / (96.0 * M_PI))) < 1e-12);
  REQUIRE(s2.residual < 1e-10);

  // odd total weight: the fitted coefficient vanishes
  ScalingFit s3 = scaling_constraint_fit(chiral_boson_field(), stress_tensor_field(), fx.W);
  REQUIRE(std::abs(s3.a) < 1e-13);
}

TEST_CASE("hbar series and evaluation guardrails") {
  Fx fx;
  Observable T = smear(fx.sigma0, stress_tensor_field(), TestFunction::bump(0, 1, 1, "t"));
  ObservableSeries s = star_product(T, T, fx.W, 4);
  // order-0 part of a product is the product of order-0 parts
  std::mt19937_64 rng(3);
  ChiralConfiguration psi = rnd_cfg(rng);
  REQUIRE(std::abs(s[0].evaluate(psi) - T.evaluate(psi) * T.evaluate(psi)) < 1e-9);
  // truncation: coefficients beyond the order are simply absent
  REQUIRE(s.order() == 4);
}

TEST_CASE("psi-cubed OPE table against hand-computed coefficients") {
  Fx fx;
  // Fi = Fj = Psi^3: row coefficients are
  //   (1/k!) fall(3,k)^2 (-1/4pi)^k, k = 1, 2, 3,
  // with attached fields from Taylor-expanding psi(s)^(3-k) about s'.
  LocalField cubed{3, ExactScalar(1)};
  OpeTable t = ope_extract(cubed, cubed, fx.W, 4);

  auto row = [&](int power) -> const OpeRow& {
    for (const auto& r : t.rows)
      if (r.power == power) return r;
    throw std::runtime_error("missing row");
  };

  // k = 3, r = 0: power 6, (1/6) 36 (-1/4pi)^3 = -(3/32) pi^-3
  REQUIRE(row(6).hbar_pow == 3);
  REQUIRE(row(6).coeff == ExactScalar::monomial(Rational(-3, 32), -3, 0));
  REQUIRE(row(6).attached == JetPolynomial::one());

  // k = 2, r = 0: power 4, (1/2) 36 (1/16 pi^2) psi^2 = (9/8) pi^-2 psi^2
  REQUIRE(row(4).hbar_pow == 2);
  REQUIRE(row(4).coeff == ExactScalar::monomial(Rational(9, 8), -2, 0));
  REQUIRE(row(4).attached == JetPolynomial::psi_power(2));

  // k = 2, r = 1: power 3, same scale with attached psi' psi
  JetPolynomial::Monomial m{};
  m[0] = 1;
  m[1] = 1;
  REQUIRE(row(3).hbar_pow == 2);
  REQUIRE(row(3).coeff == ExactScalar::monomial(Rational(9, 8), -2, 0));
  REQUIRE(row(3).attached == JetPolynomial::monomial(m, ExactScalar(1)));

  // k = 1, r = 0: power 2, 9 (-1/4pi) psi^4
  REQUIRE(row(2).hbar_pow == 1);
  REQUIRE(row(2).coeff == ExactScalar::monomial(Rational(-9, 4), -1, 0));
  REQUIRE(row(2).attached == JetPolynomial::psi_power(4));

  // k = 1, r = 1: power 1, attached D(psi^2) psi^2 = 2 psi^3 psi'
  JetPolynomial::Monomial m31{};
  m31[0] = 3;
  m31[1] = 1;
  REQUIRE(row(1).hbar_pow == 1);
  REQUIRE(row(1).coeff == ExactScalar::monomial(Rational(-9, 2), -1, 0));
  REQUIRE(row(1).attached == JetPolynomial::monomial(m31, ExactScalar(1)));
}

TEST_CASE("bracket and causality on the cylinder surface") {
  auto cyl = Spacetime::cylinder();
  CauchySurface s0 = CauchySurface::sigma0(cyl);
  TestFunction f = TestFunction::bump(1.0, 0.7, 1.0, "f");
  TestFunction g = TestFunction::bump(2.2, 0.6, 1.0, "g");
  Observable F = smear(s0, chiral_boson_field(), f);
  Observable G = smear(s0, chiral_boson_field(), g);
  double expected = integrate(
      [&](double s) { return -0.5 * f(s) * g.jet(s).deriv(1); },
      std::max(f.lo(), g.lo()), std::min(f.hi(), g.hi()));
  ChiralConfiguration zero{SmoothFn::constant(0.0), true};
  REQUIRE(poisson_bracket(F, G).evaluate(zero).real() ==
          Catch::Approx(expected).epsilon(1e-10));

  HadamardChiralKernel W{s0};
  TestFunction far = TestFunction::bump(4.5, 0.5, 1.0, "far");
  ObservableSeries c = commutator(F, smear(s0, chiral_boson_field(), far), W, 2);
  for (int k = 0; k <= 2; ++k) REQUIRE(c[k].is_zero());
}
