#include <catch2/catch_amalgamated.hpp>

#include "chiral/fields.hpp"

using namespace chiral;

namespace {

KernelExpr unit(KernelShape shape) {
  return KernelExpr(KernelTerm{std::move(shape), ExactScalar(1), {}, {}});
}

// brute-force oracle: delta^(k)(s - s') replaced by a narrow Gaussian
// derivative, Richardson-extrapolated in the width.
std::complex<double> mollified_delta_oracle(int k, const CompactFn& f, const CompactFn& g) {
  auto value_at = [&](double w) {
    SmoothFn gauss = SmoothFn::gaussian(0.0, w, 1.0 / (w * std::sqrt(2.0 * M_PI)));
    const double window = 10.0 * w;  // gaussian tail < 2e-22 beyond it
    return integrate(
        [&](double s) {
          double lo = std::max(g.lo, s - window), hi = std::min(g.hi, s + window);
          if (!(lo < hi)) return 0.0;
          double inner = integrate(
              [&](double sp) { return gauss.jet(s - sp).deriv(k) * g.fn(sp); }, lo, hi);
          return f.fn(s) * inner;
        },
        std::max(f.lo, g.lo - window), std::min(f.hi, g.hi + window));
  };
  std::vector<double> ws{0.16, 0.08, 0.04, 0.02};
  std::vector<double> vals;
  for (double w : ws) vals.push_back(value_at(w));
  // Richardson in w^2 (Gaussian moments are even)
  std::vector<double> xs;
  for (double w : ws) xs.push_back(w * w);
  for (std::size_t m = 1; m < xs.size(); ++m)
    for (std::size_t i = 0; i + m < xs.size(); ++i)
      vals[i] = (xs[i + m] * vals[i] - xs[i] * vals[i + 1]) / (xs[i + m] - xs[i]);
  return vals[0];
}

}  // namespace

TEST_CASE("plemelj expansion round trip is exact") {
  for (int n : {1, 2, 3, 4}) {
    for (BoundarySide side : {BoundarySide::PlusI0, BoundarySide::MinusI0}) {
      KernelExpr bv = unit(KernelShape::boundary(n, side));
      KernelExpr expanded = bv.plemelj_expanded();
      REQUIRE(expanded.terms().size() == 2);
      KernelExpr back = expanded.plemelj_recombined();
      REQUIRE(back.terms().size() == 1);
      REQUIRE(back.terms()[0].shape.kind == KernelShape::Kind::Boundary);
      REQUIRE(back.terms()[0].shape.order == n);
      REQUIRE(back.terms()[0].shape.side == side);
      REQUIRE(back.terms()[0].coeff == ExactScalar(1));
    }
  }
  // 1/(x+i0) = PV - i pi delta
  KernelExpr e = unit(KernelShape::boundary(1, BoundarySide::PlusI0)).plemelj_expanded();
  bool found_delta = false;
  for (const auto& t : e.terms())
    if (t.shape.kind == KernelShape::Kind::Delta) {
      found_delta = true;
      REQUIRE(t.coeff == ExactScalar::monomial(-1, 1, 1));
    }
  REQUIRE(found_delta);
}

TEST_CASE("delta pairings follow integration by parts") {
  TestFunction f = TestFunction::bump(-0.2, 1.0, 1.0, "f");
  TestFunction g = TestFunction::bump(0.3, 0.9, 1.0, "g");
  double lo = std::max(f.lo(), g.lo()), hi = std::min(f.hi(), g.hi());

  auto d0 = pair2(unit(KernelShape::delta(0)), f.compact(), g.compact());
  double fg = integrate([&](double s) { return f(s) * g(s); }, lo, hi);
  REQUIRE(d0.real() == Catch::Approx(fg).epsilon(1e-12));

  // <delta', f x f> = -Int f' f = 0
  auto d1 = pair2(unit(KernelShape::delta(1)), f.compact(), f.compact());
  REQUIRE(std::abs(d1) < 1e-13);

  for (int k : {1, 2}) {
    auto analytic = pair2(unit(KernelShape::delta(k)), f.compact(), g.compact());
    auto oracle = mollified_delta_oracle(k, f.compact(), g.compact());
    REQUIRE(std::abs(analytic - oracle) < 1e-6);
  }
}

TEST_CASE("pairings are bilinear") {
  TestFunction f1 = TestFunction::bump(-0.3, 0.8, 1.0, "f1");
  TestFunction f2 = TestFunction::bump(0.1, 1.1, 0.7, "f2");
  TestFunction g = TestFunction::bump(0.2, 0.9, 1.0, "g");
  KernelExpr k = unit(KernelShape::finite_part(2));
  CompactFn sum(f1.fn() + f2.fn(), std::min(f1.lo(), f2.lo()), std::max(f1.hi(), f2.hi()));
  auto lhs = pair2(k, sum, g.compact());
  auto rhs = pair2(k, f1.compact(), g.compact()) + pair2(k, f2.compact(), g.compact());
  REQUIRE(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("finite part against disjoint supports is a plain integral") {
  TestFunction f = TestFunction::bump(0.5, 0.45, 1.0, "f");   // inside (0, 1)
  TestFunction g = TestFunction::bump(2.5, 0.45, 1.0, "g");   // inside (2, 3)
  auto paired = pair1(unit(KernelShape::finite_part(1)),
                      CompactFn(f.fn(), f.lo(), f.hi()));
  (void)paired;  // PV of a one-sided support is regular too
  auto v = pair2(unit(KernelShape::finite_part(1)), f.compact(), g.compact());
  double direct = integrate(
      [&](double s) {
        return f(s) * integrate([&](double sp) { return g(sp) / (s - sp); }, g.lo(), g.hi());
      },
      f.lo(), f.hi());
  REQUIRE(v.real() == Catch::Approx(direct).epsilon(1e-10));
  REQUIRE(std::abs(v.imag()) < 1e-14);
}

TEST_CASE("taylor-subtracted and i-epsilon paths agree") {
  TestFunction f = TestFunction::bump(-0.25, 0.9, 1.0, "f");
  TestFunction g = TestFunction::bump(0.3, 0.8, 1.0, "g");
  for (auto shape : {KernelShape::finite_part(1), KernelShape::finite_part(2),
                     KernelShape::boundary(2, BoundarySide::PlusI0)}) {
    KernelExpr k = unit(shape);
    auto a = pair2(k, f.compact(), g.compact());
    auto b = pair2_ieps(k, f.compact(), g.compact());
    REQUIRE(std::abs(a - b) < 5e-5 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("tagged scaling degrees") {
  REQUIRE(*scaling_degree(unit(KernelShape::delta(0))) == Rational(1));
  REQUIRE(*scaling_degree(unit(KernelShape::delta(3))) == Rational(4));
  REQUIRE(*scaling_degree(unit(KernelShape::finite_part(4))) == Rational(4));
  REQUIRE(*scaling_degree(unit(KernelShape::boundary(2, BoundarySide::PlusI0))) ==
          Rational(2));
  REQUIRE_FALSE(scaling_degree(KernelExpr::zero()).has_value());
  KernelExpr sum = unit(KernelShape::delta(0)) + unit(KernelShape::finite_part(3));
  REQUIRE(*scaling_degree(sum) == Rational(3));
}

TEST_CASE("numeric scaling degree estimator") {
  auto probe = default_scaling_probe();
  REQUIRE(std::abs(numeric_scaling_degree(unit(KernelShape::delta(1)), probe) - 2.0) < 0.05);
  REQUIRE(std::abs(numeric_scaling_degree(unit(KernelShape::finite_part(2)), probe) - 2.0) <
          0.05);
  KernelExpr smooth = unit(KernelShape::smooth(SmoothFn::constant(1.0), SmoothFn()));
  REQUIRE(numeric_scaling_degree(smooth, probe) < 0.05);
  REQUIRE_THROWS_AS(numeric_scaling_degree(KernelExpr::zero(), probe), std::domain_error);
}

TEST_CASE("homogeneous extensions and their recognition") {
  // alpha = -i pi reproduces the +i0 boundary value exactly
  KernelExpr had = extend_homogeneous(0, ExactScalar::monomial(-1, 1, 1));
  KernelExpr bv1 = unit(KernelShape::boundary(1, BoundarySide::PlusI0));
  REQUIRE((had - bv1.plemelj_expanded()).canonical().is_zero());

  KernelExpr pv = extend_homogeneous(0, ExactScalar(0));
  REQUIRE(pv.terms().size() == 1);
  REQUIRE(pv.terms()[0].shape.kind == KernelShape::Kind::FinitePart);

  // n = 1, alpha = +i pi equals the derivative of the n = 0 identity:
  // the expansion of 1/(x - i0)^2.
  KernelExpr ext1 = extend_homogeneous(1, ExactScalar::monomial(1, 1, 1));
  KernelExpr bv2 = unit(KernelShape::boundary(2, BoundarySide::MinusI0));
  REQUIRE((ext1 - bv2.plemelj_expanded()).canonical().is_zero());

  auto m = match_homogeneous_extension(ext1);
  REQUIRE(m.has_value());
  REQUIRE(m->first == 1);
  REQUIRE(m->second == ExactScalar::monomial(1, 1, 1));

  // degree is n + 1 independent of alpha
  for (int n : {0, 1, 2})
    for (auto alpha : {ExactScalar(0), ExactScalar::monomial(-1, 1, 1), ExactScalar(2)})
      REQUIRE(*scaling_degree(extend_homogeneous(n, alpha)) == Rational(n + 1));
}

TEST_CASE("fourier symbols and the Hadamard selection") {
  KernelExpr had = extend_homogeneous(0, ExactScalar::monomial(-1, 1, 1));
  REQUIRE(std::abs(fourier_symbol(had, -3.0)) == 0.0);
  auto plus = fourier_symbol(had, 3.0);
  REQUIRE(plus.imag() == Catch::Approx(-2.0 * M_PI));

  KernelExpr anti = extend_homogeneous(0, ExactScalar::monomial(1, 1, 1));
  REQUIRE(std::abs(fourier_symbol(anti, 5.5)) == 0.0);

  // alpha = 0, n = 1, xi = 2: ((-2i)/1!)(-i pi sgn 2) = -2 pi
  KernelExpr pv1 = extend_homogeneous(1, ExactScalar(0));
  auto v = fourier_symbol(pv1, 2.0);
  REQUIRE(v.real() == Catch::Approx(-2.0 * M_PI));
  REQUIRE(std::abs(v.imag()) < 1e-14);

  REQUIRE(classify_wavefront(ExactScalar::monomial(-1, 1, 1)) ==
          WavefrontAxis::PositiveAxis);
  REQUIRE(classify_wavefront(ExactScalar::monomial(1, 1, 1)) ==
          WavefrontAxis::NegativeAxis);
  REQUIRE(classify_wavefront(ExactScalar(3)) == WavefrontAxis::BothAxes);

  KernelExpr not_ext = unit(KernelShape::delta(2));
  REQUIRE_THROWS_AS(fourier_symbol(not_ext, 1.0), std::invalid_argument);
}

TEST_CASE("kernel products follow the composite-shape table") {
  KernelExpr bv2p = unit(KernelShape::boundary(2, BoundarySide::PlusI0));
  KernelExpr prod = multiply_same_argument(bv2p, bv2p);
  REQUIRE(prod.terms().size() == 1);
  REQUIRE(prod.terms()[0].shape.order == 4);
  REQUIRE(prod.terms()[0].shape.side == BoundarySide::PlusI0);

  KernelExpr bv2m = unit(KernelShape::boundary(2, BoundarySide::MinusI0));
  REQUIRE_THROWS_AS(multiply_same_argument(bv2p, bv2m), std::domain_error);
  KernelExpr d = unit(KernelShape::delta(0));
  REQUIRE_THROWS_AS(multiply_same_argument(d, d), std::domain_error);
  REQUIRE_THROWS_AS(multiply_same_argument(d, bv2p), std::domain_error);

  KernelExpr sm = unit(KernelShape::smooth(SmoothFn::constant(2.0), SmoothFn::constant(1.0)));
  KernelExpr folded = multiply_same_argument(sm, bv2p);
  REQUIRE(folded.terms().size() == 1);
  REQUIRE(folded.terms()[0].shape.kind == KernelShape::Kind::Boundary);
  REQUIRE(folded.terms()[0].has_prefactor());
}

TEST_CASE("argument flips and power multiplication") {
  KernelExpr bv3 = unit(KernelShape::boundary(3, BoundarySide::PlusI0));
  KernelExpr flipped = bv3.argument_flipped();
  REQUIRE(flipped.terms()[0].shape.side == BoundarySide::MinusI0);
  REQUIRE(flipped.terms()[0].coeff == ExactScalar(-1));

  // x * BV(2, +) = BV(1, +), checked through the expansion
  KernelExpr xbv = argument_power_multiply(unit(KernelShape::boundary(2, BoundarySide::PlusI0)), 1);
  KernelExpr bv1 = unit(KernelShape::boundary(1, BoundarySide::PlusI0));
  REQUIRE((xbv.plemelj_expanded() - bv1.plemelj_expanded()).canonical().is_zero());

  // x^2 delta' = 0, x delta' = -delta
  REQUIRE(argument_power_multiply(unit(KernelShape::delta(1)), 2).is_zero());
  KernelExpr xd = argument_power_multiply(unit(KernelShape::delta(1)), 1);
  REQUIRE(xd.terms()[0].shape.order == 0);
  REQUIRE(xd.terms()[0].coeff == ExactScalar(-1));
}

TEST_CASE("kernel JSON round trip") {
  KernelExpr e = extend_homogeneous(2, ExactScalar::monomial(-1, 1, 1)) +
                 unit(KernelShape::delta(0)).scaled(ExactScalar(Rational(3, 7)));
  nlohmann::json j = kernel_to_json(e);
  KernelExpr back = kernel_from_json(j);
  REQUIRE((e.plemelj_expanded() - back.plemelj_expanded()).canonical().is_zero());
}
