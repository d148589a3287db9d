#include "chiral/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "chiral/quadrature.hpp"

namespace chiral {

TestFunction::TestFunction(SmoothFn fn, double lo, double hi, std::string name)
    : fn_(std::move(fn)), lo_(lo), hi_(hi), name_(std::move(name)) {
  if (!(lo_ <= hi_)) throw std::invalid_argument("TestFunction: bad support interval");
}

TestFunction TestFunction::bump(double center, double halfwidth, double amplitude,
                                std::string name) {
  return TestFunction(SmoothFn::bump(center, halfwidth, amplitude), center - halfwidth,
                      center + halfwidth, std::move(name));
}

TestFunction TestFunction::gaussian_poly(double center, double sigma,
                                         std::vector<double> poly, std::string name) {
  SmoothFn g = SmoothFn::gaussian(center, sigma);
  SmoothFn p = SmoothFn::polynomial(std::move(poly));
  // exp(-y^2/2) < 1e-16 beyond |y| ~ 8.6; truncate there.
  double half = 8.7 * sigma;
  return TestFunction(g * p, center - half, center + half, std::move(name));
}

TestFunction TestFunction::derivative() const {
  return TestFunction(fn_.derivative(), lo_, hi_, name_ + "'");
}

TestFunction TestFunction::times(const TestFunction& other) const {
  double lo = std::max(lo_, other.lo_), hi = std::min(hi_, other.hi_);
  if (!(lo < hi)) return TestFunction();  // disjoint supports
  return TestFunction(fn_ * other.fn_, lo, hi, name_ + "*" + other.name_);
}

TestFunction TestFunction::times_smooth(const SmoothFn& m, std::string name) const {
  return TestFunction(fn_ * m, lo_, hi_, std::move(name));
}

BulkConfiguration BulkConfiguration::dalembert(SmoothFn phi_l, SmoothFn phi_r, double p,
                                               bool periodic) {
  BulkConfiguration c;
  c.dalembert_ = true;
  c.periodic_ = periodic;
  c.phi_l_ = std::move(phi_l);
  c.phi_r_ = std::move(phi_r);
  c.p_ = p;
  return c;
}

BulkConfiguration BulkConfiguration::general(
    std::function<double(double, double, int, int)> partial) {
  BulkConfiguration c;
  c.partial_ = std::move(partial);
  return c;
}

double BulkConfiguration::partial(double u, double v, int du, int dv) const {
  if (dalembert_) {
    double r = 0;
    if (dv == 0) r += phi_l_.valid() ? phi_l_.jet(u).deriv(du) : 0.0;
    if (du == 0) r += phi_r_.valid() ? phi_r_.jet(v).deriv(dv) : 0.0;
    if (p_ != 0.0) {
      if (du + dv == 0)
        r += p_ / kTwoPi * (u + v);
      else if (du + dv == 1)
        r += p_ / kTwoPi;
    }
    return r;
  }
  if (!partial_) throw std::logic_error("BulkConfiguration: empty");
  return partial_(u, v, du, dv);
}

Jet compose_bivariate(const std::function<double(int, int)>& partial_at_point,
                      const Jet& u_of_s, const Jet& v_of_s) {
  Jet du = u_of_s;
  du.d[0] = 0.0;
  Jet dv = v_of_s;
  dv.d[0] = 0.0;
  // Truncated bivariate Taylor evaluated in jet arithmetic: exact to order 5
  // because du, dv have vanishing constant term.
  Jet result = Jet::constant(partial_at_point(0, 0));
  Jet du_pow = Jet::constant(1.0);
  double a_fact = 1.0;
  for (int a = 0; a <= kJetOrder; ++a) {
    if (a > 0) {
      du_pow = du_pow * du;
      a_fact *= a;
    }
    Jet dv_pow = Jet::constant(1.0);
    double b_fact = 1.0;
    for (int b = 0; a + b <= kJetOrder; ++b) {
      if (b > 0) {
        dv_pow = dv_pow * dv;
        b_fact *= b;
      }
      if (a + b == 0) continue;
      double c = partial_at_point(a, b) / (a_fact * b_fact);
      if (c != 0.0) result = result + c * (du_pow * dv_pow);
    }
  }
  return result;
}

namespace {

ChiralConfiguration surface_derivative(const CauchySurface& surface,
                                       const BulkConfiguration& phi, bool anti) {
  SmoothFn gamma = surface.gamma();
  bool periodic = surface.periodic();
  SmoothFn out(
      [gamma, phi, anti](double s) {
        Jet g = gamma.jet(s);
        Jet u_of_s = -Jet::variable(s);
        Jet v_of_s = g;
        double u0 = u_of_s.value(), v0 = v_of_s.value();
        auto base = [&](int a, int b) {
          return anti ? phi.partial(u0, v0, a, b + 1) : phi.partial(u0, v0, a + 1, b);
        };
        Jet dphi = compose_bivariate(base, u_of_s, v_of_s);
        Jet weight = pow_of(g.shift_derivative(1), anti ? 0.5 : -0.5);
        return weight * dphi;
      },
      anti ? "antichiral(phi)" : "chiral(phi)");
  return ChiralConfiguration{out, periodic};
}

}  // namespace

ChiralConfiguration chiral_derivative(const CauchySurface& surface,
                                      const BulkConfiguration& phi) {
  return surface_derivative(surface, phi, false);
}

ChiralConfiguration anti_chiral_derivative(const CauchySurface& surface,
                                           const BulkConfiguration& phi) {
  return surface_derivative(surface, phi, true);
}

BulkConfiguration solve_from_chiral_data(const CauchySurface& surface,
                                         const ChiralConfiguration& psi) {
  SmoothFn gamma = surface.gamma();
  // Integrand of the left-mover: phi_l'(u) = sqrt(gamma'(-u)) psi(-u).
  SmoothFn integrand(
      [gamma, psi](double u) {
        Jet g = gamma.jet(-u);
        Jet w = pow_of(g.shift_derivative(1), 0.5);
        Jet p = psi.jet(-u);
        // Jets in u of functions evaluated at -u flip odd orders.
        Jet prod = w * p;
        Jet out;
        for (int k = 0; k <= kJetOrder; ++k) out.d[k] = (k % 2) ? -prod.d[k] : prod.d[k];
        return out;
      },
      "phi_l'");

  if (!surface.periodic()) {
    SmoothFn phi_l = primitive(integrand, "phi_l");
    return BulkConfiguration::dalembert(phi_l, SmoothFn(), 0.0, false);
  }

  // Cylinder: psi must be 2pi-periodic; split off the zero mode.
  for (double s : {0.3, 1.9, 4.4}) {
    if (std::abs(psi(s + kTwoPi) - psi(s)) > 1e-9)
      throw std::invalid_argument("solve_from_chiral_data: psi not 2pi-periodic");
  }
  double mean = integrate([&](double s) { return std::sqrt(gamma.deriv(s, 1)) * psi(s); },
                          0.0, kTwoPi) /
                kTwoPi;
  // phi = phi_l(u) + (p/2pi)(u+v) with p = 2pi*mean and phi_l periodic.
  SmoothFn reduced = integrand - SmoothFn::constant(mean);
  SmoothFn phi_l = primitive(reduced, "phi_l");
  return BulkConfiguration::dalembert(phi_l, SmoothFn(), kTwoPi * mean, true);
}

ChiralConfiguration weighted_pullback(const Diffeo& rho, const SmoothFn& omega, double mu,
                                      const ChiralConfiguration& psi) {
  SmoothFn fwd = rho.fn();
  SmoothFn psi_fn = psi.psi;
  SmoothFn out(
      [fwd, omega, mu, psi_fn](double s) {
        Jet w = (mu == 0.0) ? Jet::constant(1.0) : pow_of(omega.jet(s), mu);
        Jet inner = fwd.jet(s);
        Jet pulled = compose(psi_fn.jet(inner.value()), inner);
        return w * pulled;
      },
      "weighted_pullback");
  return ChiralConfiguration{out, psi.periodic};
}

ChiralConfiguration weighted_pullback(const ConformalEmbedding& emb, double mu,
                                      const ChiralConfiguration& psi) {
  // Surface conformal factor of rho: omega^2 = omega_l omega_r restricted,
  // i.e. omega(s) = rho'(s) sqrt(gamma_dst'(rho(s)) / gamma_src'(s)).
  Diffeo rho = emb.rho();
  SmoothFn gsrc = emb.source().gamma();
  SmoothFn gdst = emb.target().gamma();
  SmoothFn omega(
      [rho, gsrc, gdst](double s) {
        Jet r = rho.jet(s);
        Jet num = compose(gdst.jet(r.value()).shift_derivative(1), r);
        Jet den = gsrc.jet(s).shift_derivative(1);
        return r.shift_derivative(1) * pow_of(num / den, 0.5);
      },
      "omega_rho");
  return weighted_pullback(emb.rho(), omega, mu, psi);
}

TestFunction field_pushforward(const Diffeo& rho, double mu, const TestFunction& f) {
  if (!f.valid()) return f;
  double lo = f.lo(), hi = f.hi();
  if (!(rho.fn().deriv(lo, 1) > 0) || !(rho.fn().deriv(hi, 1) > 0))
    throw std::invalid_argument("field_pushforward: rho not invertible on supp f");
  SmoothFn inv = rho.inverse_fn();
  SmoothFn rho_prime = rho.fn().derivative();
  SmoothFn f_fn = f.fn();
  SmoothFn out(
      [inv, rho_prime, mu, f_fn](double y) {
        Jet s = inv.jet(y);
        Jet fv = compose(f_fn.jet(s.value()), s);
        if (mu == 1.0) return fv;
        Jet w = compose(pow_of(rho_prime.jet(s.value()), mu - 1.0), s);
        return w * fv;
      },
      "pushforward(" + f.name() + ")");
  return TestFunction(out, rho(lo), rho(hi), "push:" + f.name());
}

BulkConfiguration pullback_solution(const ConformalEmbedding& emb,
                                    const BulkConfiguration& phi) {
  if (!phi.is_dalembert())
    throw std::invalid_argument("pullback_solution: needs d'Alembert data");
  // chi(u, v) = (a(u), b(v)) with a(u) = -rho(-u), b(v) = gamma_dst(rho(gamma_src^-1 v)).
  Diffeo rho = emb.rho();
  SmoothFn gamma_dst = emb.target().gamma();
  Diffeo gamma_src(emb.source().gamma(), emb.source().s_lo(), emb.source().s_hi());
  SmoothFn a(
      [rho](double u) {
        Jet inner = -Jet::variable(u);  // -u
        return -compose(rho.jet(-u), inner);
      },
      "chi_u");
  SmoothFn b(
      [rho, gamma_dst, gamma_src](double v) {
        Jet s = gamma_src.inverse_jet(v);
        Jet r = compose(rho.jet(s.value()), s);
        return compose(gamma_dst.jet(r.value()), r);
      },
      "chi_v");
  const double p = phi.zero_mode();
  SmoothFn left = phi.left_part();
  SmoothFn right = phi.right_part();
  SmoothFn new_left(
      [left, a, p](double u) {
        Jet au = a.jet(u);
        Jet base = left.valid() ? compose(left.jet(au.value()), au) : Jet::constant(0.0);
        if (p != 0.0) base = base + au * (p / kTwoPi);
        return base;
      },
      "phi_l o chi");
  SmoothFn new_right(
      [right, b, p](double v) {
        Jet bv = b.jet(v);
        Jet base = right.valid() ? compose(right.jet(bv.value()), bv) : Jet::constant(0.0);
        if (p != 0.0) base = base + bv * (p / kTwoPi);
        return base;
      },
      "phi_r o chi");
  return BulkConfiguration::dalembert(new_left, new_right, 0.0, false);
}

BulkTestFn BulkTestFn::separable(const TestFunction& a, const TestFunction& b) {
  SmoothFn fa = a.fn(), fb = b.fn();
  BulkTestFn h;
  h.partial = [fa, fb](double u, double v, int du, int dv) {
    return fa.jet(u).deriv(du) * fb.jet(v).deriv(dv);
  };
  h.u_lo = a.lo();
  h.u_hi = a.hi();
  h.v_lo = b.lo();
  h.v_hi = b.hi();
  return h;
}

TestFunction eta_average(const CauchySurface& surface, const BulkTestFn& h) {
  const bool periodic = surface.periodic();
  double v_lo = h.v_lo, v_hi = h.v_hi;
  if (periodic) {
    v_lo = 0.0;
    v_hi = kTwoPi;
  } else if (!(v_lo < v_hi)) {
    throw std::invalid_argument("eta_average: unbounded v-support");
  }
  auto partial = h.partial;
  SmoothFn out(
      [partial, v_lo, v_hi](double s) {
        Jet r;
        for (int k = 0; k <= kJetOrder; ++k) {
          double sign = (k % 2) ? -1.0 : 1.0;
          r.d[k] = sign * integrate(
                              [&](double v) { return partial(-s, v, k, 0); }, v_lo, v_hi);
        }
        return r;
      },
      "eta(h)");
  return TestFunction(out, -h.u_hi, -h.u_lo, "eta(h)");
}

}  // namespace chiral
