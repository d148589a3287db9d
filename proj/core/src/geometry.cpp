#include "chiral/geometry.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "chiral/quadrature.hpp"

namespace chiral {

SpacetimePtr Spacetime::minkowski() {
  return SpacetimePtr(new Spacetime(Kind::Minkowski));
}

SpacetimePtr Spacetime::cylinder() {
  return SpacetimePtr(new Spacetime(Kind::EinsteinCylinder));
}

SpacetimePtr Spacetime::subset(SpacetimePtr parent, SmoothFn lower, SmoothFn upper,
                               double x_lo, double x_hi, int grid) {
  if (!parent) throw std::invalid_argument("Spacetime::subset: null parent");
  for (int i = 0; i < grid; ++i) {
    double x = x_lo + (x_hi - x_lo) * i / (grid - 1);
    Jet lo = lower.jet(x), hi = upper.jet(x);
    if (!(lo.value() < hi.value()))
      throw std::invalid_argument("Spacetime::subset: boundaries not ordered at x=" +
                                  std::to_string(x));
    if (!(std::abs(lo.deriv(1)) < 1.0) || !(std::abs(hi.deriv(1)) < 1.0))
      throw std::invalid_argument("Spacetime::subset: boundary not spacelike at x=" +
                                  std::to_string(x));
  }
  auto st = new Spacetime(Kind::Subset);
  st->parent_ = std::move(parent);
  st->lower_ = std::move(lower);
  st->upper_ = std::move(upper);
  st->x_lo_ = x_lo;
  st->x_hi_ = x_hi;
  return SpacetimePtr(st);
}

bool Spacetime::periodic() const {
  if (kind_ == Kind::EinsteinCylinder) return true;
  if (kind_ == Kind::Subset) return parent_->periodic();
  return false;
}

Point Spacetime::canonical(Point p) const {
  if (!periodic()) return p;
  double x = p.x();
  double shift = std::floor(x / kTwoPi) * kTwoPi;
  // (u, v) ~ (u - 2pi, v + 2pi) shifts x by +2pi and fixes t.
  return {p.u + shift, p.v - shift};
}

bool Spacetime::contains(Point p, double margin) const {
  switch (kind_) {
    case Kind::Minkowski:
    case Kind::EinsteinCylinder:
      return true;
    case Kind::Subset: {
      Point q = canonical(p);
      double t = q.t(), x = q.x();
      return lower_(x) + margin < t && t < upper_(x) - margin && parent_->contains(q, margin);
    }
  }
  return false;
}

CauchySurface::CauchySurface(SpacetimePtr host, SmoothFn gamma, double s_lo, double s_hi)
    : host_(std::move(host)), gamma_(std::move(gamma)), s_lo_(s_lo), s_hi_(s_hi),
      weights_(std::make_shared<WeightCache>()) {
  if (host_ && host_->periodic())
    throw std::invalid_argument("CauchySurface: use cylinder_surface on periodic hosts");
  validate();
}

CauchySurface CauchySurface::cylinder_surface(SpacetimePtr host, SmoothFn gamma) {
  if (!host || !host->periodic())
    throw std::invalid_argument("cylinder_surface: host is not periodic");
  CauchySurface s(std::move(gamma), std::move(host));
  s.validate();
  return s;
}

// Private-ish constructor path for the periodic case.
CauchySurface::CauchySurface(SmoothFn gamma, SpacetimePtr host)
    : host_(std::move(host)), gamma_(std::move(gamma)), s_lo_(-1e18), s_hi_(1e18),
      periodic_(true), weights_(std::make_shared<WeightCache>()) {}

CauchySurface CauchySurface::sigma0(SpacetimePtr host) {
  if (host->periodic()) return cylinder_surface(std::move(host), SmoothFn::identity());
  return CauchySurface(std::move(host), SmoothFn::identity());
}

void CauchySurface::validate() const {
  const double a = periodic_ ? 0.0 : std::max(s_lo_, -20.0);
  const double b = periodic_ ? kTwoPi : std::min(s_hi_, 20.0);
  const int grid = 257;
  for (int i = 0; i < grid; ++i) {
    double s = a + (b - a) * i / (grid - 1);
    if (!(gamma_.deriv(s, 1) > 0.0))
      throw std::invalid_argument("CauchySurface: gamma' <= 0 at s=" + std::to_string(s));
    if (host_ && !host_->contains(point_at(s)))
      throw std::invalid_argument("CauchySurface: surface leaves host at s=" +
                                  std::to_string(s));
  }
  if (periodic_) {
    for (double s : {0.0, 1.1, 3.7}) {
      if (std::abs(gamma_(s + kTwoPi) - gamma_(s) - kTwoPi) > 1e-9)
        throw std::invalid_argument("CauchySurface: gamma not a periodic lift");
    }
  }
}

struct CauchySurface::WeightCache {
  std::mutex mu;
  std::map<double, SmoothFn> by_power;
};

SmoothFn CauchySurface::weight(double p) const {
  std::lock_guard<std::mutex> lock(weights_->mu);
  auto it = weights_->by_power.find(p);
  if (it != weights_->by_power.end()) return it->second;
  SmoothFn g = gamma_;
  SmoothFn w = (p == 0.0)
                   ? SmoothFn::constant(1.0)
                   : SmoothFn([g, p](double s) { return pow_of(g.jet(s).shift_derivative(1), p); },
                              "gamma'^w");
  weights_->by_power.emplace(p, w);
  return w;
}

double CauchySurface::null_project(Point p, Side side) const {
  if (host_) p = host_->canonical(p);
  if (side == Side::Left) {
    double s = -p.u;
    if (periodic_) {
      s -= std::floor(s / kTwoPi) * kTwoPi;
    } else if (s < s_lo_ || s > s_hi_) {
      throw std::domain_error("null_project: no intersection inside the surface domain");
    }
    if (host_ && !host_->contains(point_at(s)))
      throw std::domain_error("null_project: intersection outside host");
    return s;
  }
  // Right projection: solve gamma(s) = v.
  double v = p.v;
  if (periodic_) {
    // Reduce using gamma(s + 2pi) = gamma(s) + 2pi, then solve on one period.
    double base = gamma_(0.0);
    double k = std::floor((v - base) / kTwoPi);
    double v0 = v - k * kTwoPi;
    double s0 = solve_monotone(gamma_, v0, -kTwoPi, 2.0 * kTwoPi);
    return s0 + k * kTwoPi;
  }
  double lo = std::max(s_lo_, -1e8), hi = std::min(s_hi_, 1e8);
  if (lo > -1e7 || hi < 1e7) {
    if (gamma_(lo) > v || gamma_(hi) < v)
      throw std::domain_error("null_project: no intersection inside the surface domain");
  } else {
    lo = -1.0;
    hi = 1.0;
    for (int i = 0; i < 120 && gamma_(lo) > v; ++i) lo *= 2.0;
    for (int i = 0; i < 120 && gamma_(hi) < v; ++i) hi *= 2.0;
  }
  double s = solve_monotone(gamma_, v, lo, hi);
  if (host_ && !host_->contains(point_at(s)))
    throw std::domain_error("null_project: intersection outside host");
  return s;
}

ConformalEmbedding::ConformalEmbedding(Diffeo rho, CauchySurface src, CauchySurface dst)
    : rho_(std::move(rho)), src_(std::move(src)), dst_(std::move(dst)) {}

Point ConformalEmbedding::apply(Point p) const {
  if (src_.host()) p = src_.host()->canonical(p);
  double sl = src_.null_project(p, Side::Left);
  double sr = src_.null_project(p, Side::Right);
  return {-rho_(sl), dst_.gamma()(rho_(sr))};
}

Jet ConformalEmbedding::omega_l(double u) const { return rho_.jet(-u).shift_derivative(1); }

Jet ConformalEmbedding::omega_r(double v) const {
  // All factors evaluated through jets so omega_r carries derivatives too.
  Diffeo src_gamma(src_.gamma(), src_.s_lo(), src_.s_hi());
  Jet s = src_gamma.inverse_jet(v);
  Jet rho_s = compose(rho_.jet(s.value()), s);
  Jet gd = compose(dst_.gamma().jet(rho_s.value()).shift_derivative(1), rho_s);
  Jet rd = compose(rho_.jet(s.value()).shift_derivative(1), s);
  Jet gs = compose(src_.gamma().jet(s.value()).shift_derivative(1), s);
  return gd * rd * gs.reciprocal();
}

double ConformalEmbedding::square_defect(int samples) const {
  double a = std::max(src_.s_lo(), -6.0), b = std::min(src_.s_hi(), 6.0);
  if (src_.periodic()) {
    a = 0.0;
    b = kTwoPi;
  }
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    double s = a + (b - a) * i / (samples - 1);
    Point lhs = apply(src_.point_at(s));
    Point rhs{-rho_(s), dst_.gamma()(rho_(s))};
    worst = std::max(worst, std::max(std::abs(lhs.u - rhs.u), std::abs(lhs.v - rhs.v)));
  }
  return worst;
}

bool ConformalEmbedding::image_contained(double u_lo, double u_hi, double v_lo, double v_hi,
                                         int grid) const {
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      Point p{u_lo + (u_hi - u_lo) * i / (grid - 1), v_lo + (v_hi - v_lo) * j / (grid - 1)};
      if (!src_.host()->contains(p)) continue;
      if (!dst_.host()->contains(apply(p))) return false;
    }
  return true;
}

ConformalEmbedding extend_diffeo(const Diffeo& rho, const CauchySurface& src,
                                 const CauchySurface& dst) {
  rho.require_increasing();
  // Containment check against genuinely bounded target domains only;
  // the 1e18 sentinel bounds stand for the whole line.
  if (dst.s_lo() > -1e17 || dst.s_hi() < 1e17) {
    double a = std::max({src.s_lo(), rho.lo(), -20.0});
    double b = std::min({src.s_hi(), rho.hi(), 20.0});
    for (double s : {a, 0.5 * (a + b), b}) {
      double r = rho(s);
      if (r < dst.s_lo() || r > dst.s_hi())
        throw std::invalid_argument("extend_diffeo: rho leaves the target surface domain");
    }
  }
  return ConformalEmbedding(rho, src, dst);
}

Diffeo dilation_diffeo(const SmoothFn& t_plus, const SmoothFn& t_minus, double x_lo,
                       double x_hi, int grid) {
  for (int i = 0; i < grid; ++i) {
    double x = x_lo + (x_hi - x_lo) * i / (grid - 1);
    for (const SmoothFn* t : {&t_plus, &t_minus}) {
      Jet j = t->jet(x);
      if (!(j.value() > 0.0))
        throw std::invalid_argument("dilation_diffeo: boundary graph not positive");
      if (!(std::abs(j.deriv(1)) < 1.0))
        throw std::invalid_argument("dilation_diffeo: boundary graph not spacelike");
    }
  }
  SmoothFn integrand =
      2.0 * (t_plus.reciprocal() + t_minus.reciprocal());
  return Diffeo(primitive(integrand, "dilation"), x_lo, x_hi, "dilation");
}

double dilation_margin(const SmoothFn& t_plus, const SmoothFn& t_minus, const SmoothFn& t_at,
                       double x) {
  const double t = t_at(x);
  if (!(t > 0.0)) throw std::invalid_argument("dilation_margin: t(x) <= 0");
  auto g = [&](double y) {
    double xs = x + t * y;
    return 2.0 * (1.0 / t_plus(xs) + 1.0 / t_minus(xs));
  };
  return t * integrate_fixed(g, -1.0, 1.0, 48);
}

CausalDiamond cauchy_development(const CauchySurface& surface, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("cauchy_development: empty subinterval");
  if (!surface.periodic() && (a < surface.s_lo() || b > surface.s_hi()))
    throw std::invalid_argument("cauchy_development: subinterval outside surface domain");
  return CausalDiamond{-b, -a, surface.gamma()(a), surface.gamma()(b),
                       surface.periodic()};
}

namespace {
bool can_reach(const CausalDiamond& A, const CausalDiamond& B) {
  // A point of B lies in the causal future of a point of A iff both null
  // coordinates can increase from A into B.
  return B.u_hi > A.u_lo && B.v_hi > A.v_lo;
}
}  // namespace

bool causally_disjoint(const CausalDiamond& A, const CausalDiamond& B) {
  if (!A.periodic && !B.periodic) return !can_reach(A, B) && !can_reach(B, A);
  // On the cylinder compare against every image within the combined span.
  double span = std::abs(A.u_hi - A.u_lo) + std::abs(A.v_hi - A.v_lo) +
                std::abs(B.u_hi - B.u_lo) + std::abs(B.v_hi - B.v_lo) +
                std::abs(A.u_lo - B.u_lo) + std::abs(A.v_lo - B.v_lo);
  int n_img = int(std::ceil(span / kTwoPi)) + 1;
  for (int n = -n_img; n <= n_img; ++n) {
    CausalDiamond Bs{B.u_lo - kTwoPi * n, B.u_hi - kTwoPi * n, B.v_lo + kTwoPi * n,
                     B.v_hi + kTwoPi * n, B.periodic};
    if (can_reach(A, Bs) || can_reach(Bs, A)) return false;
  }
  return true;
}

}  // namespace chiral
