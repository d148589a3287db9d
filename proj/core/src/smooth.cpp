#include "chiral/smooth.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "chiral/quadrature.hpp"

namespace chiral {

struct SmoothFn::Node {
  std::function<Jet(double)> eval;
  std::string label;
  std::uint64_t id;
};

namespace {
std::uint64_t next_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}
}  // namespace

SmoothFn::SmoothFn(std::function<Jet(double)> eval, std::string label)
    : node_(std::make_shared<Node>(Node{std::move(eval), std::move(label), next_id()})) {}

Jet SmoothFn::jet(double x) const {
  if (!node_) throw std::logic_error("SmoothFn: empty handle");
  return node_->eval(x);
}

const std::string& SmoothFn::label() const {
  static const std::string empty = "<null>";
  return node_ ? node_->label : empty;
}

std::uint64_t SmoothFn::id() const { return node_ ? node_->id : 0; }

SmoothFn SmoothFn::constant(double c) {
  return SmoothFn([c](double) { return Jet::constant(c); }, "const");
}

SmoothFn SmoothFn::identity() {
  return SmoothFn([](double x) { return Jet::variable(x); }, "id");
}

SmoothFn SmoothFn::affine(double a, double b) {
  return SmoothFn(
      [a, b](double x) {
        Jet j = Jet::constant(b);
        j.d[0] += a * x;
        j.d[1] = a;
        return j;
      },
      "affine");
}

SmoothFn SmoothFn::sine(double amplitude, double frequency, double phase) {
  return SmoothFn(
      [=](double x) {
        Jet arg = Jet::variable(x) * frequency;
        arg.d[0] += phase;
        return amplitude * sin_of(arg);
      },
      "sine");
}

SmoothFn SmoothFn::sine_perturbed_identity(double amplitude, double frequency) {
  if (std::abs(amplitude * frequency) >= 1.0)
    throw std::invalid_argument("sine_perturbed_identity: not strictly increasing");
  return SmoothFn(
      [=](double x) {
        Jet arg = Jet::variable(x) * frequency;
        return Jet::variable(x) + amplitude * sin_of(arg);
      },
      "id+sin");
}

SmoothFn SmoothFn::gaussian(double center, double sigma, double amplitude) {
  return SmoothFn(
      [=](double x) {
        Jet y = Jet::variable(x);
        y.d[0] -= center;
        Jet e = y * y * (-0.5 / (sigma * sigma));
        return amplitude * exp_of(e);
      },
      "gaussian");
}

SmoothFn SmoothFn::polynomial(std::vector<double> coeffs) {
  return SmoothFn(
      [c = std::move(coeffs)](double x) {
        Jet xj = Jet::variable(x);
        Jet acc = Jet::constant(0.0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * xj + Jet::constant(*it);
        return acc;
      },
      "poly");
}

SmoothFn SmoothFn::bump(double center, double halfwidth, double amplitude) {
  if (halfwidth <= 0) throw std::invalid_argument("bump: halfwidth must be positive");
  return SmoothFn(
      [=](double x) {
        double y = (x - center) / halfwidth;
        if (std::abs(y) >= 1.0 - 1e-12) return Jet::constant(0.0);
        Jet yj = Jet::variable(x);
        yj.d[0] = y;
        yj.d[1] = 1.0 / halfwidth;
        Jet one_minus = Jet::constant(1.0) - yj * yj;
        Jet h = -one_minus.reciprocal();
        return amplitude * exp_of(h);
      },
      "bump");
}

SmoothFn SmoothFn::cubic_spline(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 3 || ys.size() != n) throw std::invalid_argument("cubic_spline: need >= 3 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (xs[i] <= xs[i - 1]) throw std::invalid_argument("cubic_spline: x not increasing");

  // Natural spline second derivatives by the standard tridiagonal solve:
  // h_{i-1} M_{i-1} + 2(x_{i+1}-x_{i-1}) M_i + h_i M_{i+1} = 6 (dd_i - dd_{i-1}).
  std::vector<double> m(n, 0.0), u(n, 0.0), z(n, 0.0);
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = xs[i + 1] - xs[i];
  std::vector<double> alpha(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    alpha[i] = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
  std::vector<double> l(n, 1.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    l[i] = 2.0 * (xs[i + 1] - xs[i - 1]) - h[i - 1] * u[i - 1];
    u[i] = h[i] / l[i];
    z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l[i];
  }
  for (std::size_t i = n - 1; i-- > 1;) m[i] = z[i] - u[i] * m[i + 1];

  struct Data {
    std::vector<double> xs, ys, m, h;
  };
  auto data = std::make_shared<Data>(Data{xs, ys, m, h});
  return SmoothFn(
      [data](double x) {
        const auto& X = data->xs;
        std::size_t i = 0;
        if (x <= X.front())
          i = 0;
        else if (x >= X.back())
          i = X.size() - 2;
        else {
          i = std::size_t(std::upper_bound(X.begin(), X.end(), x) - X.begin()) - 1;
        }
        double hh = data->h[i];
        double A = (X[i + 1] - x) / hh, B = (x - X[i]) / hh;
        const auto& Y = data->ys;
        const auto& M = data->m;
        Jet r;
        r.d[0] = A * Y[i] + B * Y[i + 1] +
                 ((A * A * A - A) * M[i] + (B * B * B - B) * M[i + 1]) * (hh * hh) / 6.0;
        r.d[1] = (Y[i + 1] - Y[i]) / hh -
                 (3 * A * A - 1) / 6.0 * hh * M[i] + (3 * B * B - 1) / 6.0 * hh * M[i + 1];
        r.d[2] = A * M[i] + B * M[i + 1];
        r.d[3] = (M[i + 1] - M[i]) / hh;
        return r;
      },
      "spline");
}

SmoothFn operator+(const SmoothFn& a, const SmoothFn& b) {
  return SmoothFn([a, b](double x) { return a.jet(x) + b.jet(x); }, "sum");
}
SmoothFn operator-(const SmoothFn& a, const SmoothFn& b) {
  return SmoothFn([a, b](double x) { return a.jet(x) - b.jet(x); }, "diff");
}
SmoothFn operator*(const SmoothFn& a, const SmoothFn& b) {
  return SmoothFn([a, b](double x) { return a.jet(x) * b.jet(x); }, "prod");
}
SmoothFn operator*(double c, const SmoothFn& a) {
  return SmoothFn([c, a](double x) { return a.jet(x) * c; }, "scaled");
}

SmoothFn SmoothFn::compose_with(const SmoothFn& inner) const {
  SmoothFn outer = *this;
  return SmoothFn(
      [outer, inner](double x) {
        Jet g = inner.jet(x);
        Jet f = outer.jet(g.value());
        return compose(f, g);
      },
      "compose");
}

SmoothFn SmoothFn::derivative(int k) const {
  SmoothFn base = *this;
  return SmoothFn([base, k](double x) { return base.jet(x).shift_derivative(k); }, "deriv");
}

SmoothFn SmoothFn::power(double mu) const {
  SmoothFn base = *this;
  return SmoothFn([base, mu](double x) { return pow_of(base.jet(x), mu); }, "pow");
}

SmoothFn SmoothFn::reciprocal() const {
  SmoothFn base = *this;
  return SmoothFn([base](double x) { return base.jet(x).reciprocal(); }, "recip");
}

SmoothFn SmoothFn::shifted(double h) const {
  SmoothFn base = *this;
  return SmoothFn([base, h](double x) { return base.jet(x + h); }, "shifted");
}

double solve_monotone(const SmoothFn& f, double y, double lo, double hi, double tol,
                      int max_iter) {
  double flo = f(lo) - y, fhi = f(hi) - y;
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (flo * fhi > 0) throw std::domain_error("solve_monotone: root not bracketed");
  const bool increasing = fhi > flo;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    Jet j = f.jet(x);
    double r = j.value() - y;
    if (std::abs(r) == 0.0 || hi - lo < tol) return x;
    if ((r > 0) == increasing)
      hi = x;
    else
      lo = x;
    double step = (j.deriv(1) != 0.0) ? r / j.deriv(1) : 0.0;
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // fall back to bisection
    if (std::abs(xn - x) < tol && std::abs(r) < tol * std::max(1.0, std::abs(y))) return xn;
    x = xn;
  }
  if (hi - lo < 1e-9) return x;
  throw std::runtime_error("solve_monotone: no convergence");
}

Diffeo::Diffeo(SmoothFn fwd, double lo, double hi, std::string label)
    : fwd_(std::move(fwd)), lo_(lo), hi_(hi), label_(std::move(label)) {}

void Diffeo::require_increasing(int grid) const {
  double a = std::max(lo_, -50.0), b = std::min(hi_, 50.0);
  for (int i = 0; i < grid; ++i) {
    double x = a + (b - a) * i / (grid - 1);
    if (!(fwd_.deriv(x, 1) > 0.0))
      throw std::invalid_argument("Diffeo: derivative not positive at x=" + std::to_string(x));
  }
}

double Diffeo::inverse(double y) const {
  // Expand the bracket when the nominal domain is unbounded.
  double a = lo_, b = hi_;
  if (a < -1e17 || b > 1e17) {
    a = -1.0;
    b = 1.0;
    for (int k = 0; k < 120 && fwd_(a) > y; ++k) a *= 2.0;
    for (int k = 0; k < 120 && fwd_(b) < y; ++k) b *= 2.0;
  }
  return solve_monotone(fwd_, y, a, b);
}

Jet Diffeo::inverse_jet(double y) const {
  double x = inverse(y);
  Jet f = fwd_.jet(x);
  // Derivatives of the inverse from the forward jet.
  double f1 = f.d[1], f2 = f.d[2], f3 = f.d[3], f4 = f.d[4], f5 = f.d[5];
  Jet r;
  r.d[0] = x;
  double g1 = 1.0 / f1;
  double g2 = -f2 * g1 * g1 * g1;
  double g3 = (3 * f2 * f2 - f1 * f3) * std::pow(g1, 5);
  double g4 = (-15 * f2 * f2 * f2 + 10 * f1 * f2 * f3 - f1 * f1 * f4) * std::pow(g1, 7);
  double g5 = (105 * std::pow(f2, 4) - 105 * f1 * f2 * f2 * f3 + 10 * f1 * f1 * f3 * f3 +
               15 * f1 * f1 * f2 * f4 - f1 * f1 * f1 * f5) *
              std::pow(g1, 9);
  r.d[1] = g1;
  r.d[2] = g2;
  r.d[3] = g3;
  r.d[4] = g4;
  r.d[5] = g5;
  return r;
}

SmoothFn Diffeo::inverse_fn() const {
  Diffeo self = *this;
  return SmoothFn([self](double y) { return self.inverse_jet(y); }, label_ + "^-1");
}

SmoothFn primitive(const SmoothFn& g, std::string label) {
  struct Cache {
    SmoothFn g;
    std::map<long, double> anchors;  // integral from 0 to k (unit breakpoints)
    std::mutex mu;
    double anchor(long k) {
      std::lock_guard<std::mutex> lock(mu);
      auto it = anchors.find(k);
      if (it != anchors.end()) return it->second;
      // Build outward from 0.
      if (anchors.empty()) anchors[0] = 0.0;
      long nearest = anchors.begin()->first;
      for (const auto& [kk, vv] : anchors)
        if (std::llabs(kk - k) < std::llabs(nearest - k)) nearest = kk;
      double acc = anchors[nearest];
      long dir = (k > nearest) ? 1 : -1;
      for (long j = nearest; j != k; j += dir) {
        double a = double(j), b = double(j + dir);
        acc += integrate([this](double x) { return g(x); }, a, b);
        anchors[j + dir] = acc;
      }
      return acc;
    }
  };
  auto cache = std::make_shared<Cache>();
  cache->g = g;
  return SmoothFn(
      [cache](double x) {
        long k = std::lround(std::floor(x));
        double base = cache->anchor(k);
        double tail = integrate([cache](double t) { return cache->g(t); }, double(k), x);
        Jet gj = cache->g.jet(x);
        Jet r;
        r.d[0] = base + tail;
        for (int n = 1; n <= kJetOrder; ++n) r.d[n] = gj.d[n - 1];
        return r;
      },
      std::move(label));
}

}  // namespace chiral
