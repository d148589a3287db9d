#include "chiral/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace chiral {
namespace {

// G7-K15 nodes and weights on [-1, 1] (nonnegative nodes; symmetric rule).
constexpr double kK15Nodes[8] = {0.0,
                                 0.2077849550078985,
                                 0.4058451513773972,
                                 0.5860872354676911,
                                 0.7415311855993945,
                                 0.8648644233597691,
                                 0.9491079123427585,
                                 0.9914553711208126};
constexpr double kK15Weights[8] = {0.2094821410847278, 0.2044329400752989,
                                   0.1903505780647854, 0.1690047266392679,
                                   0.1406532597155259, 0.1047900103222502,
                                   0.0630920926299786, 0.0229353220105292};
// G7 weights attached to K15 nodes 0, 2, 4, 6 (the Gauss subset).
constexpr double kG7Weights[4] = {0.4179591836734694, 0.3818300505051189,
                                  0.2797053914892767, 0.1294849661688697};

template <typename T, typename F>
void gk15(const F& f, double a, double b, T& value, double& error) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  T fk{}, fg{};
  for (int i = 0; i < 8; ++i) {
    T v = (i == 0) ? T(f(c)) : T(f(c - h * kK15Nodes[i]) + f(c + h * kK15Nodes[i]));
    fk += kK15Weights[i] * v;
    if (i % 2 == 0) fg += kG7Weights[i / 2] * v;
  }
  value = h * fk;
  error = std::abs(T(h * fk - h * fg));
}

template <typename T, typename F>
T adaptive(const F& f, double a, double b, const QuadOptions& opt) {
  if (a == b) return T{};
  struct Panel {
    double a, b;
    int depth;
  };
  T coarse;
  double coarse_err;
  gk15(f, a, b, coarse, coarse_err);
  const double scale = std::max(std::abs(coarse), 1e-30);
  const double span = std::abs(b - a);

  std::vector<Panel> stack{{a, b, 0}};
  T total{};
  double worst_rel = 0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    T v;
    double err;
    gk15(f, p.a, p.b, v, err);
    const double budget =
        std::max(opt.abs_tol, opt.rel_tol * scale) * (std::abs(p.b - p.a) / span);
    // Splitting cannot beat the rounding floor of the local magnitude.
    const double floor = 5e-15 * std::abs(v);
    if (err <= std::max({budget, floor, 1e-300}) || p.depth >= opt.max_depth) {
      if (p.depth >= opt.max_depth) worst_rel = std::max(worst_rel, err / scale);
      total += v;
    } else {
      double m = 0.5 * (p.a + p.b);
      stack.push_back({p.a, m, p.depth + 1});
      stack.push_back({m, p.b, p.depth + 1});
    }
  }
  if (worst_rel > 1e3 * std::max(opt.rel_tol, 1e-14))
    throw std::runtime_error("integrate: tolerance not met");
  return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
  return adaptive<double>(f, a, b, opt);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, const QuadOptions& opt) {
  return adaptive<std::complex<double>>(f, a, b, opt);
}

namespace {

// Legendre nodes by Newton iteration on P_n.
void legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0, dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
      }
      dp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

std::mutex g_rule_mutex;
std::map<int, std::pair<std::vector<double>, std::vector<double>>> g_rules;

const std::pair<std::vector<double>, std::vector<double>>& rule(int n) {
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto it = g_rules.find(n);
  if (it == g_rules.end()) {
    std::pair<std::vector<double>, std::vector<double>> r;
    legendre(n, r.first, r.second);
    it = g_rules.emplace(n, std::move(r)).first;
  }
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_nodes(int n) { return rule(n).first; }
const std::vector<double>& gauss_weights(int n) { return rule(n).second; }

double integrate_fixed(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& [x, w] = rule(n);
  double h = 0.5 * (b - a), c = 0.5 * (a + b);
  double s = 0;
  for (int i = 0; i < n; ++i) s += w[i] * f(c + h * x[i]);
  return h * s;
}

std::complex<double> integrate_fixed_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b, int n) {
  const auto& [x, w] = rule(n);
  double h = 0.5 * (b - a), c = 0.5 * (a + b);
  std::complex<double> s = 0;
  for (int i = 0; i < n; ++i) s += w[i] * f(c + h * x[i]);
  return h * s;
}

}  // namespace chiral
