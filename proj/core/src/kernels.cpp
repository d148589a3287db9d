#include "chiral/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chiral {

CompactFn CompactFn::rescaled(double lambda) const {
  if (!(lambda > 0)) throw std::invalid_argument("rescaled: lambda must be positive");
  SmoothFn base = fn;
  SmoothFn scaled(
      [base, lambda](double x) {
        Jet inner = Jet::variable(x) * (1.0 / lambda);
        return compose(base.jet(x / lambda), inner) * (1.0 / lambda);
      },
      "probe_lambda");
  return CompactFn(scaled, lo * lambda, hi * lambda);
}

KernelShape KernelShape::delta(int k) {
  if (k < 0) throw std::invalid_argument("delta: negative order");
  KernelShape s;
  s.kind = Kind::Delta;
  s.order = k;
  return s;
}

KernelShape KernelShape::finite_part(int n) {
  if (n < 1) throw std::invalid_argument("finite_part: power must be >= 1");
  KernelShape s;
  s.kind = Kind::FinitePart;
  s.order = n;
  return s;
}

KernelShape KernelShape::boundary(int n, BoundarySide side) {
  if (n < 1) throw std::invalid_argument("boundary: power must be >= 1");
  KernelShape s;
  s.kind = Kind::Boundary;
  s.order = n;
  s.side = side;
  return s;
}

KernelShape KernelShape::smooth(SmoothFn left, SmoothFn right) {
  KernelShape s;
  s.kind = Kind::Smooth;
  s.smooth_left = std::move(left);
  s.smooth_right = std::move(right);
  return s;
}

void KernelExpr::add_term(KernelTerm t) {
  if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

KernelExpr KernelExpr::operator-() const {
  KernelExpr r;
  for (const auto& t : terms_) {
    KernelTerm nt = t;
    nt.coeff = -nt.coeff;
    r.terms_.push_back(std::move(nt));
  }
  return r;
}

KernelExpr operator+(const KernelExpr& a, const KernelExpr& b) {
  KernelExpr r = a;
  for (const auto& t : b.terms_) r.terms_.push_back(t);
  return r.canonical();
}

KernelExpr operator-(const KernelExpr& a, const KernelExpr& b) { return a + (-b); }

KernelExpr KernelExpr::scaled(const ExactScalar& c) const {
  KernelExpr r;
  for (const auto& t : terms_) {
    KernelTerm nt = t;
    nt.coeff = nt.coeff * c;
    if (!nt.coeff.is_zero()) r.terms_.push_back(std::move(nt));
  }
  return r;
}

namespace {

std::uint64_t fn_id(const SmoothFn& f) { return f.valid() ? f.id() : 0; }

// Structural key for merging like terms.
std::array<std::uint64_t, 6> term_key(const KernelTerm& t) {
  std::uint64_t side = t.shape.kind == KernelShape::Kind::Boundary
                           ? (t.shape.side == BoundarySide::PlusI0 ? 1 : 2)
                           : 0;
  return {std::uint64_t(t.shape.kind), (std::uint64_t(t.shape.order) << 2) | side,
          fn_id(t.shape.smooth_left),  fn_id(t.shape.smooth_right),
          fn_id(t.pre_left),           fn_id(t.pre_right)};
}

ExactScalar plemelj_delta_coeff(int n, BoundarySide side) {
  // -/+ i pi (-1)^(n-1) / (n-1)! for +i0 / -i0.
  Rational q = Rational(1) / Rational::factorial(n - 1);
  if ((n - 1) % 2) q = -q;
  ExactScalar c = ExactScalar::monomial(q, 1, 1);
  return side == BoundarySide::PlusI0 ? -c : c;
}

}  // namespace

KernelExpr KernelExpr::canonical() const {
  std::vector<KernelTerm> out;
  for (const auto& t : terms_) {
    if (t.coeff.is_zero()) continue;
    bool merged = false;
    for (auto& o : out) {
      if (term_key(o) == term_key(t)) {
        o.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(t);
  }
  std::stable_sort(out.begin(), out.end(), [](const KernelTerm& a, const KernelTerm& b) {
    return term_key(a) < term_key(b);
  });
  KernelExpr r;
  for (auto& t : out)
    if (!t.coeff.is_zero()) r.terms_.push_back(std::move(t));
  return r;
}

KernelExpr KernelExpr::plemelj_expanded() const {
  KernelExpr r;
  for (const auto& t : terms_) {
    if (t.shape.kind == KernelShape::Kind::Boundary) {
      KernelTerm fp = t;
      fp.shape = KernelShape::finite_part(t.shape.order);
      r.terms_.push_back(std::move(fp));
      KernelTerm dl = t;
      dl.shape = KernelShape::delta(t.shape.order - 1);
      dl.coeff = t.coeff * plemelj_delta_coeff(t.shape.order, t.shape.side);
      r.terms_.push_back(std::move(dl));
    } else {
      r.terms_.push_back(t);
    }
  }
  return r.canonical();
}

KernelExpr KernelExpr::plemelj_recombined() const {
  KernelExpr c = canonical();
  std::vector<KernelTerm> pool = c.terms_;
  KernelExpr r;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].coeff.is_zero()) continue;
    if (pool[i].shape.kind != KernelShape::Kind::FinitePart) continue;
    int n = pool[i].shape.order;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (j == i || pool[j].coeff.is_zero()) continue;
      if (pool[j].shape.kind != KernelShape::Kind::Delta || pool[j].shape.order != n - 1)
        continue;
      if (fn_id(pool[j].pre_left) != fn_id(pool[i].pre_left) ||
          fn_id(pool[j].pre_right) != fn_id(pool[i].pre_right))
        continue;
      for (BoundarySide side : {BoundarySide::PlusI0, BoundarySide::MinusI0}) {
        if (pool[j].coeff == pool[i].coeff * plemelj_delta_coeff(n, side)) {
          KernelTerm bv = pool[i];
          bv.shape = KernelShape::boundary(n, side);
          r.terms_.push_back(std::move(bv));
          pool[i].coeff = ExactScalar(0);
          pool[j].coeff = ExactScalar(0);
          break;
        }
      }
      if (pool[i].coeff.is_zero()) break;
    }
  }
  for (auto& t : pool)
    if (!t.coeff.is_zero()) r.terms_.push_back(std::move(t));
  return r.canonical();
}

KernelExpr KernelExpr::argument_flipped() const {
  KernelExpr r;
  for (const auto& t : terms_) {
    KernelTerm nt = t;
    std::swap(nt.pre_left, nt.pre_right);
    switch (t.shape.kind) {
      case KernelShape::Kind::Delta:
        if (t.shape.order % 2) nt.coeff = -nt.coeff;
        break;
      case KernelShape::Kind::FinitePart:
        if (t.shape.order % 2) nt.coeff = -nt.coeff;
        break;
      case KernelShape::Kind::Boundary:
        if (t.shape.order % 2) nt.coeff = -nt.coeff;
        nt.shape.side = opposite(t.shape.side);
        break;
      case KernelShape::Kind::Smooth:
        std::swap(nt.shape.smooth_left, nt.shape.smooth_right);
        break;
    }
    r.terms_.push_back(std::move(nt));
  }
  return r.canonical();
}

namespace {

SmoothFn merge_factor(const SmoothFn& a, const SmoothFn& b) {
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  return a * b;
}

KernelTerm multiply_terms(const KernelTerm& a, const KernelTerm& b) {
  KernelTerm r;
  r.coeff = a.coeff * b.coeff;
  r.pre_left = merge_factor(a.pre_left, b.pre_left);
  r.pre_right = merge_factor(a.pre_right, b.pre_right);
  const auto& sa = a.shape;
  const auto& sb = b.shape;
  auto fold_smooth = [&](const KernelShape& smooth_shape, const KernelShape& other) {
    r.pre_left = merge_factor(r.pre_left, smooth_shape.smooth_left);
    r.pre_right = merge_factor(r.pre_right, smooth_shape.smooth_right);
    r.shape = other;
  };
  if (sa.kind == KernelShape::Kind::Smooth) {
    fold_smooth(sa, sb);
    return r;
  }
  if (sb.kind == KernelShape::Kind::Smooth) {
    fold_smooth(sb, sa);
    return r;
  }
  if (sa.kind == KernelShape::Kind::Boundary && sb.kind == KernelShape::Kind::Boundary) {
    if (sa.side != sb.side)
      throw std::domain_error("kernel product: mixed boundary sides are rejected");
    r.shape = KernelShape::boundary(sa.order + sb.order, sa.side);
    return r;
  }
  throw std::domain_error("kernel product: unsupported composite shape");
}

}  // namespace

KernelExpr multiply_same_argument(const KernelExpr& a, const KernelExpr& b) {
  KernelExpr r;
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) r.add_term(multiply_terms(ta, tb));
  return r.canonical();
}

KernelExpr argument_power_multiply(const KernelExpr& expr, int r) {
  if (r == 0) return expr;
  if (r < 0) throw std::invalid_argument("argument_power_multiply: negative power");
  KernelExpr out;
  for (const auto& t : expr.terms()) {
    KernelTerm nt = t;
    switch (t.shape.kind) {
      case KernelShape::Kind::Delta: {
        // x^r delta^(k) = (-1)^r k!/(k-r)! delta^(k-r), zero for r > k.
        int k = t.shape.order;
        if (r > k) continue;
        Rational fall = Rational::falling(k, r);
        if (r % 2) fall = -fall;
        nt.coeff = t.coeff * ExactScalar(fall);
        nt.shape = KernelShape::delta(k - r);
        out.add_term(std::move(nt));
        break;
      }
      case KernelShape::Kind::FinitePart:
      case KernelShape::Kind::Boundary: {
        int n = t.shape.order;
        if (r >= n) continue;  // becomes regular; dropped by the OPE truncation
        nt.shape.order = n - r;
        out.add_term(std::move(nt));
        break;
      }
      case KernelShape::Kind::Smooth:
        continue;  // stays regular
    }
  }
  return out.canonical();
}

namespace {

// Derivatives of Phi(x) = Int L(s'+x) R(s') ds' for the diagonal reduction.
struct DiagonalProfile {
  SmoothFn left;   // c_left * f
  SmoothFn right;  // c_right * g, plain values
  double f_lo, f_hi, g_lo, g_hi;
  QuadOptions quad;

  double deriv(int j, double x) const {
    double lo = std::max(g_lo, f_lo - x), hi = std::min(g_hi, f_hi - x);
    if (!(lo < hi)) return 0.0;
    return integrate(
        [&](double sp) { return left.jet(sp + x).deriv(j) * right(sp); }, lo, hi, quad);
  }
  double extent() const {
    return std::max(std::abs(f_lo - g_hi), std::abs(f_hi - g_lo));
  }
};

double pair_pv_reduction(int n, const DiagonalProfile& phi, const QuadOptions& quad) {
  // <FP_n, Phi> = 1/(n-1)! Int_0^X (Phi^(n-1)(x) - Phi^(n-1)(-x))/x dx.
  if (n > kJetOrder)
    throw std::invalid_argument(
        "pair: insufficient derivative order on inputs for this finite-part power");
  const double X = phi.extent();
  if (!(X > 0)) return 0.0;
  const double tiny = 1e-7 * X;
  auto integrand = [&](double x) {
    if (x < tiny) return 2.0 * phi.deriv(n, 0.0);
    return (phi.deriv(n - 1, x) - phi.deriv(n - 1, -x)) / x;
  };
  // The outer tolerance sits above the inner quadrature noise floor.
  QuadOptions outer = quad;
  outer.abs_tol = 50.0 * quad.abs_tol;
  outer.rel_tol = std::max(quad.rel_tol, 1e-11);
  double value = integrate(integrand, 0.0, X, outer);
  return value / Rational::factorial(n - 1).to_double();
}

std::complex<double> pair2_term(const KernelTerm& t, const CompactFn& f, const CompactFn& g,
                                const PairOptions& opt) {
  const std::complex<double> coeff = t.coeff.to_complex();
  SmoothFn left = merge_factor(t.pre_left, f.fn);
  SmoothFn right = merge_factor(t.pre_right, g.fn);

  switch (t.shape.kind) {
    case KernelShape::Kind::Delta: {
      const int k = t.shape.order;
      if (k > kJetOrder)
        throw std::invalid_argument(
            "pair: insufficient derivative order on inputs for this delta order");
      double lo = std::max(f.lo, g.lo), hi = std::min(f.hi, g.hi);
      if (!(lo < hi)) return 0.0;  // disjoint supports: exactly zero
      double sign = (k % 2) ? -1.0 : 1.0;
      double v = integrate(
          [&](double sp) { return sign * left.jet(sp).deriv(k) * right(sp); }, lo, hi,
          opt.quad);
      return coeff * v;
    }
    case KernelShape::Kind::FinitePart: {
      DiagonalProfile phi{left, right, f.lo, f.hi, g.lo, g.hi, opt.quad};
      return coeff * pair_pv_reduction(t.shape.order, phi, opt.quad);
    }
    case KernelShape::Kind::Boundary: {
      KernelExpr expanded = KernelExpr(t).plemelj_expanded();
      std::complex<double> v = 0;
      for (const auto& e : expanded.terms()) v += pair2_term(e, f, g, opt);
      return v;
    }
    case KernelShape::Kind::Smooth: {
      SmoothFn kl = merge_factor(t.shape.smooth_left, left);
      SmoothFn kr = merge_factor(t.shape.smooth_right, right);
      double inner = integrate([&](double sp) { return kr(sp); }, g.lo, g.hi, opt.quad);
      double outer = integrate([&](double s) { return kl(s); }, f.lo, f.hi, opt.quad);
      return coeff * outer * inner;
    }
  }
  return 0.0;
}

}  // namespace

std::complex<double> pair1(const KernelExpr& expr, const CompactFn& h,
                           const PairOptions& opt) {
  std::complex<double> total = 0;
  for (const auto& t : expr.terms()) {
    if (t.has_prefactor())
      throw std::invalid_argument("pair1: surface prefactors need the two-variable pairing");
    const std::complex<double> coeff = t.coeff.to_complex();
    switch (t.shape.kind) {
      case KernelShape::Kind::Delta: {
        int k = t.shape.order;
        if (k > kJetOrder)
          throw std::invalid_argument(
              "pair1: insufficient derivative order on the test function");
        double sign = (k % 2) ? -1.0 : 1.0;
        total += coeff * sign * h.fn.jet(0.0).deriv(k);
        break;
      }
      case KernelShape::Kind::FinitePart: {
        int n = t.shape.order;
        if (n > kJetOrder)
          throw std::invalid_argument(
              "pair1: insufficient derivative order on the test function");
        double X = std::max(std::abs(h.lo), std::abs(h.hi));
        if (!(X > 0)) break;
        const double tiny = 1e-7 * X;
        auto integrand = [&](double x) {
          if (x < tiny) return 2.0 * h.fn.jet(0.0).deriv(n);
          return (h.fn.jet(x).deriv(n - 1) - h.fn.jet(-x).deriv(n - 1)) / x;
        };
        double v = integrate(integrand, 0.0, X, opt.quad) /
                   Rational::factorial(n - 1).to_double();
        total += coeff * v;
        break;
      }
      case KernelShape::Kind::Boundary: {
        total += pair1(KernelExpr(t).plemelj_expanded(), h, opt);
        break;
      }
      case KernelShape::Kind::Smooth: {
        // One-variable smooth kernel: left handle as a function of x.
        SmoothFn k = t.shape.smooth_left;
        double v = integrate([&](double x) { return k(x) * h.fn(x); }, h.lo, h.hi, opt.quad);
        total += coeff * v;
        break;
      }
    }
  }
  return total;
}

std::complex<double> pair2(const KernelExpr& expr, const CompactFn& f, const CompactFn& g,
                           const PairOptions& opt) {
  std::complex<double> total = 0;
  for (const auto& t : expr.terms()) total += pair2_term(t, f, g, opt);
  return total;
}

namespace {

std::complex<double> neville_to_zero(const std::vector<double>& eps,
                                     const std::vector<std::complex<double>>& val) {
  std::vector<std::complex<double>> p = val;
  const std::size_t n = eps.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (eps[i + m] * p[i] - eps[i] * p[i + 1]) / (eps[i + m] - eps[i]);
  return p[0];
}

}  // namespace

std::complex<double> pair2_ieps(const KernelExpr& expr, const CompactFn& f,
                                const CompactFn& g, const std::vector<double>& ladder) {
  PairOptions opt;
  opt.quad.abs_tol = 1e-13;
  QuadOptions outer = opt.quad;
  outer.abs_tol = 5e-11;  // above the inner noise floor
  outer.rel_tol = 1e-9;
  std::complex<double> total = 0;
  for (const auto& t : expr.terms()) {
    if (!t.shape.singular()) {
      total += pair2_term(t, f, g, opt);
      continue;
    }
    const int n = t.shape.order;
    const bool is_fp = t.shape.kind == KernelShape::Kind::FinitePart;
    const double side_sign =
        (!is_fp && t.shape.side == BoundarySide::MinusI0) ? -1.0 : 1.0;
    SmoothFn left = merge_factor(t.pre_left, f.fn);
    SmoothFn right = merge_factor(t.pre_right, g.fn);
    auto inv_pow = [n](std::complex<double> z) {
      std::complex<double> r = 1.0 / z;
      std::complex<double> acc = r;
      for (int k = 1; k < n; ++k) acc *= r;
      return acc;
    };
    std::vector<std::complex<double>> values;
    for (double eps : ladder) {
      auto inner = [&](double s) {
        const double ls = left(s);
        if (ls == 0.0) return std::complex<double>(0.0);
        return ls * integrate_complex(
                        [&](double sp) {
                          std::complex<double> kp = inv_pow({s - sp, eps});
                          std::complex<double> k =
                              is_fp ? 0.5 * (kp + std::conj(kp))
                                    : (side_sign > 0 ? kp : std::conj(kp));
                          return right(sp) * k;
                        },
                        g.lo, g.hi, opt.quad);
      };
      values.push_back(integrate_complex(inner, f.lo, f.hi, outer));
    }
    total += t.coeff.to_complex() * neville_to_zero(ladder, values);
  }
  return total;
}

std::optional<Rational> scaling_degree(const KernelExpr& expr) {
  std::optional<Rational> best;
  const KernelExpr canon = expr.canonical();
  for (const auto& t : canon.terms()) {
    Rational d(0);
    switch (t.shape.kind) {
      case KernelShape::Kind::Delta:
        d = Rational(t.shape.order + 1);
        break;
      case KernelShape::Kind::FinitePart:
      case KernelShape::Kind::Boundary:
        d = Rational(t.shape.order);
        break;
      case KernelShape::Kind::Smooth:
        d = Rational(0);
        break;
    }
    if (!best || *best < d) best = d;
  }
  return best;
}

CompactFn default_scaling_probe() {
  SmoothFn b = SmoothFn::bump(0.0, 1.0);
  SmoothFn tilt = SmoothFn::affine(1.0, 1.0);  // 1 + x breaks the even symmetry
  return CompactFn(b * tilt, -1.0, 1.0);
}

double numeric_scaling_degree(const KernelExpr& expr, const CompactFn& probe) {
  std::vector<double> logs_lambda, logs_value;
  for (int k = 0; k <= 10; ++k) {
    double lambda = std::pow(2.0, -k);
    double v = std::abs(pair1(expr, probe.rescaled(lambda)));
    if (v < 1e-290) continue;
    logs_lambda.push_back(std::log(lambda));
    logs_value.push_back(std::log(v));
  }
  if (logs_lambda.size() < 3)
    throw std::domain_error("numeric_scaling_degree: pairing degenerate (zero)");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(logs_lambda.size());
  for (std::size_t i = 0; i < logs_lambda.size(); ++i) {
    sx += logs_lambda[i];
    sy += logs_value[i];
    sxx += logs_lambda[i] * logs_lambda[i];
    sxy += logs_lambda[i] * logs_value[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

KernelExpr extend_homogeneous(int n, const ExactScalar& alpha) {
  if (n < 0) throw std::invalid_argument("extend_homogeneous: n must be >= 0");
  KernelExpr r;
  Rational q = Rational(1) / Rational::factorial(n);
  if (n % 2) q = -q;
  KernelTerm dl;
  dl.shape = KernelShape::delta(n);
  dl.coeff = alpha * ExactScalar(q);
  r.add_term(std::move(dl));
  KernelTerm fp;
  fp.shape = KernelShape::finite_part(n + 1);
  fp.coeff = ExactScalar(1);
  r.add_term(std::move(fp));
  return r.canonical();
}

std::optional<std::pair<int, ExactScalar>> match_homogeneous_extension(const KernelExpr& e) {
  KernelExpr c = e.plemelj_expanded();
  const KernelTerm* fp = nullptr;
  const KernelTerm* dl = nullptr;
  for (const auto& t : c.terms()) {
    if (t.has_prefactor()) return std::nullopt;
    if (t.shape.kind == KernelShape::Kind::FinitePart && !fp)
      fp = &t;
    else if (t.shape.kind == KernelShape::Kind::Delta && !dl)
      dl = &t;
    else
      return std::nullopt;
  }
  if (!fp) return std::nullopt;
  int n = fp->shape.order - 1;
  if (!(fp->coeff == ExactScalar(1))) return std::nullopt;
  if (dl && dl->shape.order != n) return std::nullopt;
  ExactScalar alpha(0);
  if (dl) {
    Rational q = Rational::factorial(n);
    if (n % 2) q = -q;
    alpha = dl->coeff * ExactScalar(q);
  }
  return std::make_pair(n, alpha);
}

std::complex<double> fourier_symbol(const KernelExpr& extension, double xi) {
  auto m = match_homogeneous_extension(extension);
  if (!m) throw std::invalid_argument("fourier_symbol: not a homogeneous-extension kernel");
  const auto& [n, alpha] = *m;
  // alpha - i pi sgn(xi), kept exact so the Hadamard cancellation is a true zero.
  ExactScalar bracket = alpha;
  if (xi > 0)
    bracket += ExactScalar::monomial(-1, 1, 1);
  else if (xi < 0)
    bracket += ExactScalar::monomial(1, 1, 1);
  if (bracket.is_zero()) return 0.0;
  std::complex<double> mono = std::pow(std::complex<double>(0.0, -xi), n) /
                              Rational::factorial(n).to_double();
  return mono * bracket.to_complex();
}

WavefrontAxis classify_wavefront(const ExactScalar& alpha) {
  if (alpha == ExactScalar::monomial(-1, 1, 1)) return WavefrontAxis::PositiveAxis;
  if (alpha == ExactScalar::monomial(1, 1, 1)) return WavefrontAxis::NegativeAxis;
  return WavefrontAxis::BothAxes;
}

namespace {

nlohmann::json scalar_to_json(const ExactScalar& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [p, q] : c.re().terms())
    arr.push_back({{"q", q.str()}, {"piPow", p}, {"iPow", 0}});
  for (const auto& [p, q] : c.im().terms())
    arr.push_back({{"q", q.str()}, {"piPow", p}, {"iPow", 1}});
  return arr;
}

ExactScalar scalar_from_json(const nlohmann::json& arr) {
  ExactScalar c(0);
  for (const auto& m : arr)
    c += ExactScalar::monomial(Rational::parse(m.at("q").get<std::string>()),
                               m.value("piPow", 0), m.value("iPow", 0));
  return c;
}

}  // namespace

nlohmann::json kernel_to_json(const KernelExpr& expr) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : expr.terms()) {
    nlohmann::json j;
    switch (t.shape.kind) {
      case KernelShape::Kind::Delta:
        j["shape"] = "delta";
        j["order"] = t.shape.order;
        break;
      case KernelShape::Kind::FinitePart:
        j["shape"] = "finitePart";
        j["power"] = t.shape.order;
        break;
      case KernelShape::Kind::Boundary:
        j["shape"] = "boundary";
        j["power"] = t.shape.order;
        j["side"] = t.shape.side == BoundarySide::PlusI0 ? "+i0" : "-i0";
        break;
      case KernelShape::Kind::Smooth:
        j["shape"] = "smooth";
        j["handle"] = t.shape.smooth_left.label() + "*" + t.shape.smooth_right.label();
        break;
    }
    j["coefficient"] = scalar_to_json(t.coeff);
    j["prefactor"] = t.has_prefactor()
                         ? nlohmann::json{{"kind", "separable"},
                                          {"left", t.pre_left.valid() ? t.pre_left.label()
                                                                      : "1"},
                                          {"right", t.pre_right.valid() ? t.pre_right.label()
                                                                        : "1"}}
                         : nlohmann::json{{"kind", "none"}};
    arr.push_back(std::move(j));
  }
  return arr;
}

KernelExpr kernel_from_json(const nlohmann::json& arr) {
  KernelExpr e;
  for (const auto& j : arr) {
    KernelTerm t;
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "delta")
      t.shape = KernelShape::delta(j.at("order").get<int>());
    else if (shape == "finitePart")
      t.shape = KernelShape::finite_part(j.at("power").get<int>());
    else if (shape == "boundary")
      t.shape = KernelShape::boundary(j.at("power").get<int>(),
                                      j.at("side").get<std::string>() == "+i0"
                                          ? BoundarySide::PlusI0
                                          : BoundarySide::MinusI0);
    else
      throw std::invalid_argument("kernel_from_json: unsupported shape " + shape);
    t.coeff = scalar_from_json(j.at("coefficient"));
    e.add_term(std::move(t));
  }
  return e.canonical();
}

}  // namespace chiral
