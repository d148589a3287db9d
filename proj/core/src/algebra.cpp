#include "chiral/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chiral {

const ExactScalar& ChiralCommutator::coefficient() {
  static const ExactScalar c(Rational(-1, 2));
  return c;
}

KernelExpr ChiralCommutator::kernel() const {
  KernelTerm t;
  t.shape = KernelShape::delta(1);
  t.coeff = coefficient();
  t.pre_left = surface.weight(-0.5);
  t.pre_right = surface.weight(-0.5);
  return KernelExpr(std::move(t));
}

const ExactScalar& HadamardChiralKernel::coefficient() {
  static const ExactScalar c = ExactScalar::monomial(Rational(-1, 4), -1, 0);
  return c;
}

KernelExpr HadamardChiralKernel::kernel() const {
  KernelTerm t;
  t.shape = KernelShape::boundary(2, side);
  t.coeff = coefficient();
  t.pre_left = surface.weight(-0.5);
  t.pre_right = surface.weight(-0.5);
  return KernelExpr(std::move(t));
}

KernelExpr HadamardChiralKernel::antisymmetric_part() const {
  KernelExpr k = kernel();
  return (k - k.argument_flipped()).scaled(ExactScalar(Rational(1, 2))).canonical();
}

namespace {

void require_monomial_form(const Term& t, const char* who) {
  if (t.vertices.size() != 1 || !t.edges.empty() || !t.vertices[0].extra.empty())
    throw std::invalid_argument(std::string(who) + ": argument is not a monomial sum");
  const Vertex& v = t.vertices[0];
  if (!(v.weight_pow == Rational(v.psi_pow, 2)))
    throw std::invalid_argument(std::string(who) + ": monomial weight is not n/2");
}

void require_same_surface(const Observable& F, const Observable& G, const char* who) {
  if (F.surface().gamma().id() != G.surface().gamma().id())
    throw std::invalid_argument(std::string(who) + ": surface mismatch");
}

}  // namespace

Observable poisson_bracket(const Observable& F, const Observable& G) {
  require_same_surface(F, G, "poisson_bracket");
  const CauchySurface& surf = F.surface();
  Observable out(surf);
  for (const auto& tf : F.terms()) {
    require_monomial_form(tf, "poisson_bracket");
    for (const auto& tg : G.terms()) {
      require_monomial_form(tg, "poisson_bracket");
      const int n = tf.vertices[0].psi_pow;
      const int m = tg.vertices[0].psi_pow;
      if (n == 0 || m == 0) continue;
      const TestFunction& f = tf.vertices[0].f;
      const TestFunction& g = tg.vertices[0].f;
      double lo = std::max(f.lo(), g.lo()), hi = std::min(f.hi(), g.hi());
      if (!(lo < hi)) continue;  // disjoint smearings: bracket vanishes
      const int p = n + m - 2;

      // <E, F^(1) x G^(1)> reduced to a single monomial of power p:
      //  p = 0:   (1/2) Int f' g
      //  p >= 1:  (nm/2p) Int gamma'^(p/2) h psi^p,
      //           h = gamma'^(-p/2) [(m-1) Ft' Gt - (n-1) Ft Gt'],
      //           Ft = f gamma'^((n-1)/2), Gt = g gamma'^((m-1)/2).
      Term t;
      t.coeff = tf.coeff * tg.coeff;
      Vertex v;
      if (p == 0) {
        t.coeff = t.coeff * ExactScalar(Rational(1, 2));
        v.f = f.derivative().times(g);
        v.psi_pow = 0;
        v.weight_pow = Rational(0);
      } else {
        t.coeff = t.coeff * ExactScalar(Rational(std::int64_t(n) * m, 2 * std::int64_t(p)));
        SmoothFn ft = f.fn() * surf.weight((n - 1) / 2.0);
        SmoothFn gt = g.fn() * surf.weight((m - 1) / 2.0);
        SmoothFn h = surf.weight(-p / 2.0) *
                     (double(m - 1) * (ft.derivative() * gt) -
                      double(n - 1) * (ft * gt.derivative()));
        v.f = TestFunction(h, lo, hi, "{" + f.name() + "," + g.name() + "}");
        v.psi_pow = p;
        v.weight_pow = Rational(p, 2);
      }
      if (!v.f.valid()) continue;
      t.vertices.push_back(std::move(v));
      out.add_term(std::move(t));
    }
  }
  return out.canonical();
}

namespace {

struct ContractionKernel {
  ExactScalar coeff;        // scalar per contraction leg pair
  KernelShape::Kind kind;   // Delta (E) or Boundary (W)
  int base_order;           // 1 for delta', 2 for the Hadamard square
  BoundarySide side;
  Rational leg_weight;      // gamma' exponent added per leg endpoint
};

// All assignments of k contraction legs to (F-vertex, G-vertex) pairs.
void enumerate_assignments(int n_pairs, int k, std::vector<int>& counts,
                           const std::function<void(const std::vector<int>&)>& yield,
                           int idx = 0, int remaining = -1) {
  if (remaining < 0) remaining = k;
  if (idx == n_pairs) {
    if (remaining == 0) yield(counts);
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[idx] = c;
    enumerate_assignments(n_pairs, k, counts, yield, idx + 1, remaining - c);
  }
  counts[idx] = 0;
}

void contract_into(Observable& out, const Term& tf, const Term& tg, int k,
                   const ContractionKernel& ker) {
  const int nf = int(tf.vertices.size());
  const int ng = int(tg.vertices.size());
  if (k == 0) {
    Term t;
    t.coeff = tf.coeff * tg.coeff;
    t.vertices = tf.vertices;
    for (const auto& v : tg.vertices) t.vertices.push_back(v);
    t.edges = tf.edges;
    for (auto e : tg.edges) {
      e.a += nf;
      e.b += nf;
      t.edges.push_back(e);
    }
    out.add_term(std::move(t));
    return;
  }
  std::vector<int> counts(std::size_t(nf) * ng, 0);
  enumerate_assignments(nf * ng, k, counts, [&](const std::vector<int>& E) {
    std::vector<int> outdeg(nf, 0), indeg(ng, 0);
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < ng; ++j) {
        outdeg[i] += E[i * ng + j];
        indeg[j] += E[i * ng + j];
      }
    Rational factor(1);
    for (int i = 0; i < nf; ++i) {
      if (outdeg[i] > tf.vertices[i].psi_pow) return;
      factor *= Rational::falling(tf.vertices[i].psi_pow, outdeg[i]);
    }
    for (int j = 0; j < ng; ++j) {
      if (indeg[j] > tg.vertices[j].psi_pow) return;
      factor *= Rational::falling(tg.vertices[j].psi_pow, indeg[j]);
    }
    for (int idx = 0; idx < nf * ng; ++idx)
      if (E[idx] > 1) factor /= Rational::factorial(E[idx]);
    if (factor.is_zero()) return;

    if (ker.kind == KernelShape::Kind::Delta) {
      for (int idx = 0; idx < nf * ng; ++idx)
        if (E[idx] > 1) return;  // powers of the commutator edge never occur
    }

    Term t;
    t.coeff = tf.coeff * tg.coeff * ker.coeff.pow(k) * ExactScalar(factor);
    t.vertices = tf.vertices;
    for (const auto& v : tg.vertices) t.vertices.push_back(v);
    for (int i = 0; i < nf; ++i) {
      t.vertices[i].psi_pow -= outdeg[i];
      t.vertices[i].weight_pow += Rational(outdeg[i]) * ker.leg_weight;
    }
    for (int j = 0; j < ng; ++j) {
      t.vertices[nf + j].psi_pow -= indeg[j];
      t.vertices[nf + j].weight_pow += Rational(indeg[j]) * ker.leg_weight;
    }
    t.edges = tf.edges;
    for (auto e : tg.edges) {
      e.a += nf;
      e.b += nf;
      t.edges.push_back(e);
    }
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < ng; ++j) {
        int c = E[i * ng + j];
        if (c == 0) continue;
        Edge e;
        e.a = i;
        e.b = nf + j;
        e.kind = ker.kind;
        e.order = ker.base_order * c;
        e.side = ker.side;
        t.edges.push_back(e);
      }
    out.add_term(std::move(t));
  });
}

ContractionKernel hadamard_contraction(const HadamardChiralKernel& W) {
  return {W.coefficient(), KernelShape::Kind::Boundary, 2, W.side, Rational(-1, 2)};
}

ContractionKernel commutator_contraction() {
  return {ChiralCommutator::coefficient(), KernelShape::Kind::Delta, 1,
          BoundarySide::PlusI0, Rational(-1, 2)};
}

}  // namespace

Observable poisson_contraction(const Observable& F, const Observable& G) {
  require_same_surface(F, G, "poisson_contraction");
  Observable out(F.surface());
  for (const auto& tf : F.terms())
    for (const auto& tg : G.terms()) contract_into(out, tf, tg, 1, commutator_contraction());
  return out.canonical();
}

ObservableSeries to_series(const Observable& F, int order) {
  ObservableSeries s(order);
  s[0] = F;
  return s;
}

ObservableSeries star_product(const ObservableSeries& F, const ObservableSeries& G,
                              const HadamardChiralKernel& W, int order) {
  ObservableSeries out(order);
  const ContractionKernel ker = hadamard_contraction(W);
  for (int h = 0; h <= order; ++h) {
    Observable acc(W.surface);
    for (int a = 0; a <= std::min(h, F.order()); ++a) {
      for (int b = 0; a + b <= h && b <= G.order(); ++b) {
        int k = h - a - b;
        if (F[a].is_zero() || G[b].is_zero()) continue;
        require_same_surface(F[a], G[b], "star_product");
        for (const auto& tf : F[a].terms())
          for (const auto& tg : G[b].terms()) contract_into(acc, tf, tg, k, ker);
      }
    }
    out[h] = acc.canonical();
  }
  return out;
}

ObservableSeries star_product(const Observable& F, const Observable& G,
                              const HadamardChiralKernel& W, int order) {
  return star_product(to_series(F, order), to_series(G, order), W, order);
}

ObservableSeries commutator(const ObservableSeries& F, const ObservableSeries& G,
                            const HadamardChiralKernel& W, int order) {
  ObservableSeries fg = star_product(F, G, W, order);
  ObservableSeries gf = star_product(G, F, W, order);
  ObservableSeries out(order);
  for (int h = 0; h <= order; ++h) out[h] = (fg[h] - gf[h]).canonical();
  return out;
}

ObservableSeries commutator(const Observable& F, const Observable& G,
                            const HadamardChiralKernel& W, int order) {
  return commutator(to_series(F, order), to_series(G, order), W, order);
}

ScalarSeries GaussianState::operator()(const ObservableSeries& A,
                                       const PairOptions& opt) const {
  ScalarSeries out(A.order());
  for (int k = 0; k <= A.order(); ++k)
    out[k] = A[k].is_zero() ? 0.0 : A[k].evaluate(psi, opt);
  return out;
}

namespace {
SymmetricSmoothKernel::Component make_component(const SmoothFn& a, const SmoothFn& b) {
  return {a, b, a * b};
}
}  // namespace

SymmetricSmoothKernel SymmetricSmoothKernel::constant(double c) {
  SymmetricSmoothKernel k;
  if (c != 0.0)
    k.comps_.push_back(make_component(SmoothFn::constant(c), SmoothFn::constant(1.0)));
  return k;
}

SymmetricSmoothKernel SymmetricSmoothKernel::rank_one(const SmoothFn& a) {
  SymmetricSmoothKernel k;
  k.comps_.push_back(make_component(a, a));
  return k;
}

SymmetricSmoothKernel SymmetricSmoothKernel::symmetrized(const SmoothFn& a,
                                                         const SmoothFn& b) {
  SymmetricSmoothKernel k;
  k.comps_.push_back(make_component(a, b));
  k.comps_.push_back(make_component(b, a));
  return k;
}

namespace {

// <deltaH, F^(2)> as an operator on terms: one smooth edge or loop inserted.
Observable apply_deltaH_once(const Observable& F, const SymmetricSmoothKernel& dH) {
  if (F.is_zero()) return F;
  Observable out(F.surface());
  for (const auto& t : F.terms()) {
    const int n = int(t.vertices.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational factor = (i == j)
                              ? Rational::falling(t.vertices[i].psi_pow, 2)
                              : Rational(t.vertices[i].psi_pow) *
                                    Rational(t.vertices[j].psi_pow);
        if (factor.is_zero()) continue;
        for (const auto& comp : dH.components()) {
          Term nt = t;
          nt.coeff = t.coeff * ExactScalar(factor);
          if (i == j) {
            nt.vertices[i].psi_pow -= 2;
            nt.vertices[i].extra.push_back(comp.diagonal);  // deltaH on the diagonal
          } else {
            nt.vertices[i].psi_pow -= 1;
            nt.vertices[j].psi_pow -= 1;
            nt.vertices[i].extra.push_back(comp.left);
            nt.vertices[j].extra.push_back(comp.right);
          }
          out.add_term(std::move(nt));
        }
      }
    }
  }
  return out.canonical();
}

}  // namespace

namespace {

// Contractions through W + deltaH: counts are indexed by (pair, type) with
// type 0 the singular W edge and types 1..C the smooth components.
void contract_shifted_into(Observable& out, const Term& tf, const Term& tg, int k,
                           const ContractionKernel& w_ker,
                           const SymmetricSmoothKernel& dH) {
  if (k == 0) {
    contract_into(out, tf, tg, 0, w_ker);
    return;
  }
  const int nf = int(tf.vertices.size());
  const int ng = int(tg.vertices.size());
  const int ntypes = 1 + int(dH.components().size());
  const int slots = nf * ng * ntypes;
  std::vector<int> counts(slots, 0);
  enumerate_assignments(slots, k, counts, [&](const std::vector<int>& E) {
    auto count = [&](int i, int j, int t) { return E[(i * ng + j) * ntypes + t]; };
    std::vector<int> outdeg(nf, 0), indeg(ng, 0);
    int w_legs = 0;
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < ng; ++j)
        for (int t = 0; t < ntypes; ++t) {
          int c = count(i, j, t);
          outdeg[i] += c;
          indeg[j] += c;
          if (t == 0) w_legs += c;
        }
    Rational factor(1);
    for (int i = 0; i < nf; ++i) {
      if (outdeg[i] > tf.vertices[i].psi_pow) return;
      factor *= Rational::falling(tf.vertices[i].psi_pow, outdeg[i]);
    }
    for (int j = 0; j < ng; ++j) {
      if (indeg[j] > tg.vertices[j].psi_pow) return;
      factor *= Rational::falling(tg.vertices[j].psi_pow, indeg[j]);
    }
    for (int idx = 0; idx < slots; ++idx)
      if (E[idx] > 1) factor /= Rational::factorial(E[idx]);
    if (factor.is_zero()) return;

    Term t;
    t.coeff = tf.coeff * tg.coeff * w_ker.coeff.pow(w_legs) * ExactScalar(factor);
    t.vertices = tf.vertices;
    for (const auto& v : tg.vertices) t.vertices.push_back(v);
    for (int i = 0; i < nf; ++i) t.vertices[i].psi_pow -= outdeg[i];
    for (int j = 0; j < ng; ++j) t.vertices[nf + j].psi_pow -= indeg[j];
    t.edges = tf.edges;
    for (auto e : tg.edges) {
      e.a += nf;
      e.b += nf;
      t.edges.push_back(e);
    }
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < ng; ++j) {
        int cw = count(i, j, 0);
        if (cw > 0) {
          t.vertices[i].weight_pow += Rational(cw) * w_ker.leg_weight;
          t.vertices[nf + j].weight_pow += Rational(cw) * w_ker.leg_weight;
          Edge e;
          e.a = i;
          e.b = nf + j;
          e.kind = w_ker.kind;
          e.order = w_ker.base_order * cw;
          e.side = w_ker.side;
          t.edges.push_back(e);
        }
        for (int c = 1; c < ntypes; ++c) {
          for (int rep = 0; rep < count(i, j, c); ++rep) {
            t.vertices[i].extra.push_back(dH.components()[c - 1].left);
            t.vertices[nf + j].extra.push_back(dH.components()[c - 1].right);
          }
        }
      }
    out.add_term(std::move(t));
  });
}

}  // namespace

ObservableSeries star_product_shifted(const ObservableSeries& F, const ObservableSeries& G,
                                      const HadamardChiralKernel& W,
                                      const SymmetricSmoothKernel& deltaH, int order) {
  ObservableSeries out(order);
  const ContractionKernel ker = hadamard_contraction(W);
  for (int h = 0; h <= order; ++h) {
    Observable acc(W.surface);
    for (int a = 0; a <= std::min(h, F.order()); ++a)
      for (int b = 0; a + b <= h && b <= G.order(); ++b) {
        int k = h - a - b;
        if (F[a].is_zero() || G[b].is_zero()) continue;
        for (const auto& tf : F[a].terms())
          for (const auto& tg : G[b].terms())
            contract_shifted_into(acc, tf, tg, k, ker, deltaH);
      }
    out[h] = acc.canonical();
  }
  return out;
}

ObservableSeries beta_transform(const ObservableSeries& F,
                                const SymmetricSmoothKernel& deltaH) {
  const int order = F.order();
  ObservableSeries out = F;
  if (deltaH.is_zero()) return out;
  for (int src = 0; src <= order; ++src) {
    if (F[src].is_zero()) continue;
    Observable current = F[src];
    Rational scale(1);
    for (int n = 1; src + n <= order; ++n) {
      current = apply_deltaH_once(current, deltaH);
      if (current.is_zero()) break;
      scale = scale / Rational(2 * n);  // accumulates 1/(2^n n!)
      out[src + n] = (out[src + n] + current.scaled(ExactScalar(scale))).canonical();
    }
  }
  return out;
}

JetPolynomial JetPolynomial::psi_power(int n, const ExactScalar& c) {
  Monomial m{};
  m[0] = n;
  return monomial(m, c);
}

JetPolynomial JetPolynomial::monomial(Monomial m, const ExactScalar& c) {
  JetPolynomial p;
  if (!c.is_zero()) p.t_[m] = c;
  return p;
}

void JetPolynomial::prune() {
  for (auto it = t_.begin(); it != t_.end();)
    it = it->second.is_zero() ? t_.erase(it) : std::next(it);
}

JetPolynomial JetPolynomial::operator*(const JetPolynomial& o) const {
  JetPolynomial r;
  for (const auto& [ma, ca] : t_)
    for (const auto& [mb, cb] : o.t_) {
      Monomial m = ma;
      for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
      auto it = r.t_.find(m);
      if (it == r.t_.end())
        r.t_[m] = ca * cb;
      else
        it->second += ca * cb;
    }
  r.prune();
  return r;
}

JetPolynomial JetPolynomial::operator+(const JetPolynomial& o) const {
  JetPolynomial r = *this;
  for (const auto& [m, c] : o.t_) {
    auto it = r.t_.find(m);
    if (it == r.t_.end())
      r.t_[m] = c;
    else
      it->second += c;
  }
  r.prune();
  return r;
}

JetPolynomial JetPolynomial::scaled(const ExactScalar& c) const {
  JetPolynomial r;
  for (const auto& [m, cc] : t_) {
    ExactScalar nc = cc * c;
    if (!nc.is_zero()) r.t_[m] = nc;
  }
  return r;
}

JetPolynomial JetPolynomial::derivative() const {
  JetPolynomial r;
  for (const auto& [m, c] : t_) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (k + 1 >= m.size())
        throw std::domain_error("JetPolynomial: derivative exceeds the stored jet order");
      Monomial nm = m;
      nm[k] -= 1;
      nm[k + 1] += 1;
      ExactScalar nc = c * ExactScalar(Rational(m[k]));
      auto it = r.t_.find(nm);
      if (it == r.t_.end())
        r.t_[nm] = nc;
      else
        it->second += nc;
    }
  }
  r.prune();
  return r;
}

std::complex<double> JetPolynomial::evaluate(const ChiralConfiguration& psi,
                                             double s) const {
  Jet j = psi.jet(s);
  std::complex<double> total = 0;
  for (const auto& [m, c] : t_) {
    double prod = 1;
    for (std::size_t k = 0; k < m.size(); ++k)
      for (int e = 0; e < m[k]; ++e) prod *= j.deriv(int(k));
    total += c.to_complex() * prod;
  }
  return total;
}

std::string JetPolynomial::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [m, c] : t_) {
    if (!first_term) os << " + ";
    bool unit = c == ExactScalar(1);
    bool constant_monomial = true;
    for (int e : m) constant_monomial = constant_monomial && e == 0;
    if (!unit || constant_monomial) os << "(" << c.str() << ")";
    static const char* names[] = {"psi", "psi'", "psi''", "psi'''", "psi''''"};
    bool first_factor = unit && !constant_monomial;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (!first_factor) os << "*";
      os << names[k];
      if (m[k] > 1) os << "^" << m[k];
      first_factor = false;
    }
    first_term = false;
  }
  return os.str();
}

namespace {

void require_sigma0(const CauchySurface& s, const char* who) {
  for (double x : {-1.3, 0.0, 0.7, 2.9})
    if (std::abs(s.gamma()(x) - x) > 1e-12)
      throw std::invalid_argument(std::string(who) +
                                  ": operation requires the t = 0 surface (gamma = id)");
}

// Factor a single-monomial polynomial into (scalar, monic monomial).
void normalize_row(OpeRow& row) {
  if (row.attached.terms().size() == 1) {
    const auto& [m, c] = *row.attached.terms().begin();
    row.coeff = row.coeff * c;
    row.attached = JetPolynomial::monomial(m, ExactScalar(1));
  }
}

}  // namespace

OpeTable ope_extract(const LocalField& Fi, const LocalField& Fj,
                     const HadamardChiralKernel& W, int order) {
  require_sigma0(W.surface, "ope_extract");
  OpeTable table;
  const int n = Fi.power, m = Fj.power;
  std::map<std::pair<int, int>, JetPolynomial> rows;  // (power, hbar) -> field
  for (int k = 1; k <= std::min({n, m, order}); ++k) {
    ExactScalar base = Fi.coeff * Fj.coeff * W.coefficient().pow(k) *
                       ExactScalar(Rational::falling(n, k) * Rational::falling(m, k) /
                                   Rational::factorial(k));
    JetPolynomial right = JetPolynomial::psi_power(m - k);
    JetPolynomial taylor = JetPolynomial::psi_power(n - k);
    for (int r = 0; r < 2 * k; ++r) {
      if (r > 0) {
        if (taylor.is_zero()) break;
        taylor = taylor.derivative();
      }
      const int power = 2 * k - r;
      JetPolynomial attached = (taylor * right)
                                   .scaled(base)
                                   .scaled(ExactScalar(Rational(1) / Rational::factorial(r)));
      if (attached.is_zero()) continue;
      auto it = rows.find({power, k});
      if (it == rows.end())
        rows[{power, k}] = attached;
      else
        it->second = it->second + attached;
    }
  }
  for (const auto& [key, poly] : rows) {
    if (poly.is_zero()) continue;
    OpeRow row;
    row.power = key.first;
    row.hbar_pow = key.second;
    row.coeff = ExactScalar(1);
    row.attached = poly;
    normalize_row(row);
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const OpeRow& a, const OpeRow& b) {
    return a.power != b.power ? a.power > b.power : a.hbar_pow < b.hbar_pow;
  });
  return table;
}

nlohmann::json OpeTable::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    Rational q;
    int pi_pow = 0, i_pow = 0;
    nlohmann::json coeff;
    if (r.coeff.as_monomial(q, pi_pow, i_pow)) {
      coeff = {{"q", q.str()}, {"piPow", pi_pow}, {"iPow", i_pow}, {"hbarPow", r.hbar_pow}};
    } else {
      coeff = {{"value", r.coeff.str()}, {"hbarPow", r.hbar_pow}};
    }
    arr.push_back({{"power", r.power},
                   {"coefficient", coeff},
                   {"attachedField", r.attached.str()}});
  }
  return arr;
}

ScalingFit scaling_constraint_fit(const LocalField& Fi, const LocalField& Fj,
                                  const HadamardChiralKernel& W, int basis_pairs,
                                  int order) {
  require_sigma0(W.surface, "scaling_constraint_fit");
  ScalingFit fit;
  fit.delta_order = Fi.weight() + Fj.weight() - 1;
  if (fit.delta_order < 0) throw std::invalid_argument("scaling_constraint_fit: unit fields");

  KernelExpr target(KernelTerm{KernelShape::delta(fit.delta_order), ExactScalar(1), {}, {}});
  ChiralConfiguration zero{SmoothFn::constant(0.0), false};
  GaussianState state{W, zero};

  std::vector<std::complex<double>> lhs;
  std::vector<double> rhs;
  int hbar_of_lhs = 0;
  for (int i = 0; i < basis_pairs; ++i) {
    TestFunction f = TestFunction::bump(-0.25 + 0.11 * i, 0.8 + 0.05 * i);
    TestFunction g = TestFunction::bump(0.2 - 0.07 * i, 0.7 + 0.04 * i);
    ObservableSeries C = commutator(smear(W.surface, Fi, f), smear(W.surface, Fj, g), W,
                                    order);
    ScalarSeries w = state(C);
    std::complex<double> value = 0.0;
    for (int h = 0; h <= w.order(); ++h) {
      if (std::abs(w[h]) > 1e-13) {
        value = w[h];
        hbar_of_lhs = h;
        break;
      }
    }
    lhs.push_back(value);
    rhs.push_back(pair2(target, f.compact(), g.compact()).real());
  }
  fit.hbar_pow = hbar_of_lhs;

  std::complex<double> num = 0.0;
  double den = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    num += lhs[i] * rhs[i];
    den += rhs[i] * rhs[i];
    scale = std::max(scale, std::abs(lhs[i]));
  }
  fit.a = (den > 0) ? num / den : 0.0;
  double res2 = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    std::complex<double> d = lhs[i] - fit.a * rhs[i];
    res2 += std::norm(d);
  }
  fit.residual = std::sqrt(res2) / std::max(scale, 1e-300);
  if (!(den > 0) && scale > 0)
    throw std::runtime_error("scaling_constraint_fit: singular fit (basis pairs degenerate)");
  return fit;
}

Observable diffeo_action_on_functional(const Diffeo& rho, const Observable& F) {
  Observable out(F.surface());
  for (const auto& t : F.terms()) {
    require_monomial_form(t, "diffeo_action_on_functional");
    Term nt = t;
    const int n = t.vertices[0].psi_pow;
    nt.vertices[0].f = field_pushforward(rho, double(n), t.vertices[0].f);
    out.add_term(std::move(nt));
  }
  return out.canonical();
}

namespace {

nlohmann::json scalar_json(const ExactScalar& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [p, q] : c.re().terms())
    arr.push_back({{"q", q.str()}, {"piPow", p}, {"iPow", 0}});
  for (const auto& [p, q] : c.im().terms())
    arr.push_back({{"q", q.str()}, {"piPow", p}, {"iPow", 1}});
  return arr;
}

}  // namespace

nlohmann::json observable_to_json(const Observable& F) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : F.terms()) {
    nlohmann::json vterm;
    vterm["coefficient"] = scalar_json(t.coeff);
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : t.vertices)
      vs.push_back({{"smearing", v.f.name()},
                    {"support", {v.f.lo(), v.f.hi()}},
                    {"psiPow", v.psi_pow},
                    {"weightPow", v.weight_pow.str()}});
    vterm["vertices"] = vs;
    nlohmann::json es = nlohmann::json::array();
    for (const auto& e : t.edges) {
      std::string kind = e.kind == KernelShape::Kind::Delta ? "delta"
                         : e.kind == KernelShape::Kind::FinitePart ? "finitePart"
                                                                   : "boundary";
      nlohmann::json ej = {{"a", e.a}, {"b", e.b}, {"kind", kind}, {"order", e.order}};
      if (e.kind == KernelShape::Kind::Boundary)
        ej["side"] = e.side == BoundarySide::PlusI0 ? "+i0" : "-i0";
      es.push_back(std::move(ej));
    }
    vterm["edges"] = es;
    arr.push_back(std::move(vterm));
  }
  return arr;
}

nlohmann::json series_to_json(const ObservableSeries& F) {
  nlohmann::json arr = nlohmann::json::array();
  for (int k = 0; k <= F.order(); ++k)
    arr.push_back({{"hbarPow", k}, {"terms", observable_to_json(F[k])}});
  return arr;
}

}  // namespace chiral
