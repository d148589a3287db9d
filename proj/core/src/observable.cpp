#include "chiral/observable.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chiral {

KernelExpr Edge::kernel() const {
  KernelTerm t;
  switch (kind) {
    case KernelShape::Kind::Delta:
      t.shape = KernelShape::delta(order);
      break;
    case KernelShape::Kind::FinitePart:
      t.shape = KernelShape::finite_part(order);
      break;
    case KernelShape::Kind::Boundary:
      t.shape = KernelShape::boundary(order, side);
      break;
    case KernelShape::Kind::Smooth:
      throw std::logic_error("Edge: smooth edges fold into vertex factors");
  }
  return KernelExpr(std::move(t));
}

const CauchySurface& Observable::surface() const {
  if (!surface_) throw std::logic_error("Observable: no surface bound");
  return *surface_;
}

void Observable::add_term(Term t) {
  if (t.coeff.is_zero()) return;
  terms_.push_back(std::move(t));
}

Observable Observable::scaled(const ExactScalar& c) const {
  Observable r = *this;
  if (c.is_zero()) {
    r.terms_.clear();
    return r;
  }
  for (auto& t : r.terms_) t.coeff = t.coeff * c;
  return r;
}

Observable operator+(const Observable& x, const Observable& y) {
  if (x.has_surface() && y.has_surface() &&
      x.surface().gamma().id() != y.surface().gamma().id())
    throw std::invalid_argument("Observable: surface mismatch");
  Observable r = x.has_surface() ? x : y;
  r.terms_ = x.terms_;
  for (const auto& t : y.terms_) r.terms_.push_back(t);
  return r.canonical();
}

Observable operator-(const Observable& x, const Observable& y) {
  return x + y.scaled(ExactScalar(-1));
}

namespace {

std::uint64_t vertex_key(const Vertex& v) {
  // Order by smearing id first so permutations are deterministic.
  return v.f.id();
}

bool vertex_equal(const Vertex& a, const Vertex& b) {
  if (a.f.id() != b.f.id() || a.psi_pow != b.psi_pow || !(a.weight_pow == b.weight_pow))
    return false;
  if (a.extra.size() != b.extra.size()) return false;
  std::vector<std::uint64_t> ia, ib;
  for (const auto& e : a.extra) ia.push_back(e.id());
  for (const auto& e : b.extra) ib.push_back(e.id());
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  return ia == ib;
}

bool edge_equal(const Edge& a, const Edge& b) {
  return a.a == b.a && a.b == b.b && a.kind == b.kind && a.order == b.order &&
         (a.kind != KernelShape::Kind::Boundary || a.side == b.side);
}

bool term_structure_equal(const Term& a, const Term& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size())
    return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    if (!vertex_equal(a.vertices[i], b.vertices[i])) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (!edge_equal(a.edges[i], b.edges[i])) return false;
  return true;
}

// Flip an edge kernel when reorienting (a,b) -> (b,a): x -> -x.
void flip_edge(Edge& e, ExactScalar& coeff) {
  std::swap(e.a, e.b);
  switch (e.kind) {
    case KernelShape::Kind::Delta:
    case KernelShape::Kind::FinitePart:
      if (e.order % 2) coeff = -coeff;
      break;
    case KernelShape::Kind::Boundary:
      if (e.order % 2) coeff = -coeff;
      e.side = opposite(e.side);
      break;
    case KernelShape::Kind::Smooth:
      break;
  }
}

Term canonical_term(const Term& in, bool& drop) {
  Term t = in;
  drop = false;
  // Expand boundary edges exactly: done by the caller (term splitting).
  // Sort vertices by smearing id, stable for duplicates.
  std::vector<int> perm(t.vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) {
    return vertex_key(t.vertices[i]) < vertex_key(t.vertices[j]);
  });
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = int(i);
  std::vector<Vertex> vs;
  vs.reserve(perm.size());
  for (int p : perm) vs.push_back(t.vertices[p]);
  t.vertices = std::move(vs);
  for (auto& e : t.edges) {
    e.a = inv[e.a];
    e.b = inv[e.b];
    if (e.a > e.b) flip_edge(e, t.coeff);
  }
  std::sort(t.edges.begin(), t.edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b, x.kind, x.order) < std::tie(y.a, y.b, y.kind, y.order);
  });
  // Delta edges between causally disjoint smearings kill the whole term.
  for (const auto& e : t.edges) {
    if (e.kind != KernelShape::Kind::Delta) continue;
    const Vertex& va = t.vertices[e.a];
    const Vertex& vb = t.vertices[e.b];
    if (!va.f.valid() || !vb.f.valid()) continue;
    if (std::min(va.f.hi(), vb.f.hi()) <= std::max(va.f.lo(), vb.f.lo())) {
      drop = true;
      return t;
    }
  }
  // Vertices whose smearing is invalid (empty support product) kill the term.
  for (const auto& v : t.vertices)
    if (!v.f.valid()) {
      drop = true;
      return t;
    }
  return t;
}

}  // namespace

Observable Observable::canonical() const {
  // First split boundary edges into finite-part and delta components.
  std::vector<Term> expanded;
  for (const auto& t : terms_) {
    std::vector<Term> work{t};
    for (std::size_t ei = 0; ei < t.edges.size(); ++ei) {
      if (t.edges[ei].kind != KernelShape::Kind::Boundary) continue;
      std::vector<Term> next;
      for (const auto& w : work) {
        const Edge& e = w.edges[ei];
        KernelExpr parts = e.kernel().plemelj_expanded();
        for (const auto& p : parts.terms()) {
          Term split = w;
          split.coeff = w.coeff * p.coeff;
          split.edges[ei].kind = p.shape.kind;
          split.edges[ei].order = p.shape.order;
          next.push_back(std::move(split));
        }
      }
      work = std::move(next);
    }
    for (auto& w : work) expanded.push_back(std::move(w));
  }

  std::vector<Term> out;
  for (const auto& t : expanded) {
    if (t.coeff.is_zero()) continue;
    bool drop = false;
    Term c = canonical_term(t, drop);
    if (drop) continue;
    bool merged = false;
    for (auto& o : out) {
      if (term_structure_equal(o, c)) {
        o.coeff += c.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(c));
  }
  Observable r;
  r.surface_ = surface_;
  for (auto& t : out)
    if (!t.coeff.is_zero()) r.terms_.push_back(std::move(t));
  return r;
}

bool Observable::is_constant() const {
  for (const auto& t : terms_)
    for (const auto& v : t.vertices)
      if (v.psi_pow != 0) return false;
  return true;
}

namespace {

SmoothFn psi_int_power(const SmoothFn& psi, int n) {
  return SmoothFn(
      [psi, n](double s) {
        Jet p = psi.jet(s);
        Jet r = Jet::constant(1.0);
        for (int k = 0; k < n; ++k) r = r * p;
        return r;
      },
      "psi^n");
}

CompactFn vertex_profile(const CauchySurface& surface, const Vertex& v,
                         const ChiralConfiguration& psi) {
  SmoothFn m = v.f.fn();
  if (v.psi_pow > 0) m = m * psi_int_power(psi.psi, v.psi_pow);
  if (!(v.weight_pow == Rational(0))) m = m * surface.weight(v.weight_pow.to_double());
  for (const auto& e : v.extra) m = m * e;
  return CompactFn(m, v.f.lo(), v.f.hi());
}

}  // namespace

std::complex<double> Observable::evaluate(const ChiralConfiguration& psi,
                                          const PairOptions& opt) const {
  std::complex<double> total = 0;
  for (const auto& t : terms_) {
    // Connected components of the vertex graph factorize.
    const int n = int(t.vertices.size());
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (const auto& e : t.edges) comp[find(e.a)] = find(e.b);

    std::complex<double> value = t.coeff.to_complex();
    std::vector<bool> done(n, false);
    for (int root = 0; root < n; ++root) {
      if (done[root]) continue;
      std::vector<int> members;
      std::vector<const Edge*> comp_edges;
      for (int i = 0; i < n; ++i)
        if (find(i) == find(root)) {
          members.push_back(i);
          done[i] = true;
        }
      for (const auto& e : t.edges)
        if (find(e.a) == find(root)) comp_edges.push_back(&e);

      if (members.size() == 1) {
        CompactFn p = vertex_profile(surface(), t.vertices[members[0]], psi);
        if (p.empty()) {
          value = 0;
          break;
        }
        value *= integrate([&](double s) { return p.fn(s); }, p.lo, p.hi, opt.quad);
      } else if (members.size() == 2 && comp_edges.size() == 1) {
        const Edge& e = *comp_edges[0];
        CompactFn pa = vertex_profile(surface(), t.vertices[e.a], psi);
        CompactFn pb = vertex_profile(surface(), t.vertices[e.b], psi);
        value *= pair2(e.kernel(), pa, pb, opt);
      } else {
        throw std::domain_error(
            "Observable::evaluate: component with more than two joined vertices "
            "has no numeric path");
      }
      if (value == std::complex<double>(0.0)) break;
    }
    total += value;
  }
  return total;
}

Observable smear(const CauchySurface& surface, const LocalField& field,
                 const TestFunction& f) {
  Observable obs(surface);
  if (field.coeff.is_zero()) return obs;
  Term t;
  t.coeff = field.coeff;
  Vertex v;
  v.f = f;
  v.psi_pow = field.power;
  v.weight_pow = Rational(field.power, 2);
  t.vertices.push_back(std::move(v));
  obs.add_term(std::move(t));
  return obs;
}

}  // namespace chiral
