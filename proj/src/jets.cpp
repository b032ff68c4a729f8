#include "nd/jets.hpp"

#include <algorithm>
#include <limits>

#include "nd/errors.hpp"

namespace nd {

JetContext::JetContext(RingPtr base, Ideal j, unsigned cap) : ring_(std::move(base)), j_(std::move(j)), cap_(cap) {
  j_ = j_.to_ring(ring_);
}

const GroebnerBasis& JetContext::truncation_basis(unsigned prec) const {
  auto it = bases_.find(prec);
  if (it != bases_.end()) return it->second;
  std::vector<Poly> gens = j_.gens();
  const std::size_t n = ring_->nvars();
  // Monomials of degree prec.
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
    if (k + 1 == n) {
      Monomial m(n);
      for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, e[i]);
      m.set(k, left);
      gens.push_back(Poly::monomial(ring_, m, Coeff(1)));
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      e[k] = v;
      self(self, k + 1, left - v);
    }
  };
  if (n) rec(rec, 0, prec);
  return bases_.emplace(prec, buchberger(gens, ring_)).first->second;
}

Poly JetContext::normalize(const Poly& p, unsigned prec) const {
  if (prec == 0) return Poly(ring_);
  std::vector<bool> all(ring_->nvars(), true);
  Poly q = p.to_ring(ring_).truncate(all, prec);
  if (j_.gens().empty() || q.is_zero()) return q;
  return normal_form(q, truncation_basis(prec));
}

JetSeries JetContext::make(const Poly& p, unsigned prec) const { return {normalize(p, prec), prec}; }

JetSeries JetContext::add(const JetSeries& a, const JetSeries& b) const {
  unsigned p = std::min(a.prec, b.prec);
  return make(a.rep + b.rep, p);
}

JetSeries JetContext::sub(const JetSeries& a, const JetSeries& b) const {
  unsigned p = std::min(a.prec, b.prec);
  return make(a.rep - b.rep, p);
}

JetSeries JetContext::mul(const JetSeries& a, const JetSeries& b) const {
  unsigned p = std::min(a.prec, b.prec);
  std::vector<bool> all(ring_->nvars(), true);
  return make((a.rep.truncate(all, p) * b.rep.truncate(all, p)).truncate(all, p), p);
}

bool JetContext::equal(const JetSeries& a, const JetSeries& b) const {
  unsigned p = std::min(a.prec, b.prec);
  return normalize(a.rep - b.rep, p).is_zero();
}

unsigned JetContext::order(const JetSeries& a) const {
  if (a.rep.is_zero()) return a.prec;
  std::vector<bool> all(ring_->nvars(), true);
  return a.rep.order_in(all);
}

unsigned JetContext::order(const Poly& p) const {
  Poly q = p.to_ring(ring_);
  if (!j_.gens().empty()) q = j_.reduce(q);
  if (q.is_zero()) return std::numeric_limits<unsigned>::max();
  std::vector<bool> all(ring_->nvars(), true);
  return q.order_in(all);
}

JetSeries JetContext::inverse(const JetSeries& u) const {
  if (!is_unit(u)) throw std::domain_error("jet is not a unit: " + u.to_string());
  const Field& F = ring_->field();
  std::vector<bool> all(ring_->nvars(), true);
  Poly r = Poly::constant(ring_, F.inv(u.rep.constant_term()));
  Poly two = Poly::constant(ring_, 2);
  unsigned k = 1;
  while (k < u.prec) {
    k = std::min(2 * k, u.prec);
    Poly ur = (u.rep.truncate(all, k) * r).truncate(all, k);
    r = normalize((r * (two - ur)).truncate(all, k), k);
  }
  return {normalize(r, u.prec), u.prec};
}

JetSeries JetContext::divide(const JetSeries& a, const Poly& d) const {
  unsigned o = order(d);
  if (o == std::numeric_limits<unsigned>::max()) throw NotDivisibleInJets("division by a divisor that vanishes modulo J");
  if (a.prec <= o) return {Poly(ring_), 0};
  Poly dd = d.to_ring(ring_);
  std::vector<Poly> gens{dd};
  for (const auto& g : truncation_basis(a.prec).gens) gens.push_back(g);
  LiftCertificate c = lift(a.rep, gens);
  if (!c.member())
    throw NotDivisibleInJets(a.to_string() + " is not divisible by " + dd.to_string() + " to its precision");
  return make(c.coefficients[0], a.prec - o);
}

namespace {

// Horner-style evaluation grouped by the exponents of the non-base variables.
class Evaluator {
 public:
  Evaluator(const JetContext& ctx, const RingPtr& src, const JetPoint& pt) : ctx_(ctx), src_(src) {
    const RingPtr& base = ctx.ring();
    for (std::size_t i = 0; i < src->nvars(); ++i) {
      auto b = base->index_of(src->name(i));
      if (b) {
        base_map_.push_back({i, *b});
      } else {
        outer_.push_back(i);
        auto it = pt.find(src->name(i));
        jets_.push_back(it == pt.end() ? nullptr : &it->second);
      }
    }
    powers_.resize(outer_.size());
  }

  JetSeries run(const Poly& p) {
    std::vector<bool> used(outer_.size(), false);
    unsigned prec = ctx_.cap();
    for (const auto& t : p.terms())
      for (std::size_t k = 0; k < outer_.size(); ++k)
        if (t.m[outer_[k]] && !used[k]) {
          used[k] = true;
          if (!jets_[k]) throw std::invalid_argument("no jet for variable '" + src_->name(outer_[k]) + "'");
          prec = std::min(prec, jets_[k]->prec);
        }
    prec_ = prec;
    all_.assign(ctx_.ring()->nvars(), true);
    // Split terms: key = outer exponents, value = base part.
    std::vector<std::pair<std::vector<std::uint16_t>, Term>> items;
    items.reserve(p.nterms());
    for (const auto& t : p.terms()) {
      std::vector<std::uint16_t> key(outer_.size());
      for (std::size_t k = 0; k < outer_.size(); ++k) key[k] = t.m[outer_[k]];
      Monomial bm(ctx_.ring()->nvars());
      for (auto [si, bi] : base_map_) bm.set(bi, t.m[si]);
      if (bm.degree() >= prec) continue;
      items.push_back({std::move(key), {std::move(bm), t.c}});
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Poly r = rec(items, 0, items.size(), 0);
    return ctx_.make(r, prec);
  }

 private:
  const Poly& power(std::size_t k, unsigned e) {
    auto& pv = powers_[k];
    if (pv.empty()) pv.push_back(Poly::constant(ctx_.ring(), 1));
    while (pv.size() <= e) {
      Poly next = (pv.back() * jets_[k]->rep.truncate(all_, prec_)).truncate(all_, prec_);
      pv.push_back(ctx_.base_ideal().gens().empty() ? next : ctx_.normalize(next, prec_));
    }
    return pv[e];
  }

  Poly rec(const std::vector<std::pair<std::vector<std::uint16_t>, Term>>& items, std::size_t lo, std::size_t hi,
           std::size_t depth) {
    const RingPtr& R = ctx_.ring();
    if (depth == outer_.size()) {
      std::vector<Term> ts;
      for (std::size_t i = lo; i < hi; ++i) ts.push_back(items[i].second);
      return Poly::from_terms(R, std::move(ts));
    }
    Poly acc(R);
    std::size_t i = lo;
    while (i < hi) {
      std::size_t j = i;
      unsigned e = items[i].first[depth];
      while (j < hi && items[j].first[depth] == e) ++j;
      Poly inner = rec(items, i, j, depth + 1);
      if (!inner.is_zero()) acc += e ? (inner * power(depth, e)).truncate(all_, prec_) : inner;
      i = j;
    }
    return acc;
  }

  const JetContext& ctx_;
  RingPtr src_;
  std::vector<std::pair<std::size_t, std::size_t>> base_map_;
  std::vector<std::size_t> outer_;
  std::vector<const JetSeries*> jets_;
  std::vector<std::vector<Poly>> powers_;
  std::vector<bool> all_;
  unsigned prec_ = 0;
};

}  // namespace

JetSeries JetContext::evaluate(const Poly& p, const JetPoint& pt) const {
  Evaluator ev(*this, p.ring(), pt);
  return ev.run(p);
}

std::vector<JetSeries> JetContext::evaluate(const std::vector<Poly>& ps, const JetPoint& pt) const {
  std::vector<JetSeries> out;
  if (ps.empty()) return out;
  Evaluator ev(*this, ps.front().ring(), pt);
  for (const auto& p : ps) out.push_back(ev.run(p));
  return out;
}

std::vector<JetSeries> solve_jets(const JetContext& ctx, std::vector<std::vector<JetSeries>> a,
                                  std::vector<JetSeries> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (ctx.is_unit(a[r][c])) {
        piv = r;
        break;
      }
    if (piv == n) throw SingularJacobian("no unit pivot in column " + std::to_string(c + 1));
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    JetSeries inv = ctx.inverse(a[c][c]);
    for (std::size_t j = c; j < n; ++j) a[c][j] = ctx.mul(a[c][j], inv);
    b[c] = ctx.mul(b[c], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || ctx.is_zero(a[r][c])) continue;
      JetSeries f = a[r][c];
      for (std::size_t j = c; j < n; ++j)
        if (!ctx.is_zero(a[c][j])) a[r][j] = ctx.sub(a[r][j], ctx.mul(f, a[c][j]));
      b[r] = ctx.sub(b[r], ctx.mul(f, b[c]));
    }
  }
  return b;
}

JetPoint hensel_lift(const JetContext& ctx, const std::vector<Poly>& system, const std::vector<std::string>& unknowns,
                     JetPoint point, unsigned target_prec, HenselStats* stats) {
  if (system.size() != unknowns.size()) throw std::invalid_argument("hensel_lift: system is not square");
  if (system.empty()) return point;
  const RingPtr& R = system.front().ring();
  std::vector<std::size_t> uidx;
  for (const auto& u : unknowns) uidx.push_back(R->require_index(u));
  // Precision floor from the frozen coordinates the system touches.
  unsigned prec = std::min(target_prec, ctx.cap());
  for (std::size_t i = 0; i < R->nvars(); ++i) {
    if (std::find(uidx.begin(), uidx.end(), i) != uidx.end()) continue;
    auto it = point.find(R->name(i));
    if (it == point.end()) continue;
    bool used = std::any_of(system.begin(), system.end(), [&](const Poly& p) { return p.uses_var(i); });
    if (used) prec = std::min(prec, it->second.prec);
  }
  for (const auto& u : unknowns) {
    auto it = point.find(u);
    if (it == point.end()) throw std::invalid_argument("hensel_lift: no start value for '" + u + "'");
    it->second = ctx.make(it->second.rep, prec);
  }
  std::vector<std::vector<Poly>> jac(system.size());
  for (std::size_t i = 0; i < system.size(); ++i)
    for (auto k : uidx) jac[i].push_back(system[i].derivative(k));
  HenselStats st;
  unsigned last = 0;
  for (;;) {
    auto res = ctx.evaluate(system, point);
    unsigned k = prec;
    for (const auto& r : res) k = std::min(k, ctx.order(r));
    st.residual_orders.push_back(k);
    if (k >= prec) break;
    if (k == 0) throw NoConvergence("start point does not solve the system modulo (x)");
    if (st.sweeps > 0 && k < std::min(2 * last, prec))
      throw NoConvergence("residual order " + std::to_string(k) + " after order " + std::to_string(last));
    last = k;
    std::vector<std::vector<JetSeries>> a(system.size());
    for (std::size_t i = 0; i < system.size(); ++i) a[i] = ctx.evaluate(jac[i], point);
    std::vector<JetSeries> rhs;
    for (auto& r : res) rhs.push_back(ctx.neg(r));
    auto delta = solve_jets(ctx, std::move(a), std::move(rhs));
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      auto& v = point[unknowns[j]];
      v = ctx.make(v.rep + delta[j].rep, prec);
    }
    ++st.sweeps;
  }
  if (stats) *stats = st;
  return point;
}

}  // namespace nd
