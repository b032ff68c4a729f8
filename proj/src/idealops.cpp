#include "nd/idealops.hpp"

#include <algorithm>
#include <functional>

#include "nd/errors.hpp"

namespace nd {

Ideal::Ideal(RingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) {
    Poly p = g.ring() ? g.to_ring(ring_) : Poly(ring_);
    if (!p.is_zero()) gens_.push_back(std::move(p));
  }
}

const GroebnerBasis& Ideal::gb() const {
  std::call_once(cache_->gb_once, [&] { cache_->gb = buchberger(gens_, ring_); });
  return cache_->gb;
}

const TrackedBasis& Ideal::tracked() const {
  std::call_once(cache_->tracked_once, [&] { cache_->tracked = buchberger_tracked(gens_, ring_); });
  return cache_->tracked;
}

bool Ideal::contains(const Poly& p) const { return reduce(p).is_zero(); }

Poly Ideal::reduce(const Poly& p) const { return normal_form(p.to_ring(ring_), gb()); }

Ideal Ideal::operator+(const Ideal& o) const {
  auto g = gens_;
  for (const auto& p : o.gens_) g.push_back(p.to_ring(ring_));
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::operator*(const Ideal& o) const {
  std::vector<Poly> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) g.push_back(a * b.to_ring(ring_));
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::to_ring(const RingPtr& target) const { return Ideal(target, gens_); }

Ideal eliminate(const Ideal& a, const std::vector<std::string>& block) {
  if (block.empty()) return Ideal(a.ring(), a.gb().gens);
  RingPtr er = a.ring()->elimination_ring(block);
  GroebnerBasis g = buchberger(a.gens(), er);
  std::vector<bool> mask(er->nvars(), false);
  for (const auto& n : block) mask[er->require_index(n)] = true;
  std::vector<Poly> keep;
  for (const auto& p : g.gens)
    if (p.degree_in(mask) == 0) keep.push_back(p.to_ring(a.ring()));
  return Ideal(a.ring(), std::move(keep));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  const RingPtr& R = a.ring();
  std::string t = fresh_name(*R, "tag_t");
  RingPtr ext = R->extended({{t, VarRole::Tag}});
  Poly tv = Poly::var(ext, t);
  Poly one_minus_t = Poly::constant(ext, 1) - tv;
  std::vector<Poly> gens;
  for (const auto& p : a.gens()) gens.push_back(tv * p.to_ring(ext));
  for (const auto& p : b.gens()) gens.push_back(one_minus_t * p.to_ring(ext));
  Ideal e = eliminate(Ideal(ext, gens), {t});
  std::vector<Poly> out;
  for (const auto& p : e.gens()) out.push_back(p.to_ring(R));
  return Ideal(R, std::move(out));
}

Ideal ideal_quotient(const Ideal& a, const Poly& p) {
  const RingPtr& R = a.ring();
  Poly q = p.to_ring(R);
  if (q.is_zero()) return Ideal(R, {Poly::constant(R, 1)});
  Ideal inter = intersect(a, Ideal(R, {q}));
  std::vector<Poly> out;
  for (const auto& g : inter.gens()) {
    LiftCertificate d = divide(g, {q});
    if (!d.remainder.is_zero()) throw std::logic_error("ideal_quotient: inexact division");
    out.push_back(d.coefficients[0]);
  }
  return Ideal(R, std::move(out));
}

Ideal ideal_quotient(const Ideal& a, const Ideal& b) {
  const RingPtr& R = a.ring();
  if (b.gens().empty()) return Ideal(R, {Poly::constant(R, 1)});
  std::optional<Ideal> acc;
  for (const auto& g : b.gens()) {
    Ideal q = ideal_quotient(a, g);
    acc = acc ? intersect(*acc, q) : q;
  }
  return Ideal(R, acc->gb().gens);
}

RadicalResult radical_membership(const Poly& p, const Ideal& a, unsigned e_max) {
  const RingPtr& R = a.ring();
  std::string z = fresh_name(*R, "tag_z");
  RingPtr ext = R->extended({{z, VarRole::Tag}});
  std::vector<Poly> gens;
  for (const auto& g : a.gens()) gens.push_back(g.to_ring(ext));
  gens.push_back(Poly::constant(ext, 1) - Poly::var(ext, z) * p.to_ring(ext));
  RadicalResult out;
  out.member = buchberger(gens, ext).is_unit();
  if (out.member) {
    Poly q = p.to_ring(R);
    Poly pw = q;
    for (unsigned e = 1; e <= e_max; ++e) {
      if (a.contains(pw)) {
        out.exponent = e;
        break;
      }
      pw = pw * q;
    }
  }
  return out;
}

bool local_membership(const Poly& p, const Ideal& a) {
  const RingPtr& R = a.ring();
  Ideal c = ideal_quotient(a, p);
  std::vector<std::string> other;
  for (std::size_t i = 0; i < R->nvars(); ++i)
    if (R->role(i) != VarRole::Base) other.push_back(R->name(i));
  Ideal cb = other.empty() ? c : eliminate(c, other);
  for (const auto& g : cb.gens())
    if (g.constant_term() != 0) return true;
  return false;
}

int krull_dim(const Ideal& a) {
  const GroebnerBasis& g = a.gb();
  if (g.is_unit()) return -1;
  const std::size_t n = a.ring()->nvars();
  std::vector<Monomial> lms;
  for (const auto& p : g.gens) lms.push_back(p.lm());
  // A variable set is independent when no leading monomial lives on it alone.
  std::vector<bool> in(n, false);
  auto independent = [&] {
    for (const auto& m : lms) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        if (m[i] && !in[i]) inside = false;
      if (inside) return false;
    }
    return true;
  };
  int best = 0;
  std::function<void(std::size_t, int)> dfs = [&](std::size_t start, int size) {
    best = std::max(best, size);
    if (size + static_cast<int>(n - start) <= best) return;
    for (std::size_t i = start; i < n; ++i) {
      in[i] = true;
      if (independent()) dfs(i + 1, size + 1);
      in[i] = false;
    }
  };
  dfs(0, 0);
  return best;
}

bool is_m_primary_local(const Ideal& a, unsigned n) {
  const RingPtr& R = a.ring();
  auto base = R->indices_with_role(VarRole::Base);
  if (a.is_unit()) return true;
  if (base.empty()) return false;
  std::vector<unsigned> e(base.size(), 0);
  // Enumerate compositions of n into |base| parts.
  std::function<bool(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned left) {
    if (k + 1 == base.size()) {
      e[k] = left;
      Monomial m(R->nvars());
      for (std::size_t i = 0; i < base.size(); ++i) m.set(base[i], e[i]);
      return a.reduce(Poly::monomial(R, m, Coeff(1))).is_zero();
    }
    for (unsigned v = 0; v <= left; ++v) {
      e[k] = v;
      if (!rec(k + 1, left - v)) return false;
    }
    return true;
  };
  return rec(0, n);
}

std::optional<unsigned> power_in_ideal(const Poly& gamma, const Ideal& a, unsigned e_max) {
  Poly g = gamma.to_ring(a.ring());
  Poly pw = g;
  for (unsigned e = 1; e <= e_max; ++e) {
    if (local_membership(pw, a)) return e;
    pw = pw * g;
  }
  return std::nullopt;
}

Poly divide_exact(const Poly& a, const Poly& d, const Ideal& m) {
  const RingPtr& R = m.ring();
  std::vector<Poly> gens{d.to_ring(R)};
  for (const auto& g : m.gens()) gens.push_back(g);
  LiftCertificate c = lift(a.to_ring(R), gens);
  if (!c.member()) throw NotDivisible("element is not divisible by " + d.to_string() + " modulo the given ideal");
  return c.coefficients[0];
}

}  // namespace nd
