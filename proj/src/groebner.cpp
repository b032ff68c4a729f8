#include "nd/groebner.hpp"

#include <algorithm>
#include <stdexcept>

namespace nd {

namespace {

std::vector<Poly> into_ring(const std::vector<Poly>& gens, const RingPtr& ring) {
  std::vector<Poly> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.ring() ? g.to_ring(ring) : Poly(ring));
  return out;
}

int find_divisor(const Monomial& m, const std::vector<Poly>& d, const std::vector<bool>* active) {
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (active && !(*active)[k]) continue;
    if (!d[k].is_zero() && d[k].lm().divides(m)) return static_cast<int>(k);
  }
  return -1;
}

// Full division over field arithmetic. Quotient terms arrive strictly
// descending, so they can be assembled without sorting.
LiftCertificate divide_impl(Poly p, const std::vector<Poly>& d, const std::vector<bool>* active, bool track) {
  const RingPtr& ring = p.ring();
  const Field& F = ring->field();
  std::vector<std::vector<Term>> q(track ? d.size() : 0);
  std::vector<Term> rem;
  while (!p.is_zero()) {
    int k = find_divisor(p.lm(), d, active);
    if (k >= 0) {
      Monomial m = p.lm() / d[k].lm();
      Coeff c = F.div(p.lc(), d[k].lc());
      if (track) q[k].push_back({m, c});
      p = p.sub_mul_term(m, c, d[k]);
      continue;
    }
    std::size_t i = 0;
    const auto& ts = p.terms();
    while (i < ts.size() && find_divisor(ts[i].m, d, active) < 0) rem.push_back(ts[i++]);
    p = p.tail_from(i);
  }
  LiftCertificate out;
  out.remainder = Poly::from_sorted(ring, std::move(rem));
  if (track)
    for (auto& qk : q) out.coefficients.push_back(Poly::from_sorted(ring, std::move(qk)));
  return out;
}

// Fraction-free remainder over Q, correct up to a nonzero rational factor.
// Divisors must have integer coefficients.
Poly reduce_ff(Poly p, const std::vector<Poly>& d, const std::vector<bool>& active) {
  const RingPtr& ring = p.ring();
  if (!p.is_zero()) p = p.primitive();
  std::vector<Term> rem;
  int steps = 0;
  while (!p.is_zero()) {
    int k = find_divisor(p.lm(), d, &active);
    if (k >= 0) {
      mpz_class a = d[k].lc().get_num(), c = p.lc().get_num(), g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
      a /= g;
      c /= g;
      if (a < 0) {
        a = -a;
        c = -c;
      }
      if (a != 1) {
        p = p.scale(Coeff(a));
        for (auto& t : rem) t.c *= a;
      }
      p = p.sub_mul_term(p.lm() / d[k].lm(), Coeff(c), d[k]);
      if (++steps % 8 == 0 && !rem.empty()) {
        // Joint content of p and the remainder built so far.
        mpz_class g2 = 0;
        for (const auto& t : rem) mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), t.c.get_num_mpz_t());
        for (const auto& t : p.terms()) mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), t.c.get_num_mpz_t());
        if (g2 > 1) {
          Coeff inv(mpz_class(1), g2);
          p = p.scale(inv);
          for (auto& t : rem) t.c /= g2;
        }
      }
      continue;
    }
    std::size_t i = 0;
    const auto& ts = p.terms();
    while (i < ts.size() && find_divisor(ts[i].m, d, &active) < 0) rem.push_back(ts[i++]);
    p = p.tail_from(i);
  }
  Poly r = Poly::from_sorted(ring, std::move(rem));
  return r.is_zero() ? r : r.primitive();
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const RingPtr& ring, bool track, std::size_t ninputs)
      : ring_(ring), track_(track), ff_(ring->field().is_rational() && !track), ninputs_(ninputs) {}

  void run(const std::vector<Poly>& inputs, GroebnerStats* stats) {
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i].is_zero()) continue;
      std::vector<Poly> row;
      if (track_) {
        row.assign(ninputs_, Poly(ring_));
        row[i] = Poly::constant(ring_, 1);
      }
      reduce_and_add(inputs[i], std::move(row));
      if (unit_) break;
    }
    while (!pairs_.empty() && !unit_) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        const auto &a = pairs_[k].lcm, &b = pairs_[best].lcm;
        if (a.degree() < b.degree() || (a.degree() == b.degree() && ring_->compare(a, b) < 0)) best = k;
      }
      Pair pr = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      ++stats_.pairs;
      auto [s, row] = make_spoly(pr.i, pr.j);
      if (!reduce_and_add(s, std::move(row))) ++stats_.reductions_to_zero;
    }
    if (stats) *stats = stats_;
  }

  // Inter-reduced, monic, ascending; rows follow.
  void finish(GroebnerBasis& out, std::vector<std::vector<Poly>>* rows_out) {
    out.ring = ring_;
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < g_.size(); ++k)
      if (active_[k]) keep.push_back(k);
    if (unit_) keep = {unit_index_};
    std::vector<Poly> basis;
    std::vector<std::vector<Poly>> rows;
    std::vector<bool> mask(g_.size(), false);
    for (auto k : keep) mask[k] = true;
    for (auto k : keep) {
      mask[k] = false;
      Poly head = Poly::monomial(ring_, g_[k].lm(), g_[k].lc());
      Poly tail = g_[k].tail_from(1);
      LiftCertificate red = divide_impl(tail, g_, &mask, track_);
      Poly gk = head + red.remainder;
      Coeff inv = ring_->field().inv(gk.lc());
      basis.push_back(gk.scale(inv));
      if (track_) {
        std::vector<Poly> row = rows_[k];
        for (std::size_t j = 0; j < g_.size(); ++j) {
          if (red.coefficients[j].is_zero()) continue;
          for (std::size_t i = 0; i < ninputs_; ++i)
            if (!rows_[j][i].is_zero()) row[i] -= red.coefficients[j] * rows_[j][i];
        }
        for (auto& e : row) e = e.scale(inv);
        rows.push_back(std::move(row));
      }
      mask[k] = true;
    }
    std::vector<std::size_t> idx(basis.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return ring_->compare(basis[a].lm(), basis[b].lm()) < 0; });
    for (auto k : idx) {
      out.gens.push_back(basis[k]);
      if (rows_out && track_) rows_out->push_back(rows[k]);
    }
  }

 private:
  std::pair<Poly, std::vector<Poly>> make_spoly(std::size_t i, std::size_t j) {
    const Field& F = ring_->field();
    const Poly &a = g_[i], &b = g_[j];
    Monomial l = a.lm().lcm(b.lm());
    Monomial ma = l / a.lm(), mb = l / b.lm();
    Coeff ca, cb;
    if (ff_) {
      ca = b.lc();
      cb = a.lc();
    } else {
      ca = F.inv(a.lc());
      cb = F.inv(b.lc());
    }
    Poly s = a.mul_term(ma, ca).sub_mul_term(mb, cb, b);
    std::vector<Poly> row;
    if (track_) {
      row.assign(ninputs_, Poly(ring_));
      for (std::size_t k = 0; k < ninputs_; ++k) {
        if (!rows_[i][k].is_zero()) row[k] += rows_[i][k].mul_term(ma, ca);
        if (!rows_[j][k].is_zero()) row[k] = row[k].sub_mul_term(mb, cb, rows_[j][k]);
      }
    }
    return {std::move(s), std::move(row)};
  }

  // Returns false if p reduced to zero.
  bool reduce_and_add(const Poly& p, std::vector<Poly> row) {
    Poly h;
    if (ff_) {
      h = reduce_ff(p, g_, active_);
    } else {
      LiftCertificate red = divide_impl(p, g_, &active_, track_);
      h = red.remainder;
      if (track_ && !h.is_zero()) {
        for (std::size_t j = 0; j < g_.size(); ++j) {
          if (red.coefficients[j].is_zero()) continue;
          for (std::size_t i = 0; i < ninputs_; ++i)
            if (!rows_[j][i].is_zero()) row[i] -= red.coefficients[j] * rows_[j][i];
        }
      }
    }
    if (h.is_zero()) return false;
    add(std::move(h), std::move(row));
    return true;
  }

  // Gebauer-Moeller update.
  void add(Poly h, std::vector<Poly> row) {
    std::size_t hi = g_.size();
    const Monomial hm = h.lm();
    if (hm.is_one()) {
      unit_ = true;
      unit_index_ = hi;
    }
    std::vector<Pair> c;
    for (std::size_t k = 0; k < hi; ++k)
      if (active_[k]) c.push_back({k, hi, g_[k].lm().lcm(hm)});
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      bool coprime = g_[c[a].i].lm().coprime(hm);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = a + 1; b < c.size() && !dominated; ++b) dominated = c[b].lcm.divides(c[a].lcm);
        for (std::size_t b = 0; b < d.size() && !dominated; ++b) dominated = d[b].lcm.divides(c[a].lcm);
      }
      if (dominated) {
        ++stats_.chain_skips;
      } else {
        d.push_back(c[a]);
      }
    }
    std::vector<Pair> next;
    for (auto& p : pairs_) {
      bool drop = hm.divides(p.lcm) && g_[p.i].lm().lcm(hm) != p.lcm && g_[p.j].lm().lcm(hm) != p.lcm;
      if (drop) {
        ++stats_.chain_skips;
      } else {
        next.push_back(std::move(p));
      }
    }
    for (auto& p : d) {
      if (g_[p.i].lm().coprime(hm)) {
        ++stats_.product_skips;
      } else {
        next.push_back(std::move(p));
      }
    }
    pairs_ = std::move(next);
    for (std::size_t k = 0; k < hi; ++k)
      if (active_[k] && hm.divides(g_[k].lm())) active_[k] = false;
    if (ff_) h = h.primitive();
    g_.push_back(std::move(h));
    active_.push_back(true);
    if (track_) rows_.push_back(std::move(row));
  }

  RingPtr ring_;
  bool track_, ff_;
  std::size_t ninputs_;
  std::vector<Poly> g_;
  std::vector<bool> active_;
  std::vector<std::vector<Poly>> rows_;
  std::vector<Pair> pairs_;
  bool unit_ = false;
  std::size_t unit_index_ = 0;
  GroebnerStats stats_;
};

}  // namespace

GroebnerBasis buchberger(const std::vector<Poly>& gens, const RingPtr& ring, GroebnerStats* stats) {
  auto in = into_ring(gens, ring);
  Buchberger b(ring, false, in.size());
  b.run(in, stats);
  GroebnerBasis out;
  b.finish(out, nullptr);
  return out;
}

GroebnerBasis buchberger(const std::vector<Poly>& gens) {
  for (const auto& g : gens)
    if (g.ring()) return buchberger(gens, g.ring());
  throw std::invalid_argument("buchberger: cannot infer the ring of an empty list");
}

TrackedBasis buchberger_tracked(const std::vector<Poly>& gens, const RingPtr& ring) {
  TrackedBasis t;
  t.inputs = into_ring(gens, ring);
  Buchberger b(ring, true, t.inputs.size());
  b.run(t.inputs, nullptr);
  b.finish(t.basis, &t.rows);
  return t;
}

Poly normal_form(const Poly& p, const GroebnerBasis& g) { return normal_form(p, g.gens); }

Poly normal_form(const Poly& p, const std::vector<Poly>& divisors) {
  if (divisors.empty()) return p;
  return divide_impl(p.to_ring(divisors.front().ring()), divisors, nullptr, false).remainder;
}

LiftCertificate divide(const Poly& p, const std::vector<Poly>& divisors) {
  if (divisors.empty()) return {{}, p};
  return divide_impl(p.to_ring(divisors.front().ring()), divisors, nullptr, true);
}

LiftCertificate lift(const Poly& p, const TrackedBasis& tracked) {
  const RingPtr& ring = tracked.basis.ring;
  Poly q = p.to_ring(ring);
  LiftCertificate out;
  out.coefficients.assign(tracked.inputs.size(), Poly(ring));
  if (tracked.basis.gens.empty()) {
    out.remainder = q;
    return out;
  }
  LiftCertificate d = divide_impl(q, tracked.basis.gens, nullptr, true);
  for (std::size_t k = 0; k < d.coefficients.size(); ++k) {
    if (d.coefficients[k].is_zero()) continue;
    for (std::size_t i = 0; i < tracked.inputs.size(); ++i)
      if (!tracked.rows[k][i].is_zero()) out.coefficients[i] += d.coefficients[k] * tracked.rows[k][i];
  }
  out.remainder = d.remainder;
  return out;
}

LiftCertificate lift(const Poly& p, const std::vector<Poly>& gens) {
  return lift(p, buchberger_tracked(gens, p.ring()));
}

SyzygyModule syzygies(const TrackedBasis& tracked) {
  const RingPtr& ring = tracked.basis.ring;
  const auto& g = tracked.basis.gens;
  const std::size_t m = tracked.inputs.size(), s = g.size();
  const Field& F = ring->field();
  SyzygyModule out;
  auto push = [&](std::vector<Poly> v) {
    if (std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); })) return;
    if (std::find(out.begin(), out.end(), v) != out.end()) return;
    out.push_back(std::move(v));
  };
  auto map_back = [&](const std::vector<Poly>& sigma) {
    std::vector<Poly> v(m, Poly(ring));
    for (std::size_t k = 0; k < s; ++k) {
      if (sigma[k].is_zero()) continue;
      for (std::size_t i = 0; i < m; ++i)
        if (!tracked.rows[k][i].is_zero()) v[i] += sigma[k] * tracked.rows[k][i];
    }
    return v;
  };
  // Schreyer pair syzygies of the basis, pulled back to the inputs.
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) {
      Monomial l = g[a].lm().lcm(g[b].lm());
      Monomial ma = l / g[a].lm(), mb = l / g[b].lm();
      Coeff ca = F.inv(g[a].lc()), cb = F.inv(g[b].lc());
      Poly sp = g[a].mul_term(ma, ca).sub_mul_term(mb, cb, g[b]);
      LiftCertificate d = divide_impl(sp, g, nullptr, true);
      if (!d.remainder.is_zero()) throw std::logic_error("syzygies: basis is not a Groebner basis");
      std::vector<Poly> sigma(s, Poly(ring));
      for (std::size_t k = 0; k < s; ++k) sigma[k] = -d.coefficients[k];
      sigma[a] += Poly::monomial(ring, ma, ca);
      sigma[b] -= Poly::monomial(ring, mb, cb);
      push(map_back(sigma));
    }
  }
  // Each input against its expression through the basis.
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Poly> sigma(s, Poly(ring));
    if (s) {
      LiftCertificate d = divide_impl(tracked.inputs[i], g, nullptr, true);
      sigma = d.coefficients;
    }
    std::vector<Poly> v = map_back(sigma);
    for (auto& e : v) e = -e;
    v[i] += Poly::constant(ring, 1);
    push(std::move(v));
  }
  return out;
}

SyzygyModule syzygies(const std::vector<Poly>& gens) {
  for (const auto& p : gens)
    if (p.ring()) return syzygies(buchberger_tracked(gens, p.ring()));
  throw std::invalid_argument("syzygies: cannot infer the ring of an empty list");
}

Poly spoly(const Poly& a, const Poly& b) {
  const Field& F = a.ring()->field();
  Monomial l = a.lm().lcm(b.lm());
  return a.mul_term(l / a.lm(), F.inv(a.lc())).sub_mul_term(l / b.lm(), F.inv(b.lc()), b);
}

bool is_groebner(const std::vector<Poly>& g) {
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b)
      if (!normal_form(spoly(g[a], g[b]), g).is_zero()) return false;
  return true;
}

}  // namespace nd
