#include "nd/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "nd/errors.hpp"

namespace nd {

Poly Poly::constant(const RingPtr& ring, const Coeff& c) {
  Poly p(ring);
  Coeff v = ring->field().normalize(c);
  if (v != 0) p.terms_.push_back({Monomial(ring->nvars()), v});
  return p;
}

Poly Poly::var(const RingPtr& ring, std::size_t i) {
  Monomial m(ring->nvars());
  m.set(i, 1);
  return monomial(ring, m, Coeff(1));
}

Poly Poly::var(const RingPtr& ring, const std::string& name) { return var(ring, ring->require_index(name)); }

Poly Poly::monomial(const RingPtr& ring, const Monomial& m, const Coeff& c) {
  Poly p(ring);
  Coeff v = ring->field().normalize(c);
  if (v != 0) p.terms_.push_back({m, v});
  return p;
}

Poly Poly::from_terms(const RingPtr& ring, std::vector<Term> terms) {
  const Ring& R = *ring;
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return R.compare(a.m, b.m) > 0; });
  Poly p(ring);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c = R.field().add(p.terms_.back().c, t.c);
    } else {
      if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
      p.terms_.push_back({std::move(t.m), R.field().normalize(t.c)});
    }
  }
  if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
  return p;
}

Poly Poly::from_sorted(const RingPtr& ring, std::vector<Term> terms) {
  Poly p(ring);
  p.terms_ = std::move(terms);
  return p;
}

Poly Poly::tail_from(std::size_t i) const {
  Poly p(ring_);
  p.terms_.assign(terms_.begin() + static_cast<std::ptrdiff_t>(std::min(i, terms_.size())), terms_.end());
  return p;
}

Coeff Poly::content() const {
  mpz_class l = 1, g = 0;
  for (const auto& t : terms_) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
  }
  if (g == 0) return Coeff(0);
  Coeff r(g, l);
  r.canonicalize();
  return r;
}

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c == 1; }

Coeff Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
  return Coeff(0);
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.degree());
  return d;
}

std::uint32_t Poly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.m[var]);
  return d;
}

std::uint32_t Poly::degree_in(const std::vector<bool>& mask) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.degree_in(mask));
  return d;
}

std::uint32_t Poly::order_in(const std::vector<bool>& mask) const {
  std::uint32_t d = std::numeric_limits<std::uint32_t>::max();
  for (const auto& t : terms_) d = std::min(d, t.m.degree_in(mask));
  return d;
}

bool Poly::uses_var(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.m[var]) return true;
  return false;
}

void Poly::check_ring(const Poly& o) const {
  if (ring_ == o.ring_) return;
  if (!ring_ || !o.ring_ || !ring_->same_layout(*o.ring_))
    throw std::invalid_argument("polynomials live in different rings");
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.c = ring_->field().neg(t.c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (!ring_) return o;
  if (!o.ring_) return *this;
  check_ring(o);
  const Ring& R = *ring_;
  Poly r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = R.compare(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Coeff s = R.field().add(terms_[i].c, o.terms_[j].c);
      if (s != 0) r.terms_.push_back({terms_[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (!o.ring_) return *this;
  return *this + (-o);
}

Poly Poly::operator*(const Poly& o) const {
  if (!ring_ || !o.ring_) return Poly(ring_ ? ring_ : o.ring_);
  check_ring(o);
  if (is_zero() || o.is_zero()) return Poly(ring_);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].m, o.terms_[0].c);
  if (terms_.size() == 1) return o.mul_term(terms_[0].m, terms_[0].c);
  const Field& F = ring_->field();
  std::unordered_map<Monomial, Coeff, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      auto [it, fresh] = acc.try_emplace(a.m * b.m, Coeff(0));
      it->second = F.add(it->second, F.mul(a.c, b.c));
    }
  }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) ts.push_back({m, c});
  const Ring& R = *ring_;
  std::sort(ts.begin(), ts.end(), [&](const Term& x, const Term& y) { return R.compare(x.m, y.m) > 0; });
  Poly r(ring_);
  r.terms_ = std::move(ts);
  return r;
}

Poly Poly::scale(const Coeff& c) const {
  const Field& F = ring_->field();
  Coeff v = F.normalize(c);
  if (v == 0) return Poly(ring_);
  Poly r(*this);
  for (auto& t : r.terms_) t.c = F.mul(t.c, v);
  return r;
}

Poly Poly::mul_term(const Monomial& m, const Coeff& c) const {
  const Field& F = ring_->field();
  Poly r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, F.mul(t.c, c)});
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::sub_mul_term(const Monomial& m, const Coeff& c, const Poly& o) const {
  const Ring& R = *ring_;
  const Field& F = R.field();
  Poly r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  Coeff nc = F.neg(c);
  while (i < terms_.size() && j < o.terms_.size()) {
    Monomial om = o.terms_[j].m * m;
    int cmp = R.compare(terms_[i].m, om);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back({std::move(om), F.mul(nc, o.terms_[j].c)});
      ++j;
    } else {
      Coeff s = F.add(terms_[i].c, F.mul(nc, o.terms_[j].c));
      if (s != 0) r.terms_.push_back({std::move(om), std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back({o.terms_[j].m * m, F.mul(nc, o.terms_[j].c)});
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  const Field& F = ring_->field();
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    auto e = t.m[var];
    if (!e) continue;
    Coeff c = F.mul(t.c, F.from_int(e));
    if (c == 0) continue;
    Monomial m = t.m;
    m.set(var, e - 1);
    ts.push_back({std::move(m), std::move(c)});
  }
  // Lowering one exponent can reorder terms under degrevlex.
  return from_terms(ring_, std::move(ts));
}

Poly Poly::truncate(const std::vector<bool>& mask, std::uint32_t prec) const {
  Poly r(ring_);
  for (const auto& t : terms_)
    if (t.m.degree_in(mask) < prec) r.terms_.push_back(t);
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(ring_->field().inv(lc()));
}

Poly Poly::primitive() const {
  if (is_zero()) return *this;
  if (!ring_->field().is_rational()) return monic();
  Coeff f = 1 / content();
  if (lc() < 0) f = -f;
  return scale(f);
}

Poly Poly::substitute(const RingPtr& target, const std::vector<Poly>& images) const {
  if (images.size() != ring_->nvars()) throw std::invalid_argument("substitute: image count mismatch");
  Poly result(target);
  if (is_zero()) return result;
  // Powers are cached per variable.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t v, unsigned e) -> const Poly& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(constant(target, 1));
    while (pv.size() <= e) pv.push_back(pv.back() * images[v]);
    return pv[e];
  };
  std::vector<Term> simple;
  std::vector<bool> is_var(images.size(), false);
  std::vector<std::size_t> var_idx(images.size(), 0);
  for (std::size_t v = 0; v < images.size(); ++v) {
    const Poly& im = images[v];
    if (im.nterms() == 1 && im.terms_[0].c == 1 && im.terms_[0].m.degree() == 1) {
      is_var[v] = true;
      for (std::size_t k = 0; k < target->nvars(); ++k)
        if (im.terms_[0].m[k]) var_idx[v] = k;
    }
  }
  for (const auto& t : terms_) {
    Monomial mono(target->nvars());
    Poly acc;
    bool pure = true;
    for (std::size_t v = 0; v < images.size(); ++v) {
      auto e = t.m[v];
      if (!e) continue;
      if (is_var[v]) {
        mono.set(var_idx[v], mono[var_idx[v]] + e);
      } else {
        pure = false;
        acc = acc.ring() ? acc * power(v, e) : power(v, e);
        if (acc.is_zero()) break;
      }
    }
    if (pure) {
      simple.push_back({std::move(mono), t.c});
    } else if (!acc.is_zero()) {
      result += acc.mul_term(mono, t.c);
    }
  }
  if (!simple.empty()) result += from_terms(target, std::move(simple));
  return result;
}

Poly Poly::to_ring(const RingPtr& target) const {
  if (ring_ == target) return *this;
  std::vector<std::size_t> map(ring_->nvars(), SIZE_MAX);
  for (std::size_t i = 0; i < ring_->nvars(); ++i) {
    auto j = target->index_of(ring_->name(i));
    if (j) map[i] = *j;
  }
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (!t.m[i]) continue;
      if (map[i] == SIZE_MAX)
        throw std::invalid_argument("variable '" + ring_->name(i) + "' missing from target ring");
      m.set(map[i], t.m[i]);
    }
    ts.push_back({std::move(m), target->field().normalize(t.c)});
  }
  return from_terms(target, std::move(ts));
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].c != o.terms_[i].c || terms_[i].m != o.terms_[i].m) return false;
  return true;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Coeff c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    bool unit = c == 1;
    if (!unit || t.m.is_one()) out += c.get_str();
    bool need_star = !unit;
    for (std::size_t i = 0; i < t.m.size(); ++i) {
      if (!t.m[i]) continue;
      if (need_star) out += "*";
      out += ring_->name(i);
      if (t.m[i] > 1) out += "^" + std::to_string(t.m[i]);
      need_star = true;
    }
  }
  return out;
}

std::vector<Poly> identity_images(const RingPtr& from, const RingPtr& target,
                                  const std::map<std::string, Poly>& overrides) {
  std::vector<Poly> out;
  out.reserve(from->nvars());
  for (std::size_t i = 0; i < from->nvars(); ++i) {
    auto it = overrides.find(from->name(i));
    if (it != overrides.end()) {
      out.push_back(it->second.to_ring(target));
    } else if (target->index_of(from->name(i))) {
      out.push_back(Poly::var(target, from->name(i)));
    } else {
      throw std::invalid_argument("no image for variable '" + from->name(i) + "'");
    }
  }
  return out;
}

std::vector<bool> role_mask(const Ring& ring, VarRole role) {
  std::vector<bool> m(ring.nvars(), false);
  for (std::size_t i = 0; i < ring.nvars(); ++i) m[i] = ring.role(i) == role;
  return m;
}

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, const std::string& s) : ring_(ring), s_(s) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(pos_ + 1, msg, "parse error at column " + std::to_string(pos_ + 1) + ": " + msg + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    std::vector<Term> acc;
    auto push = [&](const Poly& t, bool neg) {
      for (const auto& x : t.terms()) acc.push_back({x.m, neg ? ring_->field().neg(x.c) : x.c});
    };
    skip();
    bool neg = eat('-');
    if (!neg) eat('+');
    push(term(), neg);
    for (;;) {
      if (eat('+')) push(term(), false);
      else if (eat('-')) push(term(), true);
      else break;
    }
    return Poly::from_terms(ring_, std::move(acc));
  }

  Poly term() {
    Poly p = power();
    for (;;) {
      if (eat('*')) {
        p *= power();
      } else if (eat('/')) {
        Poly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        p = p.scale(ring_->field().inv(d.constant_term()));
      } else {
        break;
      }
    }
    return p;
  }

  Poly power() {
    Poly b = atom();
    if (eat('^')) {
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("expected exponent");
      b = b.pow(static_cast<unsigned>(std::stoul(s_.substr(st, pos_ - st))));
    }
    return b;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(ring_, Coeff(mpz_class(s_.substr(st, pos_ - st))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string name = s_.substr(st, pos_ - st);
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = st;
        fail("unknown variable '" + name + "'");
      }
      return Poly::var(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, const std::string& text) { return Parser(ring, text).run(); }

}  // namespace nd
