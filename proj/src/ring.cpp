#include "nd/ring.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nd {

Monomial::Monomial(std::vector<std::uint16_t> e) : exps_(std::move(e)) {
  deg_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

void Monomial::set(std::size_t i, std::uint32_t e) {
  if (e > 0xFFFF) throw std::overflow_error("exponent overflow");
  deg_ = deg_ - exps_[i] + e;
  exps_[i] = static_cast<std::uint16_t>(e);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint32_t e = std::uint32_t(exps_[i]) + o.exps_[i];
    if (e > 0xFFFF) throw std::overflow_error("exponent overflow");
    r.exps_[i] = static_cast<std::uint16_t>(e);
  }
  r.deg_ = deg_ + o.deg_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] - o.exps_[i];
  r.deg_ = deg_ - o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], o.exps_[i]);
  r.deg_ = std::accumulate(r.exps_.begin(), r.exps_.end(), std::uint32_t{0});
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] && o.exps_[i]) return false;
  return true;
}

std::uint32_t Monomial::degree_in(const std::vector<bool>& mask) const {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (mask[i]) d += exps_[i];
  return d;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
  return h;
}

const char* role_name(VarRole r) {
  switch (r) {
    case VarRole::Base: return "base";
    case VarRole::Algebra: return "alg";
    case VarRole::Aux: return "aux";
    case VarRole::Inverse: return "inv";
    case VarRole::Tag: return "tag";
  }
  return "alg";
}

std::optional<VarRole> role_from_name(const std::string& s) {
  if (s == "base") return VarRole::Base;
  if (s == "alg") return VarRole::Algebra;
  if (s == "aux") return VarRole::Aux;
  if (s == "inv") return VarRole::Inverse;
  if (s == "tag") return VarRole::Tag;
  return std::nullopt;
}

Ring::Ring(Field field, std::vector<VarInfo> vars, MonomialOrder order)
    : field_(std::move(field)), vars_(std::move(vars)), order_(std::move(order)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (!index_.emplace(vars_[i].name, i).second)
      throw std::invalid_argument("duplicate variable name '" + vars_[i].name + "'");
  }
  if (order_.kind == MonomialOrder::Kind::Block) {
    std::size_t total = std::accumulate(order_.blocks.begin(), order_.blocks.end(), std::size_t{0});
    if (total != vars_.size()) throw std::invalid_argument("block sizes do not cover the variables");
  }
}

RingPtr Ring::make(Field field, std::vector<VarInfo> vars, MonomialOrder order) {
  return std::make_shared<const Ring>(std::move(field), std::move(vars), std::move(order));
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Ring::require_index(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw std::invalid_argument("unknown variable '" + name + "'");
  return *i;
}

std::vector<std::size_t> Ring::indices_with_role(VarRole r) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].role == r) out.push_back(i);
  return out;
}

std::vector<std::string> Ring::names_with_role(VarRole r) const {
  std::vector<std::string> out;
  for (const auto& v : vars_)
    if (v.role == r) out.push_back(v.name);
  return out;
}

int Ring::compare_drl(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const {
  std::uint32_t da = 0, db = 0;
  if (lo == 0 && hi == a.size()) {
    da = a.degree();
    db = b.degree();
  } else {
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int Ring::compare(const Monomial& a, const Monomial& b) const {
  switch (order_.kind) {
    case MonomialOrder::Kind::DegRevLex:
      return compare_drl(a, b, 0, a.size());
    case MonomialOrder::Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case MonomialOrder::Kind::Block: {
      std::size_t lo = 0;
      for (std::size_t sz : order_.blocks) {
        int c = compare_drl(a, b, lo, lo + sz);
        if (c) return c;
        lo += sz;
      }
      return 0;
    }
  }
  return 0;
}

RingPtr Ring::with_order(MonomialOrder order) const { return make(field_, vars_, std::move(order)); }

RingPtr Ring::extended(const std::vector<VarInfo>& extra) const {
  auto vars = vars_;
  vars.insert(vars.end(), extra.begin(), extra.end());
  MonomialOrder ord = order_.kind == MonomialOrder::Kind::Lex ? MonomialOrder::lex() : MonomialOrder::degrevlex();
  return make(field_, std::move(vars), ord);
}

RingPtr Ring::elimination_ring(const std::vector<std::string>& first) const {
  std::vector<VarInfo> head, tail;
  std::vector<bool> in_first(vars_.size(), false);
  for (const auto& n : first) in_first[require_index(n)] = true;
  for (std::size_t i = 0; i < vars_.size(); ++i) (in_first[i] ? head : tail).push_back(vars_[i]);
  std::vector<std::size_t> blocks;
  if (!head.empty()) blocks.push_back(head.size());
  if (!tail.empty()) blocks.push_back(tail.size());
  head.insert(head.end(), tail.begin(), tail.end());
  return make(field_, std::move(head), MonomialOrder::block(blocks));
}

bool Ring::same_layout(const Ring& o) const {
  if (this == &o) return true;
  if (field_ != o.field_ || vars_.size() != o.vars_.size() || !(order_ == o.order_)) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name != o.vars_[i].name) return false;
  return true;
}

std::string fresh_name(const Ring& ring, const std::string& stem, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& s) {
    return ring.index_of(s).has_value() || std::find(taken.begin(), taken.end(), s) != taken.end();
  };
  if (!used(stem)) return stem;
  for (int k = 1;; ++k) {
    std::string c = stem + "_" + std::to_string(k);
    if (!used(c)) return c;
  }
}

}  // namespace nd
