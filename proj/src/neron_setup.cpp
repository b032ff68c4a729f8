#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "neron_internal.hpp"
#include "nd/errors.hpp"

namespace nd {

std::vector<Poly> point_images(const Problem& pb, const RingPtr& target) {
  const RingPtr& r = pb.b.ring;
  std::vector<Poly> img(r->nvars());
  std::size_t k = 0;
  for (std::size_t i = 0; i < r->nvars(); ++i) {
    if (r->role(i) == VarRole::Base)
      img[i] = Poly::var(target, r->name(i));
    else
      img[i] = pb.map.at(k++).to_ring(target);
  }
  return img;
}

Poly at_point(const Problem& pb, const Poly& p) {
  RingPtr base = pb.b.base_ring();
  return p.to_ring(pb.b.ring).substitute(base, point_images(pb, base));
}

JetContext jet_context(const Problem& pb) {
  RingPtr base = pb.b.base_ring();
  std::vector<Poly> j;
  for (const auto& p : pb.b.base_ideal) j.push_back(p.to_ring(base));
  return JetContext(base, Ideal(base, j), pb.bound);
}

void check_problem(const Problem& pb) {
  if (pb.map.size() != pb.b.algebra_vars().size())
    throw std::invalid_argument("the map must give one image per algebra variable");
  if (pb.bound == 0) throw std::invalid_argument("the bound must be positive");
  RingPtr base = pb.b.base_ring();
  if (base->nvars() == 0) throw std::invalid_argument("no base variables");
  JetContext ctx = jet_context(pb);
  for (const auto& y : pb.map)
    if (y.to_ring(base).constant_term() != 0)
      throw std::invalid_argument("the map must send every variable into the maximal ideal");
  for (const auto& g : pb.b.all_relations()) {
    Poly v = at_point(pb, g);
    if (!ctx.normalize(v, pb.bound).is_zero())
      throw std::invalid_argument("relation " + g.to_string() + " does not vanish at the map modulo (x)^" +
                                  std::to_string(pb.bound));
  }
}

namespace {

// All monomials of degree n in the variables of `ring`.
std::vector<Poly> monomials_of_degree(const RingPtr& ring, unsigned n) {
  std::vector<Poly> out;
  Monomial m(ring->nvars());
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned left) {
    if (k + 1 == ring->nvars()) {
      m.set(k, left);
      out.push_back(Poly::monomial(ring, m, Coeff(1)));
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      m.set(k, v);
      rec(k + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

// Generators of (b_1(y'), ..., b_q(y')) + (x)^N + J in the base ring.
std::vector<Poly> approximate_h(const Problem& pb, const std::vector<Poly>& by) {
  RingPtr base = pb.b.base_ring();
  std::vector<Poly> gens = by;
  for (auto& m : monomials_of_degree(base, pb.bound)) gens.push_back(m);
  for (const auto& j : pb.b.base_ideal) gens.push_back(j.to_ring(base));
  return gens;
}

std::vector<std::string> algebra_names(const FinitePresentation& b) {
  std::vector<std::string> out;
  for (auto i : b.algebra_vars()) out.push_back(b.ring->name(i));
  return out;
}

}  // namespace

ParameterPair choose_regular_pair(const Problem& pb, const NeronConfig& cfg) {
  RingPtr base = pb.b.base_ring();
  std::vector<Poly> jb;
  for (const auto& p : pb.b.base_ideal) jb.push_back(p.to_ring(base));
  Ideal J(base, jb);
  const int dim_a = krull_dim(J);
  if (dim_a != 2) throw std::invalid_argument("the base ring must have dimension 2, got " + std::to_string(dim_a));

  ElkikIdeal elk = elkik_ideal(pb.b, cfg.subset_bound);
  ParameterPair out;
  out.h0 = elk.ideal.gens().empty() ? std::vector<Poly>{} : elk.ideal.gb().gens;

  std::vector<Poly> hg = out.h0;
  Ideal amb = pb.b.ambient();
  for (const auto& g : amb.gens()) hg.push_back(g);
  Ideal ha = eliminate(Ideal(pb.b.ring, hg), algebra_names(pb.b)).to_ring(base);

  std::vector<Poly> cand;
  std::optional<Ideal> hy;  // H(y') + (x)^N + J, branch (b) only
  JetContext ctx = jet_context(pb);
  if (krull_dim(J + ha) == 0) {
    out.branch = 'a';
    cand = ha.gb().gens;
  } else {
    out.branch = 'b';
    std::vector<Poly> by;
    for (const auto& b : out.h0) by.push_back(ctx.normalize(at_point(pb, b), pb.bound));
    hy.emplace(base, approximate_h(pb, by));
    // Each b_i(y') and its truncations below each degree, simplest first.
    for (const auto& b : by) {
      if (b.is_zero()) continue;
      std::vector<bool> all(base->nvars(), true);
      for (std::uint32_t k = b.order_in(all) + 1; k <= b.total_degree(); ++k) cand.push_back(b.truncate(all, k));
      cand.push_back(b);
    }
    std::vector<Poly> uniq;
    for (auto& c : cand)
      if (std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(c);
    cand = std::move(uniq);
    std::stable_sort(cand.begin(), cand.end(), [](const Poly& a, const Poly& b) {
      if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
      return a.nterms() < b.nterms();
    });
  }
  auto try_pair = [&](const Poly& g0, const Poly& g1) {
    if (hy && (!hy->contains(g0) || !hy->contains(g1))) return false;
    Ideal j0 = J + Ideal(base, {g0});
    if (krull_dim(j0) != 1) return false;
    if (krull_dim(j0 + Ideal(base, {g1})) != 0) return false;
    out.gamma = g0;
    out.gamma1 = g1;
    return true;
  };
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (i != j && try_pair(cand[i], cand[j])) return out;

  // Seeded small integer combinations of the candidates.
  if (cand.size() >= 2) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto combo = [&]() {
      Poly p(base);
      for (const auto& c : cand) p += c.scale(Coeff(coef(rng)));
      return p;
    };
    for (int attempt = 0; attempt < 32; ++attempt) {
      Poly a = combo(), b = combo();
      if (a.is_zero() || b.is_zero()) continue;
      if (try_pair(a, b)) return out;
    }
  }
  throw NoRegularPair("no pair gamma, gamma' with J + (gamma, gamma') primary to the maximal ideal");
}

Absorbed absorb_parameters(const Problem& pb, const ParameterPair& pair, const NeronConfig& cfg) {
  Absorbed out;
  out.pb = pb;
  if (pair.branch == 'a') return out;
  RingPtr base = pb.b.base_ring();
  JetContext ctx = jet_context(pb);
  const std::size_t q = pair.h0.size();
  std::vector<Poly> by;
  for (const auto& b : pair.h0) by.push_back(at_point(pb, b));
  // gamma = sum b_i(y') z_i + residual with the residual in (x)^N + J.
  const std::vector<Poly> gens = approximate_h(pb, by);
  LiftCertificate l0 = lift(pair.gamma, gens), l1 = lift(pair.gamma1, gens);
  if (!l0.member() || !l1.member()) throw LiftFailed("gamma is not in H(y') + (x)^N");
  std::vector<Poly> zg(l0.coefficients.begin(), l0.coefficients.begin() + static_cast<std::ptrdiff_t>(q));
  std::vector<Poly> zg1(l1.coefficients.begin(), l1.coefficients.begin() + static_cast<std::ptrdiff_t>(q));
  for (auto& z : zg) z = ctx.normalize(z, pb.bound);
  for (auto& z : zg1) z = ctx.normalize(z, pb.bound);
  Poly res0 = pair.gamma, res1 = pair.gamma1;
  for (std::size_t i = 0; i < q; ++i) {
    res0 -= zg[i] * by[i];
    res1 -= zg1[i] * by[i];
  }
  std::vector<Poly> jb;
  for (const auto& j : pb.b.base_ideal) jb.push_back(j.to_ring(base));
  for (unsigned t = 1; t <= cfg.t_max && out.t == 0; ++t) {
    std::vector<Poly> mod = jb;
    mod.push_back(pair.gamma.pow(t));
    mod.push_back(pair.gamma1.pow(t));
    Ideal m(base, mod);
    if (m.contains(res0) && m.contains(res1)) out.t = t;
  }
  if (out.t == 0) throw LiftFailed("the lift of gamma leaves a residual outside (gamma^t, gamma'^t) for t <= t_max");
  log_step(cfg, 4, "t = " + std::to_string(out.t));

  std::vector<VarInfo> extra;
  for (std::size_t i = 0; i < 2 * q; ++i) {
    std::string nm = fresh_name(*pb.b.ring, "Ya" + std::to_string(i + 1), out.new_vars);
    out.new_vars.push_back(nm);
    extra.push_back({nm, VarRole::Algebra});
  }
  RingPtr ext = pb.b.ring->extended(extra);
  FinitePresentation& nb = out.pb.b;
  nb.ring = ext;
  for (auto& p : nb.base_ideal) p = p.to_ring(ext);
  for (auto& p : nb.relations) p = p.to_ring(ext);
  for (auto& inv : nb.inversions) inv.unit = inv.unit.to_ring(ext);
  Poly r0 = -pair.gamma.to_ring(ext), r1 = -pair.gamma1.to_ring(ext);
  for (std::size_t i = 0; i < q; ++i) {
    Poly b = pair.h0[i].to_ring(ext);
    r0 += b * Poly::var(ext, out.new_vars[i]);
    r1 += b * Poly::var(ext, out.new_vars[q + i]);
  }
  nb.relations.push_back(r0);
  nb.relations.push_back(r1);
  for (auto& z : zg) out.pb.map.push_back(z);
  for (auto& z : zg1) out.pb.map.push_back(z);
  return out;
}

Prepared prepare_free_conormal(const Problem& pb) {
  SymmetricAlgebra sym = symmetric_algebra_presentation(pb.b, "S");
  Prepared out;
  out.pb.bound = pb.bound;
  out.pb.map = pb.map;
  RingPtr base = pb.b.base_ring();
  for (std::size_t i = 0; i < sym.new_vars.size(); ++i) out.pb.map.push_back(Poly(base));
  const FinitePresentation& s = sym.presentation;
  std::vector<std::string> alg = algebra_names(s);
  std::vector<VarInfo> extra;
  std::vector<std::string> zs;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    std::string nm = fresh_name(*s.ring, "Z" + std::to_string(i + 1), zs);
    zs.push_back(nm);
    extra.push_back({nm, VarRole::Aux});
  }
  RingPtr ext = s.ring->extended(extra);
  FinitePresentation& nb = out.pb.b;
  nb.ring = ext;
  for (const auto& p : s.base_ideal) nb.base_ideal.push_back(p.to_ring(ext));
  for (const auto& p : s.relations) nb.relations.push_back(p.to_ring(ext));
  for (const auto& inv : s.inversions) nb.inversions.push_back({inv.var, inv.unit.to_ring(ext)});
  out.z_begin = nb.relations.size();
  for (const auto& z : zs) {
    nb.relations.push_back(Poly::var(ext, z));
    out.pb.map.push_back(Poly(base));
  }
  return out;
}

}  // namespace nd
