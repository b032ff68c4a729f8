#include <algorithm>
#include <set>

#include "neron_internal.hpp"

namespace nd {

namespace {

bool is_local_unit(const Poly& u) {
  if (u.constant_term() == 0) return false;
  for (std::size_t i = 0; i < u.ring()->nvars(); ++i)
    if (u.ring()->role(i) != VarRole::Base && u.uses_var(i)) return false;
  return true;
}

CheckResult check_blocks(const DesingCertificate& c) {
  CheckResult out{"standard smooth", false, ""};
  const FinitePresentation& b = c.result;
  if (c.trivial) {
    if (!c.smooth) {
      out.detail = "missing smoothness witness";
      return out;
    }
    out.ok = check_smooth_certificate(b, *c.smooth, &out.detail);
    return out;
  }
  const auto rels = b.all_relations();
  std::vector<int> owner(rels.size(), -1);
  std::set<std::string> seen_vars;
  for (std::size_t k = 0; k < c.blocks.size(); ++k) {
    const auto& blk = c.blocks[k];
    if (blk.vars.size() != blk.eqs.size()) {
      out.detail = "block " + std::to_string(k + 1) + " is not square";
      return out;
    }
    for (const auto& v : blk.vars)
      if (!b.ring->index_of(v) || !seen_vars.insert(v).second) {
        out.detail = "block variable " + v + " unknown or repeated";
        return out;
      }
    for (auto e : blk.eqs) {
      if (e >= rels.size() || owner[e] != -1) {
        out.detail = "block equation index invalid or repeated";
        return out;
      }
      owner[e] = static_cast<int>(k);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    out.detail = "a relation is not covered by any block";
    return out;
  }
  for (std::size_t k = 0; k < c.blocks.size(); ++k) {
    const auto& blk = c.blocks[k];
    std::vector<Poly> f;
    for (auto e : blk.eqs) f.push_back(rels[e]);
    for (std::size_t later = k + 1; later < c.blocks.size(); ++later)
      for (const auto& v : c.blocks[later].vars) {
        std::size_t vi = b.ring->require_index(v);
        for (const auto& p : f)
          if (p.uses_var(vi)) {
            out.detail = "block " + std::to_string(k + 1) + " depends on a later variable " + v;
            return out;
          }
      }
    std::vector<std::size_t> cols;
    for (const auto& v : blk.vars) cols.push_back(b.ring->require_index(v));
    Poly det = jacobian(f, cols, b.ring).det();
    Poly prod = Poly::constant(b.ring, 1);
    for (const auto& u : blk.units) {
      bool inverted = std::any_of(b.inversions.begin(), b.inversions.end(),
                                  [&](const Inversion& inv) { return inv.unit.to_ring(b.ring) == u.to_ring(b.ring); });
      if (!inverted && !is_local_unit(u)) {
        out.detail = "block " + std::to_string(k + 1) + " uses a factor that is not a unit";
        return out;
      }
      prod = prod * u.to_ring(b.ring);
    }
    if (det != prod) {
      out.detail = "block " + std::to_string(k + 1) + " determinant differs from its unit factors";
      return out;
    }
  }
  out.ok = true;
  return out;
}

CheckResult check_memberships(const DesingCertificate& c) {
  CheckResult out{"I maps into B'", false, ""};
  const auto& rels = c.problem.b.relations;
  if (c.memberships.size() != rels.size()) {
    out.detail = "one certificate per generator expected";
    return out;
  }
  Ideal amb = c.result.ambient();
  const auto& gens = amb.gens();
  const RingPtr& R = c.result.ring;
  for (std::size_t m = 0; m < rels.size(); ++m) {
    const Membership& mb = c.memberships[m];
    if (mb.target.to_ring(R) != rels[m].to_ring(R)) {
      out.detail = "certificate " + std::to_string(m + 1) + " is for a different polynomial";
      return out;
    }
    if (mb.coeffs.size() != gens.size()) {
      out.detail = "certificate " + std::to_string(m + 1) + " has the wrong arity";
      return out;
    }
    std::vector<Term> acc;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (mb.coeffs[k].is_zero()) continue;
      Poly prod = mb.coeffs[k].to_ring(R) * gens[k];
      for (const auto& t : prod.terms()) acc.push_back(t);
    }
    if (Poly::from_terms(R, std::move(acc)) != mb.target.to_ring(R)) {
      out.detail = "certificate " + std::to_string(m + 1) + " does not re-expand to its generator";
      return out;
    }
  }
  out.ok = true;
  return out;
}

CheckResult check_jets(const DesingCertificate& c) {
  CheckResult out{"jets factor v", false, ""};
  if (c.neff == 0) {
    out.detail = "N_eff is 0: indeterminate";
    return out;
  }
  JetContext ctx = jet_context(c.problem);
  const RingPtr& R = c.result.ring;
  for (std::size_t i = 0; i < R->nvars(); ++i) {
    if (R->role(i) == VarRole::Base) continue;
    auto it = c.point.find(R->name(i));
    if (it == c.point.end()) {
      out.detail = "no jet for " + R->name(i);
      return out;
    }
    if (it->second.prec < c.neff) {
      out.detail = "jet for " + R->name(i) + " below N_eff";
      return out;
    }
  }
  for (const auto& g : c.result.all_relations()) {
    JetSeries v = ctx.evaluate(g, c.point);
    if (v.prec < c.neff || !ctx.normalize(v.rep, c.neff).is_zero()) {
      out.detail = "relation does not vanish at the point modulo (x)^" + std::to_string(c.neff);
      return out;
    }
  }
  const auto alg = c.problem.b.algebra_vars();
  for (std::size_t j = 0; j < alg.size(); ++j) {
    const std::string& nm = c.problem.b.ring->name(alg[j]);
    JetSeries want = ctx.make(c.problem.map[j], c.neff);
    if (!ctx.equal(c.point.at(nm), want)) {
      out.detail = "composed jet for " + nm + " differs from the map";
      return out;
    }
  }
  out.ok = true;
  return out;
}

CheckResult check_identities(const DesingCertificate& c) {
  CheckResult out{"identity battery", false, ""};
  if (c.trivial) {
    out.ok = true;
    out.detail = "trivial certificate";
    return out;
  }
  const auto& orig = c.problem.b.relations;
  const auto& st = c.stage.b.relations;
  for (std::size_t m = 0; m < orig.size(); ++m)
    if (m >= st.size() || orig[m].to_ring(c.stage.b.ring) != st[m]) {
      out.detail = "the prepared presentation does not extend I";
      return out;
    }
  for (const auto* sys : {&c.sys, &c.sys1}) {
    if (sys->d != sys->unit * sys->gamma.pow(sys->exponent) || !is_local_unit(sys->unit)) {
      out.detail = "d is not a unit times a power of gamma";
      return out;
    }
    if (!identity_battery(c.stage, *sys, &out.detail)) return out;
  }
  if (!m_primary_gate(c.stage, c.sys.d, c.sys1.d)) {
    out.detail = "(d^3, d'^3) does not contain (x)^N";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace

std::vector<CheckResult> verify_certificate(const DesingCertificate& c) {
  return {check_blocks(c), check_memberships(c), check_jets(c), check_identities(c)};
}

}  // namespace nd
