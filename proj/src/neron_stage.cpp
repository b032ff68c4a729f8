#include <stdexcept>
#include <unordered_map>

#include "neron_internal.hpp"

namespace nd {

namespace {

class PowerCache {
 public:
  explicit PowerCache(const Poly& base) : pows_{Poly::constant(base.ring(), 1), base} {}
  const Poly& operator()(unsigned e) {
    while (pows_.size() <= e) pows_.push_back(pows_.back() * pows_[1]);
    return pows_[e];
  }

 private:
  std::vector<Poly> pows_;
};

}  // namespace

std::vector<Poly> divided_differences(const Poly& p, const std::vector<std::size_t>& vars,
                                      const std::vector<Poly>& a, const std::vector<Poly>& b,
                                      const std::vector<Poly>& rest, const RingPtr& target) {
  const RingPtr& src = p.ring();
  const std::size_t n = vars.size();
  std::vector<PowerCache> ap, bp;
  for (std::size_t m = 0; m < n; ++m) {
    ap.emplace_back(a[m]);
    bp.emplace_back(b[m]);
  }
  std::vector<bool> in_vars(src->nvars(), false);
  for (auto v : vars) in_vars[v] = true;
  std::unordered_map<Monomial, Poly, MonomialHash> rest_cache;
  std::vector<std::vector<Term>> acc(n);
  for (const auto& t : p.terms()) {
    Monomial rm = t.m;
    for (auto v : vars) rm.set(v, 0);
    auto it = rest_cache.find(rm);
    if (it == rest_cache.end())
      it = rest_cache.emplace(rm, Poly::monomial(src, rm, Coeff(1)).substitute(target, rest)).first;
    Poly head = it->second.scale(t.c);
    // head * prod_{i<m} b_i^e_i runs forward; the a-side suffix is built backward.
    std::vector<Poly> suffix(n + 1, Poly::constant(target, 1));
    for (std::size_t m = n; m-- > 0;)
      suffix[m] = t.m[vars[m]] ? suffix[m + 1] * ap[m](t.m[vars[m]]) : suffix[m + 1];
    Poly prefix = head;
    for (std::size_t m = 0; m < n; ++m) {
      const unsigned e = t.m[vars[m]];
      if (e == 0) continue;
      Poly mid(target);
      for (unsigned k = 0; k < e; ++k) mid += ap[m](k) * bp[m](e - 1 - k);
      Poly piece = prefix * mid * suffix[m + 1];
      for (const auto& term : piece.terms()) acc[m].push_back(term);
      prefix = prefix * bp[m](e);
    }
  }
  std::vector<Poly> out;
  for (auto& terms : acc) out.push_back(Poly::from_terms(target, std::move(terms)));
  return out;
}

Poly geometric_cofactor(const Poly& wu, unsigned p) {
  Poly s(wu.ring()), pw = Poly::constant(wu.ring(), 1);
  for (unsigned i = 0; i < p; ++i) {
    s += pw;
    pw = pw * wu;
  }
  return s;
}

StageOutput build_stage(const StageInput& in) {
  const Problem& pb = *in.pb;
  const JacobianSystem& sys = *in.sys;
  const RingPtr& R0 = pb.b.ring;
  const RingPtr& RB = in.ring;
  const auto alg = pb.b.algebra_vars();
  const std::size_t n = alg.size(), r = sys.subset.size(), q = sys.minors.size();
  std::vector<bool> alg_mask(R0->nvars(), false);
  for (auto v : alg) alg_mask[v] = true;

  std::vector<Poly> img(R0->nvars());
  for (std::size_t i = 0, k = 0; i < R0->nvars(); ++i)
    img[i] = alg_mask[i] ? in.center.at(k++) : Poly::var(RB, R0->name(i));

  StageOutput out;
  std::vector<Poly> f;
  for (auto k : sys.subset) {
    f.push_back(pb.b.relations[k]);
    out.p = std::max(out.p, f.back().degree_in(alg_mask));
  }

  // W_j = sum_i sum_m G_i(c)_{jm} T_{i,m}.
  out.w.assign(n, Poly(RB));
  for (std::size_t i = 0; i < q; ++i) {
    PolyMatrix g = completed_jacobian(pb, sys, i).adjugate().scale(sys.ls[i]).substitute(RB, img);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m)
        if (!g.at(j, m).is_zero()) out.w[j] += g.at(j, m) * Poly::var(RB, in.tvars[i][m]);
  }
  std::vector<Poly> ynew, a_side;
  for (std::size_t j = 0; j < n; ++j) {
    ynew.push_back(Poly::var(RB, in.ynew[j]));
    a_side.push_back(in.sigma * (ynew[j] - in.center[j]));
    out.h.push_back(a_side.back() - in.dd * out.w[j]);
  }
  std::vector<Poly> b_side;
  for (std::size_t j = 0; j < n; ++j) b_side.push_back(in.dd * out.w[j]);

  // Taylor expansion in formal increments V.
  std::vector<VarInfo> vext;
  std::vector<std::string> vnames;
  for (std::size_t j = 0; j < n; ++j) {
    vnames.push_back(fresh_name(*RB, "tay_v" + std::to_string(j + 1), vnames));
    vext.push_back({vnames.back(), VarRole::Tag});
  }
  RingPtr RV = RB->extended(vext);
  std::vector<std::size_t> vidx;
  std::vector<bool> vmask(RV->nvars(), false);
  for (const auto& nm : vnames) {
    vidx.push_back(RV->require_index(nm));
    vmask[vidx.back()] = true;
  }
  std::vector<Poly> imgv(R0->nvars());
  for (std::size_t i = 0, k = 0; i < R0->nvars(); ++i) {
    if (alg_mask[i]) {
      imgv[i] = in.center[k].to_ring(RV) + Poly::var(RV, vidx[k]);
      ++k;
    } else {
      imgv[i] = Poly::var(RV, R0->name(i));
    }
  }
  std::vector<Poly> to_rb(RV->nvars()), rest(RV->nvars());
  for (std::size_t i = 0, k = 0; i < RV->nvars(); ++i) {
    if (vmask[i]) {
      to_rb[i] = out.w[k++];
      rest[i] = Poly(RB);
    } else {
      to_rb[i] = rest[i] = Poly::var(RB, RV->name(i));
    }
  }

  out.pc = sys.p.substitute(RB, img);
  PowerCache sp(in.sigma), dp(in.dd);
  const Poly sig_rv = in.sigma.to_ring(RV);
  PowerCache spv(sig_rv);
  for (std::size_t k = 0; k < r; ++k) {
    Poly full = f[k].substitute(RV, imgv);
    std::vector<std::vector<Term>> by_deg(out.p + 1);
    for (const auto& t : full.terms()) by_deg.at(t.m.degree_in(vmask)).push_back(t);
    std::vector<Poly> fj;
    for (auto& terms : by_deg) fj.push_back(Poly::from_terms(RV, std::move(terms)));
    out.fc.push_back(fj[0].to_ring(RB));
    Poly qk(RB), phi(RV);
    for (unsigned j = 0; j <= out.p; ++j) {
      if (fj[j].is_zero()) continue;
      phi += spv(out.p - j) * fj[j];
      if (j >= 2) qk += sp(out.p - j) * dp(j - 2) * fj[j].substitute(RB, to_rb);
    }
    const Poly tk = Poly::var(RB, in.tvars[0][k]);
    if (fj.size() > 1 && fj[1].substitute(RB, to_rb) != out.pc * tk)
      throw std::logic_error("linear Taylor term differs from P(c) T_k");
    out.q.push_back(qk);
    out.g.push_back(sp(out.p) * (in.b.at(k) + tk) + qk);
    out.hcoef.push_back(divided_differences(phi, vidx, a_side, b_side, rest, RB));
  }

  std::vector<std::size_t> tcols;
  for (std::size_t k = 0; k < r; ++k) tcols.push_back(RB->require_index(in.tvars[0][k]));
  out.s1 = jacobian(out.g, tcols, RB).det();

  std::vector<Poly> base_img = img;
  std::vector<Poly> ddp = divided_differences(sys.p, alg, ynew, in.center, base_img, RB);
  out.s2 = in.sigma * in.sigma;
  for (std::size_t m = 0; m < n; ++m) out.s2 += out.w[m] * ddp[m];
  return out;
}

}  // namespace nd
