#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "neron_internal.hpp"
#include "nd/errors.hpp"

namespace nd {

namespace {

std::vector<std::vector<std::string>> t_layout(std::size_t q, std::size_t r, std::size_t n, const std::string& stem,
                                               const Ring& ring, std::vector<std::string>& taken) {
  std::vector<std::vector<std::string>> out(q, std::vector<std::string>(n));
  for (std::size_t m = 0; m < r; ++m) {
    taken.push_back(fresh_name(ring, stem + std::to_string(m + 1), taken));
    for (std::size_t i = 0; i < q; ++i) out[i][m] = taken.back();
  }
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t m = r; m < n; ++m) {
      taken.push_back(fresh_name(ring, stem + std::to_string(i + 1) + "_" + std::to_string(m + 1), taken));
      out[i][m] = taken.back();
    }
  return out;
}

Layout make_layout(const Problem& stage, const JacobianSystem& sys, const JacobianSystem& sys1) {
  const RingPtr& R0 = stage.b.ring;
  const auto alg = stage.b.algebra_vars();
  const std::size_t n = alg.size();
  Layout lay;
  std::vector<std::string> taken;
  for (auto i : alg) {
    taken.push_back(fresh_name(*R0, R0->name(i) + "'", taken));
    lay.y1.push_back(taken.back());
    lay.y2.push_back(R0->name(i));
  }
  lay.t1 = t_layout(sys1.minors.size(), sys1.subset.size(), n, "T", *R0, taken);
  for (const char* s : {"inv_s", "inv_s1", "inv_s2"}) {
    taken.push_back(fresh_name(*R0, s, taken));
    lay.w1.push_back(taken.back());
  }
  lay.t2 = t_layout(sys.minors.size(), sys.subset.size(), n, "Tt", *R0, taken);
  for (const char* s : {"inv_st", "inv_st1", "inv_st2"}) {
    taken.push_back(fresh_name(*R0, s, taken));
    lay.w2.push_back(taken.back());
  }
  std::vector<VarInfo> vars;
  for (std::size_t i = 0; i < R0->nvars(); ++i)
    if (R0->role(i) == VarRole::Base) vars.push_back(R0->vars()[i]);
  auto add_t = [&](const std::vector<std::vector<std::string>>& t) {
    std::vector<std::string> seen;
    for (const auto& row : t)
      for (const auto& nm : row)
        if (std::find(seen.begin(), seen.end(), nm) == seen.end()) seen.push_back(nm);
    // Shared T_1..T_r first, then T_{i,m} by i.
    for (const auto& nm : seen) vars.push_back({nm, VarRole::Aux});
  };
  for (const auto& y : lay.y1) vars.push_back({y, VarRole::Algebra});
  add_t(lay.t1);
  for (const auto& w : lay.w1) vars.push_back({w, VarRole::Inverse});
  for (const auto& y : lay.y2) vars.push_back({y, VarRole::Algebra});
  add_t(lay.t2);
  for (const auto& w : lay.w2) vars.push_back({w, VarRole::Inverse});
  lay.ring = Ring::make(R0->field(), vars);
  return lay;
}

// p = sum c_i gens_i exactly, else throws.
std::vector<Poly> lift_exact(const Poly& p, const std::vector<Poly>& gens, const char* what) {
  LiftCertificate lc = lift(p, gens);
  if (!lc.member()) throw LiftFailed(what);
  return lc.coefficients;
}

}  // namespace

DesingCertificate desingularize(const Problem& pb, const NeronConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  auto mark = [&](int step, const std::string& msg) {
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log_step(cfg, step, msg + " (" + std::to_string(t) + " s)");
  };
  check_problem(pb);
  DesingCertificate cert;
  cert.problem = pb;
  JetContext ctx = jet_context(pb);

  SmoothSearch ss = standard_smooth_certificate(pb.b, cfg.subset_bound);
  if (ss.status == SmoothStatus::Smooth) {
    cert.trivial = true;
    cert.smooth = ss.certificate;
    cert.result = pb.b;
    const std::size_t nj = pb.b.base_ideal.size();
    const std::size_t namb = nj + pb.b.relations.size() + pb.b.inversions.size();
    for (std::size_t m = 0; m < pb.b.relations.size(); ++m) {
      cert.labels.push_back("g" + std::to_string(m + 1));
      Membership mb{pb.b.relations[m], std::vector<Poly>(namb, Poly(pb.b.ring))};
      mb.coeffs[nj + m] = Poly::constant(pb.b.ring, 1);
      cert.memberships.push_back(std::move(mb));
    }
    const auto alg = pb.b.algebra_vars();
    for (std::size_t j = 0; j < alg.size(); ++j) cert.point[pb.b.ring->name(alg[j])] = ctx.make(pb.map[j], pb.bound);
    cert.neff = pb.bound;
    mark(1, "B is smooth over A; trivial certificate");
    return cert;
  }

  try {
    cert.pair = choose_regular_pair(pb, cfg);
  } catch (const NoRegularPair&) {
    throw BoundTooSmall();
  }
  mark(3, "gamma = " + cert.pair.gamma.to_string() + ", gamma' = " + cert.pair.gamma1.to_string());
  Absorbed ab = absorb_parameters(pb, cert.pair, cfg);
  cert.t = ab.t;
  Prepared prep = prepare_free_conormal(ab.pb);
  cert.stage = prep.pb;
  const Problem& st = cert.stage;
  mark(6, std::to_string(st.b.relations.size()) + " relations in " + std::to_string(st.b.algebra_vars().size()) +
              " variables");
  cert.sys = find_jacobian_system(st, cert.pair.gamma, cfg);
  cert.sys1 = find_jacobian_system(st, cert.pair.gamma1, cfg);
  const JacobianSystem& sys = cert.sys;
  const JacobianSystem& sys1 = cert.sys1;
  if (!m_primary_gate(st, sys.d, sys1.d)) throw BoundTooSmall();
  mark(10, "gate holds for d = " + sys.d.to_string() + ", d' = " + sys1.d.to_string());
  if (sys1.subset.size() != st.b.relations.size())
    throw NotFound("the subsystem for d' must contain every relation to certify I(Y') in d^3 D");

  Layout lay = make_layout(st, sys, sys1);
  const RingPtr& RB = lay.ring;
  const RingPtr base = st.b.base_ring();
  const auto alg = st.b.algebra_vars();
  const std::size_t n = alg.size(), nj = st.b.base_ideal.size();
  const std::size_t r1 = sys1.subset.size(), r2 = sys.subset.size(), nrel = st.b.relations.size();

  std::vector<Poly> jb, jr;
  for (const auto& j : st.b.base_ideal) {
    jb.push_back(j.to_ring(base));
    jr.push_back(j.to_ring(RB));
  }
  const Poly d = sys.d.to_ring(base), d1 = sys1.d.to_ring(base);
  std::vector<Poly> modgens{d.pow(3), d1.pow(3)};
  for (const auto& j : jb) modgens.push_back(j);

  // Stage 1: s and b'.
  Poly rho_in = at_point(st, sys1.p) - d1;
  std::vector<Poly> cr = lift_exact(rho_in, modgens, "P'(y') - d' is not in (d^3, d'^3) + J");
  const Poly s = (Poly::constant(base, 1) + cr[1] * d1 * d1).to_ring(RB);
  const Poly a_r = cr[0].to_ring(RB);
  std::vector<Poly> alpha, beta_d1;
  std::vector<std::vector<Poly>> lam;
  for (auto k : sys1.subset) {
    std::vector<Poly> c = lift_exact(at_point(st, st.b.relations[k]), modgens, "f'(y') is not in (d^3, d'^3) + J");
    alpha.push_back(c[0].to_ring(RB));
    beta_d1.push_back((c[1] * d1).to_ring(RB));
    std::vector<Poly> l;
    for (std::size_t i = 0; i < nj; ++i) l.push_back(c[2 + i].to_ring(RB));
    lam.push_back(l);
  }
  StageInput in1;
  in1.pb = &st;
  in1.sys = &sys1;
  in1.ring = RB;
  {
    auto img = point_images(st, RB);
    for (auto i : alg) in1.center.push_back(img[i]);
  }
  in1.ynew = lay.y1;
  in1.tvars = lay.t1;
  in1.dd = d1.to_ring(RB);
  in1.sigma = s;
  in1.b = beta_d1;
  StageOutput o1 = build_stage(in1);
  mark(14, "first stage built, p' = " + std::to_string(o1.p));

  // Ambient order of B': J, h, g, h~, g~, then the six inverse relations.
  const std::size_t ih1 = nj, ig1 = nj + n, ih2 = ig1 + r1, ig2 = ih2 + n, iinv = ig2 + r2, namb = iinv + 6;
  const Poly w = Poly::var(RB, lay.w1[0]);
  const Poly d_rb = d.to_ring(RB), d1_rb = d1.to_ring(RB);
  std::vector<Poly> mu;
  for (std::size_t i = 0; i < nj; ++i) mu.push_back(cr[2 + i].to_ring(RB));

  std::vector<Poly> img_y1(st.b.ring->nvars()), img_y2(st.b.ring->nvars());
  for (std::size_t i = 0, a = 0; i < img_y1.size(); ++i) {
    if (st.b.ring->role(i) == VarRole::Base) {
      img_y1[i] = img_y2[i] = Poly::var(RB, st.b.ring->name(i));
    } else {
      img_y1[i] = Poly::var(RB, lay.y1[a]);
      img_y2[i] = Poly::var(RB, lay.y2[a]);
      ++a;
    }
  }
  // e_m and the D-certificate of rel_m(Y') - d^3 e_m, indexed by relation.
  std::vector<Poly> e(nrel);
  std::vector<std::vector<Poly>> dcert(nrel);
  const unsigned p1 = o1.p;
  const Poly sp1 = s.pow(p1), sp1m = p1 ? s.pow(p1 - 1) : Poly(RB), wp1 = w.pow(p1);
  const Poly geo1 = geometric_cofactor(w * s, p1);
  for (std::size_t k = 0; k < r1; ++k) {
    const std::size_t m = sys1.subset[k];
    const Poly tk = Poly::var(RB, lay.t1[0][k]);
    Poly rho = sp1 * alpha[k] + sp1m * d1_rb * a_r * tk;
    e[m] = wp1 * rho;
    std::vector<Poly> c(namb, Poly(RB));
    for (std::size_t l = 0; l < nj; ++l) c[l] = wp1 * (sp1 * lam[k][l] + sp1m * d1_rb * tk * mu[l]);
    for (std::size_t j = 0; j < n; ++j) c[ih1 + j] = wp1 * o1.hcoef[k][j];
    c[ig1 + k] = wp1 * d1_rb * d1_rb;
    c[iinv + 0] = -geo1 * st.b.relations[m].substitute(RB, img_y1);
    dcert[m] = std::move(c);
  }
  mark(15, "I(Y') certified in d^3 D");

  // Stage 2.
  Poly sum_ce(RB);
  std::vector<Poly> r2cert(namb, Poly(RB));
  for (std::size_t l = 0; l < nj; ++l) r2cert[l] = sys.p_coeffs[l].substitute(RB, img_y1);
  for (std::size_t m = 0; m < nrel; ++m) {
    Poly cm = sys.p_coeffs[nj + m].substitute(RB, img_y1);
    if (cm.is_zero()) continue;
    sum_ce += cm * e[m];
    for (std::size_t k = 0; k < namb; ++k)
      if (!dcert[m][k].is_zero()) r2cert[k] += cm * dcert[m][k];
  }
  const Poly st_sigma = Poly::constant(RB, 1) + d_rb * d_rb * sum_ce;
  StageInput in2;
  in2.pb = &st;
  in2.sys = &sys;
  in2.ring = RB;
  for (auto i : alg) in2.center.push_back(img_y1[i]);
  in2.ynew = lay.y2;
  in2.tvars = lay.t2;
  in2.dd = d_rb;
  in2.sigma = st_sigma;
  for (auto k : sys.subset) in2.b.push_back(d_rb * e[k]);
  StageOutput o2 = build_stage(in2);
  mark(19, "second stage built, p = " + std::to_string(o2.p));

  // B'.
  FinitePresentation& res = cert.result;
  res.ring = RB;
  res.base_ideal = jr;
  for (const auto& x : o1.h) res.relations.push_back(x);
  for (const auto& x : o1.g) res.relations.push_back(x);
  for (const auto& x : o2.h) res.relations.push_back(x);
  for (const auto& x : o2.g) res.relations.push_back(x);
  const std::vector<Poly> units1{s, o1.s1, o1.s2}, units2{st_sigma, o2.s1, o2.s2};
  for (std::size_t i = 0; i < 3; ++i) res.inversions.push_back({lay.w1[i], units1[i]});
  for (std::size_t i = 0; i < 3; ++i) res.inversions.push_back({lay.w2[i], units2[i]});
  for (std::size_t j = 0; j < n; ++j) cert.labels.push_back("h" + std::to_string(j + 1));
  for (std::size_t k = 0; k < r1; ++k) cert.labels.push_back("g" + std::to_string(k + 1));
  for (std::size_t j = 0; j < n; ++j) cert.labels.push_back("ht" + std::to_string(j + 1));
  for (std::size_t k = 0; k < r2; ++k) cert.labels.push_back("gt" + std::to_string(k + 1));
  for (const auto& nm : lay.w1) cert.labels.push_back(nm);
  for (const auto& nm : lay.w2) cert.labels.push_back(nm);

  auto range = [](std::size_t from, std::size_t count) {
    std::vector<std::size_t> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = from + i;
    return v;
  };
  // Block indices refer to all_relations(): relations, then inverse relations.
  const std::size_t rh1 = 0, rg1 = n, rh2 = n + r1, rg2 = 2 * n + r1, rinv = 2 * n + r1 + r2;
  std::vector<std::string> t1_shared(r1), t2_shared(r2);
  for (std::size_t k = 0; k < r1; ++k) t1_shared[k] = lay.t1[0][k];
  for (std::size_t k = 0; k < r2; ++k) t2_shared[k] = lay.t2[0][k];
  cert.blocks.push_back({t1_shared, range(rg1, r1), {o1.s1}});
  cert.blocks.push_back({lay.y1, range(rh1, n), std::vector<Poly>(n, s)});
  cert.blocks.push_back({lay.w1, range(rinv, 3), units1});
  cert.blocks.push_back({t2_shared, range(rg2, r2), {o2.s1}});
  cert.blocks.push_back({lay.y2, range(rh2, n), std::vector<Poly>(n, st_sigma)});
  cert.blocks.push_back({lay.w2, range(rinv + 3, 3), units2});

  // Memberships of the original generators.
  const unsigned p2 = o2.p;
  const Poly wt = Poly::var(RB, lay.w2[0]);
  const Poly sp2 = st_sigma.pow(p2), sp2m = p2 ? st_sigma.pow(p2 - 1) : Poly(RB), wp2 = wt.pow(p2);
  const Poly geo2 = geometric_cofactor(wt * st_sigma, p2);
  for (std::size_t m = 0; m < pb.b.relations.size(); ++m) {
    auto it = std::find(sys.subset.begin(), sys.subset.end(), m);
    if (it == sys.subset.end())
      throw NotFound("original relation " + std::to_string(m + 1) + " is outside the subsystem for d");
    const std::size_t k = static_cast<std::size_t>(it - sys.subset.begin());
    const Poly tk = Poly::var(RB, lay.t2[0][k]);
    Membership mb;
    mb.target = pb.b.relations[m].to_ring(RB);
    mb.coeffs.assign(namb, Poly(RB));
    for (std::size_t i = 0; i < namb; ++i) {
      Poly v = sp2 * dcert[m][i] + sp2m * d_rb * tk * r2cert[i];
      if (!v.is_zero()) mb.coeffs[i] = wp2 * v;
    }
    for (std::size_t j = 0; j < n; ++j) mb.coeffs[ih2 + j] += wp2 * o2.hcoef[k][j];
    mb.coeffs[ig2 + k] += wp2 * d_rb * d_rb;
    mb.coeffs[iinv + 3] += -geo2 * st.b.relations[m].substitute(RB, img_y2);
    cert.memberships.push_back(std::move(mb));
  }
  cert.q1 = o1.q;
  cert.q2 = o2.q;
  cert.t1 = lay.t1;
  cert.t2 = lay.t2;
  mark(20, "membership certificates assembled");

  JetInput ji;
  ji.stage = &st;
  ji.sys = &sys;
  ji.sys1 = &sys1;
  ji.layout = &lay;
  ji.h1 = o1.h;
  ji.g1 = o1.g;
  ji.h2 = o2.h;
  ji.g2 = o2.g;
  ji.units1 = units1;
  ji.units2 = units2;
  cert.point = lift_point(ji, cfg);
  cert.neff = pb.bound;
  for (const auto& [name, jet] : cert.point) cert.neff = std::min(cert.neff, jet.prec);
  mark(21, "jets lifted, N_eff = " + std::to_string(cert.neff));
  return cert;
}

}  // namespace nd
