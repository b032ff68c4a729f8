#include "neron_internal.hpp"
#include "nd/errors.hpp"

namespace nd {

namespace {

std::vector<Poly> rename_images(const Problem& stage, const RingPtr& target, const std::vector<std::string>& ys) {
  const RingPtr& r = stage.b.ring;
  std::vector<Poly> img(r->nvars());
  for (std::size_t i = 0, a = 0; i < r->nvars(); ++i)
    img[i] = r->role(i) == VarRole::Base ? Poly::var(target, r->name(i)) : Poly::var(target, ys[a++]);
  return img;
}

// t_i = H_i(Y) applied to eps, for the T layout of one stage.
void place_t(const JetContext& ctx, const Problem& stage, const JacobianSystem& sys,
             const std::vector<std::vector<std::string>>& tvars, const std::vector<Poly>& img,
             const RingPtr& ring, const std::vector<JetSeries>& eps, JetPoint& pt) {
  const std::size_t n = eps.size();
  for (std::size_t i = 0; i < sys.minors.size(); ++i) {
    PolyMatrix h = completed_jacobian(stage, sys, i).substitute(ring, img);
    for (std::size_t m = 0; m < n; ++m) {
      if (pt.count(tvars[i][m])) continue;
      JetSeries acc = ctx.make(Poly(ctx.ring()), ctx.cap());
      for (std::size_t j = 0; j < n; ++j) {
        if (h.at(m, j).is_zero()) continue;
        acc = ctx.add(acc, ctx.mul(ctx.evaluate(h.at(m, j), pt), eps[j]));
      }
      pt[tvars[i][m]] = acc;
    }
  }
}

}  // namespace

JetPoint lift_point(const JetInput& in, const NeronConfig& cfg) {
  const Problem& st = *in.stage;
  const Layout& lay = *in.layout;
  const RingPtr& RB = lay.ring;
  JetContext ctx = jet_context(st);
  const unsigned N = st.bound;
  const std::size_t n = lay.y1.size();
  std::vector<JetSeries> y;
  for (const auto& p : st.map) y.push_back(ctx.make(p, N));

  // Stage 1: y is known only through y', so eps = (y - y') / d'^2 = 0.
  JetPoint pt;
  const Poly d1 = in.sys1->d.to_ring(ctx.ring()), d = in.sys->d.to_ring(ctx.ring());
  std::vector<JetSeries> eps;
  for (std::size_t j = 0; j < n; ++j) eps.push_back(ctx.divide(ctx.sub(y[j], ctx.make(st.map[j], N)), d1 * d1));
  for (std::size_t j = 0; j < n; ++j) pt[lay.y1[j]] = y[j];
  place_t(ctx, st, *in.sys1, lay.t1, rename_images(st, RB, lay.y1), RB, eps, pt);
  std::vector<Poly> sys1 = in.h1;
  for (const auto& g : in.g1) sys1.push_back(g);
  std::vector<std::string> unknowns = lay.y1;
  for (std::size_t k = 0; k < in.g1.size(); ++k) unknowns.push_back(lay.t1[0][k]);
  HenselStats hs;
  pt = hensel_lift(ctx, sys1, unknowns, pt, N, &hs);
  log_step(cfg, 16, "Newton sweeps: " + std::to_string(hs.sweeps));
  for (std::size_t i = 0; i < 3; ++i) pt[lay.w1[i]] = ctx.inverse(ctx.evaluate(in.units1[i], pt));

  // Stage 2: nu = (y - omega(Y')) / d^2 at the largest precision that divides.
  std::vector<JetSeries> nu;
  for (unsigned prec = N; prec > 0 && nu.empty(); --prec) {
    try {
      for (std::size_t j = 0; j < n; ++j)
        nu.push_back(ctx.divide(ctx.make(ctx.sub(y[j], pt.at(lay.y1[j])).rep, prec), d * d));
    } catch (const NotDivisibleInJets&) {
      nu.clear();
    }
  }
  if (nu.empty()) throw NotDivisibleInJets("y - omega(Y') is not divisible by d^2 at any precision");
  for (std::size_t j = 0; j < n; ++j) pt[lay.y2[j]] = y[j];
  place_t(ctx, st, *in.sys, lay.t2, rename_images(st, RB, lay.y1), RB, nu, pt);
  for (std::size_t i = 0; i < 3; ++i) pt[lay.w2[i]] = ctx.inverse(ctx.evaluate(in.units2[i], pt));
  return pt;
}

}  // namespace nd
