#include "doctest.h"
#include "nd/errors.hpp"
#include "nd/jets.hpp"

using namespace nd;

namespace {

RingPtr base2(Field f = Field::rationals()) {
  return Ring::make(f, {{"x1", VarRole::Base}, {"x2", VarRole::Base}});
}

using Series = std::vector<mpq_class>;

Series smul(const Series& a, const Series& b) {
  Series r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Series sinv(const Series& a) {
  Series r(a.size(), 0);
  r[0] = 1 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    mpq_class s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r[k] = -s / a[0];
  }
  return r;
}

// Scalar Newton for y^2 - (1 + x) on univariate truncated series.
Series newton_sqrt(std::size_t prec) {
  Series y(prec, 0), c(prec, 0);
  y[0] = 1;
  c[0] = 1;
  if (prec > 1) c[1] = 1;
  for (int it = 0; it < 8; ++it) {
    Series f = smul(y, y);
    for (std::size_t i = 0; i < prec; ++i) f[i] -= c[i];
    Series d = y;
    for (auto& v : d) v *= 2;
    Series step = smul(f, sinv(d));
    for (std::size_t i = 0; i < prec; ++i) y[i] -= step[i];
  }
  return y;
}

}  // namespace

TEST_CASE("jet arithmetic") {
  auto B = base2();
  JetContext ctx(B, Ideal(B, {}), 20);
  auto j = [&](const char* s, unsigned p) { return ctx.make(parse_poly(B, s), p); };
  auto s = ctx.add(j("1 + x1", 5), j("x1^2", 3));
  CHECK(s.prec == 3);
  CHECK(s.rep == parse_poly(B, "1 + x1 + x1^2"));
  auto m = ctx.mul(j("x1", 4), j("x1", 4));
  CHECK(m.prec == 4);
  CHECK(m.rep == parse_poly(B, "x1^2"));
  JetContext cj(B, Ideal(B, {parse_poly(B, "x1*x2")}), 20);
  auto z = cj.mul(cj.make(Poly::var(B, "x1"), 5), cj.make(Poly::var(B, "x2"), 5));
  CHECK(cj.is_zero(z));
  CHECK(z.prec == 5);
  CHECK(ctx.make(parse_poly(B, "x1^5 + x2"), 5).rep == Poly::var(B, "x2"));
}

TEST_CASE("jet divide") {
  auto B = base2();
  JetContext ctx(B, Ideal(B, {}), 20);
  auto x1sq = parse_poly(B, "x1^2");
  auto q = ctx.divide(ctx.make(parse_poly(B, "x1^2 + x1^3"), 6), x1sq);
  CHECK(q.prec == 4);
  CHECK(q.rep == parse_poly(B, "1 + x1"));
  CHECK_THROWS_AS(ctx.divide(ctx.make(Poly::var(B, "x1"), 6), x1sq), NotDivisibleInJets);
  auto a = ctx.make(parse_poly(B, "(x1^2 + x1^3)*(1 + x2)"), 8);
  auto q2 = ctx.divide(a, x1sq);
  CHECK(q2.prec == 6);
  CHECK(ctx.equal(ctx.mul(q2, ctx.exact(x1sq)), ctx.make(a.rep, 6)));
  CHECK(ctx.equal(q2, ctx.make(parse_poly(B, "(1 + x1)*(1 + x2)"), 6)));
  // Division by a local unit times x1.
  auto q3 = ctx.divide(ctx.make(parse_poly(B, "x1"), 6), parse_poly(B, "x1 + x1^2"));
  CHECK(ctx.equal(ctx.mul(q3, ctx.exact(parse_poly(B, "1 + x1"))), ctx.make(Poly::constant(B, 1), 5)));
}

TEST_CASE("jet inverse") {
  auto B = base2();
  JetContext ctx(B, Ideal(B, {}), 20);
  auto u = ctx.make(parse_poly(B, "2 + x1 - 3*x2^2"), 7);
  auto v = ctx.inverse(u);
  CHECK(ctx.equal(ctx.mul(u, v), ctx.make(Poly::constant(B, 1), 7)));
  CHECK_THROWS(ctx.inverse(ctx.make(Poly::var(B, "x1"), 3)));
}

TEST_CASE("hensel square root matches Newton oracle") {
  auto B = base2();
  auto R = B->extended({{"Y", VarRole::Algebra}});
  JetContext ctx(B, Ideal(B, {}), 20);
  JetPoint pt{{"Y", ctx.make(Poly::constant(B, 1), 1)}};
  HenselStats st;
  auto out = hensel_lift(ctx, {parse_poly(R, "Y^2 - 1 - x1")}, {"Y"}, pt, 8, &st);
  auto y = out.at("Y");
  CHECK(y.prec == 8);
  Series oracle = newton_sqrt(8);
  for (unsigned k = 0; k < 8; ++k) {
    Monomial m(2);
    m.set(0, k);
    Coeff c = 0;
    for (const auto& t : y.rep.terms())
      if (t.m == m) c = t.c;
    CHECK(c == oracle[k]);
  }
  for (std::size_t i = 1; i + 1 < st.residual_orders.size(); ++i)
    CHECK(st.residual_orders[i] >= std::min(2 * st.residual_orders[i - 1], 8u));
  auto out3 = hensel_lift(ctx, {parse_poly(R, "Y^2 - 1 - x1")}, {"Y"}, pt, 3);
  CHECK(out3.at("Y").rep == parse_poly(B, "1 + 1/2*x1 - 1/8*x1^2"));
}

TEST_CASE("hensel linear and singular") {
  auto B = base2();
  auto R = B->extended({{"Y", VarRole::Algebra}});
  JetContext ctx(B, Ideal(B, {}), 20);
  JetPoint pt{{"Y", ctx.make(Poly(B), 1)}};
  auto out = hensel_lift(ctx, {parse_poly(R, "Y - x1")}, {"Y"}, pt, 6);
  CHECK(out.at("Y").rep == Poly::var(B, "x1"));
  auto B2 = base2(Field::prime(2));
  auto R2 = B2->extended({{"Y", VarRole::Algebra}});
  JetContext c2(B2, Ideal(B2, {}), 20);
  JetPoint p2{{"Y", c2.make(Poly::constant(B2, 1), 1)}};
  CHECK_THROWS_AS(hensel_lift(c2, {parse_poly(R2, "Y^2 - 1 - x1")}, {"Y"}, p2, 4), SingularJacobian);
}

TEST_CASE("evaluate with frozen coordinates") {
  auto B = base2();
  auto R = B->extended({{"Y", VarRole::Algebra}, {"T", VarRole::Aux}});
  JetContext ctx(B, Ideal(B, {}), 10);
  JetPoint pt{{"Y", ctx.make(parse_poly(B, "1 + x2"), 6)}, {"T", ctx.make(parse_poly(B, "x1"), 4)}};
  auto v = ctx.evaluate(parse_poly(R, "Y*T^2 - x1^2"), pt);
  CHECK(v.prec == 4);
  CHECK(v.rep == parse_poly(B, "x1^2*x2"));
  auto w = ctx.evaluate(parse_poly(R, "Y^2"), pt);
  CHECK(w.prec == 6);
}
