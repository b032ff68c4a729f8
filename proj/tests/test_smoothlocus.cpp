#include "doctest.h"
#include "nd/smoothlocus.hpp"

using namespace nd;

namespace {

FinitePresentation pres(std::vector<std::string> ys, std::vector<std::string> rels, Field f = Field::rationals()) {
  std::vector<VarInfo> v{{"x1", VarRole::Base}, {"x2", VarRole::Base}};
  for (auto& y : ys) v.push_back({y, VarRole::Algebra});
  FinitePresentation b;
  b.ring = Ring::make(f, v);
  for (auto& r : rels) b.relations.push_back(parse_poly(b.ring, r));
  return b;
}

bool same(const Ideal& a, const Ideal& b) {
  for (auto& g : a.gens())
    if (!b.contains(g)) return false;
  for (auto& g : b.gens())
    if (!a.contains(g)) return false;
  return true;
}

}  // namespace

TEST_CASE("elkik ideal examples") {
  auto b1 = pres({"Y1"}, {"Y1"});
  CHECK(elkik_ideal(b1).ideal.is_unit());
  auto b2 = pres({"Y"}, {"Y^2 - x1"});
  auto h2 = elkik_ideal(b2);
  CHECK(same(h2.ideal, Ideal(b2.ring, {parse_poly(b2.ring, "Y")})));
  auto b3 = pres({"Y1", "Y2"}, {"Y1*Y2 - x1*x2"});
  auto h3 = elkik_ideal(b3);
  CHECK(same(h3.ideal, Ideal(b3.ring, {parse_poly(b3.ring, "Y1"), parse_poly(b3.ring, "Y2")})));
  REQUIRE(h3.provenance.size() == h3.ideal.gens().size());
}

TEST_CASE("singular locus agrees with a known ideal") {
  // Node: singular exactly at Y1 = Y2 = 0 over x1 = x2 = 0 of the total space.
  auto b = pres({"Y1", "Y2"}, {"Y1*Y2 - x1*x2"});
  auto h = elkik_ideal(b).ideal + b.ambient();
  Ideal known(b.ring, {parse_poly(b.ring, "Y1"), parse_poly(b.ring, "Y2"), parse_poly(b.ring, "x1*x2")});
  for (auto& g : known.gens()) CHECK(radical_membership(g, h).member);
  for (auto& g : h.gens()) CHECK(radical_membership(g, known).member);
}

TEST_CASE("standard smooth certificate") {
  auto b = pres({"Y"}, {"Y - x1"});
  auto s = standard_smooth_certificate(b);
  REQUIRE(s.status == SmoothStatus::Smooth);
  CHECK(s.certificate->unit.is_one());
  std::string why;
  CHECK(check_smooth_certificate(b, *s.certificate, &why));
  auto c = pres({"Y"}, {"Y^2 - x1"});
  CHECK(standard_smooth_certificate(c).status == SmoothStatus::NotSmooth);
  // A tampered witness is rejected.
  auto bad = *s.certificate;
  bad.products[0].coeff = bad.products[0].coeff + Poly::var(b.ring, "x1");
  CHECK_FALSE(check_smooth_certificate(b, bad));
  // Local unit: (1 + x1) Y - x2 is smooth over the local ring.
  auto d = pres({"Y"}, {"(1 + x1)*Y - x2"});
  auto sd = standard_smooth_certificate(d);
  REQUIRE(sd.status == SmoothStatus::Smooth);
  CHECK(check_smooth_certificate(d, *sd.certificate));
}

TEST_CASE("symmetric algebra") {
  auto b = pres({"Y"}, {"Y^2 - x1"});
  auto s = symmetric_algebra_presentation(b);
  CHECK(s.new_vars.size() == 1);
  CHECK(s.new_relations.empty());
  auto b2 = pres({"Y1", "Y2"}, {"Y1", "Y2"});
  auto s2 = symmetric_algebra_presentation(b2);
  CHECK(s2.new_relations.empty());
  auto b3 = pres({"Y"}, {"x1*Y", "x2*Y"});
  auto s3 = symmetric_algebra_presentation(b3);
  REQUIRE(s3.new_relations.size() == 1);
  auto R = s3.presentation.ring;
  auto rel = s3.new_relations[0];
  CHECK((rel == parse_poly(R, "x2*S1 - x1*S2") || rel == parse_poly(R, "-x2*S1 + x1*S2")));
  // S_i -> g_i sends each new relation into I^2.
  Ideal i(b3.ring, b3.relations);
  Ideal i2 = i * i;
  auto im = identity_images(R, b3.ring, {{"S1", b3.relations[0]}, {"S2", b3.relations[1]}});
  for (auto& r : s3.new_relations) CHECK(i2.contains(r.substitute(b3.ring, im)));
}
