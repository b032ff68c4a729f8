#include "nd/smoothlocus.hpp"

#include <algorithm>
#include <numeric>

namespace nd {

std::vector<std::size_t> FinitePresentation::algebra_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ring->nvars(); ++i)
    if (ring->role(i) != VarRole::Base) out.push_back(i);
  return out;
}

std::vector<Poly> FinitePresentation::inverse_relations() const {
  std::vector<Poly> out;
  for (const auto& inv : inversions)
    out.push_back(Poly::var(ring, inv.var) * inv.unit.to_ring(ring) - Poly::constant(ring, 1));
  return out;
}

std::vector<Poly> FinitePresentation::all_relations() const {
  auto out = relations;
  for (auto& p : inverse_relations()) out.push_back(p);
  return out;
}

Ideal FinitePresentation::ambient() const {
  auto g = base_ideal;
  for (auto& p : all_relations()) g.push_back(p);
  return Ideal(ring, g);
}

RingPtr FinitePresentation::base_ring() const {
  std::vector<VarInfo> v;
  for (const auto& vi : ring->vars())
    if (vi.role == VarRole::Base) v.push_back(vi);
  return Ring::make(ring->field(), v);
}

namespace {

bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  std::size_t r = s.size();
  for (std::size_t i = r; i-- > 0;) {
    if (s[i] < n - r + i) {
      ++s[i];
      for (std::size_t k = i + 1; k < r; ++k) s[k] = s[k - 1] + 1;
      return true;
    }
  }
  return false;
}

template <class Fn>
void for_each_subset(std::size_t n, std::size_t r, Fn&& fn) {
  if (r == 0 || r > n) return;
  std::vector<std::size_t> s(r);
  std::iota(s.begin(), s.end(), 0);
  do {
    if (!fn(s)) return;
  } while (next_subset(s, n));
}

std::vector<Minor> subsystem_minors(const FinitePresentation& b, const std::vector<Poly>& rels,
                                    const std::vector<std::size_t>& subset) {
  std::vector<Poly> f;
  for (auto i : subset) f.push_back(rels[i]);
  PolyMatrix jac = jacobian(f, b.algebra_vars(), b.ring);
  std::vector<Minor> out;
  for (auto& m : minors(jac, subset.size()))
    if (!m.value.is_zero()) out.push_back(std::move(m));
  return out;
}

}  // namespace

Ideal colon_of_subsystem(const FinitePresentation& b, const std::vector<std::size_t>& subset) {
  auto rels = b.all_relations();
  std::vector<Poly> fj = b.base_ideal;
  for (auto i : subset) fj.push_back(rels[i]);
  Ideal f(b.ring, fj);
  bool generates = true;
  for (std::size_t i = 0; i < rels.size() && generates; ++i) {
    if (std::find(subset.begin(), subset.end(), i) != subset.end()) continue;
    generates = f.contains(rels[i]);
  }
  if (generates) return Ideal(b.ring, {Poly::constant(b.ring, 1)});
  return ideal_quotient(f, b.ambient());
}

ElkikIdeal elkik_ideal(const FinitePresentation& b, std::size_t subset_bound) {
  auto rels = b.all_relations();
  std::size_t n = b.algebra_vars().size();
  std::size_t rmax = std::min({n, subset_bound, rels.size()});
  ElkikIdeal out;
  std::vector<Poly> gens;
  for (std::size_t r = 1; r <= rmax; ++r) {
    for_each_subset(rels.size(), r, [&](const std::vector<std::size_t>& s) {
      ElkikPiece piece;
      piece.subset = s;
      piece.minors = subsystem_minors(b, rels, s);
      if (piece.minors.empty()) return true;
      piece.colon = colon_of_subsystem(b, s).gb().gens;
      std::size_t pi = out.pieces.size();
      for (std::size_t c = 0; c < piece.colon.size(); ++c)
        for (std::size_t m = 0; m < piece.minors.size(); ++m) {
          gens.push_back(piece.colon[c] * piece.minors[m].value);
          out.provenance.push_back({pi, c, m});
        }
      out.pieces.push_back(std::move(piece));
      return true;
    });
  }
  out.ideal = Ideal(b.ring, gens);
  return out;
}

SmoothSearch standard_smooth_certificate(const FinitePresentation& b, std::size_t subset_bound) {
  auto rels = b.all_relations();
  Ideal amb = b.ambient();
  std::size_t n = b.algebra_vars().size();
  std::size_t full = std::min(n, rels.size());
  std::size_t rmax = std::min(full, subset_bound);
  SmoothSearch out;
  for (std::size_t r = 1; r <= rmax && !out.certificate; ++r) {
    for_each_subset(rels.size(), r, [&](const std::vector<std::size_t>& s) {
      auto mins = subsystem_minors(b, rels, s);
      if (mins.empty()) return true;
      auto colon = colon_of_subsystem(b, s).gb().gens;
      std::vector<Poly> gens;
      std::vector<std::pair<std::size_t, std::size_t>> idx;
      for (std::size_t c = 0; c < colon.size(); ++c)
        for (std::size_t m = 0; m < mins.size(); ++m) {
          gens.push_back(colon[c] * mins[m].value);
          idx.push_back({c, m});
        }
      const std::size_t nprod = gens.size();
      for (const auto& g : amb.gens()) gens.push_back(g);
      Ideal h(b.ring, gens);
      Poly unit = Poly::constant(b.ring, 1);
      if (!h.contains(unit)) {
        // A local unit of k[x] in the ideal also certifies smoothness over A.
        std::vector<std::string> other;
        for (auto i : b.algebra_vars()) other.push_back(b.ring->name(i));
        Ideal hb = eliminate(h, other);
        auto it = std::find_if(hb.gens().begin(), hb.gens().end(),
                               [](const Poly& p) { return p.constant_term() != 0; });
        if (it == hb.gens().end()) return true;
        unit = *it;
      }
      LiftCertificate lc = lift(unit, gens);
      SmoothCertificate cert;
      cert.subset = s;
      cert.r = r;
      cert.unit = unit;
      cert.colon = colon;
      cert.minors = mins;
      for (std::size_t k = 0; k < nprod; ++k)
        if (!lc.coefficients[k].is_zero()) cert.products.push_back({idx[k].first, idx[k].second, lc.coefficients[k]});
      cert.ambient_coeffs.assign(lc.coefficients.begin() + static_cast<std::ptrdiff_t>(nprod), lc.coefficients.end());
      out.certificate = std::move(cert);
      return false;
    });
  }
  if (out.certificate) {
    out.status = SmoothStatus::Smooth;
  } else {
    out.status = rmax < full ? SmoothStatus::Exhausted : SmoothStatus::NotSmooth;
  }
  return out;
}

bool check_smooth_certificate(const FinitePresentation& b, const SmoothCertificate& c, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (c.unit.constant_term() == 0) return fail("claimed unit has zero constant term");
  for (std::size_t i = 0; i < c.unit.ring()->nvars(); ++i)
    if (c.unit.ring()->role(i) != VarRole::Base && c.unit.uses_var(i)) return fail("claimed unit is not in k[x]");
  auto rels = b.all_relations();
  // Minors must be the stated minors of the subsystem's Jacobian.
  std::vector<Poly> f;
  for (auto i : c.subset) {
    if (i >= rels.size()) return fail("subset index out of range");
    f.push_back(rels[i]);
  }
  PolyMatrix jac = jacobian(f, b.algebra_vars(), b.ring);
  for (const auto& m : c.minors)
    if (jac.submatrix(m.rows, m.cols).det() != m.value) return fail("minor does not match the Jacobian");
  // Colon elements: L * I in (f) + J.
  std::vector<Poly> fj = b.base_ideal;
  for (auto& p : f) fj.push_back(p);
  Ideal fi(b.ring, fj);
  for (const auto& l : c.colon)
    for (const auto& g : rels)
      if (!fi.contains(l * g)) return fail("colon element does not multiply I into (f)");
  Poly sum(b.ring);
  for (const auto& p : c.products) sum += p.coeff * c.colon[p.colon] * c.minors[p.minor].value;
  Ideal amb = b.ambient();
  if (c.ambient_coeffs.size() != amb.gens().size()) return fail("witness arity mismatch");
  for (std::size_t k = 0; k < amb.gens().size(); ++k) sum += c.ambient_coeffs[k] * amb.gens()[k];
  if (sum != c.unit.to_ring(b.ring)) return fail("witness does not re-expand to the unit");
  return true;
}

SymmetricAlgebra symmetric_algebra_presentation(const FinitePresentation& b, const std::string& stem) {
  const std::size_t l = b.relations.size();
  std::vector<VarInfo> extra;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < l; ++i) {
    std::string nm = fresh_name(*b.ring, stem + std::to_string(i + 1), names);
    names.push_back(nm);
    extra.push_back({nm, VarRole::Aux});
  }
  SymmetricAlgebra out;
  out.new_vars = names;
  RingPtr ext = b.ring->extended(extra);
  out.presentation.ring = ext;
  for (const auto& p : b.base_ideal) out.presentation.base_ideal.push_back(p.to_ring(ext));
  for (const auto& p : b.relations) out.presentation.relations.push_back(p.to_ring(ext));
  for (const auto& inv : b.inversions) out.presentation.inversions.push_back({inv.var, inv.unit.to_ring(ext)});
  if (l == 0) return out;
  std::vector<Poly> gens = b.relations;
  for (const auto& j : b.base_ideal) gens.push_back(j);
  SyzygyModule syz = syzygies(gens);
  Ideal amb = b.ambient();
  for (const auto& v : syz) {
    Poly rel(ext);
    for (std::size_t i = 0; i < l; ++i) {
      Poly a = amb.reduce(v[i]);
      if (!a.is_zero()) rel += a.to_ring(ext) * Poly::var(ext, names[i]);
    }
    if (rel.is_zero()) continue;
    rel = rel.primitive();
    if (std::find(out.new_relations.begin(), out.new_relations.end(), rel) != out.new_relations.end()) continue;
    out.new_relations.push_back(rel);
    out.presentation.relations.push_back(rel);
  }
  return out;
}

}  // namespace nd
