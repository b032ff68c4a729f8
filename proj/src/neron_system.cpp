#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "neron_internal.hpp"
#include "nd/errors.hpp"

namespace nd {

namespace {

bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  const std::size_t r = s.size();
  for (std::size_t i = r; i-- > 0;) {
    if (s[i] < n - r + i) {
      ++s[i];
      for (std::size_t k = i + 1; k < r; ++k) s[k] = s[k - 1] + 1;
      return true;
    }
  }
  return false;
}

// Nonzero maximal minors. A row whose only entry is a constant forces its
// column into every nonzero minor, which prunes the enumeration.
std::vector<Minor> maximal_minors(const PolyMatrix& jac) {
  const std::size_t r = jac.rows(), n = jac.cols();
  std::vector<Minor> out;
  if (r > n) return out;
  std::vector<bool> forced(n, false);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t nz = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!jac.at(i, j).is_zero()) {
        ++nz;
        col = j;
      }
    if (nz == 1 && jac.at(i, col).is_constant()) forced[col] = true;
  }
  std::vector<std::size_t> fixed, free;
  for (std::size_t j = 0; j < n; ++j) (forced[j] ? fixed : free).push_back(j);
  if (fixed.size() > r) return out;
  std::vector<std::size_t> rows(r);
  std::iota(rows.begin(), rows.end(), 0);
  const std::size_t k = r - fixed.size();
  auto emit = [&](const std::vector<std::size_t>& pick) {
    std::vector<std::size_t> cols = fixed;
    for (auto p : pick) cols.push_back(free[p]);
    std::sort(cols.begin(), cols.end());
    Poly v = jac.submatrix(rows, cols).det();
    if (!v.is_zero()) out.push_back({v, rows, cols});
  };
  if (k == 0) {
    emit({});
    return out;
  }
  if (k > free.size()) return out;
  std::vector<std::size_t> s(k);
  std::iota(s.begin(), s.end(), 0);
  do emit(s);
  while (next_subset(s, free.size()));
  return out;
}

// u with u(0) != 0 and u * p in a, or nullopt.
std::optional<Poly> local_unit(const Poly& p, const Ideal& a, const std::vector<std::string>& alg,
                               const RingPtr& base) {
  Ideal c = eliminate(ideal_quotient(a, p), alg);
  for (const auto& g : c.gens())
    if (g.constant_term() != 0) return g.to_ring(base);
  return std::nullopt;
}

struct Candidate {
  std::vector<std::size_t> subset;
  std::vector<Poly> colon;
  std::vector<Minor> minors;
  unsigned e = 0;
  Poly unit;
};

}  // namespace

PolyMatrix completed_jacobian(const Problem& pb, const JacobianSystem& sys, std::size_t i) {
  std::vector<Poly> f;
  for (auto k : sys.subset) f.push_back(pb.b.relations.at(k));
  PolyMatrix jac = jacobian(f, pb.b.algebra_vars(), pb.b.ring);
  Completion c = complete_to_square(jac, sys.cols.at(i));
  PolyMatrix h = c.h;
  if (c.sign < 0) {
    // Only appended rows can carry the sign; r = n forces sign +1.
    std::size_t row = jac.rows();
    for (std::size_t j = 0; j < h.cols(); ++j) h.at(row, j) = -h.at(row, j);
  }
  return h;
}

JacobianSystem find_jacobian_system(const Problem& pb, const Poly& gamma, const NeronConfig& cfg) {
  const FinitePresentation& b = pb.b;
  RingPtr base = b.base_ring();
  std::vector<std::string> alg;
  for (auto i : b.algebra_vars()) alg.push_back(b.ring->name(i));
  const auto amb_gens = b.ambient().gens();
  Poly gr = gamma.to_ring(b.ring);

  // Relations that are a single Z variable are always part of f.
  std::vector<std::size_t> always, others;
  for (std::size_t k = 0; k < b.relations.size(); ++k) {
    const Poly& g = b.relations[k];
    bool z = g.nterms() == 1 && g.total_degree() == 1 && g.lc() == 1;
    if (z)
      for (std::size_t v = 0; v < b.ring->nvars(); ++v)
        if (g.uses_var(v)) z = b.ring->role(v) == VarRole::Aux;
    (z ? always : others).push_back(k);
  }

  std::optional<Candidate> found;
  const std::size_t kmax = std::min(cfg.subset_bound, others.size());
  for (std::size_t k = kmax + 1; k-- > 0 && !found;) {
    std::vector<std::size_t> s(k);
    std::iota(s.begin(), s.end(), 0);
    do {
      Candidate c;
      c.subset = always;
      for (auto p : s) c.subset.push_back(others[p]);
      std::sort(c.subset.begin(), c.subset.end());
      if (c.subset.empty()) continue;
      std::vector<Poly> f;
      for (auto i : c.subset) f.push_back(b.relations[i]);
      c.minors = maximal_minors(jacobian(f, b.algebra_vars(), b.ring));
      if (c.minors.empty()) continue;
      c.colon = colon_of_subsystem(b, c.subset).gb().gens;
      std::vector<Poly> gens;
      for (const auto& l : c.colon)
        for (const auto& m : c.minors) gens.push_back(l * m.value);
      for (const auto& g : amb_gens) gens.push_back(g);
      Ideal hf(b.ring, gens);
      for (unsigned e = 1; e <= cfg.e_max; ++e) {
        Poly ge = gr.pow(e);
        if (hf.contains(ge)) {
          c.e = e;
          c.unit = Poly::constant(base, 1);
          break;
        }
        if (auto u = local_unit(ge, hf, alg, base)) {
          c.e = e;
          c.unit = *u;
          break;
        }
      }
      log_step(cfg, 7, "subsystem of size " + std::to_string(c.subset.size()) + ": " +
                           (c.e ? "exponent " + std::to_string(c.e) : std::string("no power")));
      if (c.e) {
        found = std::move(c);
        break;
      }
    } while (k > 0 && next_subset(s, others.size()));
  }
  if (!found) throw NotFound("no power of " + gamma.to_string() + " in ((f):I)Delta_f up to e_max");

  JacobianSystem sys;
  sys.subset = found->subset;
  sys.gamma = gamma.to_ring(base);
  sys.exponent = found->e;
  sys.unit = found->unit;
  sys.d = sys.unit * sys.gamma.pow(sys.exponent);
  Poly dr = sys.d.to_ring(b.ring);

  const std::size_t nc = found->colon.size(), nm = found->minors.size();
  auto lift_with = [&](const std::vector<bool>& keep) {
    std::vector<Poly> gens;
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t m = 0; m < nm; ++m)
        gens.push_back(keep[m] ? found->colon[c] * found->minors[m].value : Poly(b.ring));
    for (const auto& g : amb_gens) gens.push_back(g);
    return lift(dr, gens);
  };
  std::vector<bool> keep(nm, true);
  LiftCertificate lc = lift_with(keep);
  if (!lc.member()) throw LiftFailed("d does not lift over ((f):I)Delta_f");
  for (std::size_t m = 0; m < nm; ++m) {
    bool used = false;
    for (std::size_t c = 0; c < nc; ++c) used = used || !lc.coefficients[c * nm + m].is_zero();
    keep[m] = used;
  }
  for (std::size_t m = 0; m < nm; ++m) {
    if (!keep[m]) continue;
    keep[m] = false;
    LiftCertificate trial = lift_with(keep);
    if (trial.member())
      lc = std::move(trial);
    else
      keep[m] = true;
  }
  lc = lift_with(keep);
  for (std::size_t m = 0; m < nm; ++m) {
    if (!keep[m]) continue;
    Poly l(b.ring);
    for (std::size_t c = 0; c < nc; ++c) l += lc.coefficients[c * nm + m] * found->colon[c];
    if (l.is_zero()) continue;
    sys.cols.push_back(found->minors[m].cols);
    sys.minors.push_back(found->minors[m].value);
    sys.ls.push_back(l);
  }
  sys.p = Poly(b.ring);
  for (std::size_t i = 0; i < sys.minors.size(); ++i) sys.p += sys.minors[i] * sys.ls[i];
  for (std::size_t k = 0; k < amb_gens.size(); ++k) sys.p_coeffs.push_back(-lc.coefficients[nc * nm + k]);
  log_step(cfg, 8, "d = " + sys.d.to_string() + " with " + std::to_string(sys.minors.size()) + " minors");
  return sys;
}

bool identity_battery(const Problem& pb, const JacobianSystem& sys, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  const RingPtr& R = pb.b.ring;
  if (sys.cols.size() != sys.minors.size() || sys.ls.size() != sys.minors.size()) return fail("arity mismatch");
  std::vector<Poly> f;
  for (auto k : sys.subset) {
    if (k >= pb.b.relations.size()) return fail("subsystem index out of range");
    f.push_back(pb.b.relations[k]);
  }
  PolyMatrix jac = jacobian(f, pb.b.algebra_vars(), R);
  const std::size_t r = jac.rows(), n = jac.cols();
  Poly p(R);
  for (std::size_t i = 0; i < sys.minors.size(); ++i) {
    PolyMatrix h = completed_jacobian(pb, sys, i);
    if (h.det() != sys.minors[i]) return fail("det H_" + std::to_string(i + 1) + " differs from M_" + std::to_string(i + 1));
    Poly ml = sys.minors[i] * sys.ls[i];
    PolyMatrix g = h.adjugate().scale(sys.ls[i]);
    PolyMatrix lhs = jac * g;
    PolyMatrix want(R, r, n);
    for (std::size_t j = 0; j < r; ++j) want.at(j, j) = ml;
    if (!(lhs == want)) return fail("(df/dY) G_" + std::to_string(i + 1) + " != M L (Id|0)");
    if (!(g * h == PolyMatrix::identity(R, n).scale(ml))) return fail("G_" + std::to_string(i + 1) + " H != M L Id");
    p += ml;
  }
  if (p != sys.p) return fail("P differs from sum M_i L_i");
  const auto amb = pb.b.ambient().gens();
  if (sys.p_coeffs.size() != amb.size()) return fail("P - d certificate arity mismatch");
  Poly rhs(R);
  for (std::size_t k = 0; k < amb.size(); ++k) rhs += sys.p_coeffs[k] * amb[k];
  if (sys.p - sys.d.to_ring(R) != rhs) return fail("P - d is not the stated combination of relations");
  return true;
}

bool m_primary_gate(const Problem& pb, const Poly& d, const Poly& d1) {
  RingPtr base = pb.b.base_ring();
  std::vector<Poly> gens{d.to_ring(base).pow(3), d1.to_ring(base).pow(3)};
  for (const auto& j : pb.b.base_ideal) gens.push_back(j.to_ring(base));
  return is_m_primary_local(Ideal(base, gens), pb.bound);
}

}  // namespace nd
