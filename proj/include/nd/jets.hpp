#ifndef ND_JETS_HPP
#define ND_JETS_HPP

#include <map>
#include <string>
#include <vector>

#include "nd/idealops.hpp"

namespace nd {

// Truncated element of k[[x]]/J: a representative with no term of degree
// >= prec, reduced modulo J.
struct JetSeries {
  Poly rep;
  unsigned prec = 0;

  std::string to_string() const { return rep.to_string() + " | prec " + std::to_string(prec); }
};

using JetPoint = std::map<std::string, JetSeries>;

// Arithmetic context: the base ring (base variables only), J, and a cap on
// precision used for exact polynomials.
class JetContext {
 public:
  JetContext(RingPtr base, Ideal j, unsigned cap);

  const RingPtr& ring() const { return ring_; }
  const Ideal& base_ideal() const { return j_; }
  unsigned cap() const { return cap_; }

  JetSeries make(const Poly& p, unsigned prec) const;
  JetSeries exact(const Poly& p) const { return make(p, cap_); }
  JetSeries add(const JetSeries& a, const JetSeries& b) const;
  JetSeries sub(const JetSeries& a, const JetSeries& b) const;
  JetSeries mul(const JetSeries& a, const JetSeries& b) const;
  JetSeries neg(const JetSeries& a) const { return {-a.rep, a.prec}; }
  // Equal modulo (x)^min(prec) + J.
  bool equal(const JetSeries& a, const JetSeries& b) const;
  bool is_zero(const JetSeries& a) const { return a.rep.is_zero(); }
  bool is_unit(const JetSeries& a) const { return a.prec > 0 && a.rep.constant_term() != 0; }
  // Lowest degree of the representative; prec if zero.
  unsigned order(const JetSeries& a) const;
  // Lowest degree of a polynomial in the base variables.
  unsigned order(const Poly& p) const;

  JetSeries inverse(const JetSeries& u) const;
  // Quotient a / d with precision prec(a) - ord(d); throws NotDivisibleInJets.
  JetSeries divide(const JetSeries& a, const Poly& d) const;

  // Base variables map to themselves, others are looked up by name.
  JetSeries evaluate(const Poly& p, const JetPoint& pt) const;
  std::vector<JetSeries> evaluate(const std::vector<Poly>& ps, const JetPoint& pt) const;

  // Reduction modulo J + (x)^prec.
  Poly normalize(const Poly& p, unsigned prec) const;

 private:
  const GroebnerBasis& truncation_basis(unsigned prec) const;

  RingPtr ring_;
  Ideal j_;
  unsigned cap_;
  mutable std::map<unsigned, GroebnerBasis> bases_;
};

struct HenselStats {
  std::vector<unsigned> residual_orders;
  unsigned sweeps = 0;
};

// Newton iteration on the square subsystem `system` in the `unknowns`
// (variable names of the system's ring); other variables stay frozen.
JetPoint hensel_lift(const JetContext& ctx, const std::vector<Poly>& system, const std::vector<std::string>& unknowns,
                     JetPoint point, unsigned target_prec, HenselStats* stats = nullptr);

// Solves a x = b over jets by elimination with unit pivots; throws SingularJacobian.
std::vector<JetSeries> solve_jets(const JetContext& ctx, std::vector<std::vector<JetSeries>> a,
                                  std::vector<JetSeries> b);

}  // namespace nd

#endif
