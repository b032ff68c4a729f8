#ifndef ND_GROEBNER_HPP
#define ND_GROEBNER_HPP

#include <vector>

#include "nd/poly.hpp"

namespace nd {

// Reduced basis: monic, inter-reduced, sorted by ascending leading monomial.
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Poly> gens;

  bool is_unit() const { return gens.size() == 1 && gens[0].is_one(); }
  bool is_zero() const { return gens.empty(); }
};

// As above, plus rows expressing each basis element through the inputs:
// gens[k] = sum_i rows[k][i] * inputs[i].
struct TrackedBasis {
  GroebnerBasis basis;
  std::vector<Poly> inputs;
  std::vector<std::vector<Poly>> rows;
};

struct LiftCertificate {
  std::vector<Poly> coefficients;
  Poly remainder;

  bool member() const { return remainder.is_zero(); }
};

using SyzygyModule = std::vector<std::vector<Poly>>;

struct GroebnerStats {
  std::size_t pairs = 0, reductions_to_zero = 0, product_skips = 0, chain_skips = 0;
};

// Generators are moved into `ring` (whose order is used) by variable name.
GroebnerBasis buchberger(const std::vector<Poly>& gens, const RingPtr& ring, GroebnerStats* stats = nullptr);
GroebnerBasis buchberger(const std::vector<Poly>& gens);
TrackedBasis buchberger_tracked(const std::vector<Poly>& gens, const RingPtr& ring);

Poly normal_form(const Poly& p, const GroebnerBasis& g);
Poly normal_form(const Poly& p, const std::vector<Poly>& divisors);
// Division with quotients: p = sum q_k divisors[k] + remainder.
LiftCertificate divide(const Poly& p, const std::vector<Poly>& divisors);

// Coefficients refer to tracked.inputs.
LiftCertificate lift(const Poly& p, const TrackedBasis& tracked);
LiftCertificate lift(const Poly& p, const std::vector<Poly>& gens);

SyzygyModule syzygies(const TrackedBasis& tracked);
SyzygyModule syzygies(const std::vector<Poly>& gens);

bool is_groebner(const std::vector<Poly>& g);
Poly spoly(const Poly& a, const Poly& b);

}  // namespace nd

#endif
