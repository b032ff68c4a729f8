#ifndef ND_IDEALOPS_HPP
#define ND_IDEALOPS_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nd/groebner.hpp"

namespace nd {

// Generators plus lazily computed bases in the ring's own order.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Poly> gens);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }
  const GroebnerBasis& gb() const;
  const TrackedBasis& tracked() const;

  bool contains(const Poly& p) const;
  bool is_unit() const { return gb().is_unit(); }
  bool is_zero() const { return gb().is_zero(); }
  Poly reduce(const Poly& p) const;

  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal to_ring(const RingPtr& target) const;

 private:
  struct Cache {
    std::once_flag gb_once, tracked_once;
    GroebnerBasis gb;
    TrackedBasis tracked;
  };
  RingPtr ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

Ideal intersect(const Ideal& a, const Ideal& b);
Ideal ideal_quotient(const Ideal& a, const Ideal& b);
Ideal ideal_quotient(const Ideal& a, const Poly& p);
// I ∩ k[variables not in block].
Ideal eliminate(const Ideal& a, const std::vector<std::string>& block);

struct RadicalResult {
  bool member = false;
  std::optional<unsigned> exponent;
};
RadicalResult radical_membership(const Poly& p, const Ideal& a, unsigned e_max = 10);

// Membership in the localization at the complement of (base variables).
bool local_membership(const Poly& p, const Ideal& a);

// -1 for the unit ideal.
int krull_dim(const Ideal& a);

// Every base monomial of degree n reduces to zero modulo a.
bool is_m_primary_local(const Ideal& a, unsigned n);

std::optional<unsigned> power_in_ideal(const Poly& gamma, const Ideal& a, unsigned e_max);

// s with a - d*s in m; throws NotDivisible otherwise.
Poly divide_exact(const Poly& a, const Poly& d, const Ideal& m);

}  // namespace nd

#endif
