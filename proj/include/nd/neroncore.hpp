#ifndef ND_NERONCORE_HPP
#define ND_NERONCORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nd/jets.hpp"
#include "nd/smoothlocus.hpp"

namespace nd {

// B = A[Y]/I with an approximate morphism v: B -> A', Y -> y' mod (x)^N.
struct Problem {
  FinitePresentation b;
  std::vector<Poly> map;  // y'_j in the base ring, one per algebra variable
  unsigned bound = 0;
};

struct NeronConfig {
  std::size_t subset_bound = 3;
  unsigned t_max = 10;
  unsigned e_max = 10;
  std::uint64_t seed = 0;
  bool verbose = false;
};

// Raises std::invalid_argument when y' is not a root of I modulo (x)^N + J.
void check_problem(const Problem& pb);

// Steps 1-3.
struct ParameterPair {
  char branch = 'a';
  Poly gamma, gamma1;  // in the base ring
  std::vector<Poly> h0;  // generators b_i of H_{B/A}, in the ring of B
};
ParameterPair choose_regular_pair(const Problem& pb, const NeronConfig& cfg);

// Steps 4-5: adjoins Ya variables so that gamma, gamma' land in H of the new B.
struct Absorbed {
  Problem pb;
  unsigned t = 0;
  std::vector<std::string> new_vars;
};
Absorbed absorb_parameters(const Problem& pb, const ParameterPair& pair, const NeronConfig& cfg);

// Step 6: symmetric algebra of I/I^2, then Z_1..Z_n with relations Z.
struct Prepared {
  Problem pb;
  std::size_t z_begin = 0;  // index of the first Z relation
};
Prepared prepare_free_conormal(const Problem& pb);

// Step 7-8 output for one parameter.
struct JacobianSystem {
  std::vector<std::size_t> subset;             // indices into relations
  std::vector<std::vector<std::size_t>> cols;  // positions among the algebra variables
  std::vector<Poly> minors;                    // M_i = det H_i
  std::vector<Poly> ls;                        // L_i in ((f):I)
  Poly gamma, unit, d;                         // d = unit * gamma^exponent
  unsigned exponent = 0;
  Poly p;                    // sum M_i L_i
  std::vector<Poly> p_coeffs;  // p - d = sum p_coeffs[k] * (J gens, then relations)
};

JacobianSystem find_jacobian_system(const Problem& pb, const Poly& gamma, const NeronConfig& cfg);

// H_i, with the completion sign folded into the appended rows.
PolyMatrix completed_jacobian(const Problem& pb, const JacobianSystem& sys, std::size_t i);

// Step 9: (df/dY) G_i = M_i L_i (Id|0), G_i H_i = M_i L_i Id, P = sum M_i L_i.
bool identity_battery(const Problem& pb, const JacobianSystem& sys, std::string* why = nullptr);

// Step 10 gate: (d^3, d'^3) + J contains (x)^N.
bool m_primary_gate(const Problem& pb, const Poly& d, const Poly& d1);

// One membership certificate: target = sum coeffs[k] * relations[k].
struct Membership {
  Poly target;
  std::vector<Poly> coeffs;
};

// A standard-smooth block: relations `eqs` solved for `vars`, with
// det(d eqs / d vars) equal to the product of `units`.
struct SmoothBlock {
  std::vector<std::string> vars;
  std::vector<std::size_t> eqs;
  std::vector<Poly> units;
};

struct DesingCertificate {
  bool trivial = false;
  Problem problem;
  // Trivial case: B is smooth at the point.
  std::optional<SmoothCertificate> smooth;
  // Full case.
  Problem stage;  // B after steps 4-6, with its extended y'
  ParameterPair pair;
  unsigned t = 0;
  JacobianSystem sys, sys1;  // for d and d'
  FinitePresentation result;   // B'
  std::vector<std::string> labels;  // one per relation of B'
  std::vector<SmoothBlock> blocks;
  std::vector<Membership> memberships;  // one per generator of I, over relations of B'
  std::vector<Poly> q1, q2;  // Taylor remainders Q and Q~ (not serialized)
  std::vector<std::vector<std::string>> t1, t2;  // T and T~ layouts
  JetPoint point;
  unsigned neff = 0;
};

DesingCertificate desingularize(const Problem& pb, const NeronConfig& cfg);

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

std::vector<CheckResult> verify_certificate(const DesingCertificate& c);

}  // namespace nd

#endif
