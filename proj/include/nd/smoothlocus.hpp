#ifndef ND_SMOOTHLOCUS_HPP
#define ND_SMOOTHLOCUS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nd/idealops.hpp"
#include "nd/matrix.hpp"

namespace nd {

// w * unit - 1 is a relation of the presentation.
struct Inversion {
  std::string var;
  Poly unit;
};

// A[Y]/I over A = k[x]_(x)/J, possibly localized by inverse variables.
struct FinitePresentation {
  RingPtr ring;
  std::vector<Poly> base_ideal;
  std::vector<Poly> relations;
  std::vector<Inversion> inversions;

  // Variables other than the base ones, in declaration order.
  std::vector<std::size_t> algebra_vars() const;
  std::vector<Poly> inverse_relations() const;
  // Relations followed by the inverse relations.
  std::vector<Poly> all_relations() const;
  // J + relations + inverse relations.
  Ideal ambient() const;
  RingPtr base_ring() const;
};

struct ElkikPiece {
  std::vector<std::size_t> subset;  // indices into all_relations()
  std::vector<Poly> colon;          // generators of ((f) + J : I)
  std::vector<Minor> minors;        // r x r minors of the Jacobian of f
};

struct ElkikIdeal {
  Ideal ideal;
  std::vector<ElkikPiece> pieces;
  // For each generator of `ideal`: (piece, colon index, minor index).
  std::vector<std::array<std::size_t, 3>> provenance;
};

ElkikIdeal elkik_ideal(const FinitePresentation& b, std::size_t subset_bound = 3);

// ((f) + J : I) with the shortcut (1) when f already generates I.
Ideal colon_of_subsystem(const FinitePresentation& b, const std::vector<std::size_t>& subset);

struct SmoothCertificate {
  std::vector<std::size_t> subset;
  std::size_t r = 0;
  // unit = sum products[k].coeff * colon[products[k].colon] * minors[products[k].minor] + sum rel_coeffs * ambient gens
  Poly unit;
  std::vector<Poly> colon;
  std::vector<Minor> minors;
  struct Product {
    std::size_t colon, minor;
    Poly coeff;
  };
  std::vector<Product> products;
  std::vector<Poly> ambient_coeffs;
};

enum class SmoothStatus { Smooth, NotSmooth, Exhausted };

struct SmoothSearch {
  SmoothStatus status = SmoothStatus::NotSmooth;
  std::optional<SmoothCertificate> certificate;
};

SmoothSearch standard_smooth_certificate(const FinitePresentation& b, std::size_t subset_bound = 3);

// Re-expands the witness; true iff it proves the claimed unit with nonzero constant term.
bool check_smooth_certificate(const FinitePresentation& b, const SmoothCertificate& c, std::string* why = nullptr);

struct SymmetricAlgebra {
  FinitePresentation presentation;
  std::vector<std::string> new_vars;
  std::vector<Poly> new_relations;
};

// Adjoins S_1..S_l for the relations g_1..g_l, with the linear relations
// coming from their syzygies over A[Y] (entries reduced modulo I).
SymmetricAlgebra symmetric_algebra_presentation(const FinitePresentation& b, const std::string& stem = "S");

}  // namespace nd

#endif
