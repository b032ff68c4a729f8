#ifndef ND_NERON_INTERNAL_HPP
#define ND_NERON_INTERNAL_HPP

#include <iostream>
#include <string>
#include <vector>

#include "nd/neroncore.hpp"

namespace nd {

// Images for substitute(): base variables to themselves, algebra variables to y'.
std::vector<Poly> point_images(const Problem& pb, const RingPtr& target);
// p(y') in the base ring.
Poly at_point(const Problem& pb, const Poly& p);
JetContext jet_context(const Problem& pb);

inline void log_step(const NeronConfig& cfg, int step, const std::string& msg) {
  if (cfg.verbose) std::cerr << "[step " << step << "] " << msg << '\n';
}

// Divided differences of p in the variables `vars` between the points a and b
// (images in `target`): p(a) - p(b) = sum_m (a_m - b_m) * out[m]. Other
// variables are mapped by `rest`.
std::vector<Poly> divided_differences(const Poly& p, const std::vector<std::size_t>& vars,
                                      const std::vector<Poly>& a, const std::vector<Poly>& b,
                                      const std::vector<Poly>& rest, const RingPtr& target);


// Shared construction of one stage (h, g, s', s'' and Taylor certificates)
// around a center c of the algebra variables of `pb`.
struct StageInput {
  const Problem* pb = nullptr;
  const JacobianSystem* sys = nullptr;
  RingPtr ring;                                  // ring holding everything
  std::vector<Poly> center;                      // c_j, one per algebra variable
  std::vector<std::string> ynew;                 // new coordinates
  std::vector<std::vector<std::string>> tvars;   // tvars[i][m]
  Poly dd, sigma;                                // d' (or d) and s (or s~)
  std::vector<Poly> b;                           // b_k, one per element of f
};

struct StageOutput {
  std::vector<Poly> h, w, g, q;
  Poly s1, s2;
  unsigned p = 0;
  // sigma^p f_k(Ynew) = dd^2 g_k + sigma^p (f_k(c) - dd^2 b_k)
  //   + sigma^(p-1) dd T_k (P(c) - dd sigma) + sum_j h_j hcoef[k][j]
  std::vector<std::vector<Poly>> hcoef;
  std::vector<Poly> fc;  // f_k(c)
  Poly pc;               // P(c)
};

StageOutput build_stage(const StageInput& in);

// 1 - (w u)^p = -(w u - 1) * sum_{i<p} (w u)^i; returns the sum.
Poly geometric_cofactor(const Poly& wu, unsigned p);

// Names and layout of the ring of B'.
struct Layout {
  RingPtr ring;
  std::vector<std::string> y1, y2;                     // Y' and Y
  std::vector<std::vector<std::string>> t1, t2;        // T and T~
  std::vector<std::string> w1, w2;                     // inverse variables of each stage
};

// Jets of B' -> A' for the full construction.
struct JetInput {
  const Problem* stage = nullptr;
  const JacobianSystem *sys = nullptr, *sys1 = nullptr;
  const Layout* layout = nullptr;
  std::vector<Poly> h1, g1, h2, g2;
  std::vector<Poly> units1, units2;  // s, s', s'' and their second-stage analogues
};

JetPoint lift_point(const JetInput& in, const NeronConfig& cfg);

}  // namespace nd

#endif
