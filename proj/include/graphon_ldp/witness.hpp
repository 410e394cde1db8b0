#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "graphon_ldp/graphon.hpp"
#include "graphon_ldp/solver.hpp"

namespace gldp {

enum class WitnessKind { GEps, CliqueChi, PlantedChiAlpha };
const char* to_string(WitnessKind k);

struct EpsilonTrial {
  double epsilon;
  double constraint_gap;  // witness minus symmetric candidate
  double entropy_gap;     // witness minus symmetric candidate
  bool standard_grid;     // epsilon in 2^-3 .. 2^-12
  bool accepted;
};

// A graphon that beats the symmetric candidate: at least as large on the
// constraint and strictly cheaper in entropy. Fields that do not apply to
// the construction are NaN.
struct Witness {
  WitnessKind kind;
  StepGraphon graphon;
  double target_witness;
  double target_symmetric;
  double entropy_witness;
  double entropy_symmetric;
  double constraint_margin;
  double entropy_margin;  // entropy_symmetric - entropy_witness
  bool valid;

  // strip construction
  double epsilon = kNaN;
  double r = kNaN;
  double r1 = kNaN;
  double r2 = kNaN;
  double s = kNaN;
  bool found_on_standard_grid = false;
  std::vector<EpsilonTrial> trials{};
  double predicted_coefficient = kNaN;       // leading eps^3 coefficient of the constraint gap
  std::vector<double> observed_coefficients{};// gap / eps^3 at the two smallest accepted eps

  // planted constructions: limits of I / log(1/p) as p -> 0
  double limit_ratio_witness = kNaN;
  double limit_ratio_symmetric = kNaN;

  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
};

// g^eps on widths (gamma, 1-gamma): thin strips of width O(eps^2) where the
// cross density is r1 or r2 instead of r.
StepGraphon geps_graphon(const Rational& gamma, double r, double r1, double r2, double s,
                         const Rational& epsilon);

// Scans eps = 2^-3 .. 2^-40 for a strip witness built from the chord
// (r1, r2) through r. Gaps are evaluated in 50-digit arithmetic. On the
// standard grid (down to 2^-12) both gaps must exceed 1e-12; below it they
// must exceed 1e-40. Never throws on absence: valid = false.
Witness geps_search(double p, const Rational& gamma, const Constraint& constraint, double r,
                    double r1, double r2);

// Uses the tangency window of h_p(x^(1/d)) as the chord. Throws DomainError
// when r is on the convex minorant and WitnessNotFound when the scan fails.
Witness witness_geps(double p, const Rational& gamma, const Constraint& constraint, double r);

enum class PlantedCase { Independent, Clique };
const char* to_string(PlantedCase c);

// Base graphons f_{0,p,p} (independent) and f_{1,p,p} (clique).
StepGraphon planted_base(PlantedCase c, const Rational& gamma, double p);

// chi_t: an all-ones square of side t^(1/v) (rounded up onto a dyadic grid),
// placed in (gamma,1]^2 for the independent case and at the origin for the
// clique case. Compares limit ratios with the best symmetric two-block
// graphon, and entropies at base probability p.
Witness witness_clique(PlantedCase c, const Rational& gamma, double t, const FiniteGraph& H,
                       double p);

// chi_alpha against f_{1,alpha,0} for base f_{1,p,0}.
Witness witness_planted(const Rational& gamma, double alpha, const FiniteGraph& H, double p);

// sum_k s_k gamma^(v-k) (1-gamma)^k x^k with s_k the independent-set counts.
double independent_set_polynomial(const FiniteGraph& H, double gamma, double x);

// Best limit ratio 1/2 (t(E,f) - |Omega_1|) over two-block graphons
// [[a, q], [q, b]] in the support class of the planted base with
// t(H, f) >= t. Returns the minimizing (q, b) as well.
struct FamilyOptimum {
  double value;
  double cross;
  double diagonal;
};
FamilyOptimum symmetric_family_limit(PlantedCase c, const Rational& gamma, const FiniteGraph& H,
                                     double t);

}  // namespace gldp
