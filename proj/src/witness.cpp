#include "graphon_ldp/witness.hpp"

#include <cmath>
#include <string>

#include "detail/precise.hpp"
#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/errors.hpp"

namespace gldp {

using detail::Precise;

const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::GEps: return "GEps";
    case WitnessKind::CliqueChi: return "CliqueChi";
    case WitnessKind::PlantedChiAlpha: return "PlantedChiAlpha";
  }
  return "?";
}

const char* to_string(PlantedCase c) {
  return c == PlantedCase::Independent ? "PlantedIndependent" : "PlantedClique";
}

StepGraphon geps_graphon(const Rational& gamma, double r, double r1, double r2, double s,
                         const Rational& epsilon) {
  if (gamma <= 0 || gamma >= 1) throw DomainError("gamma must lie in (0,1)");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("chord weight s must lie in (0,1)");
  const Rational sq = rational_from_double(s);
  const Rational e2 = epsilon * epsilon;
  const Rational e3 = e2 * epsilon;
  const Rational one_minus = Rational(1) - gamma;
  const Rational a1 = gamma * sq * e2;
  const Rational a2 = one_minus * sq * e2;
  const Rational a3 = one_minus * ((Rational(1) - sq) * e2 + e3);
  const Rational a4 = gamma * ((Rational(1) - sq) * e2 + e3);
  // Left side: strip 1, left bulk, strip 4. Right side: strip 2, right bulk, strip 3.
  std::vector<Rational> widths{a1, gamma - a1 - a4, a4, a2, one_minus - a2 - a3, a3};
  for (const auto& w : widths)
    if (w <= 0) throw DomainError("epsilon too large for the strip construction");
  std::vector<std::vector<double>> v(6, std::vector<double>(6, 0.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) v[i][j] = r;
  v[0][4] = r1;  // strip 1 against right bulk
  v[1][3] = r1;  // left bulk against strip 2
  v[1][5] = r2;  // left bulk against strip 3
  v[2][4] = r2;  // strip 4 against right bulk
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) v[j][i] = v[i][j];
  return StepGraphon(std::move(widths), std::move(v));
}

namespace {

Witness make_witness(WitnessKind kind, StepGraphon graphon, double target_witness,
                     double target_symmetric, double entropy_witness, double entropy_symmetric) {
  return Witness{.kind = kind,
                 .graphon = std::move(graphon),
                 .target_witness = target_witness,
                 .target_symmetric = target_symmetric,
                 .entropy_witness = entropy_witness,
                 .entropy_symmetric = entropy_symmetric,
                 .constraint_margin = 0.0,
                 .entropy_margin = 0.0,
                 .valid = false};
}

Precise precise_target(const Constraint& c, const StepGraphon& f) {
  return c.kind() == Constraint::Kind::OperatorNorm ? detail::precise_operator_norm(f)
                                                    : detail::precise_hom_density(c.graph(), f);
}

}  // namespace

Witness geps_search(double p, const Rational& gamma, const Constraint& constraint, double r,
                    double r1, double r2) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0,1)");
  if (!(r1 < r && r < r2 && r2 <= 1.0 && r1 >= 0.0))
    throw DomainError("chord must satisfy 0 <= r1 < r < r2 <= 1");
  const int d = constraint.degree();
  const double s = (std::pow(r2, d) - std::pow(r, d)) / (std::pow(r2, d) - std::pow(r1, d));
  const StepGraphon base = StepGraphon::bipartite(gamma, p);
  const StepGraphon symmetric = StepGraphon::bipartite(gamma, r);
  const Precise t_sym = precise_target(constraint, symmetric);
  const Precise i_sym = detail::precise_entropy(base, symmetric);

  Witness w = make_witness(WitnessKind::GEps, symmetric, t_sym.convert_to<double>(),
                           t_sym.convert_to<double>(), i_sym.convert_to<double>(),
                           i_sym.convert_to<double>());
  w.r = r;
  w.r1 = r1;
  w.r2 = r2;
  w.s = s;

  int chosen = -1;
  for (int k = 3; k <= 40; ++k) {
    const Rational eps(BigInt(1), BigInt(1) << k);
    StepGraphon g = geps_graphon(gamma, r, r1, r2, s, eps);
    const Precise tg = precise_target(constraint, g) - t_sym;
    const Precise ig = detail::precise_entropy(base, g) - i_sym;
    const bool standard = k <= 12;
    const double threshold = standard ? 1e-12 : 1e-40;
    const bool accepted = tg > threshold && -ig > threshold;
    w.trials.push_back({std::ldexp(1.0, -k), tg.convert_to<double>(), ig.convert_to<double>(),
                        standard, accepted});
    if (accepted && chosen < 0) chosen = static_cast<int>(w.trials.size()) - 1;
    if (accepted && standard) w.found_on_standard_grid = true;
  }
  if (chosen < 0) return w;

  const auto& trial = w.trials[chosen];
  w.epsilon = trial.epsilon;
  w.graphon = geps_graphon(gamma, r, r1, r2, s, Rational(BigInt(1), BigInt(1) << (chosen + 3)));
  w.target_witness = w.target_symmetric + trial.constraint_gap;
  w.entropy_witness = w.entropy_symmetric + trial.entropy_gap;
  w.constraint_margin = trial.constraint_gap;
  w.entropy_margin = -trial.entropy_gap;
  w.valid = true;

  if (constraint.kind() == Constraint::Kind::HomDensity) {
    const FiniteGraph& H = constraint.graph();
    const int half = H.vertex_count() / 2;
    const double g = to_double(gamma);
    w.predicted_coefficient = std::ldexp(1.0, H.component_count() + 1) * half *
                              std::pow(g * (1.0 - g), half) * std::pow(r, H.edge_count() - d) *
                              (std::pow(r2, d) - std::pow(r, d));
  }
  for (auto it = w.trials.rbegin(); it != w.trials.rend() && w.observed_coefficients.size() < 2; ++it)
    if (it->accepted) w.observed_coefficients.push_back(it->constraint_gap / std::pow(it->epsilon, 3));
  return w;
}

Witness witness_geps(double p, const Rational& gamma, const Constraint& constraint, double r) {
  const int d = constraint.degree();
  const PsiProfile profile = analyze_psi(p, d);
  if (!(r > p && r < 1.0) || profile.on_minorant(r))
    throw DomainError("r is on the convex minorant; no strip witness exists");
  const auto [a, b] = *profile.window();
  Witness w = geps_search(p, gamma, constraint, r, std::pow(a, 1.0 / d), std::pow(b, 1.0 / d));
  if (!w.valid) throw WitnessNotFound("no epsilon on the grid gives a strip witness at r=" + std::to_string(r));
  return w;
}

StepGraphon planted_base(PlantedCase c, const Rational& gamma, double p) {
  return StepGraphon::two_block(gamma, c == PlantedCase::Independent ? 0.0 : 1.0, p, p);
}

double independent_set_polynomial(const FiniteGraph& H, double gamma, double x) {
  const auto counts = H.independent_set_counts();
  const int v = H.vertex_count();
  double total = 0.0;
  for (int k = 0; k <= v; ++k)
    total += static_cast<double>(counts[k]) * std::pow(gamma, v - k) * std::pow(1.0 - gamma, k) *
             std::pow(x, k);
  return total;
}

FamilyOptimum symmetric_family_limit(PlantedCase c, const Rational& gamma, const FiniteGraph& H,
                                     double t) {
  const double corner = c == PlantedCase::Independent ? 0.0 : 1.0;
  const double g = to_double(gamma);
  auto density = [&](double q, double b) {
    return hom_density(H, StepGraphon::two_block(gamma, corner, q, b));
  };
  auto ratio = [&](double q, double b) { return 0.5 * (2.0 * g * (1.0 - g) * q + (1.0 - g) * (1.0 - g) * b); };
  // Smallest diagonal value meeting the constraint for a given cross value.
  auto best_b = [&](double q) -> double {
    if (density(q, 1.0) < t) return kInfinity;
    if (density(q, 0.0) >= t) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (density(q, mid) >= t ? hi : lo) = mid;
    }
    return hi;
  };
  auto value_at = [&](double q) {
    const double b = best_b(q);
    return std::isinf(b) ? kInfinity : ratio(q, b);
  };
  const int n = 400;
  double best_q = 0.0, best = kInfinity;
  for (int i = 0; i <= n; ++i) {
    const double q = static_cast<double>(i) / n;
    const double v = value_at(q);
    if (v < best) {
      best = v;
      best_q = q;
    }
  }
  if (std::isinf(best)) throw DomainError("target exceeds the family maximum");
  // Golden-section refinement around the best grid point.
  double lo = std::max(0.0, best_q - 1.0 / n), hi = std::min(1.0, best_q + 1.0 / n);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = value_at(x1), f2 = value_at(x2);
  for (int i = 0; i < 60; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = value_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = value_at(x2);
    }
  }
  for (double q : {x1, x2, lo, hi}) {
    const double v = value_at(q);
    if (v < best) {
      best = v;
      best_q = q;
    }
  }
  return {best, best_q, best_b(best_q)};
}

Witness witness_clique(PlantedCase c, const Rational& gamma, double t, const FiniteGraph& H,
                       double p) {
  if (H.edge_count() == 0) throw DomainError("pattern needs at least one edge");
  if (gamma <= 0 || gamma >= 1) throw DomainError("gamma must lie in (0,1)");
  const int v = H.vertex_count();
  const StepGraphon base = planted_base(c, gamma, p);
  const BigInt den = boost::multiprecision::denominator(gamma);
  const Rational side = round_to_grid(std::pow(t, 1.0 / v), den, 60, Rounding::Up);
  StepGraphon chi = StepGraphon::constant(0.0);
  if (c == PlantedCase::Independent) {
    const double upper = hom_density(H, StepGraphon::two_block(gamma, 0.0, 0.0, 1.0));
    const double refused = hom_density(H, StepGraphon::two_block(gamma, 0.0, 1.0, 1.0));
    if (!(t > 0.0 && t < upper)) {
      if (t >= upper && t < refused)
        throw DomainError("targets in [t(H,f_{0,0,1}), t(H,f_{0,1,1})) are not covered");
      throw DomainError("target outside (0, t(H,f_{0,0,1}))");
    }
    const Rational rest = Rational(1) - gamma - side;
    if (rest <= 0) throw DomainError("target too close to the range edge for the grid");
    chi = StepGraphon({gamma, rest, side}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}});
  } else {
    const double lower = hom_density(H, StepGraphon::two_block(gamma, 1.0, 0.0, 0.0));
    if (!(t > lower && t < 1.0)) throw DomainError("target outside (t(H,f_{1,0,0}), 1)");
    if (side >= 1) {
      chi = StepGraphon::constant(1.0);
    } else {
      chi = StepGraphon({gamma, side - gamma, Rational(1) - side},
                        {{1, 1, 0}, {1, 1, 0}, {0, 0, 0}});
    }
  }
  const VariationalSolution sym = symmetric_min(base, H, t);
  Witness w = make_witness(WitnessKind::CliqueChi, chi, hom_density(H, chi),
                           hom_density(H, sym.optimizer), relative_entropy(base, chi),
                           sym.objective);
  w.constraint_margin = w.target_witness - t;
  w.entropy_margin = w.entropy_symmetric - w.entropy_witness;
  w.valid = w.constraint_margin >= 0.0 && w.entropy_margin > 0.0;
  w.limit_ratio_witness = limit_entropy_ratio(base, chi);
  w.limit_ratio_symmetric = symmetric_family_limit(c, gamma, H, t).value;
  return w;
}

Witness witness_planted(const Rational& gamma, double alpha, const FiniteGraph& H, double p) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  if (gamma <= 0 || gamma >= 1) throw DomainError("gamma must lie in (0,1)");
  const int d = require_regular(H);
  const double g = to_double(gamma);
  const BigInt den = boost::multiprecision::denominator(gamma);
  const Rational strip = round_to_grid((1.0 - g) * std::pow(alpha, d), den, 60);
  const Rational rest = Rational(1) - gamma - strip;
  if (strip <= 0 || rest <= 0) throw DomainError("alpha too close to 0 or 1 for the grid");
  const StepGraphon chi({gamma, strip, rest}, {{1, 1, 0}, {1, 0, 0}, {0, 0, 0}});
  const StepGraphon base = StepGraphon::two_block(gamma, 1.0, p, 0.0);
  const StepGraphon symmetric = StepGraphon::two_block(gamma, 1.0, alpha, 0.0);
  Witness w = make_witness(WitnessKind::PlantedChiAlpha, chi, hom_density(H, chi),
                           hom_density(H, symmetric), relative_entropy(base, chi),
                           relative_entropy(base, symmetric));
  if (std::abs(w.target_witness - w.target_symmetric) > 1e-10)
    throw Error("planted construction does not reproduce the symmetric density");
  w.constraint_margin = w.target_witness - w.target_symmetric;
  w.entropy_margin = w.entropy_symmetric - w.entropy_witness;
  w.valid = w.constraint_margin >= -1e-12 && w.entropy_margin > 0.0;
  w.limit_ratio_witness = limit_entropy_ratio(base, chi);
  w.limit_ratio_symmetric = limit_entropy_ratio(base, symmetric);
  return w;
}

}  // namespace gldp
