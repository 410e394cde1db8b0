#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/graphon.hpp"
#include "helpers.hpp"

// Randomized inequality checks. Each returns the number of instances run
// and the number that violated the inequality.
namespace testing {

using gldp::FiniteGraph;

struct Tally {
  int instances = 0;
  int violations = 0;
  void record(bool ok) {
    ++instances;
    violations += !ok;
  }
};

// Bipartite-supported refinement of f_r^gamma with every cross value raised
// by a random nonnegative amount.
inline StepGraphon raised_bipartite(std::mt19937_64& rng, const Rational& gamma, double r,
                                    int pieces) {
  std::vector<Rational> widths;
  std::vector<int> side;
  for (int s = 0; s < 2; ++s) {
    const Rational total = s == 0 ? gamma : Rational(1) - gamma;
    for (const auto& w : random_widths(rng, pieces, 8)) {
      widths.push_back(w * total);
      side.push_back(s);
    }
  }
  std::uniform_real_distribution<double> bump(0.0, 1.0 - r);
  const int m = static_cast<int>(widths.size());
  std::vector<std::vector<double>> v(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (side[i] != side[j]) v[i][j] = v[j][i] = r + bump(rng) * bump(rng);
  return StepGraphon(widths, v);
}

inline const std::vector<FiniteGraph>& small_patterns() {
  static const std::vector<FiniteGraph> all{FiniteGraph::single_edge(), FiniteGraph::cycle(3),
                                            FiniteGraph::cycle(4), FiniteGraph::path(3)};
  return all;
}

// |t(H,f) - t(H,g)| <= e(H) d(f,g) in cut norm.
inline Tally check_counting_lemma(int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally tally;
  for (int trial = 0; trial < pairs; ++trial) {
    const StepGraphon f = random_graphon(rng, 1 + trial % 5, 12);
    const StepGraphon g = random_graphon(rng, 1 + (trial / 5) % 5, 12);
    const double d = gldp::cut_norm_distance(f, g).value;
    bool ok = true;
    for (const auto& H : small_patterns())
      ok = ok && std::abs(gldp::hom_density(H, f) - gldp::hom_density(H, g)) <= H.edge_count() * d + 1e-12;
    tally.record(ok);
  }
  return tally;
}

// t(H,f) <= t(H,f*) for d-regular H and the d-averaged f*.
inline Tally check_averaging(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<FiniteGraph, int>> regular{{FiniteGraph::cycle(3), 2},
                                                         {FiniteGraph::cycle(4), 2},
                                                         {FiniteGraph::complete(4), 3},
                                                         {FiniteGraph::hypercube(3), 3}};
  Tally tally;
  for (int trial = 0; trial < instances; ++trial) {
    const auto coarse = random_widths(rng, 2 + trial % 2, 6);
    std::vector<Rational> fine;
    for (const auto& w : coarse)
      for (const auto& piece : random_widths(rng, 2, 4)) fine.push_back(w * piece);
    const int m = static_cast<int>(fine.size());
    const StepGraphon f(fine, random_values(rng, m));
    bool ok = true;
    for (const auto& [H, d] : regular)
      ok = ok && gldp::hom_density(H, f) <= gldp::hom_density(H, gldp::d_average(f, coarse, d)) + 1e-12;
    tally.record(ok);
  }
  return tally;
}

// ||f||_d^d >= 2 gamma (1-gamma) r^d for bipartite f with t(H,f) >= t(H,f_r),
// and the Jensen bound I(f) >= gamma(1-gamma) minorant(z) on the cross block.
inline Tally check_holder(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const std::vector<std::pair<FiniteGraph, int>> regular{{FiniteGraph::cycle(4), 2},
                                                         {FiniteGraph::hypercube(3), 3}};
  const double p = 0.05;
  Tally tally;
  for (int trial = 0; trial < instances; ++trial) {
    const Rational gamma(1 + trial % 7, 8);
    const double g = gldp::to_double(gamma);
    const double r = unit(rng);
    const StepGraphon f = raised_bipartite(rng, gamma, r, 2);
    bool ok = true;
    for (const auto& [H, d] : regular) {
      const bool feasible =
          gldp::hom_density(H, f) >= gldp::hom_density(H, StepGraphon::bipartite(gamma, r)) - 1e-15;
      ok = ok && feasible && gldp::power_integral(f, d) >= 2 * g * (1 - g) * std::pow(r, d) - 1e-12;
    }
    const StepGraphon W0 = gldp::refine_to(StepGraphon::bipartite(gamma, p), f.widths());
    const double z = gldp::power_integral(f, 2) / (2 * g * (1 - g));
    ok = ok && gldp::relative_entropy(W0, f) >= g * (1 - g) * gldp::minorant_value(p, 2, z) - 1e-12;
    tally.record(ok);
  }
  return tally;
}

// ||f||_1 <= ||f||_op <= ||f||_2 / sqrt(2) for bipartite-supported f.
inline Tally check_operator_sandwich(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 0.9);
  Tally tally;
  for (int trial = 0; trial < instances; ++trial) {
    const StepGraphon f = raised_bipartite(rng, Rational(1 + trial % 3, 4), unit(rng), 1 + trial % 3);
    const double op = gldp::operator_norm(f);
    tally.record(gldp::lp_norm(f, 1) <= op + 1e-12 && op <= gldp::lp_norm(f, 2) / std::sqrt(2.0) + 1e-12);
  }
  return tally;
}

// f >= g with cut distance eps: the set {f - g >= eps/2} has measure > eps/2.
inline Tally check_cut_set(int instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Tally tally;
  while (tally.instances < instances) {
    const int m = 1 + tally.instances % 6;
    const auto widths = random_widths(rng, m, 12);
    auto lower = random_values(rng, m, 0.0, 0.8);
    auto upper = lower;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) upper[i][j] = upper[j][i] = std::min(1.0, lower[i][j] + 0.3 * unit(rng));
    const StepGraphon f(widths, upper), g(widths, lower);
    const double eps = gldp::cut_norm_distance(f, g).value;
    if (eps <= 0) continue;
    double measure = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (upper[i][j] - lower[i][j] >= eps / 2) measure += f.width_values()[i] * f.width_values()[j];
    tally.record(measure > eps / 2);
  }
  return tally;
}

// I_{W0}(f) is infinite exactly when f leaves the support class of W0.
// `outside` counts the instances that were outside.
inline Tally check_infinite_entropy(int instances, std::uint64_t seed, int* outside = nullptr) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  Tally tally;
  int out = 0;
  for (int trial = 0; trial < instances; ++trial) {
    const int m = 2 + trial % 3;
    const auto widths = random_widths(rng, m, 12);
    std::vector<std::vector<double>> w0(m, std::vector<double>(m)), f(m, std::vector<double>(m));
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        const int k = kind(rng);
        w0[i][j] = w0[j][i] = k == 0 ? 0.0 : (k == 1 ? 1.0 : unit(rng));
        const bool keep = k > 1 || unit(rng) < 0.8;
        f[i][j] = f[j][i] = keep && k < 2 ? w0[i][j] : unit(rng);
      }
    const StepGraphon W0(widths, w0), g(widths, f);
    const bool inside = gldp::in_omega(W0, g);
    out += !inside;
    tally.record(std::isinf(gldp::relative_entropy(W0, g)) != inside);
  }
  if (outside) *outside = out;
  return tally;
}

}  // namespace testing
