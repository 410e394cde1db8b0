#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "graphon_ldp/graphon.hpp"

namespace testing {

using gldp::Rational;
using gldp::StepGraphon;

inline std::vector<Rational> random_widths(std::mt19937_64& rng, int m, int den = 12) {
  // m distinct cut points on the grid 1/den, den >= m
  std::vector<int> cuts;
  std::uniform_int_distribution<int> pick(1, den - 1);
  while (static_cast<int>(cuts.size()) < m - 1) {
    int c = pick(rng);
    bool fresh = true;
    for (int x : cuts) fresh = fresh && x != c;
    if (fresh) cuts.push_back(c);
  }
  cuts.push_back(0);
  cuts.push_back(den);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> w;
  for (int i = 0; i < m; ++i) w.emplace_back(cuts[i + 1] - cuts[i], den);
  return w;
}

inline std::vector<std::vector<double>> random_values(std::mt19937_64& rng, int m, double lo = 0.0,
                                                      double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<std::vector<double>> v(m, std::vector<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) v[i][j] = v[j][i] = u(rng);
  return v;
}

inline StepGraphon random_graphon(std::mt19937_64& rng, int m, int den = 12, double lo = 0.0,
                                  double hi = 1.0) {
  return StepGraphon(random_widths(rng, m, den), random_values(rng, m, lo, hi));
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testing
