#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/solver.hpp"
#include "helpers.hpp"

using namespace gldp;

namespace {
const Rational kHalf(1, 2);
}

TEST_CASE("Erdos-Renyi edge constraint has a closed form") {
  for (double t : {0.35, 0.5, 0.9}) {
    const auto s = symmetric_min(StepGraphon::constant(0.3), FiniteGraph::single_edge(), t);
    CHECK(s.optimizer.value(0, 0) == doctest::Approx(t).epsilon(1e-10));
    CHECK(s.objective == doctest::Approx(0.5 * bernoulli_kl(0.3, t)).epsilon(1e-10));
    CHECK(std::abs(s.residual) <= 1e-8);
  }
}

TEST_CASE("bipartite base on the minorant") {
  const StepGraphon W0 = StepGraphon::bipartite(Rational(1, 3), 0.2);
  const FiniteGraph C4 = FiniteGraph::cycle(4);
  for (double r : {0.3, 0.6, 0.9}) {
    const double t = hom_density(C4, StepGraphon::bipartite(Rational(1, 3), r));
    const auto b = phi_bracket(W0, C4, t);
    const double expect = (2.0 / 9) * bernoulli_kl(0.2, r);
    CHECK(b.regime == Regime::SymmetricCertified);
    CHECK(b.lower == b.upper);
    CHECK(b.upper == doctest::Approx(expect).epsilon(1e-9));
    CHECK(b.symmetric.optimizer.value(0, 1) == doctest::Approx(r).epsilon(1e-8));
    CHECK(b.symmetric.optimizer.value(0, 0) == 0.0);
  }
}

TEST_CASE("bipartite base off the minorant is broken") {
  const StepGraphon W0 = StepGraphon::bipartite(kHalf, 0.05);
  const FiniteGraph C4 = FiniteGraph::cycle(4);
  const double r = 0.5;
  REQUIRE_FALSE(on_minorant(0.05, 2, r));
  const auto b = phi_bracket(W0, C4, hom_density(C4, StepGraphon::bipartite(kHalf, r)));
  CHECK(b.regime == Regime::BrokenCertified);
  REQUIRE(b.witness_entropy);
  CHECK(b.upper < 0.25 * bernoulli_kl(0.05, r));
  CHECK(b.lower <= b.upper);
}

TEST_CASE("targets at and beyond the range ends") {
  const StepGraphon W0 = StepGraphon::uniform({{0.2, 0.0}, {0.0, 0.4}});
  const FiniteGraph C4 = FiniteGraph::cycle(4);
  const double t0 = hom_density(C4, W0);
  const auto [fmax, tmax] = f_max_graphon(C4, W0);

  const auto low = symmetric_min(W0, C4, t0 * 0.5);
  CHECK(low.optimizer == W0);
  CHECK(low.objective == 0.0);
  CHECK(low.regime == Regime::SymmetricCertified);
  const auto b = phi_bracket(W0, C4, t0);
  CHECK(b.lower == 0.0);
  CHECK(b.upper == 0.0);

  const auto top = symmetric_min(W0, C4, tmax);
  CHECK(top.optimizer == fmax);
  CHECK_FALSE(top.infeasible);
  CHECK(top.objective == doctest::Approx(relative_entropy(W0, fmax)));

  const auto over = symmetric_min(W0, C4, tmax + 1e-6);
  CHECK(over.infeasible);
  CHECK(over.objective == kInfinity);

  CHECK_THROWS_AS(symmetric_min(W0, FiniteGraph::path(2), 0.1), DomainError);
}

TEST_CASE("solver contracts on a masked three-block base") {
  // Zero block (0,2) makes some blocks irrelevant for the triangle.
  const StepGraphon W0({Rational(1, 4), Rational(1, 4), Rational(1, 2)},
                       {{0.3, 0.2, 0.0}, {0.2, 0.4, 0.25}, {0.0, 0.25, 0.1}});
  const FiniteGraph C4 = FiniteGraph::cycle(4);
  const double t0 = hom_density(C4, W0);
  const auto [fmax, tmax] = f_max_graphon(C4, W0);
  const RelevantSet R = relevant_blocks(C4, W0);
  double prev = 0.0;
  for (int i = 1; i <= 5; ++i) {
    const double t = t0 + (tmax - t0) * i / 6.0;
    const auto s = symmetric_min(W0, C4, t);
    CHECK(std::abs(s.residual) <= 1e-8);
    CHECK(s.restart_spread <= 1e-6);
    CHECK(s.objective > prev);
    prev = s.objective;
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) {
        if (R.contains(a, c)) CHECK(s.optimizer.value(a, c) >= W0.value(a, c));
        else CHECK(s.optimizer.value(a, c) == W0.value(a, c));
      }
    CHECK(in_omega(W0, s.optimizer));
  }
}

TEST_CASE("restarts are reproducible") {
  const StepGraphon W0 = StepGraphon::uniform({{0.2, 0.3}, {0.3, 0.1}});
  const FiniteGraph K3 = FiniteGraph::cycle(3);
  const double t = 2 * hom_density(K3, W0);
  SolverOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = symmetric_min(W0, K3, t, one);
  const auto b = symmetric_min(W0, K3, t, many);
  CHECK(a.optimizer == b.optimizer);
  CHECK(a.objective == b.objective);
}

TEST_CASE("bipartite phase classification") {
  const Constraint C4 = Constraint::hom_density(FiniteGraph::cycle(4));
  const Constraint edge = Constraint::hom_density(FiniteGraph::single_edge());
  const Constraint op = Constraint::operator_norm();
  CHECK(bipartite_phase(0.05, 0.5, C4, 0.05) == Phase::Symmetric);
  for (int i = 0; i <= 20; ++i) CHECK(bipartite_phase(0.05, 0.5, edge, 0.05 + 0.95 * i / 20) == Phase::Symmetric);
  CHECK(bipartite_phase(0.05, 0.5, C4, 0.5) == Phase::Broken);
  CHECK(bipartite_phase(0.05, 0.5, op, 0.5) == Phase::Broken);
  CHECK(op.degree() == 2);
  CHECK_THROWS_AS(bipartite_phase(0.05, 0.5, C4, 0.01), DomainError);

  const Rational g(1, 3);
  for (double r : {0.1, 0.5, 0.9}) {
    CHECK(bipartite_r_for_target(g, C4, bipartite_target(g, C4, r)) == doctest::Approx(r));
    CHECK(bipartite_r_for_target(g, op, bipartite_target(g, op, r)) == doctest::Approx(r));
  }
}

TEST_CASE("phase scan") {
  const Constraint C4 = Constraint::hom_density(FiniteGraph::cycle(4));
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(0.3 + 0.7 * i / 39);
  for (const auto& row : phase_scan(0.3, kHalf, C4, grid)) CHECK(row.on_minorant);

  grid.clear();
  for (int i = 0; i < 40; ++i) grid.push_back(0.05 + 0.95 * i / 39);
  const auto rows = phase_scan(0.05, kHalf, C4, grid);
  int switches = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    switches += rows[i].on_minorant != rows[i - 1].on_minorant;
    CHECK(rows[i].symmetric_entropy > rows[i - 1].symmetric_entropy);
  }
  CHECK(switches == 2);
  CHECK(rows.front().on_minorant);
  CHECK(rows.back().on_minorant);
  for (const auto& row : rows)
    if (!row.on_minorant) CHECK(row.witness_entropy < row.symmetric_entropy);

  const std::string csv = phase_rows_csv(rows);
  CHECK(csv.rfind("r,t_target,on_minorant,symmetric_I,witness_I\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 41);
}
