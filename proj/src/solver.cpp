#include "graphon_ldp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/io.hpp"
#include "graphon_ldp/parallel.hpp"
#include "graphon_ldp/witness.hpp"

namespace gldp {

Constraint Constraint::hom_density(FiniteGraph H) {
  Constraint c;
  c.kind_ = Kind::HomDensity;
  c.graph_ = std::move(H);
  return c;
}

Constraint Constraint::operator_norm() { return Constraint{}; }

const FiniteGraph& Constraint::graph() const {
  if (!graph_) throw DomainError("operator-norm constraint has no pattern graph");
  return *graph_;
}

int Constraint::degree() const {
  return kind_ == Kind::OperatorNorm ? 2 : require_regular(*graph_);
}

double Constraint::evaluate(const StepGraphon& f) const {
  return kind_ == Kind::OperatorNorm ? gldp::operator_norm(f) : gldp::hom_density(*graph_, f);
}

std::string Constraint::name() const {
  if (kind_ == Kind::OperatorNorm) return "operator_norm";
  return "hom_density";
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::SymmetricCertified: return "SymmetricCertified";
    case Regime::BrokenCertified: return "BrokenCertified";
    case Regime::BracketOnly: return "BracketOnly";
  }
  return "?";
}

const char* to_string(Phase p) { return p == Phase::Symmetric ? "Symmetric" : "Broken"; }

namespace {

// Solves A x = b in place (n small) by Gaussian elimination with partial
// pivoting. Returns false on a numerically singular matrix.
bool solve_dense(std::vector<double> A, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    if (std::abs(A[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(A[col * n + k], A[piv * n + k]);
      std::swap(b[col], b[piv]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] / A[col * n + col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) A[r * n + k] -= f * A[col * n + k];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= A[r * n + k] * b[k];
    b[r] = s / A[r * n + r];
  }
  return true;
}

double h_second(double u) { return 1.0 / (u * (1.0 - u)); }

// Block problem restricted to the free relevant blocks.
class BlockProblem {
 public:
  BlockProblem(const StepGraphon& W0, const FiniteGraph& H, double t, const RelevantSet& relevant)
      : W0_(W0), H_(H), t_(t), m_(W0.block_count()) {
    const auto& w = W0.width_values();
    for (auto [a, b] : relevant.pairs) {
      const double p = W0.value(a, b);
      if (p <= 0.0 || p >= 1.0) continue;
      a_.push_back(a);
      b_.push_back(b);
      p_.push_back(p);
      c_.push_back(a == b ? 0.5 * w[a] * w[a] : w[a] * w[b]);
      idx_.push_back(pair_index(m_, a, b));
    }
  }

  int size() const { return static_cast<int>(p_.size()); }
  double lower(int k) const { return p_[k]; }
  static constexpr double kUpper = 1.0 - 1e-14;

  StepGraphon build(const std::vector<double>& x) const {
    auto values = W0_.values();
    for (int k = 0; k < size(); ++k) values[a_[k]][b_[k]] = values[b_[k]][a_[k]] = x[k];
    return W0_.with_values(std::move(values));
  }

  double entropy(const std::vector<double>& x) const {
    double s = 0.0;
    for (int k = 0; k < size(); ++k) s += c_[k] * bernoulli_kl(p_[k], x[k]);
    return s;
  }

  double density(const std::vector<double>& x) const { return hom_density(H_, build(x)); }

  // t and its gradient (and Hessian) over the decision variables.
  double density_derivatives(const std::vector<double>& x, std::vector<double>& grad,
                             std::vector<double>* hess) const {
    auto d = hom_density_derivatives(H_, build(x), hess != nullptr);
    const int n = size();
    const int K = pair_count(m_);
    grad.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) grad[k] = d.gradient[idx_[k]];
    if (hess) {
      hess->assign(static_cast<std::size_t>(n * n), 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) (*hess)[i * n + j] = d.hessian[idx_[i] * K + idx_[j]];
    }
    return d.value;
  }

  double target() const { return t_; }
  double weight(int k) const { return c_[k]; }
  double base(int k) const { return p_[k]; }

 private:
  const StepGraphon& W0_;
  const FiniteGraph& H_;
  double t_;
  int m_;
  std::vector<int> a_, b_, idx_;
  std::vector<double> p_, c_;
};

struct LocalResult {
  std::vector<double> x;
  double objective;
  double residual;
  double multiplier;
};

void clamp_box(const BlockProblem& P, std::vector<double>& x) {
  for (int k = 0; k < P.size(); ++k) x[k] = std::clamp(x[k], P.lower(k), BlockProblem::kUpper);
}

// Augmented Lagrangian on c(x) = t(x)/t - 1 with a projected Newton inner
// solve, then Newton on the KKT system.
LocalResult solve_from(const BlockProblem& P, std::vector<double> x) {
  const int n = P.size();
  const double t = P.target();
  double lambda = 0.0, mu = 10.0, prev_violation = kInfinity;
  std::vector<double> grad_t, hess_t, g(static_cast<std::size_t>(n));

  auto merit = [&](const std::vector<double>& y) {
    const double c = P.density(y) / t - 1.0;
    return P.entropy(y) - lambda * c + 0.5 * mu * c * c;
  };

  for (int outer = 0; outer < 80; ++outer) {
    for (int inner = 0; inner < 100; ++inner) {
      const double tv = P.density_derivatives(x, grad_t, &hess_t);
      const double c = tv / t - 1.0;
      const double scale = mu * c - lambda;
      for (int k = 0; k < n; ++k)
        g[k] = P.weight(k) * bernoulli_kl_derivative(P.base(k), x[k]) + scale * grad_t[k] / t;
      std::vector<char> free(static_cast<std::size_t>(n), 1);
      double pg = 0.0;
      for (int k = 0; k < n; ++k) {
        const bool at_lo = x[k] <= P.lower(k) && g[k] > 0;
        const bool at_hi = x[k] >= BlockProblem::kUpper && g[k] < 0;
        if (at_lo || at_hi) free[k] = 0;
        const double moved = std::clamp(x[k] - g[k], P.lower(k), BlockProblem::kUpper);
        pg = std::max(pg, std::abs(moved - x[k]));
      }
      if (pg < 1e-9) break;
      std::vector<int> F;
      for (int k = 0; k < n; ++k)
        if (free[k]) F.push_back(k);
      const int nf = static_cast<int>(F.size());
      if (nf == 0) break;
      // Newton step with the exact Hessian when it gives descent, else Gauss-Newton.
      auto direction = [&](bool exact, std::vector<double>& rhs) {
        std::vector<double> A(static_cast<std::size_t>(nf * nf));
        rhs.assign(static_cast<std::size_t>(nf), 0.0);
        for (int i = 0; i < nf; ++i) {
          for (int j = 0; j < nf; ++j) {
            A[i * nf + j] = mu * grad_t[F[i]] * grad_t[F[j]] / (t * t);
            if (exact) A[i * nf + j] += scale * hess_t[F[i] * n + F[j]] / t;
          }
          A[i * nf + i] += P.weight(F[i]) * h_second(x[F[i]]);
          rhs[i] = -g[F[i]];
        }
        if (!solve_dense(A, rhs, nf)) return false;
        double slope = 0.0;
        for (int i = 0; i < nf; ++i) slope += g[F[i]] * rhs[i];
        return slope < 0.0;
      };
      std::vector<double> rhs;
      if (!direction(true, rhs) && !direction(false, rhs)) break;
      std::vector<double> d(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < nf; ++i) d[F[i]] = rhs[i];
      const double m0 = merit(x);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
        std::vector<double> y = x;
        for (int k = 0; k < n; ++k) y[k] += step * d[k];
        clamp_box(P, y);
        double decrease = 0.0;
        for (int k = 0; k < n; ++k) decrease += g[k] * (y[k] - x[k]);
        if (merit(y) <= m0 + 1e-4 * decrease) {
          double change = 0.0;
          for (int k = 0; k < n; ++k) change = std::max(change, std::abs(y[k] - x[k]));
          x = std::move(y);
          moved = change > 0.0;
          if (change < 1e-16) moved = false;
          break;
        }
      }
      if (!moved) break;
    }
    const double c = P.density(x) / t - 1.0;
    if (std::abs(c) < 1e-7) break;
    lambda -= mu * c;
    if (std::abs(c) > 0.25 * prev_violation) mu *= 2.0;
    prev_violation = std::abs(c);
  }

  // KKT Newton: w_k h'(x_k) - nu dt/dx_k = 0, t(x) = t.
  double tv = P.density_derivatives(x, grad_t, nullptr);
  double nu = 0.0;
  {
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
      num += P.weight(k) * bernoulli_kl_derivative(P.base(k), x[k]) * grad_t[k];
      den += grad_t[k] * grad_t[k];
    }
    if (den > 0) nu = num / den;
  }
  for (int iter = 0; iter < 50; ++iter) {
    tv = P.density_derivatives(x, grad_t, &hess_t);
    const int N = n + 1;
    std::vector<double> J(static_cast<std::size_t>(N * N), 0.0), r(static_cast<std::size_t>(N));
    double res = std::abs(tv - t);
    for (int i = 0; i < n; ++i) {
      r[i] = -(P.weight(i) * bernoulli_kl_derivative(P.base(i), x[i]) - nu * grad_t[i]);
      res = std::max(res, std::abs(r[i]));
      for (int j = 0; j < n; ++j) J[i * N + j] = -nu * hess_t[i * n + j];
      J[i * N + i] += P.weight(i) * h_second(x[i]);
      J[i * N + n] = -grad_t[i];
      J[n * N + i] = grad_t[i];
    }
    r[n] = -(tv - t);
    if (res < 1e-15) break;
    if (!solve_dense(J, r, N)) break;
    // Stay strictly inside the box.
    double step = 1.0;
    for (int k = 0; k < n; ++k) {
      if (x[k] + step * r[k] <= P.lower(k)) step = std::min(step, 0.9 * (x[k] - P.lower(k)) / -r[k]);
      if (x[k] + step * r[k] >= BlockProblem::kUpper)
        step = std::min(step, 0.9 * (BlockProblem::kUpper - x[k]) / r[k]);
    }
    if (!(step > 0)) break;
    double change = 0.0;
    for (int k = 0; k < n; ++k) {
      x[k] += step * r[k];
      change = std::max(change, std::abs(step * r[k]));
    }
    nu += step * r[n];
    if (change < 1e-16) break;
  }
  tv = P.density(x);
  return {x, P.entropy(x), tv - t, nu};
}

bool lex_less(const LocalResult& a, const LocalResult& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  return a.x < b.x;
}

}  // namespace

VariationalSolution symmetric_min(const StepGraphon& W0, const FiniteGraph& H, double t,
                                  const SolverOptions& options) {
  require_regular(H);
  if (!std::isfinite(t)) throw DomainError("target must be finite");
  const double t0 = hom_density(H, W0);
  auto [fmax, tmax] = f_max_graphon(H, W0);
  VariationalSolution sol{W0, 0.0, t, "hom_density", t0 - t, Regime::SymmetricCertified,
                          0.0, 0.0, false, t0, tmax, 0.0, 0, 0.0};
  if (t <= t0) return sol;
  if (t > tmax) {
    sol.optimizer = fmax;
    sol.objective = sol.lower = sol.upper = kInfinity;
    sol.residual = tmax - t;
    sol.infeasible = true;
    return sol;
  }
  if (t >= tmax) {
    sol.optimizer = fmax;
    sol.objective = sol.lower = sol.upper = relative_entropy(W0, fmax);
    sol.residual = tmax - t;
    return sol;
  }

  BlockProblem P(W0, H, t, relevant_blocks(H, W0));
  const int n = P.size();
  const int restarts = std::max(1, options.restarts);
  std::vector<LocalResult> results(static_cast<std::size_t>(restarts));
  parallel_for(results.size(), worker_count(options.threads), [&](std::size_t i) {
    std::mt19937_64 rng(options.seed + 0x9E3779B97F4A7C15ULL * (i + 1));
    std::uniform_real_distribution<double> lift(0.0, 1.0);
    std::vector<double> x0(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      x0[k] = P.lower(k) + lift(rng) * (BlockProblem::kUpper - P.lower(k));
    results[i] = solve_from(P, std::move(x0));
  });

  // Discard restarts that failed to reach the constraint, keep the rest.
  const LocalResult* best = nullptr;
  for (const auto& r : results)
    if (std::abs(r.residual) <= 1e-8 && (!best || lex_less(r, *best))) best = &r;
  if (!best) best = &*std::min_element(results.begin(), results.end(), [](auto& a, auto& b) {
      return std::abs(a.residual) < std::abs(b.residual);
    });
  double spread = 0.0;
  for (const auto& r : results)
    for (int k = 0; k < n; ++k) spread = std::max(spread, std::abs(r.x[k] - best->x[k]));

  sol.optimizer = P.build(best->x);
  sol.objective = relative_entropy(W0, sol.optimizer);
  sol.residual = hom_density(H, sol.optimizer) - t;
  sol.regime = Regime::BracketOnly;
  sol.lower = 0.0;
  sol.upper = sol.objective;
  sol.multiplier = best->multiplier;
  sol.restarts = restarts;
  sol.restart_spread = spread;
  return sol;
}

Phase bipartite_phase(double p, double gamma, const Constraint& constraint, double r) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0,1)");
  if (!(r >= p && r <= 1.0)) throw DomainError("r must lie in [p,1]");
  return on_minorant(p, constraint.degree(), r) ? Phase::Symmetric : Phase::Broken;
}

std::optional<BipartiteBase> as_bipartite(const StepGraphon& W0) {
  if (W0.block_count() != 2) return std::nullopt;
  const double p = W0.value(0, 1);
  if (W0.value(0, 0) != 0.0 || W0.value(1, 1) != 0.0 || !(p > 0.0 && p < 1.0)) return std::nullopt;
  return BipartiteBase{W0.widths()[0], p};
}

double bipartite_target(const Rational& gamma, const Constraint& constraint, double r) {
  return constraint.evaluate(StepGraphon::bipartite(gamma, r));
}

double bipartite_r_for_target(const Rational& gamma, const Constraint& constraint, double t) {
  if (constraint.kind() == Constraint::Kind::OperatorNorm) {
    const double g = to_double(gamma);
    return t / std::sqrt(g * (1.0 - g));
  }
  const FiniteGraph& H = constraint.graph();
  const double full = hom_density(H, StepGraphon::bipartite(gamma, 1.0));
  if (full <= 0.0) throw DomainError("pattern has no copies in a bipartite graphon");
  return std::pow(t / full, 1.0 / H.edge_count());
}

PhiBracket phi_bracket(const StepGraphon& W0, const FiniteGraph& H, double t,
                       const SolverOptions& options) {
  PhiBracket out{0.0, 0.0, Regime::BracketOnly, symmetric_min(W0, H, t, options), std::nullopt};
  const auto& sol = out.symmetric;
  out.lower = sol.lower;
  out.upper = sol.upper;
  out.regime = sol.regime;
  if (sol.regime != Regime::BracketOnly) return out;
  if (auto bip = as_bipartite(W0)) {
    const auto constraint = Constraint::hom_density(H);
    const double r = std::clamp(bipartite_r_for_target(bip->gamma, constraint, t), bip->p, 1.0);
    if (on_minorant(bip->p, constraint.degree(), r)) {
      out.regime = Regime::SymmetricCertified;
      out.lower = out.upper = sol.objective;
      return out;
    }
    try {
      Witness w = witness_geps(bip->p, bip->gamma, constraint, r);
      out.witness_entropy = w.entropy_witness;
      out.upper = std::min(out.upper, w.entropy_witness);
      out.regime = Regime::BrokenCertified;
    } catch (const WitnessNotFound&) {
    }
  }
  return out;
}

std::vector<PhaseRow> phase_scan(double p, const Rational& gamma, const Constraint& constraint,
                                 const std::vector<double>& r_grid) {
  const PsiProfile profile = analyze_psi(p, constraint.degree());
  const double g = to_double(gamma);
  std::vector<PhaseRow> rows;
  rows.reserve(r_grid.size());
  for (double r : r_grid) {
    if (!(r >= p && r <= 1.0)) throw DomainError("grid value " + format_double(r) + " outside [p,1]");
    PhaseRow row{r, bipartite_target(gamma, constraint, r), profile.on_minorant(r),
                 g * (1.0 - g) * bernoulli_kl(p, r), std::numeric_limits<double>::quiet_NaN()};
    if (!row.on_minorant) {
      try {
        row.witness_entropy = witness_geps(p, gamma, constraint, r).entropy_witness;
      } catch (const WitnessNotFound&) {
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string phase_rows_csv(const std::vector<PhaseRow>& rows) {
  std::ostringstream out;
  out << "r,t_target,on_minorant,symmetric_I,witness_I\n";
  for (const auto& row : rows)
    out << format_double(row.r) << ',' << format_double(row.t_target) << ','
        << (row.on_minorant ? "true" : "false") << ',' << format_double(row.symmetric_entropy)
        << ',' << (std::isnan(row.witness_entropy) ? "" : format_double(row.witness_entropy))
        << '\n';
  return out.str();
}

}  // namespace gldp
