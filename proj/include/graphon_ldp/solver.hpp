#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphon_ldp/graph.hpp"
#include "graphon_ldp/graphon.hpp"

namespace gldp {

// The functional whose upper tail is constrained.
class Constraint {
 public:
  enum class Kind { HomDensity, OperatorNorm };

  static Constraint hom_density(FiniteGraph H);
  static Constraint operator_norm();

  Kind kind() const noexcept { return kind_; }
  const FiniteGraph& graph() const;
  // Degree of the pattern; 2 for the operator norm.
  int degree() const;
  double evaluate(const StepGraphon& f) const;
  std::string name() const;

 private:
  Kind kind_ = Kind::OperatorNorm;
  std::optional<FiniteGraph> graph_;
};

enum class Regime { SymmetricCertified, BrokenCertified, BracketOnly };
const char* to_string(Regime r);

struct VariationalSolution {
  StepGraphon optimizer;
  double objective;     // entropy of the optimizer; +inf when infeasible
  double target;
  std::string constraint;
  double residual;      // t(H, optimizer) - target
  Regime regime;
  double lower;         // bracket on the rate
  double upper;
  bool infeasible;
  double base_density;  // t(H, W0)
  double max_density;   // t_max
  double multiplier;    // constraint multiplier at the optimum (0 when inactive)
  int restarts;
  double restart_spread;  // max-norm spread of restart optimizers
};

struct SolverOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  double agreement = 1e-6;
  int threads = 0;  // 0: GRAPHON_LDP_THREADS or hardware concurrency
};

// Minimizes the block entropy of g subject to t(H,g) = t over block graphons
// on W0's partition. H must be d-regular.
VariationalSolution symmetric_min(const StepGraphon& W0, const FiniteGraph& H, double t,
                                  const SolverOptions& options = {});

enum class Phase { Symmetric, Broken };
const char* to_string(Phase p);

// Symmetric iff r lies on the convex minorant of h_p(x^(1/d)) with d the
// constraint degree (2 for the operator norm).
Phase bipartite_phase(double p, double gamma, const Constraint& constraint, double r);

// Recovers r from t = t(H, f_r^gamma) (or ||f_r^gamma||_op); nullopt when
// W0 is not a two-block bipartite graphon.
struct BipartiteBase {
  Rational gamma;
  double p;
};
std::optional<BipartiteBase> as_bipartite(const StepGraphon& W0);
double bipartite_target(const Rational& gamma, const Constraint& constraint, double r);
double bipartite_r_for_target(const Rational& gamma, const Constraint& constraint, double t);

struct PhiBracket {
  double lower;
  double upper;
  Regime regime;
  VariationalSolution symmetric;
  std::optional<double> witness_entropy;
};
PhiBracket phi_bracket(const StepGraphon& W0, const FiniteGraph& H, double t,
                       const SolverOptions& options = {});

struct PhaseRow {
  double r;
  double t_target;
  bool on_minorant;
  double symmetric_entropy;
  double witness_entropy;  // NaN when symmetric or no witness
};
std::vector<PhaseRow> phase_scan(double p, const Rational& gamma, const Constraint& constraint,
                                 const std::vector<double>& r_grid);
std::string phase_rows_csv(const std::vector<PhaseRow>& rows);

}  // namespace gldp
