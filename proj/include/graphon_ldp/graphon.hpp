#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "graphon_ldp/graph.hpp"
#include "graphon_ldp/rational.hpp"

namespace gldp {

// Block graphon: exact rational widths and a symmetric matrix of values in
// [0,1]. Blocks are the intervals [b_{i-1}, b_i) with b_i the partial sums.
class StepGraphon {
 public:
  // Throws ValidationError unless widths are positive and sum to exactly 1,
  // and values form a symmetric matrix with entries in [0,1].
  StepGraphon(std::vector<Rational> widths, std::vector<std::vector<double>> values);

  int block_count() const noexcept { return m_; }
  const std::vector<Rational>& widths() const noexcept { return widths_; }
  // Widths rounded to double, cached.
  const std::vector<double>& width_values() const noexcept { return width_values_; }
  double value(int i, int j) const { return values_[static_cast<std::size_t>(i * m_ + j)]; }
  const std::vector<double>& flat_values() const noexcept { return values_; }
  std::vector<std::vector<double>> values() const;
  // Partial sums b_1..b_m (last one is 1).
  std::vector<Rational> breakpoints() const;
  int block_of(double x) const;
  double eval(double x, double y) const;

  // Same widths, new values (validated).
  StepGraphon with_values(std::vector<std::vector<double>> values) const;

  static StepGraphon constant(double a);
  // p on [0,g]^2, r on (g,1]^2, q elsewhere.
  static StepGraphon two_block(const Rational& g, double p, double q, double r);
  // Complete bipartite graphon with density r across the sides.
  static StepGraphon bipartite(const Rational& g, double r);
  // k equal blocks with the given value matrix.
  static StepGraphon uniform(std::vector<std::vector<double>> values);

  friend bool operator==(const StepGraphon& a, const StepGraphon& b) {
    return a.widths_ == b.widths_ && a.values_ == b.values_;
  }

 private:
  int m_;
  std::vector<Rational> widths_;
  std::vector<double> width_values_;
  std::vector<double> cut_values_;  // breakpoints rounded to double
  std::vector<double> values_;
};

// Index of the unordered block pair {a,b} in the packed upper triangle.
inline int pair_index(int m, int a, int b) {
  if (a > b) std::swap(a, b);
  return a * m - a * (a - 1) / 2 + (b - a);
}
inline int pair_count(int m) { return m * (m + 1) / 2; }

// Re-expresses both graphons on the merged breakpoints.
std::pair<StepGraphon, StepGraphon> common_refinement(const StepGraphon& f, const StepGraphon& g);
// Re-expresses f on a finer partition (every breakpoint of f must appear).
StepGraphon refine_to(const StepGraphon& f, const std::vector<Rational>& widths);

double hom_density(const FiniteGraph& H, const StepGraphon& f);

// t(H,f) with first (and optionally second) derivatives with respect to the
// packed symmetric block values, indexed by pair_index.
struct DensityDerivatives {
  double value = 0.0;
  std::vector<double> gradient;
  std::vector<double> hessian;  // K*K row-major, empty unless requested
};
DensityDerivatives hom_density_derivatives(const FiniteGraph& H, const StepGraphon& f,
                                           bool with_hessian);

// Contribution of one labeling (0-based block indices, one per vertex).
// Throws ValidationError on wrong length or out-of-range blocks.
double labeled_density(const FiniteGraph& H, const StepGraphon& f, const std::vector<int>& labels);

enum class BlockTag { Zero, One, Free };

struct OmegaMask {
  int m = 0;
  std::vector<BlockTag> tags;  // m*m row-major
  BlockTag at(int i, int j) const { return tags[static_cast<std::size_t>(i * m + j)]; }
};
OmegaMask omega_mask(const StepGraphon& W0);

// Unordered pairs (a <= b), 0-based; membership is symmetric by convention.
struct RelevantSet {
  int m = 0;
  std::vector<std::pair<int, int>> pairs;
  bool contains(int a, int b) const;
};
RelevantSet relevant_blocks(const FiniteGraph& H, const StepGraphon& W0);

struct MaxGraphon {
  StepGraphon graphon;
  double t_max;
};
MaxGraphon f_max_graphon(const FiniteGraph& H, const StepGraphon& W0);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Half the integral of h_{W0}(f); +infinity when f leaves the support class.
double relative_entropy(const StepGraphon& W0, const StepGraphon& f);

// Exact by default; tolerance > 0 allows |f - W0| <= tolerance on masked blocks.
bool in_omega(const StepGraphon& W0, const StepGraphon& f, double tolerance = 0.0);

struct CutNorm {
  double value;
  bool exact;  // false: randomized lower bound
};
inline constexpr int kExactCutNormMaxBlocks = 20;
// Exact for up to 20 shared blocks; larger inputs throw CapacityError unless
// allow_heuristic, in which case a hill-climbing lower bound is returned.
CutNorm cut_norm_distance(const StepGraphon& f, const StepGraphon& g, bool allow_heuristic = false,
                          std::uint64_t seed = 0);

struct CutMetricBounds {
  double lower;
  double upper;
};
CutMetricBounds delta_cut_bounds(const StepGraphon& f, const StepGraphon& g,
                                 std::uint64_t seed = 0);

StepGraphon d_average(const StepGraphon& f, const std::vector<Rational>& coarse_widths, int d);

double operator_norm(const StepGraphon& f);
// Eigenvalues of a symmetric matrix by cyclic Jacobi rotation.
std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, int n);

// (integral of |f|^q)^(1/q)
double lp_norm(const StepGraphon& f, double q);
// integral of f^d (no root)
double power_integral(const StepGraphon& f, int d);

}  // namespace gldp
