#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "graphon_ldp/graph.hpp"
#include "graphon_ldp/graphon.hpp"

namespace gldp {

// Philox4x32-10 (Salmon et al., SC'11): a keyed bijection on 128-bit
// counters. Streams are addressed, not advanced, so any draw can be
// reproduced from (seed, stream, index) alone.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key);
};

// Uniform double in [0,1) with 53 random bits for draw `index` of stream
// `stream` under `seed`. Key = seed; counter = (index, stream).
double philox_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

// W0 refined onto L equal blocks, L the lcm of its breakpoint denominators.
// Throws CapacityError when L exceeds max_blocks.
StepGraphon equipartition(const StepGraphon& W0, int max_blocks = 4096);

struct SampledGraph {
  int vertices;
  int words;                            // 64-bit words per adjacency row
  std::vector<std::uint64_t> adjacency;  // vertices * words bits
  std::vector<int> block;               // vertex -> block of the equipartition
  std::uint64_t seed;
  std::uint64_t sample_index;

  bool adjacent(int i, int j) const {
    return (adjacency[static_cast<std::size_t>(i) * words + j / 64] >> (j % 64)) & 1u;
  }
  long long edge_count() const;
};

// G_{kn} from W0: W0 is first refined to k equal blocks, then each block
// gets n vertices (vertex i lies in block floor(i/n)) and each pair
// {i,j} is an edge independently with the block probability. Pair
// (i,j) uses draw i*kn+j of stream sample_index.
SampledGraph sample_graph(const StepGraphon& W0, int n, std::uint64_t seed,
                          std::uint64_t sample_index = 0);

// Same, with the total vertex count given; kn must be a multiple of k.
SampledGraph sample_graph_kn(const StepGraphon& W0, int kn, std::uint64_t seed,
                             std::uint64_t sample_index = 0);

// hom(H,G) counting non-injective maps. Throws CapacityError when
// (kn)^v > 1e8.
double hom_count(const FiniteGraph& H, const SampledGraph& G);
double empirical_density(const FiniteGraph& H, const SampledGraph& G);

// f^G as a kn-block step graphon with 0/1 values.
StepGraphon empirical_graphon(const SampledGraph& G);

// Edge list in the graph file format (1-indexed).
std::string sampled_graph_text(const SampledGraph& G);

enum class TailMode { MonteCarlo, ExactEnumeration };
const char* to_string(TailMode m);

struct TailEstimate {
  double target;
  int kn;
  long long samples;  // graphs drawn, or configurations summed
  double p_hat;
  double wilson_lower;
  double wilson_upper;
  double sigma;        // binomial standard error of p_hat (0 when exact)
  double rate;         // -log(p_hat)/(kn)^2, NaN when p_hat = 0
  double rate_lower;   // -log(wilson_upper)/(kn)^2
  TailMode mode;
};

constexpr int kExactTailMaxFreePairs = 21;
constexpr double kEmpiricalDensityMaxMaps = 1e8;

// Exact P(t(H,G_kn) >= t) by summing over every graph on the free pairs.
// Counts with t(H,G) >= t(1 - 1e-12) so targets that are exact fractions
// count as attained.
TailEstimate exact_tail(const StepGraphon& W0, const FiniteGraph& H, double t, int kn);

// Monte Carlo estimate with a 95% Wilson interval. Sample s uses stream s,
// so results depend only on (seed, samples), not on the worker count.
TailEstimate tail_estimate(const StepGraphon& W0, const FiniteGraph& H, double t, int kn,
                           long long samples, std::uint64_t seed, int threads = 0);

struct ConcentrationSummary {
  double target;
  int kn;
  long long samples;
  long long accepted;
  double acceptance_rate;
  double mean;
  double median;
  double q10;
  double q90;
  double min;
  double max;
  std::vector<double> distances;  // one per accepted sample, in sample order
};

// Rejection sampling on t(H,G) >= t. Each accepted f^G is averaged onto
// W0's blocks and compared with the optimizer through the upper cut-metric
// bound (best block permutation). Throws InsufficientConditioning when the
// acceptance rate is below min_acceptance or fewer than min_accepted
// graphs pass.
ConcentrationSummary conditional_concentration(const StepGraphon& W0, const FiniteGraph& H,
                                               double t, int kn, long long samples,
                                               const StepGraphon& optimizer, std::uint64_t seed,
                                               int threads = 0, double min_acceptance = 1e-4,
                                               long long min_accepted = 10);

// f^G averaged over the blocks of W0 (W0's widths, values in [0,1]).
StepGraphon block_average(const SampledGraph& G, const StepGraphon& W0);

}  // namespace gldp
