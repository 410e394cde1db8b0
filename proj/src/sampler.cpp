#include "graphon_ldp/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "detail/search_plan.hpp"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/parallel.hpp"

namespace gldp {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr double kWilsonZ = 1.959963984540054;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double philox_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(index),
                                static_cast<std::uint32_t>(index >> 32),
                                static_cast<std::uint32_t>(stream),
                                static_cast<std::uint32_t>(stream >> 32)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const auto out = Philox4x32::block(ctr, key);
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

StepGraphon equipartition(const StepGraphon& W0, int max_blocks) {
  BigInt l = 1;
  for (const auto& p : W0.breakpoints()) {
    const BigInt den = boost::multiprecision::denominator(p);
    l = l / boost::multiprecision::gcd(l, den) * den;
  }
  if (l > max_blocks)
    throw CapacityError("equal-block refinement needs " + l.str() + " blocks (cap " +
                        std::to_string(max_blocks) + ")");
  const int L = static_cast<int>(l);
  if (L == W0.block_count()) return W0;
  return refine_to(W0, std::vector<Rational>(static_cast<std::size_t>(L), Rational(1, L)));
}

long long SampledGraph::edge_count() const {
  long long twice = 0;
  for (auto w : adjacency) twice += std::popcount(w);
  return twice / 2;
}

namespace {

SampledGraph empty_graph(int kn, int n, std::uint64_t seed, std::uint64_t index) {
  SampledGraph G{kn, (kn + 63) / 64, {}, {}, seed, index};
  G.adjacency.assign(static_cast<std::size_t>(kn) * G.words, 0);
  G.block.resize(static_cast<std::size_t>(kn));
  for (int i = 0; i < kn; ++i) G.block[i] = i / n;
  return G;
}

void set_edge(SampledGraph& G, int i, int j) {
  G.adjacency[static_cast<std::size_t>(i) * G.words + j / 64] |= std::uint64_t{1} << (j % 64);
  G.adjacency[static_cast<std::size_t>(j) * G.words + i / 64] |= std::uint64_t{1} << (i % 64);
}

int vertices_per_block(const StepGraphon& E, int kn) {
  if (kn < 1) throw DomainError("kn must be positive");
  if (kn % E.block_count() != 0)
    throw ValidationError("kn = " + std::to_string(kn) + " is not a multiple of the " +
                          std::to_string(E.block_count()) + " equal blocks of W0");
  return kn / E.block_count();
}

SampledGraph draw(const StepGraphon& E, int n, std::uint64_t seed, std::uint64_t index) {
  const int kn = E.block_count() * n;
  SampledGraph G = empty_graph(kn, n, seed, index);
  for (int i = 0; i < kn; ++i)
    for (int j = i + 1; j < kn; ++j) {
      const double p = E.value(G.block[i], G.block[j]);
      if (p <= 0.0) continue;
      if (p >= 1.0 || philox_uniform(seed, index, static_cast<std::uint64_t>(i) * kn + j) < p)
        set_edge(G, i, j);
    }
  return G;
}

double map_count(const FiniteGraph& H, int kn) {
  return std::pow(static_cast<double>(kn), H.vertex_count());
}

void check_map_capacity(const FiniteGraph& H, int kn) {
  if (map_count(H, kn) > kEmpiricalDensityMaxMaps)
    throw CapacityError("(kn)^v = " + std::to_string(map_count(H, kn)) + " exceeds 1e8");
}

// Homomorphism count by extending maps vertex by vertex; the candidate
// images of each vertex are the common neighbours of its placed neighbours.
class HomCounter {
 public:
  explicit HomCounter(const FiniteGraph& H) : plan_(detail::make_plan(H)) {}

  double count(const SampledGraph& G) {
    G_ = &G;
    labels_.assign(plan_.order.size(), 0);
    scratch_.assign(plan_.order.size(), std::vector<std::uint64_t>(static_cast<std::size_t>(G.words)));
    return rec(0);
  }

 private:
  double rec(std::size_t k) {
    const SampledGraph& G = *G_;
    auto& cand = scratch_[k];
    if (plan_.back[k].empty()) {
      std::fill(cand.begin(), cand.end(), ~std::uint64_t{0});
      if (G.vertices % 64) cand.back() = (std::uint64_t{1} << (G.vertices % 64)) - 1;
    } else {
      const auto first = static_cast<std::size_t>(labels_[plan_.back[k][0]]) * G.words;
      std::copy_n(G.adjacency.begin() + static_cast<std::ptrdiff_t>(first), G.words, cand.begin());
      for (std::size_t b = 1; b < plan_.back[k].size(); ++b) {
        const auto row = static_cast<std::size_t>(labels_[plan_.back[k][b]]) * G.words;
        for (int w = 0; w < G.words; ++w) cand[w] &= G.adjacency[row + w];
      }
    }
    if (k + 1 == plan_.order.size()) {
      long long c = 0;
      for (auto w : cand) c += std::popcount(w);
      return static_cast<double>(c);
    }
    double total = 0.0;
    for (int w = 0; w < G.words; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        labels_[k] = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        total += rec(k + 1);
      }
    }
    return total;
  }

  detail::SearchPlan plan_;
  const SampledGraph* G_ = nullptr;
  std::vector<int> labels_;
  std::vector<std::vector<std::uint64_t>> scratch_;
};

bool meets(double count, double maps, double t) { return count >= t * maps * (1.0 - 1e-12); }

void wilson(TailEstimate& e) {
  const double n = static_cast<double>(e.samples);
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double center = (e.p_hat + z2 / (2.0 * n)) / denom;
  const double half =
      kWilsonZ / denom * std::sqrt(e.p_hat * (1.0 - e.p_hat) / n + z2 / (4.0 * n * n));
  e.wilson_lower = std::max(0.0, center - half);
  e.wilson_upper = std::min(1.0, center + half);
  e.sigma = std::sqrt(e.p_hat * (1.0 - e.p_hat) / n);
}

void fill_rates(TailEstimate& e) {
  const double scale = static_cast<double>(e.kn) * e.kn;
  e.rate = e.p_hat > 0.0 ? -std::log(e.p_hat) / scale : std::numeric_limits<double>::quiet_NaN();
  e.rate_lower = e.wilson_upper > 0.0 ? -std::log(e.wilson_upper) / scale : kInfinity;
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

SampledGraph sample_graph(const StepGraphon& W0, int n, std::uint64_t seed,
                          std::uint64_t sample_index) {
  if (n < 1) throw DomainError("n must be positive");
  return draw(equipartition(W0), n, seed, sample_index);
}

SampledGraph sample_graph_kn(const StepGraphon& W0, int kn, std::uint64_t seed,
                             std::uint64_t sample_index) {
  const StepGraphon E = equipartition(W0);
  return draw(E, vertices_per_block(E, kn), seed, sample_index);
}

double hom_count(const FiniteGraph& H, const SampledGraph& G) {
  check_map_capacity(H, G.vertices);
  return HomCounter(H).count(G);
}

double empirical_density(const FiniteGraph& H, const SampledGraph& G) {
  return hom_count(H, G) / map_count(H, G.vertices);
}

StepGraphon empirical_graphon(const SampledGraph& G) {
  std::vector<std::vector<double>> v(static_cast<std::size_t>(G.vertices),
                                     std::vector<double>(static_cast<std::size_t>(G.vertices), 0.0));
  for (int i = 0; i < G.vertices; ++i)
    for (int j = 0; j < G.vertices; ++j) v[i][j] = G.adjacent(i, j) ? 1.0 : 0.0;
  return StepGraphon::uniform(std::move(v));
}

std::string sampled_graph_text(const SampledGraph& G) {
  std::ostringstream out;
  out << G.vertices << ' ' << G.edge_count() << '\n';
  for (int i = 0; i < G.vertices; ++i)
    for (int j = i + 1; j < G.vertices; ++j)
      if (G.adjacent(i, j)) out << i + 1 << ' ' << j + 1 << '\n';
  return out.str();
}

const char* to_string(TailMode m) {
  return m == TailMode::MonteCarlo ? "MonteCarlo" : "ExactEnumeration";
}

TailEstimate exact_tail(const StepGraphon& W0, const FiniteGraph& H, double t, int kn) {
  const StepGraphon E = equipartition(W0);
  const int n = vertices_per_block(E, kn);
  check_map_capacity(H, kn);
  SampledGraph base = empty_graph(kn, n, 0, 0);
  std::vector<std::pair<int, int>> free;
  std::vector<double> prob;
  for (int i = 0; i < kn; ++i)
    for (int j = i + 1; j < kn; ++j) {
      const double p = E.value(base.block[i], base.block[j]);
      if (p >= 1.0) set_edge(base, i, j);
      else if (p > 0.0) {
        free.emplace_back(i, j);
        prob.push_back(p);
      }
    }
  const int F = static_cast<int>(free.size());
  if (F > kExactTailMaxFreePairs)
    throw CapacityError(std::to_string(F) + " free vertex pairs exceed the enumeration cap of " +
                        std::to_string(kExactTailMaxFreePairs));
  const double maps = map_count(H, kn);
  HomCounter counter(H);
  double total = 0.0;
  SampledGraph G = base;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << F); ++mask) {
    G.adjacency = base.adjacency;
    double weight = 1.0;
    for (int e = 0; e < F; ++e) {
      if ((mask >> e) & 1u) {
        set_edge(G, free[e].first, free[e].second);
        weight *= prob[e];
      } else {
        weight *= 1.0 - prob[e];
      }
    }
    if (meets(counter.count(G), maps, t)) total += weight;
  }
  TailEstimate e{t, kn, static_cast<long long>(std::uint64_t{1} << F), std::clamp(total, 0.0, 1.0),
                 0.0, 0.0, 0.0, 0.0, 0.0, TailMode::ExactEnumeration};
  e.wilson_lower = e.wilson_upper = e.p_hat;
  fill_rates(e);
  return e;
}

TailEstimate tail_estimate(const StepGraphon& W0, const FiniteGraph& H, double t, int kn,
                           long long samples, std::uint64_t seed, int threads) {
  if (samples < 1000) throw DomainError("tail estimation needs at least 1000 samples");
  const StepGraphon E = equipartition(W0);
  const int n = vertices_per_block(E, kn);
  check_map_capacity(H, kn);
  const double maps = map_count(H, kn);
  std::vector<char> hit(static_cast<std::size_t>(samples), 0);
  const int workers = worker_count(threads);
  const std::size_t chunks = static_cast<std::size_t>(std::min<long long>(samples, 256));
  parallel_for(chunks, workers, [&](std::size_t c) {
    HomCounter counter(H);
    for (auto s = static_cast<long long>(c); s < samples; s += static_cast<long long>(chunks)) {
      const SampledGraph G = draw(E, n, seed, static_cast<std::uint64_t>(s));
      hit[static_cast<std::size_t>(s)] = meets(counter.count(G), maps, t);
    }
  });
  const auto hits = std::count(hit.begin(), hit.end(), 1);
  TailEstimate e{t, kn, samples, static_cast<double>(hits) / static_cast<double>(samples),
                 0.0, 0.0, 0.0, 0.0, 0.0, TailMode::MonteCarlo};
  wilson(e);
  fill_rates(e);
  return e;
}

StepGraphon block_average(const SampledGraph& G, const StepGraphon& W0) {
  const int m = W0.block_count();
  const int L = static_cast<int>(G.block.empty() ? 1 : G.block.back() + 1);
  std::vector<int> coarse(static_cast<std::size_t>(G.vertices));
  std::vector<double> size(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < G.vertices; ++i) {
    coarse[i] = W0.block_of((G.block[i] + 0.5) / L);
    size[coarse[i]] += 1.0;
  }
  std::vector<std::vector<double>> sum(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (int i = 0; i < G.vertices; ++i)
    for (int j = 0; j < G.vertices; ++j)
      if (G.adjacent(i, j)) sum[coarse[i]][coarse[j]] += 1.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) sum[a][b] /= size[a] * size[b];
  return W0.with_values(std::move(sum));
}

ConcentrationSummary conditional_concentration(const StepGraphon& W0, const FiniteGraph& H,
                                               double t, int kn, long long samples,
                                               const StepGraphon& optimizer, std::uint64_t seed,
                                               int threads, double min_acceptance,
                                               long long min_accepted) {
  if (samples < 1) throw DomainError("samples must be positive");
  const StepGraphon E = equipartition(W0);
  const int n = vertices_per_block(E, kn);
  check_map_capacity(H, kn);
  const double maps = map_count(H, kn);
  std::vector<double> distance(static_cast<std::size_t>(samples), -1.0);
  const std::size_t chunks = static_cast<std::size_t>(std::min<long long>(samples, 256));
  parallel_for(chunks, worker_count(threads), [&](std::size_t c) {
    HomCounter counter(H);
    for (auto s = static_cast<long long>(c); s < samples; s += static_cast<long long>(chunks)) {
      const SampledGraph G = draw(E, n, seed, static_cast<std::uint64_t>(s));
      if (!meets(counter.count(G), maps, t)) continue;
      distance[static_cast<std::size_t>(s)] =
          delta_cut_bounds(block_average(G, W0), optimizer, seed).upper;
    }
  });
  ConcentrationSummary out{t, kn, samples, 0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, {}};
  for (double d : distance)
    if (d >= 0.0) out.distances.push_back(d);
  out.accepted = static_cast<long long>(out.distances.size());
  out.acceptance_rate = static_cast<double>(out.accepted) / static_cast<double>(samples);
  if (out.accepted < min_accepted || out.acceptance_rate < min_acceptance)
    throw InsufficientConditioning("only " + std::to_string(out.accepted) + " of " +
                                       std::to_string(samples) + " samples met the target",
                                   out.acceptance_rate);
  std::vector<double> sorted = out.distances;
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (double d : sorted) total += d;
  out.mean = total / static_cast<double>(sorted.size());
  out.median = quantile(sorted, 0.5);
  out.q10 = quantile(sorted, 0.1);
  out.q90 = quantile(sorted, 0.9);
  out.min = sorted.front();
  out.max = sorted.back();
  return out;
}

}  // namespace gldp
