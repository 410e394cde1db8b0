#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "detail/jacobi.hpp"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/graphon.hpp"

namespace gldp {

namespace {

struct Difference {
  int m;
  std::vector<double> widths;
  std::vector<double> h;  // m*m, h = f - g
  double at(int i, int j) const { return h[static_cast<std::size_t>(i * m + j)]; }
};

Difference difference(const StepGraphon& f, const StepGraphon& g) {
  auto [a, b] = common_refinement(f, g);
  Difference d{a.block_count(), a.width_values(), {}};
  d.h.resize(a.flat_values().size());
  for (std::size_t k = 0; k < d.h.size(); ++k) d.h[k] = a.flat_values()[k] - b.flat_values()[k];
  return d;
}

// Given column weights r_i = sum_{j in T} w_j h_ij, the best row set takes
// the rows of one sign.
double best_rows(const std::vector<double>& r, const std::vector<double>& w) {
  double pos = 0.0, neg = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] > 0) pos += w[i] * r[i];
    else neg -= w[i] * r[i];
  }
  return std::max(pos, neg);
}

double exact_cut(const Difference& d) {
  const int m = d.m;
  std::vector<double> r(static_cast<std::size_t>(m), 0.0);
  double best = 0.0;
  const std::uint64_t total = std::uint64_t{1} << m;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < total; ++k) {
    int bit = std::countr_zero(k);
    gray ^= std::uint64_t{1} << bit;
    const double sign = (gray >> bit & 1u) ? 1.0 : -1.0;
    const double wj = d.widths[bit] * sign;
    for (int i = 0; i < m; ++i) r[i] += wj * d.at(i, bit);
    best = std::max(best, best_rows(r, d.widths));
  }
  return best;
}

double heuristic_cut(const Difference& d, std::uint64_t seed) {
  const int m = d.m;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  double best = 0.0;
  for (int restart = 0; restart < 64; ++restart) {
    for (double sign : {1.0, -1.0}) {
      std::vector<char> T(static_cast<std::size_t>(m)), S(static_cast<std::size_t>(m));
      for (auto& t : T) t = coin(rng);
      double value = -1.0;
      for (int iter = 0; iter < 100; ++iter) {
        for (int i = 0; i < m; ++i) {
          double r = 0.0;
          for (int j = 0; j < m; ++j)
            if (T[j]) r += d.widths[j] * d.at(i, j);
          S[i] = sign * r > 0;
        }
        double next = 0.0;
        for (int j = 0; j < m; ++j) {
          double c = 0.0;
          for (int i = 0; i < m; ++i)
            if (S[i]) c += d.widths[i] * d.at(i, j);
          T[j] = sign * c > 0;
          if (T[j]) next += d.widths[j] * sign * c;
        }
        if (next <= value + 1e-15) break;
        value = next;
      }
      best = std::max(best, value);
    }
  }
  return best;
}

double l1_distance(const Difference& d) {
  double total = 0.0;
  for (int i = 0; i < d.m; ++i)
    for (int j = 0; j < d.m; ++j) total += d.widths[i] * d.widths[j] * std::abs(d.at(i, j));
  return total;
}

BigInt lcm_of_denominators(const std::vector<Rational>& points) {
  BigInt l = 1;
  for (const auto& p : points) {
    BigInt den = boost::multiprecision::denominator(p);
    l = l / boost::multiprecision::gcd(l, den) * den;
  }
  return l;
}

// Cut distance between f relabeled by perm (on equal blocks) and g.
double permuted_cut(const StepGraphon& f, const StepGraphon& g, const std::vector<int>& perm) {
  const int L = f.block_count();
  Difference d{L, f.width_values(), std::vector<double>(static_cast<std::size_t>(L * L))};
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) d.h[i * L + j] = f.value(perm[i], perm[j]) - g.value(i, j);
  return exact_cut(d);
}

}  // namespace

CutNorm cut_norm_distance(const StepGraphon& f, const StepGraphon& g, bool allow_heuristic,
                          std::uint64_t seed) {
  Difference d = difference(f, g);
  if (d.m <= kExactCutNormMaxBlocks) return {exact_cut(d), true};
  if (!allow_heuristic)
    throw CapacityError("exact cut norm needs at most 20 shared blocks, got " +
                        std::to_string(d.m));
  return {heuristic_cut(d, seed), false};
}

CutMetricBounds delta_cut_bounds(const StepGraphon& f, const StepGraphon& g, std::uint64_t seed) {
  CutMetricBounds out{};
  out.lower = std::abs(lp_norm(f, 1.0) - lp_norm(g, 1.0));
  for (const auto& H : {FiniteGraph::single_edge(), FiniteGraph::path(2), FiniteGraph::cycle(3),
                        FiniteGraph::cycle(4)})
    out.lower = std::max(out.lower, std::abs(hom_density(H, f) - hom_density(H, g)) /
                                        static_cast<double>(H.edge_count()));

  // Identity relabeling on the shared partition is always admissible.
  Difference d = difference(f, g);
  out.upper = d.m <= kExactCutNormMaxBlocks ? exact_cut(d) : l1_distance(d);

  auto a = f.breakpoints();
  auto b = g.breakpoints();
  std::vector<Rational> merged;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  const BigInt lcm = lcm_of_denominators(merged);
  if (lcm > kExactCutNormMaxBlocks || lcm < 2) {
    out.upper = std::max(out.upper, out.lower);
    return out;
  }
  const int L = static_cast<int>(lcm);
  const std::vector<Rational> equal(static_cast<std::size_t>(L), Rational(1, L));
  StepGraphon fe = refine_to(f, equal);
  StepGraphon ge = refine_to(g, equal);
  std::vector<int> perm(static_cast<std::size_t>(L));
  std::iota(perm.begin(), perm.end(), 0);

  if (L <= 8) {
    do {
      out.upper = std::min(out.upper, permuted_cut(fe, ge, perm));
      if (out.upper == 0.0) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    // Annealing over transpositions; the budget keeps total work near 2^24 subset steps.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, L - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const long steps = std::clamp<long>((1L << 24) >> L, 8, 4000);
    double current = permuted_cut(fe, ge, perm);
    double temperature = std::max(current, 1e-3) * 0.1;
    out.upper = std::min(out.upper, current);
    for (long s = 0; s < steps; ++s) {
      int i = pick(rng), j = pick(rng);
      if (i == j) continue;
      std::swap(perm[i], perm[j]);
      double next = permuted_cut(fe, ge, perm);
      if (next <= current || unit(rng) < std::exp((current - next) / temperature)) {
        current = next;
        out.upper = std::min(out.upper, current);
      } else {
        std::swap(perm[i], perm[j]);
      }
      temperature *= 0.995;
    }
  }
  out.upper = std::max(out.upper, out.lower);
  return out;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  if (static_cast<int>(a.size()) != n * n) throw ValidationError("matrix size mismatch");
  return detail::jacobi_eigenvalues(std::move(a), n, 1e-14);
}

double operator_norm(const StepGraphon& f) {
  const int m = f.block_count();
  const auto& w = f.width_values();
  std::vector<double> a(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i * m + j] = f.value(i, j) * std::sqrt(w[i] * w[j]);
  auto eig = symmetric_eigenvalues(std::move(a), m);
  return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

}  // namespace gldp
