#include "graphon_ldp/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/errors.hpp"

namespace gldp {

StepGraphon::StepGraphon(std::vector<Rational> widths, std::vector<std::vector<double>> values)
    : m_(static_cast<int>(widths.size())), widths_(std::move(widths)) {
  if (m_ == 0) throw ValidationError("graphon needs at least one block");
  Rational total = 0;
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    if (widths_[i] <= 0)
      throw ValidationError("width " + std::to_string(i + 1) + " is not positive");
    total += widths_[i];
  }
  if (total != 1) throw ValidationError("widths sum to " + to_string(total) + ", not 1");
  if (static_cast<int>(values.size()) != m_)
    throw ValidationError("value matrix has " + std::to_string(values.size()) + " rows, expected " +
                          std::to_string(m_));
  values_.resize(static_cast<std::size_t>(m_ * m_));
  for (int i = 0; i < m_; ++i) {
    if (static_cast<int>(values[i].size()) != m_)
      throw ValidationError("value row " + std::to_string(i + 1) + " has wrong length");
    for (int j = 0; j < m_; ++j) {
      double v = values[i][j];
      if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError("value at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") outside [0,1]");
      values_[static_cast<std::size_t>(i * m_ + j)] = v;
    }
  }
  for (int i = 0; i < m_; ++i)
    for (int j = i + 1; j < m_; ++j)
      if (value(i, j) != value(j, i))
        throw ValidationError("value matrix not symmetric at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
  width_values_.reserve(widths_.size());
  for (const auto& w : widths_) width_values_.push_back(to_double(w));
  cut_values_.reserve(widths_.size());
  Rational acc = 0;
  for (const auto& w : widths_) {
    acc += w;
    cut_values_.push_back(to_double(acc));
  }
}

std::vector<std::vector<double>> StepGraphon::values() const {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i)
    out[i].assign(values_.begin() + i * m_, values_.begin() + (i + 1) * m_);
  return out;
}

std::vector<Rational> StepGraphon::breakpoints() const {
  std::vector<Rational> out;
  Rational acc = 0;
  for (const auto& w : widths_) {
    acc += w;
    out.push_back(acc);
  }
  return out;
}

int StepGraphon::block_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("point outside [0,1]");
  // Rounded breakpoints decide unless x sits within a few ulps of one.
  const auto it = std::upper_bound(cut_values_.begin(), cut_values_.end(), x);
  const auto i = static_cast<int>(it - cut_values_.begin());
  const double margin = 4 * std::numeric_limits<double>::epsilon();
  const bool clear_above = i >= m_ || cut_values_[i] - x > margin;
  const bool clear_below = i == 0 || x - cut_values_[i - 1] > margin;
  if (clear_above && clear_below) return std::min(i, m_ - 1);
  Rational q = rational_from_double(x);
  Rational acc = 0;
  for (int i = 0; i < m_; ++i) {
    acc += widths_[i];
    if (q < acc) return i;
  }
  return m_ - 1;
}

double StepGraphon::eval(double x, double y) const { return value(block_of(x), block_of(y)); }

StepGraphon StepGraphon::with_values(std::vector<std::vector<double>> values) const {
  return StepGraphon(widths_, std::move(values));
}

StepGraphon StepGraphon::constant(double a) { return StepGraphon({Rational(1)}, {{a}}); }

StepGraphon StepGraphon::two_block(const Rational& g, double p, double q, double r) {
  if (g <= 0 || g >= 1) throw DomainError("gamma must lie in (0,1)");
  return StepGraphon({g, Rational(1) - g}, {{p, q}, {q, r}});
}

StepGraphon StepGraphon::bipartite(const Rational& g, double r) { return two_block(g, 0.0, r, 0.0); }

StepGraphon StepGraphon::uniform(std::vector<std::vector<double>> values) {
  const auto k = static_cast<long>(values.size());
  if (k == 0) throw ValidationError("graphon needs at least one block");
  return StepGraphon(std::vector<Rational>(static_cast<std::size_t>(k), Rational(1, k)),
                     std::move(values));
}

namespace {

std::vector<Rational> widths_from_breakpoints(const std::vector<Rational>& points) {
  std::vector<Rational> widths;
  Rational prev = 0;
  for (const auto& b : points) {
    widths.push_back(b - prev);
    prev = b;
  }
  return widths;
}

}  // namespace

StepGraphon refine_to(const StepGraphon& f, const std::vector<Rational>& widths) {
  const auto coarse = f.breakpoints();
  std::vector<int> owner;
  Rational acc = 0;
  std::size_t c = 0;
  for (const auto& w : widths) {
    if (w <= 0) throw ValidationError("refinement widths must be positive");
    Rational start = acc;
    acc += w;
    if (c >= coarse.size() || acc > coarse[c])
      throw ValidationError("partition is not a refinement");
    owner.push_back(static_cast<int>(c));
    if (acc == coarse[c]) ++c;
    (void)start;
  }
  if (acc != 1 || c != coarse.size()) throw ValidationError("partition is not a refinement");
  const auto n = owner.size();
  std::vector<std::vector<double>> values(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) values[i][j] = f.value(owner[i], owner[j]);
  return StepGraphon(widths, std::move(values));
}

std::pair<StepGraphon, StepGraphon> common_refinement(const StepGraphon& f, const StepGraphon& g) {
  if (f.widths() == g.widths()) return {f, g};
  auto a = f.breakpoints();
  auto b = g.breakpoints();
  std::vector<Rational> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  auto widths = widths_from_breakpoints(merged);
  return {refine_to(f, widths), refine_to(g, widths)};
}

OmegaMask omega_mask(const StepGraphon& W0) {
  OmegaMask mask;
  mask.m = W0.block_count();
  mask.tags.reserve(W0.flat_values().size());
  for (double v : W0.flat_values())
    mask.tags.push_back(v == 0.0 ? BlockTag::Zero : v == 1.0 ? BlockTag::One : BlockTag::Free);
  return mask;
}

double relative_entropy(const StepGraphon& W0, const StepGraphon& f) {
  auto [base, g] = common_refinement(W0, f);
  const int m = base.block_count();
  const auto& w = base.width_values();
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double p = base.value(i, j);
      double u = g.value(i, j);
      if (p == 0.0 || p == 1.0) {
        if (u != p) return kInfinity;
        continue;
      }
      total += w[i] * w[j] * bernoulli_kl(p, u);
    }
  }
  return 0.5 * total;
}

bool in_omega(const StepGraphon& W0, const StepGraphon& f, double tolerance) {
  auto [base, g] = common_refinement(W0, f);
  const auto& pv = base.flat_values();
  const auto& uv = g.flat_values();
  for (std::size_t k = 0; k < pv.size(); ++k) {
    if (pv[k] != 0.0 && pv[k] != 1.0) continue;
    if (tolerance == 0.0 ? uv[k] != pv[k] : std::abs(uv[k] - pv[k]) > tolerance) return false;
  }
  return true;
}

double lp_norm(const StepGraphon& f, double q) {
  if (!(q > 0)) throw DomainError("norm exponent must be positive");
  const int m = f.block_count();
  const auto& w = f.width_values();
  double total = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) total += w[i] * w[j] * std::pow(std::abs(f.value(i, j)), q);
  return std::pow(total, 1.0 / q);
}

double power_integral(const StepGraphon& f, int d) {
  const int m = f.block_count();
  const auto& w = f.width_values();
  double total = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) total += w[i] * w[j] * std::pow(f.value(i, j), d);
  return total;
}

StepGraphon d_average(const StepGraphon& f, const std::vector<Rational>& coarse_widths, int d) {
  if (d < 1) throw DomainError("averaging exponent must be >= 1");
  // Map each block of f to its coarse block.
  StepGraphon coarse_shape(coarse_widths,
                           std::vector<std::vector<double>>(coarse_widths.size(),
                                                            std::vector<double>(coarse_widths.size())));
  const auto fine = f.breakpoints();
  const auto coarse = coarse_shape.breakpoints();
  std::vector<int> owner;
  std::size_t c = 0;
  for (const auto& b : fine) {
    if (b > coarse[c]) throw ValidationError("coarse widths are not a coarsening of the graphon");
    owner.push_back(static_cast<int>(c));
    if (b == coarse[c]) ++c;
  }
  for (const auto& b : coarse)
    if (!std::binary_search(fine.begin(), fine.end(), b))
      throw ValidationError("coarse widths are not a coarsening of the graphon");
  const int k = coarse_shape.block_count();
  const auto& cw = coarse_shape.width_values();
  const auto& w = f.width_values();
  std::vector<std::vector<double>> sums(static_cast<std::size_t>(k), std::vector<double>(k, 0.0));
  for (int a = 0; a < f.block_count(); ++a)
    for (int b = 0; b < f.block_count(); ++b)
      sums[owner[a]][owner[b]] += w[a] * w[b] * std::pow(f.value(a, b), d);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      sums[i][j] = std::min(1.0, std::pow(sums[i][j] / (cw[i] * cw[j]), 1.0 / d));
  // Keep exact symmetry despite summation order.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) sums[j][i] = sums[i][j];
  return StepGraphon(coarse_widths, std::move(sums));
}

}  // namespace gldp
