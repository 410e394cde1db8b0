#include <algorithm>
#include <string>

#include "detail/search_plan.hpp"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/graphon.hpp"

namespace gldp {

namespace {

using detail::make_plan;
using detail::SearchPlan;

class DensitySearch {
 public:
  DensitySearch(const FiniteGraph& H, const StepGraphon& f)
      : plan_(make_plan(H)), f_(f), m_(f.block_count()), labels_(plan_.order.size()) {}

  double value() { return value_rec(0, 1.0); }

  DensityDerivatives derivatives(bool with_hessian) {
    hess_ = with_hessian;
    K_ = pair_count(m_);
    const std::size_t levels = plan_.order.size() + 1;
    val_.assign(levels, 0.0);
    grad_.assign(levels, std::vector<double>(static_cast<std::size_t>(K_), 0.0));
    if (hess_) hmat_.assign(levels, std::vector<double>(static_cast<std::size_t>(K_ * K_), 0.0));
    out_.value = 0.0;
    out_.gradient.assign(static_cast<std::size_t>(K_), 0.0);
    if (hess_) out_.hessian.assign(static_cast<std::size_t>(K_ * K_), 0.0);
    val_[0] = 1.0;
    deriv_rec(0);
    return out_;
  }

 private:
  double value_rec(std::size_t k, double w) {
    if (k == plan_.order.size()) return w;
    double sum = 0.0;
    const auto& gw = f_.width_values();
    for (int a = 0; a < m_; ++a) {
      double x = w * gw[a];
      for (int j : plan_.back[k]) x *= f_.value(labels_[j], a);
      if (x == 0.0) continue;
      labels_[k] = a;
      sum += value_rec(k + 1, x);
    }
    return sum;
  }

  void deriv_rec(std::size_t k) {
    if (k == plan_.order.size()) {
      out_.value += val_[k];
      for (int i = 0; i < K_; ++i) out_.gradient[i] += grad_[k][i];
      if (hess_)
        for (int i = 0; i < K_ * K_; ++i) out_.hessian[i] += hmat_[k][i];
      return;
    }
    const auto& gw = f_.width_values();
    auto& v1 = val_[k + 1];
    auto& g1 = grad_[k + 1];
    for (int a = 0; a < m_; ++a) {
      v1 = val_[k] * gw[a];
      for (int i = 0; i < K_; ++i) g1[i] = grad_[k][i] * gw[a];
      if (hess_)
        for (int i = 0; i < K_ * K_; ++i) hmat_[k + 1][i] = hmat_[k][i] * gw[a];
      for (int j : plan_.back[k]) {
        const double p = f_.value(labels_[j], a);
        const int e = pair_index(m_, labels_[j], a);
        if (hess_) {
          auto& h1 = hmat_[k + 1];
          for (int i = 0; i < K_ * K_; ++i) h1[i] *= p;
          for (int i = 0; i < K_; ++i) {
            h1[i * K_ + e] += g1[i];
            h1[e * K_ + i] += g1[i];
          }
        }
        for (int i = 0; i < K_; ++i) g1[i] *= p;
        g1[e] += v1;
        v1 *= p;
      }
      bool all_zero = v1 == 0.0;
      for (int i = 0; all_zero && i < K_; ++i) all_zero = g1[i] == 0.0;
      if (all_zero && hess_)
        for (int i = 0; all_zero && i < K_ * K_; ++i) all_zero = hmat_[k + 1][i] == 0.0;
      if (all_zero) continue;
      labels_[k] = a;
      deriv_rec(k + 1);
    }
  }

  SearchPlan plan_;
  const StepGraphon& f_;
  int m_;
  std::vector<int> labels_;
  bool hess_ = false;
  int K_ = 0;
  std::vector<double> val_;
  std::vector<std::vector<double>> grad_;
  std::vector<std::vector<double>> hmat_;
  DensityDerivatives out_;
};

}  // namespace

double hom_density(const FiniteGraph& H, const StepGraphon& f) {
  return DensitySearch(H, f).value();
}

DensityDerivatives hom_density_derivatives(const FiniteGraph& H, const StepGraphon& f,
                                           bool with_hessian) {
  return DensitySearch(H, f).derivatives(with_hessian);
}

double labeled_density(const FiniteGraph& H, const StepGraphon& f, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != H.vertex_count())
    throw ValidationError("labeling has " + std::to_string(labels.size()) + " entries, expected " +
                          std::to_string(H.vertex_count()));
  for (int y : labels)
    if (y < 0 || y >= f.block_count())
      throw ValidationError("label " + std::to_string(y) + " out of range");
  double w = 1.0;
  for (int y : labels) w *= f.width_values()[y];
  for (const auto& e : H.edges()) w *= f.value(labels[e.a], labels[e.b]);
  return w;
}

bool RelevantSet::contains(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) != pairs.end();
}

RelevantSet relevant_blocks(const FiniteGraph& H, const StepGraphon& W0) {
  const int m = W0.block_count();
  const SearchPlan plan = make_plan(H);
  const auto v = plan.order.size();
  // Edges in search positions, for marking at the leaves.
  std::vector<std::pair<int, int>> edges;
  for (std::size_t k = 0; k < v; ++k)
    for (int j : plan.back[k]) edges.emplace_back(j, static_cast<int>(k));

  std::vector<bool> used(static_cast<std::size_t>(pair_count(m)), false);
  int positive = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      if (W0.value(a, b) > 0) ++positive;
  int marked = 0;
  std::vector<int> labels(v);

  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (marked == positive) return;
    if (k == v) {
      for (auto [x, y] : edges) {
        int idx = pair_index(m, labels[x], labels[y]);
        if (!used[idx]) {
          used[idx] = true;
          ++marked;
        }
      }
      return;
    }
    for (int a = 0; a < m; ++a) {
      bool ok = true;
      for (int j : plan.back[k])
        if (!(W0.value(labels[j], a) > 0)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      labels[k] = a;
      self(self, k + 1);
    }
  };
  if (H.edge_count() > 0) rec(rec, 0);

  RelevantSet out;
  out.m = m;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      if (used[pair_index(m, a, b)]) out.pairs.emplace_back(a, b);
  return out;
}

MaxGraphon f_max_graphon(const FiniteGraph& H, const StepGraphon& W0) {
  auto relevant = relevant_blocks(H, W0);
  auto values = W0.values();
  for (auto [a, b] : relevant.pairs) values[a][b] = values[b][a] = 1.0;
  StepGraphon fmax = W0.with_values(std::move(values));
  double t = hom_density(H, fmax);
  return {std::move(fmax), t};
}

}  // namespace gldp
