#include "detail/precise.hpp"

#include "detail/jacobi.hpp"
#include "graphon_ldp/errors.hpp"

namespace gldp::detail {

namespace {

std::vector<Precise> precise_widths(const StepGraphon& f) {
  std::vector<Precise> out;
  for (const auto& w : f.widths()) out.push_back(to_precise(w));
  return out;
}

Precise kl(const Precise& p, const Precise& u) {
  using boost::multiprecision::log;
  if (u == 0) return -log(1 - p);
  if (u == 1) return -log(p);
  return u * log(u / p) + (1 - u) * log((1 - u) / (1 - p));
}

}  // namespace

Precise to_precise(const Rational& q) {
  return Precise(boost::multiprecision::numerator(q)) /
         Precise(boost::multiprecision::denominator(q));
}

Precise precise_hom_density(const FiniteGraph& H, const StepGraphon& f) {
  const int v = H.vertex_count();
  const int m = f.block_count();
  const auto widths = precise_widths(f);
  std::vector<std::vector<int>> back(static_cast<std::size_t>(v));
  for (const auto& e : H.edges()) back[e.b].push_back(e.a);
  std::vector<int> labels(static_cast<std::size_t>(v));
  auto rec = [&](auto&& self, int k, const Precise& w) -> Precise {
    if (k == v) return w;
    Precise sum = 0;
    for (int a = 0; a < m; ++a) {
      Precise x = w * widths[a];
      bool zero = false;
      for (int j : back[k]) {
        const double p = f.value(labels[j], a);
        if (p == 0.0) {
          zero = true;
          break;
        }
        x *= p;
      }
      if (zero) continue;
      labels[k] = a;
      sum += self(self, k + 1, x);
    }
    return sum;
  };
  return rec(rec, 0, Precise(1));
}

Precise precise_entropy(const StepGraphon& W0, const StepGraphon& f) {
  auto [base, g] = common_refinement(W0, f);
  const auto widths = precise_widths(base);
  const int m = base.block_count();
  Precise total = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double p = base.value(i, j);
      const double u = g.value(i, j);
      if (p == 0.0 || p == 1.0) {
        if (u != p) throw DomainError("graphon leaves the support class of the base");
        continue;
      }
      total += widths[i] * widths[j] * kl(Precise(p), Precise(u));
    }
  }
  return total / 2;
}

Precise precise_operator_norm(const StepGraphon& f) {
  using boost::multiprecision::abs;
  using boost::multiprecision::sqrt;
  const int m = f.block_count();
  const auto widths = precise_widths(f);
  std::vector<Precise> a(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i * m + j] = Precise(f.value(i, j)) * sqrt(widths[i] * widths[j]);
  auto eig = jacobi_eigenvalues(std::move(a), m, Precise("1e-45"));
  return std::max(abs(eig.front()), abs(eig.back()));
}

}  // namespace gldp::detail
