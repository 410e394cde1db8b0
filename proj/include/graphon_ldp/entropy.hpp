#pragma once

#include <optional>
#include <string>
#include <utility>

namespace gldp {

class StepGraphon;

// Bernoulli relative entropy h_p(u). Throws DomainError unless 0 < p < 1.
double bernoulli_kl(double p, double u);
// dh_p/du = logit(u) - logit(p)
double bernoulli_kl_derivative(double p, double u);

// psi(x) = h_p(x^(1/d)) and its first two derivatives in x.
struct PsiValue {
  double value;
  double first;
  double second;
  // True at x = 0 (d > 1) or x = 1 where the derivatives diverge; the
  // reported derivatives are then the signed one-sided limits (+-inf).
  bool unbounded;
};
PsiValue psi_eval(double p, int d, double x);

// Threshold below which psi has a concave stretch. For d = 1 returns 0:
// psi = h_p is convex for every p.
double p_zero(int d);

enum class Convexity { StrictlyConvex, MarginallyConvex, NonConvex };
const char* to_string(Convexity c);

class PsiProfile {
 public:
  double p() const noexcept { return p_; }
  int d() const noexcept { return d_; }
  Convexity convexity() const noexcept { return convexity_; }
  // Inflection points in the x coordinate, x1 < x2.
  const std::optional<std::pair<double, double>>& inflection() const noexcept {
    return inflection_;
  }
  // Touch points (a, b) of the lower common tangent.
  const std::optional<std::pair<double, double>>& window() const noexcept { return window_; }
  double slope() const noexcept { return slope_; }
  double intercept() const noexcept { return intercept_; }
  // "newton" or "bisection"; empty when convex.
  const std::string& window_method() const noexcept { return method_; }

  double psi(double x) const;
  double minorant(double x) const;
  // True iff r^d is outside the open window (1e-10 slack at the edges).
  bool on_minorant(double r) const;

  friend PsiProfile analyze_psi(double p, int d);

 private:
  double p_ = 0;
  int d_ = 1;
  Convexity convexity_ = Convexity::StrictlyConvex;
  std::optional<std::pair<double, double>> inflection_;
  std::optional<std::pair<double, double>> window_;
  double slope_ = 0;
  double intercept_ = 0;
  std::string method_;
};

// Throws DomainError unless 0 < p < 1 and d >= 1.
PsiProfile analyze_psi(double p, int d);

bool on_minorant(double p, int d, double r);
double minorant_value(double p, int d, double x);

// Limit of I_{W0}(f) / log(1/p) as the common Free value p -> 0.
// Throws DomainError if Free blocks carry different values or f leaves the
// support class of W0.
double limit_entropy_ratio(const StepGraphon& W0, const StepGraphon& f);

}  // namespace gldp
