#include "graphon_ldp/entropy.hpp"

#include <cmath>
#include <limits>

#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/graphon.hpp"

namespace gldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("base probability must lie in (0,1)");
}

double logit(double u) { return std::log(u) - std::log1p(-u); }

// Bracketed sign of psi'' in the u = x^(1/d) coordinate, up to the
// positive factor u^(1-2d)/d^2.
double curvature_sign(double p, int d, double u) {
  return 1.0 / (1.0 - u) - (d - 1) * (logit(u) - logit(p));
}

double bisect(auto&& fn, double lo, double hi, double tolerance) {
  const bool lo_negative = fn(lo) < 0;
  for (int i = 0; i < 400 && hi - lo > tolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((fn(mid) < 0) == lo_negative) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct Window {
  double a;
  double b;
};

// Newton on  psi'(a) = psi'(b),  psi'(a)(b - a) = psi(b) - psi(a),
// kept inside the two convex branches.
std::optional<Window> newton_window(double p, int d, double x1, double x2) {
  double a = 0.5 * x1;
  double b = 0.5 * (x2 + 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    const PsiValue A = psi_eval(p, d, a);
    const PsiValue B = psi_eval(p, d, b);
    const double F1 = A.first - B.first;
    const double F2 = A.first * (b - a) - (B.value - A.value);
    const double J11 = A.second, J12 = -B.second;
    const double J21 = A.second * (b - a), J22 = A.first - B.first;
    const double det = J11 * J22 - J12 * J21;
    if (!std::isfinite(det) || det == 0.0) return std::nullopt;
    double da = -(F1 * J22 - J12 * F2) / det;
    double db = -(J11 * F2 - F1 * J21) / det;
    double scale = 1.0;
    while (scale > 1e-12 && !(a + scale * da > 0.0 && a + scale * da < x1 &&
                              b + scale * db > x2 && b + scale * db < 1.0))
      scale *= 0.5;
    if (scale <= 1e-12) return std::nullopt;
    a += scale * da;
    b += scale * db;
    if (std::abs(scale * da) + std::abs(scale * db) < 1e-11) {
      const PsiValue A2 = psi_eval(p, d, a);
      const PsiValue B2 = psi_eval(p, d, b);
      const double r1 = std::abs(A2.first - B2.first);
      const double r2 = std::abs(A2.first * (b - a) - (B2.value - A2.value));
      if (r1 < 1e-8 * (1.0 + std::abs(A2.first)) && r2 < 1e-11) return Window{a, b};
    }
  }
  return std::nullopt;
}

// Envelope construction: for a slope s the two convex branches each have one
// point with psi' = s; the common tangent is the slope at which the two
// supporting lines have equal intercepts.
Window bisection_window(double p, int d, double x1, double x2) {
  auto slope_root = [&](double s, double lo, double hi) {
    return bisect([&](double x) { return psi_eval(p, d, x).first - s; }, lo, hi, 1e-16);
  };
  auto gap = [&](double s) {
    const double xl = slope_root(s, 0.0, x1);
    const double xr = slope_root(s, x2, 1.0);
    return (psi_eval(p, d, xl).value - s * xl) - (psi_eval(p, d, xr).value - s * xr);
  };
  const double s_lo = psi_eval(p, d, x2).first;
  const double s_hi = psi_eval(p, d, x1).first;
  const double s = bisect(gap, s_lo, s_hi, 1e-15 * (1.0 + std::abs(s_hi)));
  return {slope_root(s, 0.0, x1), slope_root(s, x2, 1.0)};
}

}  // namespace

double bernoulli_kl(double p, double u) {
  check_p(p);
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("argument of h_p must lie in [0,1]");
  if (u == 0.0) return -std::log1p(-p);
  if (u == 1.0) return -std::log(p);
  return u * std::log(u / p) + (1.0 - u) * std::log((1.0 - u) / (1.0 - p));
}

double bernoulli_kl_derivative(double p, double u) {
  check_p(p);
  if (u <= 0.0) return -kInf;
  if (u >= 1.0) return kInf;
  return logit(u) - logit(p);
}

PsiValue psi_eval(double p, int d, double x) {
  check_p(p);
  if (d < 1) throw DomainError("degree must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("psi argument must lie in [0,1]");
  if (x == 0.0) return {bernoulli_kl(p, 0.0), -kInf, kInf, true};
  if (x == 1.0) return {bernoulli_kl(p, 1.0), kInf, kInf, true};
  const double u = d == 1 ? x : std::pow(x, 1.0 / d);
  const double value = bernoulli_kl(p, u);
  const double first = bernoulli_kl_derivative(p, u) * std::pow(u, 1 - d) / d;
  const double second = std::pow(u, 1 - 2 * d) / (static_cast<double>(d) * d) *
                        curvature_sign(p, d, u);
  return {value, first, second, false};
}

double p_zero(int d) {
  if (d < 1) throw DomainError("degree must be >= 1");
  if (d == 1) return 0.0;
  const double k = d - 1;
  return k / (k + std::exp(d / k));
}

const char* to_string(Convexity c) {
  switch (c) {
    case Convexity::StrictlyConvex: return "StrictlyConvex";
    case Convexity::MarginallyConvex: return "MarginallyConvex";
    case Convexity::NonConvex: return "NonConvex";
  }
  return "?";
}

PsiProfile analyze_psi(double p, int d) {
  check_p(p);
  if (d < 1) throw DomainError("degree must be >= 1");
  PsiProfile out;
  out.p_ = p;
  out.d_ = d;
  if (d == 1) return out;
  const double p0 = p_zero(d);
  if (std::abs(p - p0) <= 1e-12) {
    out.convexity_ = Convexity::MarginallyConvex;
    return out;
  }
  if (p > p0) return out;
  out.convexity_ = Convexity::NonConvex;

  auto S = [&](double u) { return curvature_sign(p, d, u); };
  const double u_star = (d - 1.0) / d;
  const double u1 = bisect(S, p, u_star, 1e-15);
  const double u2 = bisect(S, u_star, std::nextafter(1.0, 0.0), 1e-15);
  const double x1 = std::pow(u1, d);
  const double x2 = std::pow(u2, d);
  out.inflection_ = std::make_pair(x1, x2);

  Window w{};
  if (auto nw = newton_window(p, d, x1, x2)) {
    w = *nw;
    out.method_ = "newton";
  } else {
    w = bisection_window(p, d, x1, x2);
    out.method_ = "bisection";
  }
  if (!(w.a < x1 && w.b > x2))
    throw Error("tangency window construction failed for p=" + std::to_string(p));
  out.window_ = std::make_pair(w.a, w.b);
  const double fa = psi_eval(p, d, w.a).value;
  const double fb = psi_eval(p, d, w.b).value;
  out.slope_ = (fb - fa) / (w.b - w.a);
  out.intercept_ = fa - out.slope_ * w.a;
  return out;
}

double PsiProfile::psi(double x) const { return psi_eval(p_, d_, x).value; }

double PsiProfile::minorant(double x) const {
  if (window_ && x > window_->first && x < window_->second) return intercept_ + slope_ * x;
  return psi(x);
}

bool PsiProfile::on_minorant(double r) const {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("r must lie in [0,1]");
  if (!window_) return true;
  const double x = std::pow(r, d_);
  return !(x > window_->first + 1e-10 && x < window_->second - 1e-10);
}

bool on_minorant(double p, int d, double r) { return analyze_psi(p, d).on_minorant(r); }

double minorant_value(double p, int d, double x) { return analyze_psi(p, d).minorant(x); }

double limit_entropy_ratio(const StepGraphon& W0, const StepGraphon& f) {
  auto [base, g] = common_refinement(W0, f);
  if (!in_omega(base, g)) throw DomainError("graphon does not agree with the base on its 0/1 blocks");
  std::optional<double> free_value;
  double total = 0.0;
  const int m = base.block_count();
  const auto& w = base.width_values();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double p = base.value(i, j);
      if (p == 0.0 || p == 1.0) continue;
      if (free_value && *free_value != p)
        throw DomainError("base graphon has more than one free value");
      free_value = p;
      total += w[i] * w[j] * g.value(i, j);
    }
  }
  return 0.5 * total;
}

}  // namespace gldp
