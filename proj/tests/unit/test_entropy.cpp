#include <cmath>
#include <random>

#include "doctest.h"
#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/graphon.hpp"
#include "oracles.hpp"

using namespace gldp;

using testing::has_concave_point;
using testing::psi_second_oracle;

TEST_CASE("bernoulli relative entropy") {
  CHECK(bernoulli_kl(0.3, 0.3) == 0.0);
  CHECK(bernoulli_kl(0.5, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(bernoulli_kl(0.2, 0.0) == doctest::Approx(-std::log(0.8)));
  CHECK_THROWS_AS(bernoulli_kl(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(bernoulli_kl(1.0, 0.5), DomainError);

  // h_p(u) = integral_p^u (u - v) h''(v) dv, composite Simpson.
  const double p = 0.3, u = 0.7;
  const int n = 20000;
  const double step = (u - p) / n;
  double s = 0;
  for (int i = 0; i <= n; ++i) {
    const double v = p + i * step;
    const double g = (u - v) * (1.0 / v + 1.0 / (1.0 - v));
    s += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * g;
  }
  CHECK(std::abs(s * step / 3 - bernoulli_kl(p, u)) < 1e-10);

  for (int i = 1; i < 1000; ++i) {
    const double x = i / 1000.0;
    REQUIRE(bernoulli_kl(0.37, x) >= 0.0);
    REQUIRE(1.0 / x + 1.0 / (1.0 - x) > 0.0);
  }
}

TEST_CASE("psi derivatives against finite differences") {
  for (double p : {0.05, 0.2, 0.6})
    for (int d : {1, 2, 3})
      for (double x : {0.1, 0.3, 0.5, 0.8}) {
        const double h = 1e-6;
        const PsiValue v = psi_eval(p, d, x);
        const double f1 = (psi_eval(p, d, x + h).value - psi_eval(p, d, x - h).value) / (2 * h);
        const double f2 = (psi_eval(p, d, x + h).first - psi_eval(p, d, x - h).first) / (2 * h);
        CHECK(v.first == doctest::Approx(f1).epsilon(1e-5));
        CHECK(v.second == doctest::Approx(f2).epsilon(1e-5));
        CHECK(v.second == doctest::Approx(psi_second_oracle(p, d, x)).epsilon(1e-9));
      }
  const PsiValue at_min = psi_eval(0.3, 2, 0.09);
  CHECK(at_min.value == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(at_min.first) < 1e-12);
  const PsiValue zero = psi_eval(0.3, 2, 0.0);
  CHECK(zero.unbounded);
  CHECK(zero.value == doctest::Approx(-std::log(0.7)));
}

TEST_CASE("convexity threshold") {
  CHECK(p_zero(2) == doctest::Approx(1.0 / (1.0 + std::exp(2.0))).epsilon(1e-15));
  CHECK(p_zero(1) == 0.0);
  double prev = 0;
  for (int d = 2; d <= 10; ++d) {
    const double p0 = p_zero(d);
    CHECK(p0 > prev);
    prev = p0;
    CHECK(has_concave_point(p0 - 1e-3, d, 100000));
    CHECK_FALSE(has_concave_point(p0 + 1e-3, d, 100000));
  }
}

TEST_CASE("psi profile") {
  CHECK(analyze_psi(0.01, 1).convexity() == Convexity::StrictlyConvex);
  CHECK_FALSE(analyze_psi(0.01, 1).window());
  CHECK(analyze_psi(p_zero(2), 2).convexity() == Convexity::MarginallyConvex);

  const PsiProfile convex = analyze_psi(0.3, 2);
  CHECK(convex.convexity() == Convexity::StrictlyConvex);
  for (int i = 1; i < 10000; ++i) REQUIRE(psi_second_oracle(0.3, 2, i / 10000.0) > 0);

  for (double p : {0.01, 0.05, 0.1}) {
    const PsiProfile prof = analyze_psi(p, 2);
    REQUIRE(prof.convexity() == Convexity::NonConvex);
    const auto [x1, x2] = *prof.inflection();
    const auto [a, b] = *prof.window();
    CHECK(a < x1);
    CHECK(x1 < x2);
    CHECK(x2 < b);
    CHECK(b <= 1.0);
    CHECK(std::abs(prof.slope() * a + prof.intercept() - prof.psi(a)) < 1e-9);
    CHECK(std::abs(prof.slope() * b + prof.intercept() - prof.psi(b)) < 1e-9);
    for (int i = 0; i <= 10000; ++i) {
      const double x = i / 10000.0;
      REQUIRE(prof.slope() * x + prof.intercept() <= prof.psi(x) + 1e-10);
      if (i == 0 || i == 10000) continue;
      const double s = psi_second_oracle(p, 2, x);
      if (x < x1 - 1e-9 || x > x2 + 1e-9) REQUIRE(s > 0);
      if (x > x1 + 1e-9 && x < x2 - 1e-9) REQUIRE(s < 0);
    }
  }
}

TEST_CASE("psi monotone around its minimum") {
  for (double p : {0.05, 0.3})
    for (int d : {1, 2, 3}) {
      const double xm = std::pow(p, d);
      double prev = kInfinity;
      for (int i = 0; i <= 1000; ++i) {
        const double x = xm * i / 1000.0;
        const double v = psi_eval(p, d, x).value;
        REQUIRE(v <= prev + 1e-15);
        prev = v;
      }
      for (int i = 0; i <= 1000; ++i) {
        const double x = xm + (1 - xm) * i / 1000.0;
        const double v = psi_eval(p, d, x).value;
        REQUIRE(v >= prev - 1e-15);
        prev = v;
      }
    }
}

TEST_CASE("convex minorant") {
  const PsiProfile prof = analyze_psi(0.05, 2);
  const auto [a, b] = *prof.window();
  CHECK(on_minorant(0.05, 2, 0.05));
  CHECK(on_minorant(0.05, 2, 1.0));
  CHECK_FALSE(on_minorant(0.05, 2, std::sqrt((a + b) / 2)));
  CHECK(std::abs(minorant_value(0.05, 2, a) - prof.psi(a)) < 1e-9);
  CHECK(std::abs(minorant_value(0.05, 2, b) - prof.psi(b)) < 1e-9);
  CHECK(prof.psi((a + b) / 2) - prof.minorant((a + b) / 2) > 1e-3);
  for (int i = 0; i <= 100; ++i) CHECK(on_minorant(0.3, 2, 0.3 + 0.7 * i / 100.0));
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    CHECK(minorant_value(0.3, 2, x) == psi_eval(0.3, 2, x).value);
  }

  const int n = 400;
  std::vector<double> m(n + 1);
  for (int i = 0; i <= n; ++i) {
    m[i] = prof.minorant(static_cast<double>(i) / n);
    REQUIRE(m[i] <= prof.psi(static_cast<double>(i) / n) + 1e-10);
  }
  for (int i = 0; i <= n; ++i)
    for (int k = 1; i - k >= 0 && i + k <= n; ++k) REQUIRE(m[i] <= 0.5 * (m[i - k] + m[i + k]) + 1e-12);
}

TEST_CASE("limit entropy ratio") {
  const Rational half(1, 2);
  // 0/1-valued f: the ratio converges fast.
  const StepGraphon chi({half, Rational(1, 4), Rational(1, 4)},
                        {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}});
  const StepGraphon W0 = refine_to(StepGraphon::two_block(half, 0.0, 1e-6, 1e-6),
                                   {half, Rational(1, 4), Rational(1, 4)});
  const double ratio = limit_entropy_ratio(W0, chi);
  CHECK(ratio == doctest::Approx(0.5 * 0.0625));
  CHECK(std::abs(relative_entropy(W0, chi) / std::log(1e6) - ratio) / ratio < 0.01);

  // Fractional f: the gap shrinks as p decreases.
  const StepGraphon f = StepGraphon::two_block(half, 0.0, 0.6, 0.6);
  double prev = kInfinity;
  for (double p : {1e-3, 1e-6, 1e-9, 1e-12}) {
    const StepGraphon base = StepGraphon::two_block(half, 0.0, p, p);
    const double gap = std::abs(relative_entropy(base, f) / std::log(1 / p) - limit_entropy_ratio(base, f));
    CHECK(gap < prev);
    prev = gap;
  }

  // Clique case: chi_t against f_{1,p,p}.
  const double t = 0.5, v = 4;
  const double side = std::pow(t, 1 / v);
  const Rational s = rational_from_double(side);
  const StepGraphon clique({s, Rational(1) - s}, {{1, 0}, {0, 0}});
  const StepGraphon W1 = StepGraphon::two_block(half, 1.0, 0.01, 0.01);
  CHECK(limit_entropy_ratio(W1, clique) == doctest::Approx(0.5 * (std::pow(t, 2 / v) - 0.25)).epsilon(1e-12));

  CHECK(limit_entropy_ratio(StepGraphon::bipartite(half, 0.2), StepGraphon::bipartite(half, 0.0)) == 0.0);
  StepGraphon mixed({half, half}, {{0.1, 0.2}, {0.2, 0.1}});
  CHECK_THROWS_AS(limit_entropy_ratio(mixed, mixed), DomainError);
}
