// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dhlab/corpus.hpp"
#include "dhlab/operator.hpp"
#include "dhlab/verify.hpp"

using namespace dhlab;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds
  std::function<Result()> body;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<double> one_minus_pow2(int count) {
  std::vector<double> r;
  for (int j = 1; j <= count; ++j) r.push_back(1.0 - std::ldexp(1.0, -j));
  return r;
}

PowerSeries random_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<cdouble> c(degree + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return PowerSeries(std::move(c));
}

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Reference values: closed forms where they exist, quadrature otherwise. The
// log density has the digamma form B(n+1,b)(1 + psi(n+1+b) - psi(b)).
double reference_moment(const NamedMeasure& nm, int n) {
  if (nm.name == "log-beta-2") {
    using boost::math::beta;
    using boost::math::digamma;
    return beta(n + 1.0, 2.0) * (1.0 + digamma(n + 3.0) - digamma(2.0));
  }
  return moment(nm.measure, n, MomentMethod::automatic);
}

Result moment_correctness() {
  double worst = 0.0;
  for (const auto& nm : standard_corpus()) {
    auto numeric = moments(nm.measure, 201, MomentMethod::quadrature);
    for (int n = 0; n <= 200; ++n) worst = std::max(worst, rel_diff(reference_moment(nm, n), numeric[n]));
  }
  return {worst <= 1e-10, fmt("max rel diff %.2e over n<=200, 7 measures", worst)};
}

Result representation_identity() {
  std::mt19937_64 rng(1);
  const auto grid = disk_grid();
  const std::vector<NamedMeasure> measures{{"delta-0.5", RadialMeasure::point_mass(0.5)},
                                           {"beta-2", RadialMeasure::beta_density(2.0)}};
  double worst = 0.0;
  for (const auto& [name, m] : measures) {
    for (int degree = 0; degree <= 8; ++degree) {
      worst = std::max(worst, representation_gap(m, PowerSeries::monomial(degree), grid, 400));
      worst = std::max(worst, representation_gap(m, random_poly(rng, degree), grid, 400));
    }
  }
  return {worst <= 1e-6, fmt("max gap %.2e (N=400, degree<=8, |z|<=0.9)", worst)};
}

Result pairing_identity() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> degree(0, 32);
  const auto corpus = standard_corpus();
  std::vector<MomentSequence> mus;
  for (const auto& nm : corpus) mus.push_back(moments(nm.measure, 2 * kPairingTerms - 1));
  double worst = 0.0;
  int checks = 0;
  for (int pair = 0; pair < 50; ++pair) {
    auto f = random_poly(rng, degree(rng));
    auto g = random_poly(rng, degree(rng));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (double r : {0.3, 0.6, 0.9}) {
        auto lhs = duality_pairing_lhs(mus[i], f, g, r);
        auto rhs = duality_pairing_rhs(corpus[i].measure, f, g, r);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        ++checks;
      }
    }
  }
  return {worst <= 1e-8, fmt("max |lhs-rhs|/(1+|lhs|) %.2e over %d checks", worst, checks)};
}

Result hilbert_inequality() {
  auto sweep = hilbert_sweep(1000, 512, 0);
  return {sweep.violations == 0 && sweep.trials == 1000,
          fmt("%d violations in %d trials, max lhs/(pi^2 rhs) %.4f", sweep.violations, sweep.trials,
              sweep.max_ratio)};
}

Result boundedness_dichotomy() {
  const auto orders = default_orders();
  bool ok = true;
  std::string detail;
  auto check = [&](double beta, GrowthVerdict expected) {
    auto p = norm_profile(RadialMeasure::beta_density(beta), WeightScheme::derivative, orders);
    ok = ok && p.verdict == expected;
    detail += fmt("beta %.1f %s (last ratio %.4f); ", beta, to_string(p.verdict), p.ratios.back());
  };
  for (double beta : {2.0, 2.5, 3.0}) check(beta, GrowthVerdict::plateau);
  for (double beta : {1.0, 1.5}) check(beta, GrowthVerdict::growing);
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Result compactness_signature() {
  const auto r = one_minus_pow2(8);
  auto b3 = tail_block_norm(RadialMeasure::beta_density(3.0), WeightScheme::derivative, 1024, r);
  auto b2 = tail_block_norm(RadialMeasure::beta_density(2.0), WeightScheme::derivative, 1024, r);
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < b3.size(); ++i) decreasing = decreasing && b3[i + 1].norm < b3[i].norm;
  const double b3_final = b3.back().norm / b3.front().norm;
  double b2_min = INFINITY;
  for (const auto& b : b2) b2_min = std::min(b2_min, b.norm / b2.front().norm);
  bool ok3 = decreasing && b3_final < 0.2;
  bool ok2 = b2_min >= 0.5;
  return {ok3 && ok2, fmt("beta 3: %s, final/initial %.4f; beta 2: min/initial %.4f (needs >= 0.5)",
                          decreasing ? "strictly decreasing" : "not decreasing", b3_final, b2_min)};
}

Result carleson_classifier() {
  const auto grid = dyadic_grid(20);
  bool ok = true;
  std::string detail;
  for (double beta : {0.5, 1.0, 2.0, 3.0}) {
    auto rep = carleson_constant(RadialMeasure::beta_density(beta), 2.0, grid);
    ok = ok && std::abs(rep.exponent_estimate - beta) <= 0.05;
    detail += fmt("s*(%.1f)=%.4f ", beta, rep.exponent_estimate);
  }
  auto v3 = carleson_constant(RadialMeasure::beta_density(3.0), 2.0, grid).vanishing;
  auto v2 = carleson_constant(RadialMeasure::beta_density(2.0), 2.0, grid).vanishing;
  ok = ok && v3 == Trend::decaying && v2 == Trend::bounded;
  detail += fmt("beta 3 %s, beta 2 %s", to_string(v3), to_string(v2));
  return {ok, detail};
}

Result test_family_normalization() {
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0}) {
    for (int i = 1; i <= 9; ++i) {
      double a = 0.1 * i;
      worst = std::max(worst, std::abs(hardy_norm(test_function_f(p, a), p).value - 1.0));
    }
  }
  return {worst <= 1e-2, fmt("max |norm - 1| %.2e over 27 (p, a) pairs", worst)};
}

Result fast_matvec() {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  const auto corpus = standard_corpus();
  double worst = 0.0;
  for (int n : {16, 256, 1024}) {
    std::vector<MomentSequence> mus;
    for (const auto& nm : corpus) mus.push_back(moments(nm.measure, 2 * n - 1));
    for (int trial = 0; trial < 20; ++trial) {
      const auto& mu = mus[static_cast<std::size_t>(trial) % mus.size()];
      auto scheme = trial % 2 ? WeightScheme::unit : WeightScheme::derivative;
      auto a = WeightedHankelMatrix::build(mu, n, scheme);
      WeightedHankelMatrix::Vector x(n);
      for (auto& v : x) v = {g(rng), g(rng)};
      auto fast = a.apply(x);
      auto slow = a.apply_naive(x);
      double diff = 0.0, scale = 0.0;
      for (int i = 0; i < n; ++i) {
        diff = std::max(diff, std::abs(fast[i] - slow[i]));
        scale = std::max(scale, std::abs(slow[i]));
      }
      worst = std::max(worst, diff / scale);
    }
  }
  return {worst <= 1e-10, fmt("max rel diff %.2e, 60 trials", worst)};
}

Result moment_structure() {
  bool ok = true;
  double worst_eig = INFINITY;
  for (const auto& [name, m] : standard_corpus()) {
    auto mu = moments(m, 2 * 64 - 1);
    for (std::size_t n = 0; n + 1 < mu.size(); ++n) ok = ok && mu[n + 1] <= mu[n] && mu[n] >= 0.0;
    double eig = hankel_min_eigenvalue(mu, 64) / mu[0];
    worst_eig = std::min(worst_eig, eig);
    ok = ok && eig >= -1e-10;
  }
  return {ok, fmt("min eigenvalue / mu_0 %.2e, moments nonincreasing: %s", worst_eig,
                  ok ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "moment correctness", 5, moment_correctness},
      {2, "representation identity", 10, representation_identity},
      {3, "pairing identity", 30, pairing_identity},
      {4, "Hilbert inequality", 10, hilbert_inequality},
      {5, "H2 boundedness dichotomy", 120, boundedness_dichotomy},
      {6, "compactness signature", 120, compactness_signature},
      {7, "Carleson classifier", 5, carleson_classifier},
      {8, "test-family normalization", 30, test_family_normalization},
      {9, "fast matvec equivalence", 10, fast_matvec},
      {10, "moment-sequence structure", 5, moment_structure},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.body();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.time_limit) {
      r.ok = false;
      r.detail += fmt("; over time limit %.0f s", c.time_limit);
    }
    failed += r.ok ? 0 : 1;
    std::printf("[%s] %2d %-27s %7.2f s  %s\n", r.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
