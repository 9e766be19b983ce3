#include "dhlab/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dhlab {

int pairing_samples(const PowerSeries& g, int terms) {
  const auto span = static_cast<unsigned>(std::max(terms, g.order() + 1));
  return static_cast<int>(std::bit_ceil(2 * span));
}

cdouble duality_pairing_lhs(const MomentSequence& mu, const PowerSeries& f, const PowerSeries& g,
                            double r, int samples, int terms) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("pairing requires 0 <= r < 1");
  if (samples == 0) samples = pairing_samples(g, terms);
  const auto h = WeightedHankelMatrix::build(mu, terms, WeightScheme::derivative);
  std::vector<cdouble> a(static_cast<std::size_t>(terms));
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = f[k];
  const auto dh = sample_circle(PowerSeries(h.apply(a)), r, samples);
  const auto gs = sample_circle(g, 1.0, samples);
  cdouble acc{};
  for (std::size_t j = 0; j < dh.size(); ++j) acc += std::conj(dh[j]) * gs[j];
  return acc / static_cast<double>(samples);
}

cdouble duality_pairing_lhs(const RadialMeasure& m, const PowerSeries& f, const PowerSeries& g,
                            double r, int samples, int terms) {
  return duality_pairing_lhs(moments(m, 2 * terms - 1), f, g, r, samples, terms);
}

cdouble duality_pairing_rhs(const RadialMeasure& m, const PowerSeries& f, const PowerSeries& g,
                            double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("pairing requires 0 <= r < 1");
  const PowerSeries dg = derivative(g);
  auto integrand = [&](double t) {
    const double x = r * t;
    return std::conj(f(t)) * (g(x) + x * dg(x));
  };
  const auto res = integrate_complex(m, integrand);
  if (res.diverged()) throw DivergenceError("pairing integral diverged");
  return res.value;
}

WeightedHankelMatrix hilbert_matrix(int n) {
  std::vector<double> mu(static_cast<std::size_t>(2 * n - 1));
  for (std::size_t j = 0; j < mu.size(); ++j) mu[j] = 1.0 / static_cast<double>(j + 1);
  return WeightedHankelMatrix::build(mu, n, WeightScheme::unit);
}

HilbertCheck hilbert_inequality_check(std::span<const cdouble> a) {
  if (a.empty()) return {};
  return hilbert_inequality_check(hilbert_matrix(static_cast<int>(a.size())), a);
}

HilbertCheck hilbert_inequality_check(const WeightedHankelMatrix& hilbert,
                                      std::span<const cdouble> a) {
  HilbertCheck out;
  for (const auto& b : hilbert.apply(a)) out.lhs += std::norm(b);
  for (const auto& x : a) out.rhs += std::norm(x);
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  out.passed = out.lhs <= pi2 * out.rhs * (1.0 + 1e-12);
  return out;
}

HilbertSweep hilbert_sweep(int trials, int n, std::uint64_t seed) {
  if (trials < 0 || n < 1) throw std::invalid_argument("hilbert sweep needs trials >= 0, N >= 1");
  const auto h = hilbert_matrix(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<cdouble> a(static_cast<std::size_t>(n));
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;

  HilbertSweep sweep;
  sweep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    double norm = 0.0;
    for (auto& x : a) {
      x = {gauss(rng), gauss(rng)};
      norm += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(norm);
    const auto c = hilbert_inequality_check(h, a);
    if (!c.passed) ++sweep.violations;
    sweep.max_ratio = std::max(sweep.max_ratio, c.lhs / (pi2 * c.rhs));
  }
  return sweep;
}

const char* to_string(NecessityTarget t) {
  switch (t) {
    case NecessityTarget::hardy_q: return "Hq";
    case NecessityTarget::hardy_one: return "H1";
    case NecessityTarget::bq: return "Bq";
  }
  return "?";
}

NecessityValue necessity_functional(const RadialMeasure& m, double p, NecessityTarget target,
                                    double a, double q_conj, double r) {
  if (!(p > 0.0)) throw std::invalid_argument("necessity_functional requires p > 0");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("necessity_functional requires 0 < a < 1");
  if (r < 0.0) r = a;
  if (!(r >= a && r < 1.0)) throw std::invalid_argument("necessity_functional requires a <= r < 1");

  NecessityValue out;
  KernelKind kind = KernelKind::cauchy;
  double dilation = r;
  switch (target) {
    case NecessityTarget::hardy_q:
      if (!(q_conj > 1.0)) throw std::invalid_argument("Hq target requires q' > 1");
      kind = KernelKind::power;
      dilation = 1.0;
      out.exponent = 1.0 / p + 1.0 / q_conj + 1.0;
      break;
    case NecessityTarget::hardy_one:
      kind = KernelKind::log;
      out.exponent = 1.0 / p + 1.0;
      break;
    case NecessityTarget::bq:
      kind = KernelKind::cauchy;
      out.exponent = 1.0 / p + 1.0;
      break;
  }
  auto integrand = [&](double t) {
    const double x = dilation * t;
    const auto g = test_function_g_at(kind, a, q_conj, x);
    return test_function_f_at(p, a, t) * (g.value + x * g.derivative);
  };
  quad::Options opts;
  opts.abs_tol = 0.0;
  const auto res = integrate_real(m, integrand, a, opts);
  if (res.diverged()) throw DivergenceError("necessity functional diverged");
  out.lhs = res.value;
  out.rhs = tail_mass(m, a) / std::pow(1.0 - a * a, out.exponent);
  return out;
}

CoefficientDecay coefficient_decay_check(const PowerSeries& f, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("coefficient_decay_check requires p > 0");
  CoefficientDecay out;
  const auto& c = f.coeffs();
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double np1 = static_cast<double>(n + 1);
    const double mag = std::abs(c[n]);
    out.max_scaled_coeff = std::max(out.max_scaled_coeff, mag / std::pow(np1, 1.0 / p - 1.0));
    out.lemma32_sum += std::pow(np1, p - 2.0) * std::pow(mag, p);
  }
  return out;
}

}  // namespace dhlab
