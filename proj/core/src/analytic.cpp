#include "dhlab/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "dhlab/quadrature.hpp"
#include "fft.hpp"

namespace dhlab {
namespace {

constexpr int kDefaultSamples = 4096;
constexpr int kMaxSamples = 1 << 18;
constexpr double kBmoaRadius = 1.0 - 1.0 / 1024.0;

bool is_pow2_at_least(int k, int floor) {
  return k >= floor && std::has_single_bit(static_cast<unsigned>(k));
}

double mean_power(std::span<const cdouble> values, double p) {
  double acc = 0.0;
  for (const auto& v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc / static_cast<double>(values.size()), 1.0 / p);
}

// Enough points to resolve a degree-M polynomial on the circle.
int resolving_samples(const PowerSeries& f, int floor) {
  const auto need = std::bit_ceil(static_cast<unsigned>(4 * (f.order() + 1)));
  return std::max(floor, static_cast<int>(std::min<unsigned>(need, kMaxSamples)));
}

std::vector<cdouble> binomial_kernel(double gamma, double a, double scale, int order) {
  std::vector<cdouble> c(static_cast<std::size_t>(order) + 1);
  double ck = scale;
  for (int k = 0; k <= order; ++k) {
    c[static_cast<std::size_t>(k)] = ck;
    ck *= (k + gamma) / (k + 1.0) * a;
  }
  return c;
}

}  // namespace

PowerSeries::PowerSeries(std::vector<cdouble> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(cdouble{});
}

PowerSeries::PowerSeries(std::initializer_list<cdouble> coeffs)
    : PowerSeries(std::vector<cdouble>(coeffs)) {}

PowerSeries PowerSeries::monomial(int k, cdouble c) {
  if (k < 0) throw std::invalid_argument("monomial degree must be nonnegative");
  std::vector<cdouble> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::geometric(double a, int order) {
  if (order < 0) throw std::invalid_argument("geometric order must be nonnegative");
  std::vector<cdouble> v(static_cast<std::size_t>(order) + 1);
  double ak = 1.0;
  for (auto& c : v) {
    c = ak;
    ak *= a;
  }
  return PowerSeries(std::move(v));
}

cdouble PowerSeries::operator()(cdouble z) const {
  cdouble acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerSeries& PowerSeries::operator+=(cdouble constant) {
  coeffs_[0] += constant;
  return *this;
}

PowerSeries operator+(PowerSeries f, cdouble constant) {
  f += constant;
  return f;
}

PowerSeries derivative(const PowerSeries& f) {
  const auto& a = f.coeffs();
  if (a.size() <= 1) return PowerSeries{};
  std::vector<cdouble> d(a.size() - 1);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = static_cast<double>(k + 1) * a[k + 1];
  return PowerSeries(std::move(d));
}

std::vector<cdouble> sample_circle(const PowerSeries& f, double r, int samples) {
  if (samples < 1 || !std::has_single_bit(static_cast<unsigned>(samples))) {
    throw std::invalid_argument("sample count must be a power of two");
  }
  std::vector<cdouble> bins(static_cast<std::size_t>(samples));
  double rk = 1.0;
  const auto& a = f.coeffs();
  for (std::size_t k = 0; k < a.size(); ++k) {
    bins[k % bins.size()] += a[k] * rk;
    rk *= r;
  }
  detail::fft_backward(bins);
  return bins;
}

double circle_mean(const PowerSeries& f, double p, double r, int samples) {
  if (!(p > 0.0)) throw std::invalid_argument("circle_mean requires p > 0");
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("circle_mean requires 0 < r < 1");
  if (!is_pow2_at_least(samples, 256)) {
    throw std::invalid_argument("circle_mean sample count must be a power of two >= 256");
  }
  return mean_power(sample_circle(f, r, samples), p);
}

double circle_mean_parseval(const PowerSeries& f, double r) {
  double acc = 0.0;
  double r2k = 1.0;
  for (const auto& c : f.coeffs()) {
    acc += std::norm(c) * r2k;
    r2k *= r * r;
  }
  return std::sqrt(acc);
}

double circle_mean_adaptive(const PowerSeries& f, double p, double r) {
  int k = kDefaultSamples;
  double prev = circle_mean(f, p, r, k);
  while (k < kMaxSamples) {
    k *= 2;
    const double next = circle_mean(f, p, r, k);
    if (std::abs(next - prev) < 1e-9) return next;
    prev = next;
  }
  return prev;
}

std::vector<double> default_radius_grid() {
  std::vector<double> g;
  for (int j = 1; j <= 12; ++j) g.push_back(1.0 - std::ldexp(1.0, -j));
  return g;
}

NormEstimate hardy_norm(const PowerSeries& f, double p) {
  const auto grid = default_radius_grid();
  return hardy_norm(f, p, grid);
}

NormEstimate hardy_norm(const PowerSeries& f, double p, std::span<const double> r_grid) {
  if (r_grid.empty()) throw std::invalid_argument("hardy_norm needs a nonempty radius grid");
  NormEstimate est;
  est.p = p;
  est.r_grid.assign(r_grid.begin(), r_grid.end());
  std::sort(est.r_grid.begin(), est.r_grid.end());
  for (double r : est.r_grid) est.means.push_back(circle_mean_adaptive(f, p, r));
  for (std::size_t i = 1; i < est.means.size(); ++i) {
    if (est.means[i] < est.means[i - 1] - 1e-9 * std::max(1.0, est.means[i - 1])) {
      est.monotone_ok = false;
    }
  }
  // For p = 2 the supremum over r < 1 of a polynomial's mean is its
  // coefficient norm.
  est.value = p == 2.0 ? circle_mean_parseval(f, 1.0) : est.means.back();
  return est;
}

double bq_norm(const PowerSeries& f, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("bq_norm requires 0 < q < 1");
  const int samples = resolving_samples(f, kDefaultSamples);
  // r = 1 - e^-u turns (1-r)^(1/q-2) dr into e^{-u(1/q-1)} du.
  auto integrand = [&](double u) {
    const double r = -std::expm1(-u);
    const double m1 = mean_power(sample_circle(f, r, samples), 1.0);
    return std::exp(-u * (1.0 / q - 1.0)) * m1;
  };
  quad::Options opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-10;
  return quad::integrate_to_infinity(integrand, 0.0, opts).value;
}

double bloch_norm(const PowerSeries& f) {
  const PowerSeries df = derivative(f);
  std::vector<double> radii;
  for (int k = 0; k < 64; ++k) radii.push_back(k / 64.0);
  for (double r : default_radius_grid()) radii.push_back(r);
  const int samples = resolving_samples(df, 256);
  double best = 0.0;
  for (double r : radii) {
    const double weight = 1.0 - r * r;
    for (const auto& v : sample_circle(df, r, samples)) best = std::max(best, weight * std::abs(v));
  }
  return std::abs(f[0]) + best;
}

double bmoa_probe(const PowerSeries& f, double a) {
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("bmoa probe requires 0 <= a < 1");
  const cdouble fa = f(a);
  auto estimate = [&](int k) {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / k;
      const cdouble z = std::polar(kBmoaRadius, theta);
      const cdouble w = (a - z) / (1.0 - a * z);
      acc += std::norm(f(w) - fa);
    }
    return std::sqrt(acc / k);
  };
  int k = kDefaultSamples;
  double prev = estimate(k);
  constexpr int kCap = 1 << 16;
  while (k < kCap) {
    k *= 2;
    const double next = estimate(k);
    if (std::abs(next - prev) < 1e-9 * std::max(1.0, next)) return next;
    prev = next;
  }
  return prev;
}

double bmoa_seminorm(const PowerSeries& f, std::span<const double> a_grid) {
  double best = 0.0;
  for (double a : a_grid) best = std::max(best, bmoa_probe(f, a));
  return best;
}

int kernel_order(double gamma, double a) {
  if (!(a > 0.0 && a < 1.0)) return 0;
  const int floor = static_cast<int>(std::ceil(std::log(1e-12) / std::log(a)));
  double ck = 1.0;
  constexpr int kCap = 1 << 22;
  for (int k = 0; k < kCap; ++k) {
    const double ratio = (k + gamma) / (k + 1.0) * a;
    // Once the ratio is below one the remaining tail is at most c_k * ratio / (1 - ratio).
    if (k >= floor && ratio < 1.0 && ck * ratio / (1.0 - ratio) < 1e-12) return k;
    ck *= ratio;
  }
  return kCap;
}

PowerSeries test_function_f(double p, double a, int order) {
  if (!(p > 0.0)) throw std::invalid_argument("test_function_f requires p > 0");
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("test_function_f requires 0 <= a < 1");
  return PowerSeries(binomial_kernel(2.0 / p, a, std::pow(1.0 - a * a, 1.0 / p), order));
}

PowerSeries test_function_f(double p, double a) {
  return test_function_f(p, a, kernel_order(2.0 / p, a));
}

PowerSeries test_function_g(KernelKind kind, double a, double param, int order) {
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("test_function_g requires 0 <= a < 1");
  std::vector<cdouble> c(static_cast<std::size_t>(order) + 1);
  switch (kind) {
    case KernelKind::log: {
      c[0] = 1.0;
      double ak = 1.0;
      for (int k = 1; k <= order; ++k) {
        ak *= a;
        c[static_cast<std::size_t>(k)] = ak / k;
      }
      break;
    }
    case KernelKind::cauchy: {
      double ak = 1.0 - a * a;
      for (auto& v : c) {
        v = ak;
        ak *= a;
      }
      break;
    }
    case KernelKind::power:
      if (!(param > 0.0)) throw std::invalid_argument("power kernel requires q' > 0");
      return test_function_f(param, a, order);
  }
  return PowerSeries(std::move(c));
}

PowerSeries test_function_g(KernelKind kind, double a, double param) {
  const double gamma = kind == KernelKind::power ? 2.0 / param : 1.0;
  return test_function_g(kind, a, param, kernel_order(gamma, a));
}

double test_function_f_at(double p, double a, double x) {
  return std::exp((std::log1p(-a * a) - 2.0 * std::log1p(-a * x)) / p);
}

RealValue test_function_g_at(KernelKind kind, double a, double param, double x) {
  const double one_minus = 1.0 - a * x;
  switch (kind) {
    case KernelKind::log:
      return {1.0 - std::log(one_minus), a / one_minus};
    case KernelKind::cauchy: {
      const double v = (1.0 - a * a) / one_minus;
      return {v, a * v / one_minus};
    }
    case KernelKind::power: {
      const double v = test_function_f_at(param, a, x);
      return {v, 2.0 * a / param * v / one_minus};
    }
  }
  return {0.0, 0.0};
}

}  // namespace dhlab
