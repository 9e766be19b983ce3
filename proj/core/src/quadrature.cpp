#include "dhlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace dhlab::quad {
namespace {

// QUADPACK qk15 tables: Kronrod abscissae (descending), Kronrod weights,
// and the weights of the embedded 7-point Gauss rule (odd Kronrod nodes).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  double abs_value;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T, class F>
Panel<T> kronrod15(const F& f, double a, double b, int& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  double abs_sum = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kWgk[j];
    abs_sum += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  evals += 15;
  Panel<T> p{a, b, kronrod * half, 0.0, abs_sum * std::abs(half)};
  p.error = std::abs((kronrod - gauss) * half);
  return p;
}

template <class T, class F>
Result<T> adaptive(const F& f, double a, double b, const Options& opts) {
  Result<T> out;
  if (a == b) return out;

  std::priority_queue<Panel<T>> heap;
  T total{};
  double total_err = 0.0;
  double total_abs = 0.0;

  constexpr int kInitial = 8;
  const double step = (b - a) / kInitial;
  for (int i = 0; i < kInitial; ++i) {
    const double lo = a + i * step;
    const double hi = (i + 1 == kInitial) ? b : a + (i + 1) * step;
    auto p = kronrod15<T>(f, lo, hi, out.evaluations);
    total += p.value;
    total_err += p.error;
    total_abs += p.abs_value;
    heap.push(p);
  }

  auto finish = [&](Status s) {
    out.value = total;
    out.error = total_err;
    out.status = s;
    return out;
  };

  int panels = kInitial;
  while (true) {
    if (!std::isfinite(std::abs(total)) || std::abs(total) > opts.blowup) {
      return finish(Status::diverged);
    }
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    if (total_err <= target || total_err <= 50.0 * kEps * total_abs) {
      return finish(Status::converged);
    }
    if (panels >= opts.max_panels) return finish(Status::not_converged);

    Panel<T> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) return finish(Status::not_converged);
    heap.pop();
    auto left = kronrod15<T>(f, worst.a, mid, out.evaluations);
    auto right = kronrod15<T>(f, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++panels;
    // Running sums drift; refresh them from the heap now and then.
    if (panels % 256 == 0) {
      auto copy = heap;
      total = T{};
      total_err = 0.0;
      total_abs = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        total_abs += copy.top().abs_value;
        copy.pop();
      }
    }
  }
}

template <class T, class F>
Result<T> adaptive_tail(const F& f, double a, const Options& opts) {
  auto mapped = [&](double s) -> T {
    const double one_minus = 1.0 - s;
    const double u = a + s / one_minus;
    if (!std::isfinite(u)) return T{};
    return f(u) / (one_minus * one_minus);
  };
  return adaptive<T>(mapped, 0.0, 1.0, opts);
}

}  // namespace

namespace detail {

Result<double> integrate_real(const RealFn& f, double a, double b, const Options& opts) {
  return adaptive<double>(f, a, b, opts);
}

Result<std::complex<double>> integrate_complex(const ComplexFn& f, double a, double b,
                                               const Options& opts) {
  return adaptive<std::complex<double>>(f, a, b, opts);
}

Result<double> integrate_real_tail(const RealFn& f, double a, const Options& opts) {
  return adaptive_tail<double>(f, a, opts);
}

Result<std::complex<double>> integrate_complex_tail(const ComplexFn& f, double a,
                                                    const Options& opts) {
  return adaptive_tail<std::complex<double>>(f, a, opts);
}

}  // namespace detail
}  // namespace dhlab::quad
