#pragma once

#include <complex>
#include <functional>
#include <type_traits>

namespace dhlab::quad {

/// Stopping rule for the adaptive driver: the run is converged once the
/// summed panel error is at most max(abs_tol, rel_tol * |integral|).
struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_panels = 4000;
  /// Partial sums beyond this magnitude are reported as divergence.
  double blowup = 1e15;
};

enum class Status { converged, not_converged, diverged };

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  Status status = Status::converged;
  int evaluations = 0;

  bool ok() const { return status == Status::converged; }
  bool diverged() const { return status == Status::diverged; }
};

namespace detail {
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

Result<double> integrate_real(const RealFn& f, double a, double b, const Options& opts);
Result<std::complex<double>> integrate_complex(const ComplexFn& f, double a, double b,
                                               const Options& opts);
Result<double> integrate_real_tail(const RealFn& f, double a, const Options& opts);
Result<std::complex<double>> integrate_complex_tail(const ComplexFn& f, double a,
                                                    const Options& opts);
}  // namespace detail

/// Adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// f may return double or std::complex<double>.
template <class F>
auto integrate(F&& f, double a, double b, const Options& opts = {}) {
  using T = std::invoke_result_t<F&, double>;
  if constexpr (std::is_convertible_v<T, double> && !std::is_same_v<T, std::complex<double>>) {
    return detail::integrate_real(detail::RealFn(std::forward<F>(f)), a, b, opts);
  } else {
    return detail::integrate_complex(detail::ComplexFn(std::forward<F>(f)), a, b, opts);
  }
}

/// Integral over [a, inf) through the map u = a + s / (1 - s), s in [0, 1).
template <class F>
auto integrate_to_infinity(F&& f, double a, const Options& opts = {}) {
  using T = std::invoke_result_t<F&, double>;
  if constexpr (std::is_convertible_v<T, double> && !std::is_same_v<T, std::complex<double>>) {
    return detail::integrate_real_tail(detail::RealFn(std::forward<F>(f)), a, opts);
  } else {
    return detail::integrate_complex_tail(detail::ComplexFn(std::forward<F>(f)), a, opts);
  }
}

}  // namespace dhlab::quad
