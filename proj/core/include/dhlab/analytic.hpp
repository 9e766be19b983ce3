#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace dhlab {

using cdouble = std::complex<double>;

/// Truncated power series f(z) = a_0 + a_1 z + ... + a_M z^M.
class PowerSeries {
 public:
  PowerSeries() : coeffs_{cdouble{}} {}
  explicit PowerSeries(std::vector<cdouble> coeffs);
  PowerSeries(std::initializer_list<cdouble> coeffs);

  static PowerSeries monomial(int k, cdouble c = 1.0);
  /// a_k = a^k, k = 0..order.
  static PowerSeries geometric(double a, int order);

  const std::vector<cdouble>& coeffs() const { return coeffs_; }
  /// Highest retained power M.
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  cdouble operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cdouble{}; }

  /// Horner evaluation. The sum is finite, so any z is accepted; callers
  /// stay inside the unit disk.
  cdouble operator()(cdouble z) const;

  PowerSeries& operator+=(cdouble constant);

 private:
  std::vector<cdouble> coeffs_;
};

PowerSeries operator+(PowerSeries f, cdouble constant);

inline cdouble eval(const PowerSeries& f, cdouble z) { return f(z); }

/// (k+1) a_{k+1}; the derivative of a constant is [0].
PowerSeries derivative(const PowerSeries& f);

/// f(r e^{2 pi i j / K}) for j = 0..K-1, by folding coefficients mod K and one FFT.
std::vector<cdouble> sample_circle(const PowerSeries& f, double r, int samples);

/// M_p(r, f) by the K-point trapezoidal rule. K must be a power of two >= 256.
double circle_mean(const PowerSeries& f, double p, double r, int samples);
/// M_2(r, f) = (sum |a_k|^2 r^2k)^(1/2).
double circle_mean_parseval(const PowerSeries& f, double r);
/// circle_mean starting at K = 4096 and doubling until two estimates differ by < 1e-9.
double circle_mean_adaptive(const PowerSeries& f, double p, double r);

struct NormEstimate {
  double value = 0.0;
  double p = 0.0;
  std::vector<double> r_grid;
  std::vector<double> means;
  bool monotone_ok = true;
};

/// {1 - 2^-j : j = 1..12}.
std::vector<double> default_radius_grid();

/// value is M_p at the largest radius, except for p = 2 where it is the exact
/// sup (sum |a_k|^2)^(1/2).
NormEstimate hardy_norm(const PowerSeries& f, double p);
NormEstimate hardy_norm(const PowerSeries& f, double p, std::span<const double> r_grid);

/// integral_0^1 (1-r)^(1/q-2) M_1(r, f) dr, 0 < q < 1.
double bq_norm(const PowerSeries& f, double q);

/// |f(0)| + sup (1-|z|^2) |f'(z)| over a radius/angle grid.
double bloch_norm(const PowerSeries& f);

/// ||f o phi_a - f(a)||_{H^2} sampled on |z| = 1 - 2^-10, phi_a(z) = (a-z)/(1-az), real a.
double bmoa_probe(const PowerSeries& f, double a);
/// max of bmoa_probe over a_grid.
double bmoa_seminorm(const PowerSeries& f, std::span<const double> a_grid);

enum class KernelKind { log, cauchy, power };

/// Smallest M with a^M < 1e-12 whose dropped tail of the binomial series with
/// exponent `gamma` has coefficient mass below 1e-12.
int kernel_order(double gamma, double a);

/// ((1-a^2)/(1-az)^2)^(1/p) through c_{k+1} = c_k (k + 2/p)/(k+1) a.
PowerSeries test_function_f(double p, double a, int order);
PowerSeries test_function_f(double p, double a);

/// log: log(e/(1-az)); cauchy: (1-a^2)/(1-az); power: ((1-a^2)/(1-az)^2)^(1/q'),
/// with q' passed as `param` (ignored for the other kinds).
PowerSeries test_function_g(KernelKind kind, double a, double param, int order);
PowerSeries test_function_g(KernelKind kind, double a, double param);

/// Closed forms of the same families on the real segment (-1, 1).
double test_function_f_at(double p, double a, double x);
struct RealValue {
  double value;
  double derivative;
};
RealValue test_function_g_at(KernelKind kind, double a, double param, double x);

}  // namespace dhlab
