#include "dhlab/hankel.hpp"

#include <bit>
#include <string>

#include "fft.hpp"

namespace dhlab {

const char* to_string(WeightScheme s) {
  return s == WeightScheme::unit ? "unit" : "derivative";
}

WeightScheme parse_scheme(std::string_view name) {
  if (name == "unit") return WeightScheme::unit;
  if (name == "derivative") return WeightScheme::derivative;
  throw std::invalid_argument("unknown weight scheme '" + std::string(name) +
                              "' (expected unit|derivative)");
}

WeightedHankelMatrix WeightedHankelMatrix::build(const MomentSequence& mu, int n,
                                                 WeightScheme scheme) {
  return build(std::span<const double>(mu.values), n, scheme);
}

WeightedHankelMatrix WeightedHankelMatrix::build(std::span<const double> mu, int n,
                                                 WeightScheme scheme) {
  if (n < 1) throw std::invalid_argument("Hankel truncation order must be >= 1");
  const auto needed = static_cast<std::size_t>(2 * n - 1);
  if (mu.size() < needed) {
    throw InsufficientMoments("Hankel truncation of order " + std::to_string(n) + " needs " +
                              std::to_string(needed) + " moments, got " +
                              std::to_string(mu.size()));
  }
  WeightedHankelMatrix m;
  m.n_ = n;
  m.scheme_ = scheme;
  m.moments_ = std::make_shared<const std::vector<double>>(mu.begin(), mu.begin() + needed);

  const auto length = std::bit_ceil(static_cast<std::size_t>(3 * n));
  Vector spec(length);
  for (std::size_t j = 0; j < needed; ++j) spec[j] = mu[j];
  detail::fft_forward(spec);
  m.spectrum_ = std::make_shared<const Vector>(std::move(spec));
  return m;
}

// c_j = a_{N-1-j}; (mu * c)_{n+N-1} = sum_k mu_{n+k} a_k.
WeightedHankelMatrix::Vector WeightedHankelMatrix::correlate(
    std::span<const std::complex<double>> a) const {
  if (a.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("vector length does not match Hankel order");
  }
  const auto& spec = *spectrum_;
  const std::size_t length = spec.size();
  const auto n = static_cast<std::size_t>(n_);
  Vector work(length);
  for (std::size_t j = 0; j < n; ++j) work[j] = a[n - 1 - j];
  detail::fft_forward(work);
  for (std::size_t j = 0; j < length; ++j) work[j] *= spec[j];
  detail::fft_backward(work);
  const double scale = 1.0 / static_cast<double>(length);
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = work[i + n - 1] * scale;
  return out;
}

WeightedHankelMatrix::Vector WeightedHankelMatrix::apply(
    std::span<const std::complex<double>> a) const {
  Vector b = correlate(a);
  if (scheme_ == WeightScheme::derivative) {
    for (std::size_t i = 0; i < b.size(); ++i) b[i] *= static_cast<double>(i + 1);
  }
  return b;
}

WeightedHankelMatrix::Vector WeightedHankelMatrix::apply_naive(
    std::span<const std::complex<double>> a) const {
  if (a.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("vector length does not match Hankel order");
  }
  Vector b(static_cast<std::size_t>(n_));
  for (int row = 0; row < n_; ++row) {
    std::complex<double> acc{};
    for (int col = 0; col < n_; ++col) acc += moment(row + col) * a[static_cast<std::size_t>(col)];
    b[static_cast<std::size_t>(row)] = weight(row) * acc;
  }
  return b;
}

WeightedHankelMatrix::Vector WeightedHankelMatrix::apply_adjoint(
    std::span<const std::complex<double>> x) const {
  if (x.size() != static_cast<std::size_t>(n_)) {
    throw std::invalid_argument("vector length does not match Hankel order");
  }
  if (scheme_ == WeightScheme::unit) return correlate(x);
  Vector weighted(x.begin(), x.end());
  for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] *= static_cast<double>(i + 1);
  return correlate(weighted);
}

Eigen::MatrixXd WeightedHankelMatrix::dense() const {
  Eigen::MatrixXd m(n_, n_);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) m(r, c) = entry(r, c);
  }
  return m;
}

}  // namespace dhlab
