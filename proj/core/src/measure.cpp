#include "dhlab/measure.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace dhlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Moments and tails decay polynomially in n, so they are integrated to a
// relative target rather than the generic absolute one.
quad::Options relative_options() {
  quad::Options o;
  o.abs_tol = 0.0;
  o.rel_tol = 1e-13;
  o.max_panels = 8000;
  return o;
}

// u = -log(1 - t); the density weight in u is c exp(-beta u) (1 + u)^lam.
double u_of(double t) { return -std::log1p(-t); }

double density_weight(const Density& d, double u, double beta_shift = 0.0) {
  double w = d.c * std::exp(-(d.beta - beta_shift) * u);
  if (d.lam > 0) w *= std::pow(1.0 + u, d.lam);
  return w;
}

double density_moment_quadrature(const Density& d, int n) {
  auto integrand = [&](double u) {
    const double w = density_weight(d, u);
    if (n == 0) return w;
    const double e = std::exp(-u);
    if (e >= 1.0) return 0.0;
    return w * std::exp(n * std::log1p(-e));
  };
  auto r = quad::integrate_to_infinity(integrand, u_of(d.cutoff), relative_options());
  if (!r.ok()) {
    std::ostringstream msg;
    msg << "moment quadrature for density beta=" << d.beta << " lam=" << d.lam << " n=" << n
        << " did not converge (estimate " << r.value << ", error " << r.error << ")";
    throw DivergenceError(msg.str());
  }
  return r.value;
}

double density_moment(const Density& d, int n, MomentMethod method) {
  if (d.lam == 0 && method == MomentMethod::automatic) {
    const double a = n + 1.0;
    if (d.cutoff == 0.0) return d.c * boost::math::beta(a, d.beta);
    return d.c * boost::math::betac(a, d.beta, d.cutoff);
  }
  return density_moment_quadrature(d, n);
}

double density_tail(const Density& d, double t) {
  const double lo = std::max(t, d.cutoff);
  if (d.lam == 0) return d.c * std::pow(1.0 - lo, d.beta) / d.beta;
  auto r = quad::integrate_to_infinity([&](double u) { return density_weight(d, u); }, u_of(lo),
                                       relative_options());
  return r.value;
}

template <class T, class G>
quad::Result<T> integrate_against(const RadialMeasure& m, const G& g, double from,
                                  const quad::Options& opts) {
  quad::Result<T> total;
  for (const auto& a : m.atoms()) {
    if (a.t >= from) total.value += a.w * g(a.t);
  }
  for (const auto& d : m.densities()) {
    const double lo = std::max(from, d.cutoff);
    auto integrand = [&](double u) -> T {
      const double w = density_weight(d, u);
      if (w == 0.0) return T{};
      return w * g(-std::expm1(-u));
    };
    auto r = quad::integrate_to_infinity(integrand, u_of(lo), opts);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
    if (r.status == quad::Status::diverged) {
      total.status = quad::Status::diverged;
    } else if (r.status == quad::Status::not_converged && total.status == quad::Status::converged) {
      total.status = quad::Status::not_converged;
    }
  }
  return total;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

CarlesonReport carleson_impl(const RadialMeasure& m, double s, double alpha,
                             std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("carleson grid must be nonempty");
  if (!(s > 0.0)) throw std::invalid_argument("carleson exponent s must be positive");
  if (!(alpha >= 0.0)) throw std::invalid_argument("logarithmic order alpha must be >= 0");
  CarlesonReport rep;
  rep.s = s;
  rep.log_alpha = alpha;
  rep.grid.assign(grid.begin(), grid.end());
  std::vector<double> xs, ys;
  for (double t : grid) {
    if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("carleson grid points must lie in [0,1)");
    const double gap = 1.0 - t;
    const double tail = tail_mass(m, t);
    // |I| = 2 pi (1 - t), so log(2 pi / |I|) = log(1 / (1 - t)).
    const double logf = std::pow(-std::log(gap), alpha);
    const double ratio = tail * logf / std::pow(gap, s);
    rep.tails.push_back(tail);
    rep.ratios.push_back(ratio);
    if (tail > 0.0) {
      xs.push_back(std::log(gap));
      ys.push_back(std::log(tail));
    }
  }
  rep.constant = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  rep.vanishing = classify_trend(rep.ratios);

  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    rep.exponent_estimate = sxx > 0.0 ? sxy / sxx : kInf;
  } else {
    rep.exponent_estimate = kInf;
  }
  return rep;
}

}  // namespace

RadialMeasure::RadialMeasure(std::vector<Atom> atoms, std::vector<Density> densities)
    : atoms_(std::move(atoms)), densities_(std::move(densities)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    const std::string where = "atoms[" + std::to_string(i) + "]";
    if (!(a.t >= 0.0 && a.t < 1.0)) throw InvalidMeasure(where + ".t must lie in [0,1)");
    if (!(a.w > 0.0) || !std::isfinite(a.w)) throw InvalidMeasure(where + ".w must be positive");
  }
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    const auto& d = densities_[i];
    const std::string where = "densities[" + std::to_string(i) + "]";
    if (!(d.c > 0.0) || !std::isfinite(d.c)) throw InvalidMeasure(where + ".c must be positive");
    if (!(d.beta > 0.0) || !std::isfinite(d.beta)) {
      throw InvalidMeasure(where + ".beta must be positive");
    }
    if (d.lam < 0) throw InvalidMeasure(where + ".lam must be a nonnegative integer");
    if (!(d.cutoff >= 0.0 && d.cutoff < 1.0)) {
      throw InvalidMeasure(where + ".cutoff must lie in [0,1)");
    }
  }
}

RadialMeasure RadialMeasure::lebesgue() { return beta_density(1.0); }

RadialMeasure RadialMeasure::point_mass(double t, double w) { return RadialMeasure({{t, w}}, {}); }

RadialMeasure RadialMeasure::beta_density(double beta, double c, int lam) {
  return RadialMeasure({}, {Density{c, beta, lam, 0.0}});
}

std::string RadialMeasure::describe() const {
  if (empty()) return "empty";
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += " + ";
  };
  for (const auto& a : atoms_) {
    sep();
    out += "atom(" + fmt(a.t) + "," + fmt(a.w) + ")";
  }
  for (const auto& d : densities_) {
    sep();
    out += "beta(" + fmt(d.beta) + ",c=" + fmt(d.c) + ",lam=" + std::to_string(d.lam);
    if (d.cutoff > 0.0) out += ",cutoff=" + fmt(d.cutoff);
    out += ")";
  }
  return out;
}

double moment(const RadialMeasure& m, int n, MomentMethod method) {
  if (n < 0) throw std::invalid_argument("moment index must be nonnegative");
  double sum = 0.0;
  for (const auto& a : m.atoms()) sum += a.w * (n == 0 ? 1.0 : std::pow(a.t, n));
  for (const auto& d : m.densities()) sum += density_moment(d, n, method);
  return sum;
}

MomentSequence moments(const RadialMeasure& m, int count, MomentMethod method) {
  if (count < 1) throw std::invalid_argument("moment count must be >= 1");
  MomentSequence seq;
  seq.source = m.describe();
  seq.values.resize(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) seq.values[static_cast<std::size_t>(n)] = moment(m, n, method);
  return seq;
}

double tail_mass(const RadialMeasure& m, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("tail_mass requires 0 <= t < 1");
  double sum = 0.0;
  for (const auto& a : m.atoms()) {
    if (a.t >= t) sum += a.w;
  }
  for (const auto& d : m.densities()) sum += density_tail(d, t);
  return sum;
}

double total_mass(const RadialMeasure& m) { return tail_mass(m, 0.0); }

RadialMeasure restrict_tail(const RadialMeasure& m, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("restrict_tail requires 0 <= r < 1");
  std::vector<Atom> atoms;
  for (const auto& a : m.atoms()) {
    if (a.t > r) atoms.push_back(a);
  }
  std::vector<Density> dens = m.densities();
  for (auto& d : dens) d.cutoff = std::max(d.cutoff, r);
  return RadialMeasure(std::move(atoms), std::move(dens));
}

std::vector<double> dyadic_grid(int count) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int j = 1; j <= count; ++j) g.push_back(1.0 - std::ldexp(1.0, -j));
  return g;
}

const char* to_string(Trend t) {
  switch (t) {
    case Trend::decaying: return "decaying";
    case Trend::bounded: return "bounded";
    case Trend::growing: return "growing";
  }
  return "unknown";
}

Trend classify_trend(std::span<const double> ratios) {
  if (ratios.empty()) return Trend::bounded;
  const std::size_t k = std::min<std::size_t>(5, ratios.size());
  auto last = ratios.subspan(ratios.size() - k);
  if (last.back() == 0.0) return Trend::decaying;
  if (k < 2) return Trend::bounded;
  bool decreasing = true;
  bool increasing = true;
  for (std::size_t i = 1; i < k; ++i) {
    const double scale = std::max(std::abs(last[i - 1]), std::numeric_limits<double>::min());
    if (!(last[i] < last[i - 1])) decreasing = false;
    if (!(last[i] - last[i - 1] > 1e-9 * scale)) increasing = false;
  }
  if (decreasing && last.back() < 0.5 * last.front()) return Trend::decaying;
  if (increasing) return Trend::growing;
  return Trend::bounded;
}

CarlesonReport carleson_constant(const RadialMeasure& m, double s, std::span<const double> grid) {
  return carleson_impl(m, s, 0.0, grid);
}

CarlesonReport log_carleson_constant(const RadialMeasure& m, double s, double alpha,
                                     std::span<const double> grid) {
  return carleson_impl(m, s, alpha, grid);
}

SingularIntegral singular_integral(const RadialMeasure& m, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("singular_integral requires alpha > 0");
  SingularIntegral out;
  for (const auto& a : m.atoms()) out.value += a.w * std::pow(1.0 - a.t, -alpha);
  for (const auto& d : m.densities()) {
    if (d.beta <= alpha) {
      out.diverged = true;
      out.value = kInf;
      return out;
    }
    const double gap = d.beta - alpha;
    if (d.lam == 0) {
      out.value += d.c * std::pow(1.0 - d.cutoff, gap) / gap;
      continue;
    }
    auto r = quad::integrate_to_infinity([&](double u) { return density_weight(d, u, alpha); },
                                         u_of(d.cutoff), relative_options());
    if (!r.ok()) {
      out.diverged = true;
      out.value = kInf;
      return out;
    }
    out.value += r.value;
  }
  return out;
}

quad::Result<double> integrate_real(const RadialMeasure& m, const std::function<double(double)>& g,
                                    double from, const quad::Options& opts) {
  return integrate_against<double>(m, g, from, opts);
}

quad::Result<std::complex<double>> integrate_complex(
    const RadialMeasure& m, const std::function<std::complex<double>(double)>& g, double from,
    const quad::Options& opts) {
  return integrate_against<std::complex<double>>(m, g, from, opts);
}

std::vector<double> embedding_profile(const RadialMeasure& m, double p, double q,
                                      std::span<const double> a_grid) {
  if (!(p > 0.0) || !(q >= p)) throw std::invalid_argument("embedding requires 0 < p <= q");
  std::vector<double> out;
  out.reserve(a_grid.size());
  const double power = q / p;
  for (double a : a_grid) {
    if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("embedding a_grid must lie in [0,1)");
    const double log_norm = std::log1p(-a * a);
    auto fq = [&](double t) { return std::exp(power * (log_norm - 2.0 * std::log1p(-a * t))); };
    auto r = integrate_real(m, fq, 0.0, relative_options());
    out.push_back(std::pow(r.value, 1.0 / q));
  }
  return out;
}

double embedding_constant(const RadialMeasure& m, double p, double q,
                          std::span<const double> a_grid) {
  auto prof = embedding_profile(m, p, q, a_grid);
  return prof.empty() ? 0.0 : *std::max_element(prof.begin(), prof.end());
}

double hankel_min_eigenvalue(const MomentSequence& mu, int size) {
  if (size < 1 || mu.size() < static_cast<std::size_t>(2 * size - 1)) {
    throw std::invalid_argument("hankel_min_eigenvalue needs at least 2*size-1 moments");
  }
  Eigen::MatrixXd h(size, size);
  for (int n = 0; n < size; ++n) {
    for (int k = 0; k < size; ++k) h(n, k) = mu[static_cast<std::size_t>(n + k)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace dhlab
