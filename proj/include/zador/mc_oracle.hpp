#pragma once

// Monte Carlo cross-check of the exact pipeline. Points are drawn uniformly
// in the fundamental parallelepiped, located with assign_point, and the
// per-class frequency, volume and second moment (about the exact centroid of
// the owning cell) are estimated with standard errors.
//
// Sampling is split into a fixed number of independently seeded streams; the
// result depends only on (samples, seed, streams), never on thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "zador/merit.hpp"
#include "zador/weighted_voronoi.hpp"

namespace zador {

struct McClassEstimate {
  std::string label;
  double probability = 0.0, probability_se = 0.0;
  double volume = 0.0, volume_se = 0.0;
  double second_moment = 0.0, second_moment_se = 0.0;
};

struct McEstimate {
  long long samples = 0;
  std::uint64_t seed = 0;
  std::vector<McClassEstimate> classes;
  double total_second_moment = 0.0, total_second_moment_se = 0.0;
  double g_variable = 0.0, g_variable_se = 0.0;
  double g_fixed = 0.0, g_fixed_se = 0.0;
  /// Largest observed distance from a sample to its owning site.
  double covering_radius = 0.0;
};

struct McOptions {
  int streams = 8;
  int threads = 0;  // 0: hardware concurrency
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct McAccumulator {
  long long n = 0;
  std::vector<long long> count;    // samples per class
  std::vector<double> sum_y;       // sum of [class i] d^2
  std::vector<double> sum_y2;      // sum of [class i] d^4
  double max_dist = 0.0;

  explicit McAccumulator(std::size_t k) : count(k, 0), sum_y(k, 0.0), sum_y2(k, 0.0) {}

  void merge(const McAccumulator& o) {
    n += o.n;
    for (std::size_t i = 0; i < count.size(); ++i) {
      count[i] += o.count[i];
      sum_y[i] += o.sum_y[i];
      sum_y2[i] += o.sum_y2[i];
    }
    max_dist = std::max(max_dist, o.max_dist);
  }
};

template <int N>
McAccumulator run_stream(const Inventory<N>& inv, long long samples, std::uint64_t seed) {
  McAccumulator acc(inv.classes.size());
  std::mt19937_64 rng(seed);
  const auto& lat = inv.structure.lattice();
  for (long long s = 0; s < samples; ++s) {
    Vec<N> u;
    for (int j = 0; j < N; ++j) u(j) = unit_double(rng);
    const Vec<N> x = lat.cartesian(u);
    const Assignment<N> a = assign_point(inv, x);
    const auto& cell = inv.sites[a.site_index];
    const Vec<N> center = cell.centroid + (a.site - cell.site);
    const double d2 = (x - center).squaredNorm();
    ++acc.n;
    ++acc.count[a.class_index];
    acc.sum_y[a.class_index] += d2;
    acc.sum_y2[a.class_index] += d2 * d2;
    acc.max_dist = std::max(acc.max_dist, (x - a.site).norm());
  }
  return acc;
}

}  // namespace detail

template <int N>
McEstimate estimate(const Inventory<N>& inv, long long samples, std::uint64_t seed, McOptions opts = {}) {
  if (samples < 1000) throw Error(ErrorKind::InvalidInput, "Monte Carlo check needs at least 1000 samples");
  if (opts.streams < 1) throw Error(ErrorKind::InvalidInput, "stream count must be positive");
  const std::size_t k = inv.classes.size();
  const auto streams = static_cast<std::size_t>(opts.streams);

  std::vector<detail::McAccumulator> parts(streams, detail::McAccumulator(k));
  std::vector<std::exception_ptr> errors(streams);
  auto work = [&](std::size_t s) {
    try {
      const long long base = samples / static_cast<long long>(streams);
      const long long n = base + (static_cast<long long>(s) < samples % static_cast<long long>(streams) ? 1 : 0);
      parts[s] = detail::run_stream(inv, n, detail::splitmix64(seed ^ (0xa0761d6478bd642fULL * (s + 1))));
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };
  unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads) : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(streams));
  for (std::size_t first = 0; first < streams; first += threads) {
    std::vector<std::thread> pool;
    for (std::size_t s = first; s < std::min(streams, first + threads); ++s) pool.emplace_back(work, s);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  detail::McAccumulator acc(k);
  for (const auto& p : parts) acc.merge(p);

  const double n = static_cast<double>(acc.n);
  const double v = inv.structure.tile_volume();
  McEstimate out;
  out.samples = acc.n;
  out.seed = seed;
  out.covering_radius = acc.max_dist;

  double m = 0.0, m2 = 0.0;  // moments of d^2 over all samples
  std::vector<double> p(k), ybar(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& cls = inv.classes[i];
    p[i] = static_cast<double>(acc.count[i]) / n;
    ybar[i] = acc.sum_y[i] / n;
    const double var_y = std::max(0.0, acc.sum_y2[i] / n - ybar[i] * ybar[i]);
    McClassEstimate e;
    e.label = cls.label;
    e.probability = p[i];
    e.probability_se = std::sqrt(p[i] * (1.0 - p[i]) / n);
    e.volume = p[i] * v / cls.multiplicity;
    e.volume_se = e.probability_se * v / cls.multiplicity;
    e.second_moment = v * ybar[i] / cls.multiplicity;
    e.second_moment_se = v * std::sqrt(var_y / n) / cls.multiplicity;
    out.classes.push_back(e);
    m += ybar[i];
    m2 += acc.sum_y2[i] / n;
  }
  const double var_d2 = std::max(0.0, m2 - m * m);

  out.total_second_moment = v * m;
  out.total_second_moment_se = v * std::sqrt(var_d2 / n);

  const double cells = cell_count(inv);
  out.g_fixed = std::pow(cells, 2.0 / N) * out.total_second_moment / (N * std::pow(v, 1.0 + 2.0 / N));
  out.g_fixed_se = out.g_fixed * std::sqrt(var_d2 / n) / m;

  // Delta method on log G_v = log m - (2/n) sum p_i log(p_i V / N_i) + const,
  // with the empirical covariance of (d^2, indicator_1, ..., indicator_k).
  double log_prod = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    if (p[i] > 0.0) log_prod += (2.0 * p[i] / N) * std::log(out.classes[i].volume);
  out.g_variable = out.total_second_moment / (N * v * std::exp(log_prod));

  std::vector<double> grad(k + 1, 0.0);
  grad[0] = 1.0 / m;
  for (std::size_t i = 0; i < k; ++i)
    if (p[i] > 0.0) grad[i + 1] = -(2.0 / N) * (std::log(out.classes[i].volume) + 1.0);
  auto cov = [&](std::size_t a, std::size_t b) {
    if (a == 0 && b == 0) return var_d2;
    if (a == 0) return ybar[b - 1] - m * p[b - 1];
    if (b == 0) return ybar[a - 1] - m * p[a - 1];
    return (a == b ? p[a - 1] : 0.0) - p[a - 1] * p[b - 1];
  };
  double var_log = 0.0;
  for (std::size_t a = 0; a <= k; ++a)
    for (std::size_t b = 0; b <= k; ++b) var_log += grad[a] * cov(a, b) * grad[b];
  out.g_variable_se = out.g_variable * std::sqrt(std::max(0.0, var_log) / n);
  return out;
}

/// Signed deviation of `exact` from an estimate in standard errors. A zero
/// standard error yields 0 when the two agree to 1e-12 relative, else +-inf.
inline double z_score(double exact, double est, double se) {
  const double diff = est - exact;
  if (se > 0.0) return diff / se;
  if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(exact))) return 0.0;
  return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

}  // namespace zador
