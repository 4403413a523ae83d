#pragma once

// Figures of merit for a periodic tiling quantizer. With L cells per tile of
// volume V, class i holding N_i congruent cells of volume V_i and centroidal
// second moment U_i, p_i = N_i V_i / V and U = sum N_i U_i:
//
//   variable rate  G_v = U / (n V prod V_i^(2 p_i / n))
//   fixed rate     G_f = L^(2/n) U / (n V^(1 + 2/n))

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "zador/weighted_voronoi.hpp"

namespace zador {

struct ClassSummary {
  std::string label;
  int multiplicity = 0;
  double volume = 0.0;
  double second_moment = 0.0;
  double probability = 0.0;
};

struct RateTerms {
  double entropy_bits = 0.0;  // H(p)
  double index_bits = 0.0;    // sum p_i log2 N_i
  double rate = 0.0;          // bits per dimension
};

struct Covering {
  double radius = 0.0;
  double thickness = 0.0;
};

struct QuantizerSummary {
  int dimension = 0;
  double tile_volume = 0.0;
  int cell_count = 0;
  std::vector<ClassSummary> classes;
  double total_second_moment = 0.0;
  double g_variable = 0.0;
  double g_fixed = 0.0;
  double ratio = 0.0;
  RateTerms rate;
  Covering covering;
};

inline double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

template <int N>
std::vector<double> probabilities(const Inventory<N>& inv) {
  const double v = inv.structure.tile_volume();
  std::vector<double> p;
  for (const auto& c : inv.classes) p.push_back(c.multiplicity * c.volume / v);
  return p;
}

template <int N>
double total_second_moment(const Inventory<N>& inv) {
  double u = 0.0;
  for (const auto& c : inv.classes) u += c.multiplicity * c.second_moment;
  return u;
}

template <int N>
int cell_count(const Inventory<N>& inv) {
  int l = 0;
  for (const auto& c : inv.classes) l += c.multiplicity;
  return l;
}

template <int N>
double g_variable(const Inventory<N>& inv) {
  const double v = inv.structure.tile_volume();
  const auto p = probabilities(inv);
  double log_prod = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) log_prod += (2.0 * p[i] / N) * std::log(inv.classes[i].volume);
  return total_second_moment(inv) / (N * v * std::exp(log_prod));
}

template <int N>
double g_fixed(const Inventory<N>& inv) {
  const double v = inv.structure.tile_volume();
  return std::pow(static_cast<double>(cell_count(inv)), 2.0 / N) * total_second_moment(inv) /
         (N * std::pow(v, 1.0 + 2.0 / N));
}

/// G_v / G_f evaluated from cell counts and probabilities alone:
///   2^(-(2/n) (log2 L - sum p_i log2 (N_i / p_i))).
template <int N>
double ratio(const Inventory<N>& inv) {
  const auto p = probabilities(inv);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s += p[i] * std::log2(inv.classes[i].multiplicity / p[i]);
  return std::exp2(-(2.0 / N) * (std::log2(static_cast<double>(cell_count(inv))) - s));
}

template <int N>
RateTerms rate_terms(const Inventory<N>& inv) {
  const double v = inv.structure.tile_volume();
  const auto p = probabilities(inv);
  RateTerms r;
  double sum_log_v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    r.entropy_bits -= p[i] * std::log2(p[i]);
    r.index_bits += p[i] * std::log2(p[i] * v / inv.classes[i].volume);
    sum_log_v += p[i] * std::log2(inv.classes[i].volume);
  }
  r.rate = (std::log2(v) - sum_log_v) / N;
  return r;
}

/// Covering radius about the generating sites and the thickness
/// (L / V) * vol(B_n) * R^n.
template <int N>
Covering covering(const Inventory<N>& inv) {
  Covering c;
  for (const auto& cls : inv.classes) c.radius = std::max(c.radius, circumradius_about(cls.polytope, Vec<N>::Zero()));
  c.thickness = inv.structure.site_count() / inv.structure.tile_volume() * unit_ball_volume(N) * std::pow(c.radius, N);
  return c;
}

/// Normalized second moment of a single lattice cell, about its centroid.
template <int N>
double g_lattice(const ConvexPolytope<N>& cell) {
  const double v = volume(cell);
  return second_moment_about(cell, centroid(cell)) / (N * std::pow(v, 1.0 + 2.0 / N));
}

template <int N>
QuantizerSummary summarize(const Inventory<N>& inv) {
  QuantizerSummary s;
  s.dimension = N;
  s.tile_volume = inv.structure.tile_volume();
  s.cell_count = cell_count(inv);
  const auto p = probabilities(inv);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& c = inv.classes[i];
    s.classes.push_back({c.label, c.multiplicity, c.volume, c.second_moment, p[i]});
  }
  s.total_second_moment = total_second_moment(inv);
  s.g_variable = g_variable(inv);
  s.g_fixed = g_fixed(inv);
  s.ratio = ratio(inv);
  s.rate = rate_terms(inv);
  s.covering = covering(inv);
  return s;
}

}  // namespace zador
