#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "zador/error.hpp"
#include "zador/periodic_structure.hpp"
#include "zador/polytope.hpp"

namespace zador {

/// One polytope type of the tiling: the cell of the class's first
/// representative, translated so that its site is at the origin.
template <int N>
struct CellClass {
  std::string label;
  std::size_t class_index = 0;
  ConvexPolytope<N> polytope;
  int multiplicity = 0;
  double volume = 0.0;
  /// Second moment about the centroid.
  double second_moment = 0.0;
  /// Centroid minus site.
  Vec<N> centroid_offset = Vec<N>::Zero();
};

/// Cell of one concrete representative; used for point location.
template <int N>
struct SiteCell {
  Vec<N> site;
  std::size_t class_index = 0;
  std::vector<HalfSpace<N>> walls;  // facet planes relative to the site
  Vec<N> centroid;                  // absolute
  double circumradius = 0.0;        // about the site
};

template <int N>
struct Inventory {
  PeriodicStructure<N> structure;
  std::vector<CellClass<N>> classes;
  std::vector<SiteCell<N>> sites;
  double cutoff = 0.0;
};

template <int N>
std::vector<HalfSpace<N>> wall_halfspaces(const PeriodicStructure<N>& s, const Vec<N>& site, std::size_t cls,
                                          const std::vector<Neighbor<N>>& neighbors) {
  std::vector<HalfSpace<N>> out;
  out.reserve(neighbors.size());
  for (const auto& d : neighbors) {
    const Vec<N> dir = d.point - site;
    const double w = s.wall_weight(cls, d.class_index);
    out.push_back({dir, dir.dot(site) + w * dir.squaredNorm()});
  }
  return out;
}

/// Weighted cell of `site`: the intersection over all neighbors d within
/// `cutoff` of (x - site) . (d - site) <= w |d - site|^2.
///
/// Cutting-plane construction: start from the nearest walls inside a box
/// around the site, then repeatedly add the wall most violated by each vertex
/// of the current cell. Walls that no vertex violates cannot cut the cell, so
/// the vertex enumerator only ever sees a few dozen planes.
template <int N>
ConvexPolytope<N> build_cell(const PeriodicStructure<N>& s, const std::type_identity_t<Vec<N>>& site, std::size_t cls,
                             double cutoff) {
  std::vector<Neighbor<N>> nbrs = s.neighbor_sites(site, cutoff);
  if (nbrs.empty()) throw Error(ErrorKind::UnboundedRegion, "no neighbors within cutoff");
  const std::vector<HalfSpace<N>> walls = wall_halfspaces(s, site, cls, nbrs);
  std::vector<std::pair<double, std::size_t>> by_distance;
  by_distance.reserve(walls.size());
  for (std::size_t i = 0; i < walls.size(); ++i) by_distance.push_back({walls[i].slack(site) / walls[i].normal.norm(), i});
  std::sort(by_distance.begin(), by_distance.end());
  if (!(by_distance.front().first > 0.0)) throw Error(ErrorKind::SiteOutsideCell, "site lies on or beyond a wall");

  const double scale = std::max(1.0, s.longest_basis_length());
  const double tol = kGeomEps * scale;
  const double half_width = 4.0 * cutoff;
  std::vector<HalfSpace<N>> box;
  for (int k = 0; k < N; ++k) {
    const Vec<N> e = Vec<N>::Unit(k);
    box.push_back({e, e.dot(site) + half_width});
    box.push_back({-e, -e.dot(site) + half_width});
  }

  std::vector<char> active(walls.size(), 0);
  for (std::size_t i = 0; i < std::min<std::size_t>(walls.size(), 2 * N + 2); ++i) active[by_distance[i].second] = 1;
  for (;;) {
    std::vector<HalfSpace<N>> planes = box;
    for (std::size_t i = 0; i < walls.size(); ++i)
      if (active[i]) planes.push_back(walls[i]);
    const auto cell = intersect_halfspaces<N>(planes);
    bool added = false;
    for (const auto& v : cell.vertices()) {
      std::size_t worst = walls.size();
      double worst_excess = tol;
      for (std::size_t i = 0; i < walls.size(); ++i) {
        if (active[i]) continue;
        const double excess = -walls[i].slack(v) / walls[i].normal.norm();
        if (excess > worst_excess) {
          worst_excess = excess;
          worst = i;
        }
      }
      if (worst < walls.size()) {
        active[worst] = 1;
        added = true;
      }
    }
    if (added) continue;
    for (const auto& v : cell.vertices())
      for (const auto& h : box)
        if (std::abs(h.slack(v)) <= tol) throw Error(ErrorKind::UnboundedRegion, "cell is not bounded by walls within cutoff");
    break;
  }

  std::vector<HalfSpace<N>> used;
  for (std::size_t i = 0; i < walls.size(); ++i)
    if (active[i]) used.push_back(walls[i]);
  auto cell = intersect_halfspaces<N>(used);
  for (const auto& h : cell.facet_halfspaces())
    if (h.slack(site) <= tol) throw Error(ErrorKind::SiteOutsideCell, "site is not interior to its cell");
  return cell;
}

/// Default cutoff: 2.5 times the longest basis vector.
template <int N>
double default_cutoff(const PeriodicStructure<N>& s) {
  return 2.5 * s.longest_basis_length();
}

namespace detail {

// Builds the cell with automatic cutoff doubling (at most three times). A
// cell is accepted once no wall beyond the cutoff could reach it.
template <int N>
std::pair<ConvexPolytope<N>, double> build_cell_certified(const PeriodicStructure<N>& s, const Vec<N>& site,
                                                          std::size_t cls, double cutoff) {
  for (int attempt = 0;; ++attempt, cutoff *= 2.0) {
    const bool last = attempt == 3;
    try {
      auto cell = build_cell(s, site, cls, cutoff);
      if (circumradius_about(cell, site) < s.min_wall_weight(cls) * cutoff || last) return {cell, cutoff};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnboundedRegion || last) throw;
    }
  }
}

}  // namespace detail

/// Builds one cell per site class and checks sum N_i V_i = V.
template <int N>
Inventory<N> build_inventory(const PeriodicStructure<N>& s, std::optional<double> cutoff = std::nullopt) {
  double cut = cutoff.value_or(default_cutoff(s));
  Inventory<N> inv{s, {}, {}, cut};
  for (std::size_t c = 0; c < s.classes().size(); ++c) {
    const auto& cls = s.classes()[c];
    for (std::size_t r = 0; r < cls.representatives.size(); ++r) {
      const Vec<N>& site = cls.representatives[r];
      auto [cell, used] = detail::build_cell_certified(s, site, c, cut);
      inv.cutoff = std::max(inv.cutoff, used);
      const Vec<N> center = centroid(cell);
      inv.sites.push_back({site, c, translated(cell, Vec<N>(-site)).facet_halfspaces(), center,
                           circumradius_about(cell, site)});
      if (r != 0) continue;
      CellClass<N> out;
      out.label = cls.label;
      out.class_index = c;
      out.polytope = translated(cell, Vec<N>(-site));
      out.multiplicity = static_cast<int>(cls.representatives.size());
      out.volume = volume(out.polytope);
      out.centroid_offset = center - site;
      out.second_moment = second_moment_about(out.polytope, out.centroid_offset);
      inv.classes.push_back(std::move(out));
    }
  }
  double total = 0.0;
  for (const auto& c : inv.classes) total += c.multiplicity * c.volume;
  const double v = s.tile_volume();
  if (std::abs(total - v) > 1e-7 * v)
    throw Error(ErrorKind::ConservationViolated,
                "cell volumes sum to " + std::to_string(total) + ", tile volume is " + std::to_string(v));
  return inv;
}

template <int N>
struct Assignment {
  std::size_t class_index = 0;
  Vec<N> site;
  std::size_t site_index = 0;  // index into Inventory::sites
};

/// Locates the site whose cell contains x. Boundary ties go to the lowest
/// class index, then the lexicographically smallest site.
template <int N>
Assignment<N> assign_point(const Inventory<N>& inv, const std::type_identity_t<Vec<N>>& x) {
  const auto& lat = inv.structure.lattice();
  const Vec<N> shift = lat.reduction_shift(x);
  const Vec<N> x0 = x - shift;
  const double tol = kGeomEps * std::max(1.0, inv.structure.longest_basis_length());

  std::optional<Assignment<N>> best;
  auto better = [](const Assignment<N>& a, const Assignment<N>& b) {
    if (a.class_index != b.class_index) return a.class_index < b.class_index;
    return std::lexicographical_compare(a.site.data(), a.site.data() + N, b.site.data(), b.site.data() + N);
  };

  for (std::size_t si = 0; si < inv.sites.size(); ++si) {
    const auto& sc = inv.sites[si];
    const Vec<N> f = lat.fractional(x0 - sc.site);
    std::array<long, N> lo{}, hi{};
    bool empty = false;
    for (int j = 0; j < N; ++j) {
      const double reach = lat.dual_length(j) * (sc.circumradius + tol);
      lo[static_cast<std::size_t>(j)] = static_cast<long>(std::ceil(f(j) - reach));
      hi[static_cast<std::size_t>(j)] = static_cast<long>(std::floor(f(j) + reach));
      if (lo[static_cast<std::size_t>(j)] > hi[static_cast<std::size_t>(j)]) empty = true;
    }
    if (empty) continue;
    std::array<long, N> c = lo;
    while (true) {
      Vec<N> coeff;
      for (int j = 0; j < N; ++j) coeff(j) = static_cast<double>(c[static_cast<std::size_t>(j)]);
      const Vec<N> site = sc.site + lat.cartesian(coeff);
      const Vec<N> rel = x0 - site;
      if (rel.norm() <= sc.circumradius + tol) {
        bool inside = true;
        for (const auto& h : sc.walls)
          if (!h.contains(rel, tol)) {
            inside = false;
            break;
          }
        if (inside) {
          Assignment<N> a{sc.class_index, site + shift, si};
          if (!best || better(a, *best)) best = a;
        }
      }
      int j = 0;
      while (j < N && ++c[static_cast<std::size_t>(j)] > hi[static_cast<std::size_t>(j)]) {
        c[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)];
        ++j;
      }
      if (j == N) break;
    }
  }
  if (!best) throw Error(ErrorKind::NoOwner, "point is not inside any cell");
  return *best;
}

}  // namespace zador
