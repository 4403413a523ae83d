#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's vertex enumeration, cell construction or integration code.

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "zador/periodic_structure.hpp"
#include "zador/polytope.hpp"

namespace oracle {

using P3 = std::array<double, 3>;

struct Plane {
  P3 n;
  double b;  // n . x <= b
};

inline double dot(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double det3(const P3& a, const P3& b, const P3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Every plane triple solved by Cramer's rule; feasible points deduplicated.
inline std::vector<P3> triple_plane_vertices(const std::vector<Plane>& planes, double tol = 1e-9) {
  std::vector<P3> out;
  const std::size_t m = planes.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const P3 &a = planes[i].n, &b = planes[j].n, &c = planes[k].n;
        const double d = det3(a, b, c);
        if (std::abs(d) < 1e-12) continue;
        // Cramer: replace columns of the row matrix [a; b; c].
        const P3 col0{a[0], b[0], c[0]}, col1{a[1], b[1], c[1]}, col2{a[2], b[2], c[2]};
        const P3 rhs{planes[i].b, planes[j].b, planes[k].b};
        const P3 x{det3(rhs, col1, col2) / d, det3(col0, rhs, col2) / d, det3(col0, col1, rhs) / d};
        bool ok = true;
        for (const auto& p : planes)
          if (dot(p.n, x) > p.b + tol * std::max(1.0, std::abs(p.b))) {
            ok = false;
            break;
          }
        if (!ok) continue;
        bool dup = false;
        for (const auto& v : out)
          if (std::hypot(v[0] - x[0], v[1] - x[1], v[2] - x[2]) < 1e-7) dup = true;
        if (!dup) out.push_back(x);
      }
  return out;
}

/// All images a + B^T c with |c_j| <= reach and 0 < |image - site| <= cutoff.
struct Image {
  P3 point;
  std::size_t cls;
};

inline std::vector<Image> brute_force_images(const zador::PeriodicStructure<3>& s, const P3& site, double cutoff,
                                             int reach = 8) {
  std::vector<Image> out;
  const auto& b = s.lattice().basis();
  for (std::size_t c = 0; c < s.classes().size(); ++c)
    for (const auto& r : s.classes()[c].representatives)
      for (int i = -reach; i <= reach; ++i)
        for (int j = -reach; j <= reach; ++j)
          for (int k = -reach; k <= reach; ++k) {
            P3 p;
            for (int d = 0; d < 3; ++d) p[d] = r(d) + i * b(0, d) + j * b(1, d) + k * b(2, d);
            const double dist = std::hypot(p[0] - site[0], p[1] - site[1], p[2] - site[2]);
            if (dist > 1e-12 && dist <= cutoff) out.push_back({p, c});
          }
  return out;
}

/// Walls of the weighted cell of `site` (class `cls`) from brute-force images.
inline std::vector<Plane> weighted_walls(const zador::PeriodicStructure<3>& s, const P3& site, std::size_t cls,
                                         double cutoff) {
  std::vector<Plane> out;
  for (const auto& img : brute_force_images(s, site, cutoff)) {
    P3 d{img.point[0] - site[0], img.point[1] - site[1], img.point[2] - site[2]};
    const double w = s.wall_weight(cls, img.cls);
    out.push_back({d, dot(d, site) + w * dot(d, d)});
  }
  return out;
}

struct McMoments {
  double volume, volume_se;
  double moment, moment_se;  // integral of |x - c|^2
};

/// Rejection sampling in the box [lo, hi]^3.
template <typename Inside>
McMoments rejection_moments(Inside inside, const P3& lo, const P3& hi, const P3& c, long samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double box = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  double s1 = 0, s2 = 0, hits = 0;
  for (long i = 0; i < samples; ++i) {
    P3 x;
    for (int d = 0; d < 3; ++d) x[d] = lo[d] + (hi[d] - lo[d]) * u(rng);
    if (!inside(x)) continue;
    const double r2 = (x[0] - c[0]) * (x[0] - c[0]) + (x[1] - c[1]) * (x[1] - c[1]) + (x[2] - c[2]) * (x[2] - c[2]);
    hits += 1;
    s1 += r2;
    s2 += r2 * r2;
  }
  const double n = static_cast<double>(samples);
  const double p = hits / n;
  const double m1 = s1 / n, m2 = s2 / n;
  return {box * p, box * std::sqrt(p * (1 - p) / n), box * m1, box * std::sqrt((m2 - m1 * m1) / n)};
}

/// Random valid structure: near-cubic lattice with 1-4 translates, each in
/// its own class, all walls bisectors.
inline zador::PeriodicStructure<3> random_structure(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> len(0.8, 1.6), skew(-0.25, 0.25), unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 4);
  zador::Mat<3> b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = i == j ? len(rng) : skew(rng);
  zador::Lattice<3> lat(b);
  const int n = count(rng);
  std::vector<zador::Vec<3>> pts;
  while (static_cast<int>(pts.size()) < n) {
    zador::Vec<3> f(unit(rng), unit(rng), unit(rng));
    zador::Vec<3> x = lat.cartesian(f);
    bool far = true;
    for (const auto& p : pts) {
      zador::Vec<3> d = lat.fractional(x - p);
      d = d - d.array().round().matrix();
      if (lat.cartesian(d).norm() < 0.25) far = false;
    }
    if (far) pts.push_back(x);
  }
  std::vector<zador::SiteClass<3>> classes;
  for (int i = 0; i < n; ++i) classes.push_back({"s" + std::to_string(i), {pts[static_cast<std::size_t>(i)]}});
  return zador::PeriodicStructure<3>(lat, classes);
}

}  // namespace oracle
