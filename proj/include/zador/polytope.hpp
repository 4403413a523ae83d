#pragma once

// Exact convex-polytope geometry: half-space intersection by brute-force
// vertex enumeration, recursive face fanning into simplices, and closed-form
// volume / centroid / second-moment integrals over the simplices.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "zador/error.hpp"

namespace zador {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;

template <int N>
using Mat = Eigen::Matrix<double, N, N>;

/// Absolute geometric predicate tolerance for O(1) coordinates. Internally it
/// is multiplied by the length scale of the input.
inline constexpr double kGeomEps = 1e-9;

/// The closed half-space {x : normal . x <= offset}.
template <int N>
struct HalfSpace {
  Vec<N> normal;
  double offset = 0.0;

  double slack(const Vec<N>& x) const { return offset - normal.dot(x); }
  bool contains(const Vec<N>& x, double tol = 0.0) const { return slack(x) >= -tol; }

  HalfSpace normalized() const {
    const double len = normal.norm();
    return {normal / len, offset / len};
  }
};

template <int N>
using Simplex = std::array<Vec<N>, N + 1>;

template <int N>
class ConvexPolytope {
 public:
  ConvexPolytope() = default;
  ConvexPolytope(std::vector<HalfSpace<N>> halfspaces, std::vector<Vec<N>> vertices,
                 std::vector<std::size_t> facets, std::vector<Simplex<N>> simplices)
      : halfspaces_(std::move(halfspaces)),
        vertices_(std::move(vertices)),
        facets_(std::move(facets)),
        simplices_(std::move(simplices)) {}

  /// Unit-normal copies of the defining half-spaces, in input order.
  const std::vector<HalfSpace<N>>& halfspaces() const { return halfspaces_; }
  const std::vector<Vec<N>>& vertices() const { return vertices_; }
  /// Indices into halfspaces() of the planes that support an (N-1)-face.
  const std::vector<std::size_t>& facets() const { return facets_; }
  const std::vector<Simplex<N>>& simplices() const { return simplices_; }

  std::vector<HalfSpace<N>> facet_halfspaces() const {
    std::vector<HalfSpace<N>> out;
    out.reserve(facets_.size());
    for (std::size_t f : facets_) out.push_back(halfspaces_[f]);
    return out;
  }

  bool contains(const Vec<N>& x, double tol = kGeomEps) const {
    for (std::size_t f : facets_)
      if (!halfspaces_[f].contains(x, tol)) return false;
    return true;
  }

 private:
  std::vector<HalfSpace<N>> halfspaces_;
  std::vector<Vec<N>> vertices_;
  std::vector<std::size_t> facets_;
  std::vector<Simplex<N>> simplices_;
};

namespace detail {

/// Affine dimension of a point set, with rank decisions made at `tol`.
template <int N>
int affine_rank(const std::vector<Vec<N>>& pts, std::span<const std::size_t> ids, double tol) {
  if (ids.size() <= 1) return 0;
  Eigen::Matrix<double, N, Eigen::Dynamic> d(N, static_cast<Eigen::Index>(ids.size() - 1));
  for (std::size_t i = 1; i < ids.size(); ++i) d.col(static_cast<Eigen::Index>(i - 1)) = pts[ids[i]] - pts[ids[0]];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
  lu.setThreshold(tol / std::max(1.0, d.cwiseAbs().maxCoeff()));
  return static_cast<int>(lu.rank());
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <int N>
double simplex_volume(const Simplex<N>& s) {
  Mat<N> edges;
  for (int i = 0; i < N; ++i) edges.col(i) = s[static_cast<std::size_t>(i + 1)] - s[0];
  return std::abs(edges.determinant()) / factorial(N);
}

// Simplices of a face are the cones from the face's vertex centroid over the
// simplices of each of its sub-faces; edges are returned as-is.
template <int N>
class FaceFanner {
 public:
  FaceFanner(const std::vector<Vec<N>>& vertices, const std::vector<std::vector<std::size_t>>& incidence,
             double tol)
      : vertices_(vertices), incidence_(incidence), tol_(tol) {}

  // Returns (dim+1)-point simplices stored in the leading slots of Simplex<N>.
  std::vector<Simplex<N>> fan(const std::vector<std::size_t>& face, int dim) const {
    std::vector<Simplex<N>> out;
    if (dim == 0) {
      Simplex<N> s;
      s[0] = vertices_[face[0]];
      out.push_back(s);
      return out;
    }
    if (dim == 1) {
      Simplex<N> s;
      s[0] = vertices_[face.front()];
      s[1] = vertices_[face.back()];
      out.push_back(s);
      return out;
    }
    Vec<N> apex = Vec<N>::Zero();
    for (std::size_t v : face) apex += vertices_[v];
    apex /= static_cast<double>(face.size());

    std::vector<std::vector<std::size_t>> seen;
    for (const auto& on_plane : incidence_) {
      std::vector<std::size_t> sub;
      std::set_intersection(face.begin(), face.end(), on_plane.begin(), on_plane.end(),
                            std::back_inserter(sub));
      if (sub.size() < static_cast<std::size_t>(dim) || sub.size() == face.size()) continue;
      if (std::find(seen.begin(), seen.end(), sub) != seen.end()) continue;
      if (affine_rank<N>(vertices_, sub, tol_) != dim - 1) continue;
      seen.push_back(sub);
      for (Simplex<N> s : fan(sub, dim - 1)) {
        s[static_cast<std::size_t>(dim)] = apex;
        out.push_back(s);
      }
    }
    return out;
  }

 private:
  const std::vector<Vec<N>>& vertices_;
  const std::vector<std::vector<std::size_t>>& incidence_;
  double tol_;
};

// Calls f(indices) for every k-subset of {0..m-1}.
template <typename F>
void for_each_combination(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    f(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Intersects the half-spaces into a bounded, full-dimensional polytope.
///
/// Vertices come from solving every N-subset of planes and keeping feasible
/// solutions (deduplicated within the scaled tolerance). A large bounding box
/// is appended to the system; a vertex touching the box means the input
/// region has a recession direction.
template <int N>
ConvexPolytope<N> intersect_halfspaces(std::span<const HalfSpace<N>> input, double eps = kGeomEps) {
  std::vector<HalfSpace<N>> hs;
  hs.reserve(input.size());
  double scale = 1.0;
  for (const auto& h : input) {
    if (!(h.normal.norm() > 0.0) || !h.normal.allFinite() || !std::isfinite(h.offset))
      throw Error(ErrorKind::InvalidInput, "half-space normal must be finite and nonzero");
    hs.push_back(h.normalized());
    scale = std::max(scale, std::abs(hs.back().offset));
  }
  const double tol = eps * scale;
  const std::size_t m = hs.size();

  std::vector<HalfSpace<N>> all = hs;
  const double box = 1e4 * scale;
  for (int j = 0; j < N; ++j) {
    Vec<N> e = Vec<N>::Unit(j);
    all.push_back({e, box});
    all.push_back({-e, box});
  }

  std::vector<Vec<N>> vertices;
  bool touches_box = false;
  detail::for_each_combination(all.size(), static_cast<std::size_t>(N), [&](std::span<const std::size_t> ids) {
    Mat<N> a;
    Vec<N> b;
    for (int r = 0; r < N; ++r) {
      a.row(r) = all[ids[static_cast<std::size_t>(r)]].normal.transpose();
      b(r) = all[ids[static_cast<std::size_t>(r)]].offset;
    }
    if (std::abs(a.determinant()) < 1e-12) return;
    const Vec<N> x = a.partialPivLu().solve(b);
    if (!x.allFinite()) return;
    for (const auto& h : all)
      if (!h.contains(x, tol)) return;
    for (const auto& v : vertices)
      if ((v - x).norm() < tol) return;
    for (std::size_t i = m; i < all.size(); ++i)
      if (std::abs(all[i].slack(x)) <= tol) touches_box = true;
    vertices.push_back(x);
  });

  if (vertices.empty()) throw Error(ErrorKind::EmptyRegion, "half-space intersection is empty");
  if (touches_box) throw Error(ErrorKind::UnboundedRegion, "half-space intersection is unbounded");
  std::vector<std::size_t> all_ids(vertices.size());
  std::iota(all_ids.begin(), all_ids.end(), std::size_t{0});
  if (vertices.size() < static_cast<std::size_t>(N + 1) || detail::affine_rank<N>(vertices, all_ids, tol) < N)
    throw Error(ErrorKind::DegenerateRegion, "half-space intersection is not full-dimensional");

  std::vector<std::vector<std::size_t>> incidence(m);
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (std::abs(hs[h].slack(vertices[v])) <= tol) incidence[h].push_back(v);

  std::vector<std::size_t> facets;
  std::vector<std::vector<std::size_t>> facet_sets;
  for (std::size_t h = 0; h < m; ++h) {
    const auto& on = incidence[h];
    if (on.size() < static_cast<std::size_t>(N)) continue;
    if (detail::affine_rank<N>(vertices, on, tol) != N - 1) continue;
    // Coincident planes support the same facet; keep the first.
    if (std::find(facet_sets.begin(), facet_sets.end(), on) != facet_sets.end()) continue;
    facet_sets.push_back(on);
    facets.push_back(h);
  }

  detail::FaceFanner<N> fanner(vertices, incidence, tol);
  std::vector<Simplex<N>> simplices = fanner.fan(all_ids, N);
  return ConvexPolytope<N>(std::move(hs), std::move(vertices), std::move(facets), std::move(simplices));
}

template <int N>
ConvexPolytope<N> intersect_halfspaces(const std::vector<HalfSpace<N>>& hs, double eps = kGeomEps) {
  return intersect_halfspaces<N>(std::span<const HalfSpace<N>>(hs), eps);
}

template <int N>
double volume(const ConvexPolytope<N>& p) {
  double v = 0.0;
  for (const auto& s : p.simplices()) v += detail::simplex_volume<N>(s);
  return v;
}

template <int N>
Vec<N> centroid(const ConvexPolytope<N>& p) {
  Vec<N> acc = Vec<N>::Zero();
  double total = 0.0;
  for (const auto& s : p.simplices()) {
    const double w = detail::simplex_volume<N>(s);
    Vec<N> c = Vec<N>::Zero();
    for (const auto& v : s) c += v;
    acc += w * c / static_cast<double>(N + 1);
    total += w;
  }
  return acc / total;
}

/// Integral of |x - c|^2 over the polytope. Per simplex with vertices v_i
/// (relative to c) and volume W this is
///   W / ((N+1)(N+2)) * (sum |v_i|^2 + |sum v_i|^2).
template <int N>
double second_moment_about(const ConvexPolytope<N>& p, const std::type_identity_t<Vec<N>>& c) {
  double u = 0.0;
  for (const auto& s : p.simplices()) {
    const double w = detail::simplex_volume<N>(s);
    double sq = 0.0;
    Vec<N> sum = Vec<N>::Zero();
    for (const auto& v : s) {
      const Vec<N> d = v - c;
      sq += d.squaredNorm();
      sum += d;
    }
    u += w * (sq + sum.squaredNorm()) / ((N + 1.0) * (N + 2.0));
  }
  return u;
}

/// Farthest distance from c to the polytope; attained at a vertex.
template <int N>
double circumradius_about(const ConvexPolytope<N>& p, const std::type_identity_t<Vec<N>>& c) {
  double r = 0.0;
  for (const auto& v : p.vertices()) r = std::max(r, (v - c).norm());
  return r;
}

/// Image of the polytope under x -> x + t.
template <int N>
ConvexPolytope<N> translated(const ConvexPolytope<N>& p, const std::type_identity_t<Vec<N>>& t) {
  std::vector<HalfSpace<N>> hs;
  hs.reserve(p.halfspaces().size());
  for (const auto& h : p.halfspaces()) hs.push_back({h.normal, h.offset + h.normal.dot(t)});
  std::vector<Vec<N>> vs;
  vs.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) vs.push_back(v + t);
  std::vector<Simplex<N>> ss = p.simplices();
  for (auto& s : ss)
    for (auto& v : s) v += t;
  return ConvexPolytope<N>(std::move(hs), std::move(vs), p.facets(), std::move(ss));
}

}  // namespace zador
