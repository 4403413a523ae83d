#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zador/error.hpp"
#include "zador/polytope.hpp"

namespace zador {

/// Full-rank lattice whose generators are the rows of `basis`.
template <int N>
class Lattice {
 public:
  Lattice() : Lattice(Mat<N>::Identity()) {}

  explicit Lattice(const Mat<N>& basis) : basis_(basis) {
    if (!basis.allFinite()) throw Error(ErrorKind::InvalidInput, "lattice basis must be finite");
    determinant_abs_ = std::abs(basis.determinant());
    const double scale = std::pow(basis.rowwise().norm().prod(), 1.0 / N);
    if (!(determinant_abs_ > 1e-12 * std::pow(scale, N)))
      throw Error(ErrorKind::InvalidInput, "lattice basis is singular");
    // Fractional coordinates f of x satisfy x = B^T f.
    to_fractional_ = basis.transpose().inverse();
    for (int j = 0; j < N; ++j) dual_lengths_[static_cast<std::size_t>(j)] = to_fractional_.row(j).norm();
  }

  const Mat<N>& basis() const { return basis_; }
  double determinant_abs() const { return determinant_abs_; }

  Vec<N> fractional(const Vec<N>& x) const { return to_fractional_ * x; }
  Vec<N> cartesian(const Vec<N>& f) const { return basis_.transpose() * f; }

  /// Length of row j of B^{-T}; |f_j(x)| <= dual_length(j) * |x|.
  double dual_length(int j) const { return dual_lengths_[static_cast<std::size_t>(j)]; }

  /// Maps x into the half-open fundamental parallelepiped.
  Vec<N> reduce(const Vec<N>& x) const {
    Vec<N> f = fractional(x);
    for (int j = 0; j < N; ++j) {
      f(j) -= std::floor(f(j));
      if (f(j) >= 1.0 - 1e-12 || f(j) < 1e-12) f(j) = 0.0;
    }
    return cartesian(f);
  }

  /// Lattice vector that reduce() subtracts from x.
  Vec<N> reduction_shift(const Vec<N>& x) const { return x - reduce(x); }

  Lattice scaled(double lambda) const { return Lattice(basis_ * lambda); }

 private:
  Mat<N> basis_;
  Mat<N> to_fractional_;
  std::array<double, N> dual_lengths_{};
  double determinant_abs_ = 0.0;
};

template <int N>
struct SiteClass {
  std::string label;
  std::vector<Vec<N>> representatives;
};

template <int N>
struct Neighbor {
  Vec<N> point;
  std::size_t class_index = 0;
};

/// Lattice plus finitely many translates, grouped into declared symmetry
/// classes, with a wall-weight table w(a, b) + w(b, a) = 1 (default 1/2).
///
/// The wall between a site s of class a and a site d of class b is the plane
/// (x - s) . (d - s) = w(a, b) |d - s|^2, and s owns the side containing s.
template <int N>
class PeriodicStructure {
 public:
  PeriodicStructure(Lattice<N> lattice, std::vector<SiteClass<N>> classes)
      : lattice_(std::move(lattice)), classes_(std::move(classes)) {
    if (classes_.empty()) throw Error(ErrorKind::InvalidInput, "structure needs at least one site class");
    for (auto& c : classes_) {
      if (c.representatives.empty())
        throw Error(ErrorKind::InvalidInput, "site class '" + c.label + "' has no representatives");
      for (auto& r : c.representatives) {
        if (!r.allFinite()) throw Error(ErrorKind::InvalidInput, "site coordinates must be finite");
        r = lattice_.reduce(r);
      }
    }
    for (std::size_t a = 0; a < classes_.size(); ++a)
      for (std::size_t b = a + 1; b < classes_.size(); ++b)
        if (classes_[a].label == classes_[b].label)
          throw Error(ErrorKind::InvalidInput, "duplicate class label '" + classes_[a].label + "'");
    const auto sites = all_sites();
    const double tol = 1e-9 * std::max(1.0, lattice_.basis().cwiseAbs().maxCoeff());
    for (std::size_t i = 0; i < sites.size(); ++i)
      for (std::size_t j = i + 1; j < sites.size(); ++j) {
        const Vec<N> d = lattice_.fractional(sites[i].point - sites[j].point);
        Vec<N> cart = lattice_.cartesian(d - d.array().round().matrix());
        if (cart.norm() < tol) throw Error(ErrorKind::InvalidInput, "representatives coincide modulo the lattice");
      }
    weights_.assign(classes_.size() * classes_.size(), 0.5);
  }

  const Lattice<N>& lattice() const { return lattice_; }
  const std::vector<SiteClass<N>>& classes() const { return classes_; }

  std::size_t class_index(const std::string& label) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i].label == label) return i;
    throw Error(ErrorKind::InvalidInput, "unknown class label '" + label + "'");
  }

  double wall_weight(std::size_t a, std::size_t b) const { return weights_[a * classes_.size() + b]; }

  /// Sets w(a, b) = w and w(b, a) = 1 - w.
  void set_wall_weight(std::size_t a, std::size_t b, double w) {
    if (a >= classes_.size() || b >= classes_.size()) throw Error(ErrorKind::InvalidInput, "class index out of range");
    if (!(w > 0.0 && w < 1.0)) throw Error(ErrorKind::InvalidInput, "wall weight must lie in (0, 1)");
    if (a == b && w != 0.5) throw Error(ErrorKind::InvalidInput, "walls within a class must have weight 1/2");
    weights_[a * classes_.size() + b] = w;
    weights_[b * classes_.size() + a] = 1.0 - w;
  }

  /// Smallest weight any wall of a class-a site can carry.
  double min_wall_weight(std::size_t a) const {
    double w = 1.0;
    for (std::size_t b = 0; b < classes_.size(); ++b) w = std::min(w, wall_weight(a, b));
    return w;
  }

  std::size_t site_count() const {
    std::size_t n = 0;
    for (const auto& c : classes_) n += c.representatives.size();
    return n;
  }

  double tile_volume() const { return lattice_.determinant_abs(); }

  /// Representatives of every class, tagged with the class index.
  std::vector<Neighbor<N>> all_sites() const {
    std::vector<Neighbor<N>> out;
    for (std::size_t c = 0; c < classes_.size(); ++c)
      for (const auto& r : classes_[c].representatives) out.push_back({r, c});
    return out;
  }

  /// Every periodic image a + lambda with 0 < |image - site| <= cutoff.
  std::vector<Neighbor<N>> neighbor_sites(const Vec<N>& site, double cutoff) const {
    if (!(cutoff > 0.0)) throw Error(ErrorKind::InvalidInput, "cutoff must be positive");
    std::vector<Neighbor<N>> out;
    const double tol = 1e-12 * std::max(1.0, cutoff);
    for (const auto& rep : all_sites()) {
      // Coefficients c of lambda satisfy |f_j(site - rep) - c_j| <= dual_j * cutoff.
      const Vec<N> f = lattice_.fractional(site - rep.point);
      std::array<long, N> lo{}, hi{};
      for (int j = 0; j < N; ++j) {
        const double reach = lattice_.dual_length(j) * cutoff;
        lo[static_cast<std::size_t>(j)] = static_cast<long>(std::floor(f(j) - reach));
        hi[static_cast<std::size_t>(j)] = static_cast<long>(std::ceil(f(j) + reach));
      }
      std::array<long, N> c = lo;
      while (true) {
        Vec<N> coeff;
        for (int j = 0; j < N; ++j) coeff(j) = static_cast<double>(c[static_cast<std::size_t>(j)]);
        const Vec<N> image = rep.point + lattice_.cartesian(coeff);
        const double d = (image - site).norm();
        if (d > tol && d <= cutoff) out.push_back({image, rep.class_index});
        int j = 0;
        while (j < N && ++c[static_cast<std::size_t>(j)] > hi[static_cast<std::size_t>(j)]) {
          c[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)];
          ++j;
        }
        if (j == N) break;
      }
    }
    return out;
  }

  /// Same structure with every length multiplied by lambda.
  PeriodicStructure scaled(double lambda) const {
    auto classes = classes_;
    for (auto& c : classes)
      for (auto& r : c.representatives) r *= lambda;
    PeriodicStructure out(lattice_.scaled(lambda), std::move(classes));
    out.weights_ = weights_;
    return out;
  }

  double longest_basis_length() const { return lattice_.basis().rowwise().norm().maxCoeff(); }

 private:
  Lattice<N> lattice_;
  std::vector<SiteClass<N>> classes_;
  std::vector<double> weights_;
};

// Presets ------------------------------------------------------------------

/// Integer lattice Z^N, one site per unit tile.
template <int N>
PeriodicStructure<N> make_cubic() {
  return PeriodicStructure<N>(Lattice<N>(Mat<N>::Identity()), {{"z", {Vec<N>::Zero()}}});
}

/// bcc as 4Z^3 + {(0,0,0), (2,2,2)}: both sites in one class.
inline PeriodicStructure<3> make_bcc() {
  return PeriodicStructure<3>(Lattice<3>(4.0 * Mat<3>::Identity()),
                              {{"bcc", {Vec<3>(0, 0, 0), Vec<3>(2, 2, 2)}}});
}

/// fcc as 2Z^3 + the four face-centering translates, one class.
inline PeriodicStructure<3> make_fcc() {
  return PeriodicStructure<3>(
      Lattice<3>(2.0 * Mat<3>::Identity()),
      {{"fcc", {Vec<3>(0, 0, 0), Vec<3>(0, 1, 1), Vec<3>(1, 0, 1), Vec<3>(1, 1, 0)}}});
}

inline constexpr double kA15AlphaMax = 1.5;

inline void check_a15_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < kA15AlphaMax))
    throw Error(ErrorKind::AlphaOutOfRange, "A15 alpha must lie in (0, 3/2), got " + std::to_string(alpha));
}

/// A15: 4Z^3 translated by the two even vectors (0,0,0), (2,2,2) and the six
/// odd vectors (0,+-1,2), (2,0,+-1), (+-1,2,0). Even-to-odd walls carry
/// weight mu = 2 alpha / 5; all other walls are bisectors.
inline PeriodicStructure<3> make_a15(double alpha) {
  check_a15_alpha(alpha);
  PeriodicStructure<3> s(Lattice<3>(4.0 * Mat<3>::Identity()),
                         {{"even", {Vec<3>(0, 0, 0), Vec<3>(2, 2, 2)}},
                          {"odd",
                           {Vec<3>(0, 1, 2), Vec<3>(0, -1, 2), Vec<3>(2, 0, 1), Vec<3>(2, 0, -1),
                            Vec<3>(1, 2, 0), Vec<3>(-1, 2, 0)}}});
  s.set_wall_weight(0, 1, 2.0 * alpha / 5.0);
  return s;
}

}  // namespace zador
