#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "zador/error.hpp"

namespace zador {

struct ScalarMinResult {
  double argmin = 0.0;
  double min_value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct GoldenSectionOptions {
  double x_tol = 1e-8;
  int max_iterations = 200;
};

/// Golden-section search on [lo, hi]. The objective must be unimodal on the
/// bracket; the result is only meaningful in that case.
///
/// Each iteration shrinks the bracket by 1/phi and reuses one interior
/// evaluation. Stops once hi - lo < x_tol and returns the better interior
/// point.
inline ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                       GoldenSectionOptions opts = {}) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidInput, "bracket requires lo < hi");
  if (!(opts.x_tol > 0.0)) throw Error(ErrorKind::InvalidInput, "x_tol must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

  ScalarMinResult res;
  auto eval = [&](double x) {
    const double y = f(x);
    ++res.evaluations;
    if (!std::isfinite(y)) throw Error(ErrorKind::NonFiniteValue, "objective is not finite at x = " + std::to_string(x));
    return y;
  };

  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; b - a >= opts.x_tol; ++it) {
    if (it == opts.max_iterations) throw Error(ErrorKind::MaxIterations, "golden-section search did not reach x_tol");
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  res.converged = true;
  if (fc <= fd) {
    res.argmin = c;
    res.min_value = fc;
  } else {
    res.argmin = d;
    res.min_value = fd;
  }
  return res;
}

}  // namespace zador
