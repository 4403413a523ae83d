// Prints both merits and the thickness of the weighted A15 tiling over a
// range of alpha, next to the closed-form curves.

#include <cstdio>

#include "zador/zador.hpp"

int main() {
  std::printf("%8s %14s %14s %14s %14s %12s\n", "alpha", "g_fixed", "closed", "g_variable", "closed", "thickness");
  for (double alpha = 0.5; alpha < 1.46; alpha += 0.05) {
    const auto s = zador::summarize(zador::build_inventory(zador::make_a15(alpha)));
    std::printf("%8.3f %14.10f %14.10f %14.10f %14.10f %12.8f\n", alpha, s.g_fixed, zador::a15::g_fixed_closed(alpha),
                s.g_variable, zador::a15::g_variable_closed(alpha), s.covering.thickness);
  }
}
