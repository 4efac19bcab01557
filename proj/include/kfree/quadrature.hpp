// Adaptive Gauss-Kronrod (7/15) quadrature over fixed panels.
//
// [a, b] is cut into equal panels no wider than the requested width; each
// panel is refined by bisection until its Kronrod-Gauss gap meets the panel
// tolerance.  Panel results are summed in index order, so the parallel and
// serial drivers return identical values.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace kfree {

using Complex = std::complex<double>;
using ComplexIntegrand = std::function<Complex(double)>;

struct PanelPolicy {
  double panel_width = 0.25;
  double abs_tol = 1e-10;  // total over all panels
  double rel_tol = 1e-12;  // per panel, relative to the panel value
  unsigned max_depth = 20;
};

struct QuadratureResult {
  Complex value{};
  double error = 0;  // sum of the per-panel Kronrod-Gauss gaps
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = true;  // every panel met its tolerance within max_depth
};

QuadratureResult integrate(const ComplexIntegrand& f, double a, double b, const PanelPolicy& policy);
QuadratureResult integrate_serial(const ComplexIntegrand& f, double a, double b, const PanelPolicy& policy);

}  // namespace kfree
