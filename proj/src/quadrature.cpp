#include "kfree/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kfree {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
  Complex kronrod;
  double gap;
};

Rule gk15(const ComplexIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Complex fc = f(c);
  Complex k = fc * kWgk[7];
  Complex g = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const Complex pair = f(c - dx) + f(c + dx);
    k += pair * kWgk[i];
    if (i % 2 == 1) g += pair * kWg[i / 2];
  }
  return {k * h, std::abs((k - g) * h)};
}

struct Panel {
  Complex value{};
  double error = 0;
  std::size_t evaluations = 0;
  bool converged = true;
};

void refine(const ComplexIntegrand& f, double a, double b, double tol, double rel, unsigned depth, Panel& out) {
  const Rule r = gk15(f, a, b);
  out.evaluations += 15;
  if (r.gap <= std::max(tol, rel * std::abs(r.kronrod)) || depth == 0) {
    if (r.gap > std::max(tol, rel * std::abs(r.kronrod))) out.converged = false;
    out.value += r.kronrod;
    out.error += r.gap;
    return;
  }
  const double m = 0.5 * (a + b);
  refine(f, a, m, tol / 2, rel, depth - 1, out);
  refine(f, m, b, tol / 2, rel, depth - 1, out);
}

QuadratureResult run(const ComplexIntegrand& f, double a, double b, const PanelPolicy& policy, bool parallel) {
  if (!(b > a)) throw std::invalid_argument("quadrature: empty interval");
  if (!(policy.panel_width > 0)) throw std::invalid_argument("quadrature: panel width must be positive");
  const auto n = static_cast<std::int64_t>(std::ceil((b - a) / policy.panel_width));
  const double width = (b - a) / static_cast<double>(n);
  const double tol = policy.abs_tol / static_cast<double>(n);
  std::vector<Panel> panels(n);

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == n) ? b : a + width * static_cast<double>(i + 1);
    refine(f, lo, hi, tol, policy.rel_tol, policy.max_depth, panels[i]);
  }

  QuadratureResult out;
  out.panels = static_cast<std::size_t>(n);
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error += p.error;
    out.evaluations += p.evaluations;
    out.converged = out.converged && p.converged;
  }
  return out;
}

}  // namespace

QuadratureResult integrate(const ComplexIntegrand& f, double a, double b, const PanelPolicy& policy) {
  return run(f, a, b, policy, true);
}

QuadratureResult integrate_serial(const ComplexIntegrand& f, double a, double b, const PanelPolicy& policy) {
  return run(f, a, b, policy, false);
}

}  // namespace kfree
