// Sudden-limit cumulant densities for a few CD orders, exact formula against the ODE.
#include <cstdio>

#include "cdkink/experiments.hpp"

int main() {
  using namespace cdkink;
  std::printf("%4s %12s %12s %12s %12s\n", "n", "n*k1/L", "n*k2/L", "n*k3/L", "ODE n*k1/L");
  for (int n : {4, 8, 16}) {
    RunParams r;
    r.protocol.T = 1e-6;
    r.cd.order = n;
    r.method = Method::AnalyticFast;
    const auto fast = cumulants_from_probs(compute_table(r), 3);
    r.method = Method::ODE;
    const auto ode = cumulants_from_probs(compute_table(r), 1);
    std::printf("%4d %12.6f %12.6f %12.6f %12.6f\n", n, n * fast.densities[0], n * fast.densities[1],
                n * fast.densities[2], n * ode.densities[0]);
  }
  std::printf("plateau constants 1.05/pi, 0.86/pi, 0.76/pi = %.6f %.6f %.6f\n", plateau_constant(1),
              plateau_constant(2), plateau_constant(3));
}
