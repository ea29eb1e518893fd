#pragma once

#include <functional>
#include <vector>

namespace qcmod {

struct RefinedIntegral {
  double value = 0.0;
  bool converged = false;
  bool divergent = false;
  double last_delta = 0.0;  // |change| produced by the final panel doubling
  int panels = 0;
};

/// Composite Simpson on [a,b] with panel doubling until |change| <= abs_tol.
/// Divergence is flagged when a refinement at least doubles the magnitude of
/// the estimate twice in a row, or a non-finite value survives endpoint
/// nudging.
RefinedIntegral integrate_refining(const std::function<double(double)>& f,
                                   double a, double b, double abs_tol,
                                   int max_doublings = 22);

/// Integral over [a,b] split at the given internal breakpoints; each smooth
/// piece is refined independently. Breakpoints outside (a,b) are ignored.
RefinedIntegral integrate_pieces(const std::function<double(double)>& f,
                                 double a, double b,
                                 std::vector<double> breakpoints,
                                 double abs_tol);

}  // namespace qcmod
