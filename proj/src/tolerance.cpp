#include "mmp/tolerance.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace mmp {

double tolerance_factor() {
  static const double factor = [] {
    const char* env = std::getenv("MMP_TOL");
    if (env == nullptr) return 1.0;
    try {
      double v = std::stod(env);
      if (std::isfinite(v) && v > 0) return v;
    } catch (...) {
    }
    return 1.0;
  }();
  return factor;
}

double boundary_tolerance(double scale) { return 1e-9 * (1.0 + scale) * tolerance_factor(); }

double collinear_tolerance(double scale) { return 1e-12 * scale * scale * tolerance_factor(); }

double pierce_tolerance(double scale) { return 1e-9 * (1.0 + scale) * tolerance_factor(); }

double cost_tolerance(double cost) { return 1e-9 * (1.0 + std::abs(cost)) * tolerance_factor(); }

}  // namespace mmp
