#pragma once

namespace mmp {

// Global multiplier applied to every tolerance below. Read once from the
// MMP_TOL environment variable (a positive real); defaults to 1.
double tolerance_factor();

// Band around disk/ellipse boundaries: 1e-9 * (1 + scale).
double boundary_tolerance(double scale);

// Collinearity threshold on a cross product: 1e-12 * scale^2.
double collinear_tolerance(double scale);

// Depth band separating NonEmpty / Tangent / Empty: 1e-9 * (1 + scale).
double pierce_tolerance(double scale);

// Cost band used for matching ties and 2-opt improvements: 1e-9 * (1 + cost).
double cost_tolerance(double cost);

}  // namespace mmp
