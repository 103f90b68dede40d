#pragma once
#include <vector>

#include "fracfem/fracpath.hpp"
#include "fracfem/mesh.hpp"

namespace fracfem {

// Restriction of a P1 basis function to one path interval [t0, t1]:
// f(t) = f0 + slope * (t - t0).
struct LinearRestriction {
    double t0 = 0.0;
    double t1 = 0.0;
    double f0 = 0.0;
    double slope = 0.0;
};

// Closed-form contribution of one interval to the left Riemann-Liouville
// derivative of order mu in (0,1) at x_eval. Non-terminal intervals must
// satisfy t1 < x_eval; the terminal interval has t1 == x_eval.
double interval_contribution(const LinearRestriction& r, double x_eval, double mu,
                             bool is_terminal);

// Sparse node -> value map; nodes ascending, absent nodes are zero.
struct NodalDerivMap {
    std::vector<int> nodes;
    std::vector<double> values;

    double sum() const;
    // Dot with full-node coefficients.
    double dot(const std::vector<double>& coeffs) const;
};

// Directional fractional derivative of every P1 basis function with support
// on the path, evaluated at the path's base point.
NodalDerivMap basis_derivs_along_path(const Triangulation& mesh, const IntegralPath& path,
                                      double mu);

// Directional derivative of the FE function with full-node coefficients
// `coeffs` at (px, py). `cell_hint` skips point location when >= 0.
double eval_frac_deriv_of_fe_function(const Triangulation& mesh,
                                      const std::vector<double>& coeffs, double px, double py,
                                      double mu, Direction dir, int cell_hint = -1);

}  // namespace fracfem
