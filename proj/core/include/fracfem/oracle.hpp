#pragma once
#include <functional>
#include <vector>

#include "fracfem/fracpath.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/quadrature.hpp"

namespace fracfem {

// Independent brute-force evaluators used to validate the production path.
// Deliberately slow and simple; no code shared with fracpath/fracderiv.
namespace oracle {

using Fn1D = std::function<double(double)>;

// Left Riemann-Liouville derivative of order mu in (0,1) at x:
//   f(a)(x-a)^{-mu}/Gamma(1-mu) + (1/Gamma(1-mu)) \int_a^x (x-t)^{-mu} f'(t) dt
// by composite adaptive quadrature split at the supplied breakpoints.
double rl_deriv_quadrature(const Fn1D& f, const Fn1D& df, double a, double x, double mu,
                           const std::vector<double>& breakpoints = {}, double abs_tol = 1e-10);

// Order mu in (1,2) variant (needs f''):
//   f(a)(x-a)^{-mu}/Gamma(1-mu) + f'(a)(x-a)^{1-mu}/Gamma(2-mu)
//   + (1/Gamma(2-mu)) \int_a^x (x-t)^{1-mu} f''(t) dt.
double rl_deriv2_quadrature(const Fn1D& f, const Fn1D& df, const Fn1D& d2f, double a, double x,
                            double mu, const std::vector<double>& breakpoints = {},
                            double abs_tol = 1e-10);

// Right-sided counterparts on [x, b], computed by reflection.
double rl_right_deriv_quadrature(const Fn1D& f, const Fn1D& df, double x, double b, double mu,
                                 const std::vector<double>& breakpoints = {},
                                 double abs_tol = 1e-10);
double rl_right_deriv2_quadrature(const Fn1D& f, const Fn1D& df, const Fn1D& d2f, double x,
                                  double b, double mu,
                                  const std::vector<double>& breakpoints = {},
                                  double abs_tol = 1e-10);

// Shifted-free Grunwald-Letnikov check on a uniform grid over [a, x]:
// samples[k] = f(a + k*step), samples.back() = f(x). First-order accurate.
double gl_deriv(const std::vector<double>& samples, double mu, double step);

// Directional fractional derivative of basis function `node` at (px, py) via
// brute-force all-edges scanline intersection plus rl_deriv_quadrature.
double basis_deriv(const Triangulation& mesh, int node, double px, double py, double mu,
                   Direction dir, double abs_tol = 1e-10);

// (D_left^mu phi_l, D_right^mu phi_k) on the given axis, using the same Gauss
// rule per cell as the production assembly but fully independent derivative
// factors. Small meshes only.
double pairing_oracle(const Triangulation& mesh, int k, int l, double mu, Axis axis,
                      const TriangleRule& rule);

// Dense full-node stiffness a_kl assembled entirely from oracle derivatives.
std::vector<std::vector<double>> stiffness_oracle(const Triangulation& mesh, double alpha,
                                                  double beta, double kx, double ky,
                                                  const TriangleRule& rule);

}  // namespace oracle
}  // namespace fracfem
