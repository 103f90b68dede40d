#pragma once
#include <functional>
#include <string>
#include <vector>

#include "fracfem/mesh.hpp"
#include "fracfem/problems.hpp"
#include "fracfem/quadrature.hpp"
#include "fracfem/sparse.hpp"

namespace fracfem {

using ExactFn = std::function<double(double, double, double)>;

// ||u_h - u(., t)||_L2 by quadrature; coeffs are full-node coefficients.
double error_l2(const Triangulation& mesh, const DenseVector& coeffs_full, const ExactFn& u_exact,
                double t, const TriangleRule& rule);

// max |u_h - u| over all mesh nodes and all quadrature points.
double error_linf(const Triangulation& mesh, const DenseVector& coeffs_full, const ExactFn& u_exact,
                  double t, const TriangleRule& rule);

// Full (alpha,beta)-norm of the discrete error u_h - I_h u(., t):
// sqrt(L2^2 + Kx ||D_x^alpha e||^2 + Ky ||D_y^beta e||^2), left derivatives.
double error_energy(const Triangulation& mesh, const DenseVector& coeffs_full,
                    const ExactFn& u_exact, double t, double alpha, double beta, double kx,
                    double ky, const TriangleRule& rule);

// Problem-aware variant: when the spec carries closed-form fractional
// derivatives of u_exact, measures the true error u_h - u; otherwise falls
// back to the interpolant proxy above.
double error_energy(const Triangulation& mesh, const DenseVector& coeffs_full,
                    const ProblemSpec& problem, double t, const TriangleRule& rule);

struct ConvergenceRecord {
    double h = 0.0;    // nominal 1/n
    double tau = 0.0;
    double error_l2 = 0.0;
    double error_linf = 0.0;
    double error_energy = 0.0;
    // log(e_prev/e_curr) / log(h_prev/h_curr); NaN on the first row.
    double order_l2 = 0.0;
    double order_linf = 0.0;
    double order_energy = 0.0;
};

enum class TauRule { h_squared, h, explicit_value };

struct TauSpec {
    TauRule rule = TauRule::h_squared;
    double value = 0.0;  // used by explicit_value
};

struct StudyOptions {
    int quadrature_degree = kDefaultQuadratureDegree;
    int threads = 1;
    std::function<void(const ConvergenceRecord&)> on_record;  // optional progress hook
};

// Runs begm_solve per ladder entry (n values, h = 1/n) and fills observed
// orders. Requires at least 3 distinct ladder entries.
std::vector<ConvergenceRecord> convergence_study(const ProblemSpec& problem,
                                                 const std::vector<int>& ladder, TauSpec tau,
                                                 double T, const StudyOptions& opts = {});

void write_csv(const std::vector<ConvergenceRecord>& records, const std::string& path);

// Legacy VTK 2.0 ASCII unstructured grid with one point scalar field.
void write_field(const Triangulation& mesh, const DenseVector& coeffs_full,
                 const std::string& path, const std::string& field_name = "u");

// Total area of cells whose centroid value exceeds the threshold.
double excited_area(const Triangulation& mesh, const DenseVector& coeffs_full, double threshold);

}  // namespace fracfem
