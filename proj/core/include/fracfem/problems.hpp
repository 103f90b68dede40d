#pragma once
#include <functional>
#include <string>

#include "fracfem/mesh.hpp"

namespace fracfem {

enum class DomainKind { square, pentagon, ellipse, disk };

// Problem data for du/dt = Kx d^{2a}u/d|x|^{2a} + Ky d^{2b}u/d|y|^{2b} + F(u) + f
// with homogeneous Dirichlet boundary and initial data phi.
struct ProblemSpec {
    std::string name;
    double alpha = 0.75;
    double beta = 0.75;
    double kx = 1.0;
    double ky = 1.0;

    std::function<double(double)> F;
    std::function<double(double)> dF;
    std::function<double(double, double, double)> f;    // (x, y, t)
    std::function<double(double, double)> phi;          // (x, y)
    std::function<double(double, double, double)> u_exact;  // empty when unknown
    // Closed-form one-sided RL derivatives of u_exact of order mu in (0,1):
    // left in x from a(y), down in y from c(x). Empty when unavailable.
    std::function<double(double, double, double, double)> dux_exact;  // (x, y, t, mu)
    std::function<double(double, double, double, double)> duy_exact;

    DomainKind domain = DomainKind::square;
    double ellipse_a = 0.5, ellipse_b = 0.75;
    double disk_cx = 1.25, disk_cy = 1.25, disk_r = 1.25;

    bool has_exact() const { return static_cast<bool>(u_exact); }
    Triangulation make_mesh(int n) const;
};

// Riesz scaling 1/(2 cos(mu*pi)); negative for mu in (1/2, 1).
double riesz_coefficient(double mu);

// Manufactured problem on (0,1)^2 with u = 10 e^-t x^2(1-x)^2 y^2(1-y)^2, F(u) = -u^2.
ProblemSpec example1_spec(double alpha, double beta, double kx = 1.0, double ky = 1.0);

// Pentagon {x+y < 1.5} with u = 1000 e^-t x^2(1-x)^2 (x+y-1.5)^2 y^2(1-y)^2, F(u) = -u^2.
ProblemSpec example2_spec(double alpha, double beta, double kx = 1.0, double ky = 2.0);

// Ellipse with u = 100 e^-t (b^2 x^2 + a^2 y^2 - a^2 b^2)^2, F(u) = -u^2.
ProblemSpec example3_spec(double alpha, double beta, double kx = 2.0, double ky = 2.0,
                          double a = 0.5, double b = 0.75);

struct FhnParams {
    double mu = 0.1;
    double eps = 0.01;
    double lambda = 0.5;
    double gamma = 0.1;
    double delta = 0.0;
};

// FitzHugh-Nagumo on the disk of radius 1.25 centered at (1.25, 1.25):
// F(u) = u(1-u)(u-mu), coupled recovery field w.
struct FhnSpec {
    ProblemSpec base;
    std::function<double(double, double)> w0;
    FhnParams params;
};

FhnSpec fhn_spec(double alpha, double beta, double kx = 1e-4, double ky = 1e-4);

}  // namespace fracfem
