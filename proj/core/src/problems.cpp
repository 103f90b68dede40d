#include "fracfem/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace fracfem {

double riesz_coefficient(double mu) { return 1.0 / (2.0 * std::cos(mu * M_PI)); }

namespace {

void check_order(double mu, const char* name) {
    if (!((mu > 0.5 && mu < 1.0) || mu == 1.0))
        throw std::invalid_argument(std::string("problem spec: order ") + name +
                                    " must be in (1/2, 1) or exactly 1");
}

void check_diffusivity(double k, const char* name) {
    if (!(k > 0.0))
        throw std::invalid_argument(std::string("problem spec: ") + name + " must be positive");
}

struct Gammas {
    // 1/Gamma(p - 2*mu) for p = 3..7
    double inv3, inv4, inv5, inv6, inv7;
    explicit Gammas(double mu) {
        inv3 = 1.0 / std::tgamma(3.0 - 2.0 * mu);
        inv4 = 1.0 / std::tgamma(4.0 - 2.0 * mu);
        inv5 = 1.0 / std::tgamma(5.0 - 2.0 * mu);
        inv6 = 1.0 / std::tgamma(6.0 - 2.0 * mu);
        inv7 = 1.0 / std::tgamma(7.0 - 2.0 * mu);
    }
};

// Ring count delivering max diameter ~ sqrt(2)/n, the resolution the square
// generator produces at the same label; keeps error tables comparable across
// domains.
int calibrated_rings(const std::function<Triangulation(int)>& gen, int n) {
    if (n < 2) throw std::invalid_argument("mesh label must be >= 2");
    double h_target = std::sqrt(2.0) / n;
    int trial = std::max(2, n);
    double h_trial = gen(trial).h();
    return std::max(2, static_cast<int>(std::lround(trial * h_trial / h_target)));
}

}  // namespace

Triangulation ProblemSpec::make_mesh(int n) const {
    switch (domain) {
        case DomainKind::square:
            return generate_square_mesh(n);
        case DomainKind::pentagon:
            return generate_pentagon_mesh(n);
        case DomainKind::ellipse: {
            auto gen = [this](int m) { return generate_ellipse_mesh(ellipse_a, ellipse_b, m); };
            return gen(calibrated_rings(gen, n));
        }
        case DomainKind::disk: {
            auto gen = [this](int m) { return generate_disk_mesh(disk_cx, disk_cy, disk_r, m); };
            return gen(calibrated_rings(gen, n));
        }
    }
    throw std::logic_error("unknown domain kind");
}

ProblemSpec example1_spec(double alpha, double beta, double kx, double ky) {
    check_order(alpha, "alpha");
    check_order(beta, "beta");
    check_diffusivity(kx, "kx");
    check_diffusivity(ky, "ky");

    ProblemSpec p;
    p.name = "example1";
    p.alpha = alpha;
    p.beta = beta;
    p.kx = kx;
    p.ky = ky;
    p.domain = DomainKind::square;
    p.F = [](double u) { return -u * u; };
    p.dF = [](double u) { return -2.0 * u; };

    auto bump = [](double s) { return s * s * (1.0 - s) * (1.0 - s); };
    p.u_exact = [bump](double x, double y, double t) {
        return 10.0 * std::exp(-t) * bump(x) * bump(y);
    };
    p.phi = [bump](double x, double y) { return 10.0 * bump(x) * bump(y); };

    const double ca = kx * riesz_coefficient(alpha);
    const double cb = ky * riesz_coefficient(beta);
    const Gammas gx(alpha), gy(beta);
    auto g = [](double s, double mu, const Gammas& G) {
        return 24.0 * G.inv5 * std::pow(s, 4.0 - 2.0 * mu) -
               12.0 * G.inv4 * std::pow(s, 3.0 - 2.0 * mu) +
               2.0 * G.inv3 * std::pow(s, 2.0 - 2.0 * mu);
    };
    p.f = [bump, g, ca, cb, gx, gy, alpha, beta](double x, double y, double t) {
        double et = std::exp(-t);
        double X = bump(x), Y = bump(y);
        return -10.0 * et * X * Y + 100.0 * et * et * X * X * Y * Y +
               10.0 * ca * et * Y * (g(x, alpha, gx) + g(1.0 - x, alpha, gx)) +
               10.0 * cb * et * X * (g(y, beta, gy) + g(1.0 - y, beta, gy));
    };
    // D^nu of s^2(1-s)^2 from the left endpoint 0, power rule term by term
    auto bump_deriv = [](double s, double nu) {
        return 24.0 * std::pow(s, 4.0 - nu) / std::tgamma(5.0 - nu) -
               12.0 * std::pow(s, 3.0 - nu) / std::tgamma(4.0 - nu) +
               2.0 * std::pow(s, 2.0 - nu) / std::tgamma(3.0 - nu);
    };
    p.dux_exact = [bump, bump_deriv](double x, double y, double t, double mu) {
        return 10.0 * std::exp(-t) * bump(y) * bump_deriv(x, mu);
    };
    p.duy_exact = [bump, bump_deriv](double x, double y, double t, double mu) {
        return 10.0 * std::exp(-t) * bump(x) * bump_deriv(y, mu);
    };
    return p;
}

ProblemSpec example2_spec(double alpha, double beta, double kx, double ky) {
    check_order(alpha, "alpha");
    check_order(beta, "beta");
    check_diffusivity(kx, "kx");
    check_diffusivity(ky, "ky");

    ProblemSpec p;
    p.name = "example2";
    p.alpha = alpha;
    p.beta = beta;
    p.kx = kx;
    p.ky = ky;
    p.domain = DomainKind::pentagon;
    p.F = [](double u) { return -u * u; };
    p.dF = [](double u) { return -2.0 * u; };

    auto bump = [](double s) { return s * s * (1.0 - s) * (1.0 - s); };
    p.u_exact = [bump](double x, double y, double t) {
        double cut = x + y - 1.5;
        return 1000.0 * std::exp(-t) * bump(x) * cut * cut * bump(y);
    };
    p.phi = [u = p.u_exact](double x, double y) { return u(x, y, 0.0); };

    const double ca = kx * riesz_coefficient(alpha);
    const double cb = ky * riesz_coefficient(beta);
    const Gammas gx(alpha), gy(beta);

    // Expansions of the one-sided derivatives of s^2 (1-s)^2 (s - c)^2 about
    // each boundary of the chord.
    auto g0 = [](double x, double y, double mu, const Gammas& G) {
        return 2.0 * y * y * G.inv3 * std::pow(x, 2.0 - 2.0 * mu) -
               12.0 * (y * y + y) * G.inv4 * std::pow(x, 3.0 - 2.0 * mu) +
               24.0 * (y * y + 4.0 * y + 1.0) * G.inv5 * std::pow(x, 4.0 - 2.0 * mu) -
               240.0 * (y + 1.0) * G.inv6 * std::pow(x, 5.0 - 2.0 * mu) +
               720.0 * G.inv7 * std::pow(x, 6.0 - 2.0 * mu);
    };
    auto g1 = [](double x, double y, double mu, const Gammas& G) {
        return 2.0 * (y * y - 2.0 * y + 1.0) * G.inv3 * std::pow(x, 2.0 - 2.0 * mu) -
               12.0 * (y * y - 3.0 * y + 2.0) * G.inv4 * std::pow(x, 3.0 - 2.0 * mu) +
               24.0 * (y * y - 6.0 * y + 6.0) * G.inv5 * std::pow(x, 4.0 - 2.0 * mu) +
               240.0 * (y - 2.0) * G.inv6 * std::pow(x, 5.0 - 2.0 * mu) +
               720.0 * G.inv7 * std::pow(x, 6.0 - 2.0 * mu);
    };
    auto g2 = [](double x, double y, double mu, const Gammas& G) {
        return 2.0 * (y * y * y * y - 2.0 * y * y * y + y * y) * G.inv3 *
                   std::pow(x, 2.0 - 2.0 * mu) -
               12.0 * (2.0 * y * y * y - 3.0 * y * y + y) * G.inv4 *
                   std::pow(x, 3.0 - 2.0 * mu) +
               24.0 * (6.0 * y * y - 6.0 * y + 1.0) * G.inv5 * std::pow(x, 4.0 - 2.0 * mu) +
               240.0 * (1.0 - 2.0 * y) * G.inv6 * std::pow(x, 5.0 - 2.0 * mu) +
               720.0 * G.inv7 * std::pow(x, 6.0 - 2.0 * mu);
    };
    // Piecewise Riesz source factor: the chord in the first variable ends on
    // the square edge when the second variable is <= 0.5 and on the cut
    // otherwise.
    auto g = [g0, g1, g2](double x, double y, double mu, const Gammas& G) {
        double s = 1.5 - y;
        if (y <= 0.5) return g0(x, s, mu, G) + g1(1.0 - x, s, mu, G);
        return g0(x, s, mu, G) + g2(s - x, s, mu, G);
    };
    p.f = [bump, g, ca, cb, gx, gy, alpha, beta](double x, double y, double t) {
        double et = std::exp(-t);
        double cut = x + y - 1.5;
        double u0 = bump(x) * cut * cut * bump(y);
        return -1000.0 * et * u0 + 1.0e6 * et * et * u0 * u0 +
               1000.0 * et * ca * bump(y) * g(x, y, alpha, gx) +
               1000.0 * et * cb * bump(x) * g(y, x, beta, gy);
    };
    // D^nu of s^2(1-s)^2(s-c)^2 from 0, expanded by the power rule (c = 1.5
    // minus the other coordinate); same coefficients as g0 at order nu
    auto chord_deriv = [](double s, double c, double nu) {
        return 2.0 * c * c * std::pow(s, 2.0 - nu) / std::tgamma(3.0 - nu) -
               12.0 * (c * c + c) * std::pow(s, 3.0 - nu) / std::tgamma(4.0 - nu) +
               24.0 * (c * c + 4.0 * c + 1.0) * std::pow(s, 4.0 - nu) / std::tgamma(5.0 - nu) -
               240.0 * (c + 1.0) * std::pow(s, 5.0 - nu) / std::tgamma(6.0 - nu) +
               720.0 * std::pow(s, 6.0 - nu) / std::tgamma(7.0 - nu);
    };
    p.dux_exact = [bump, chord_deriv](double x, double y, double t, double mu) {
        return 1000.0 * std::exp(-t) * bump(y) * chord_deriv(x, 1.5 - y, mu);
    };
    p.duy_exact = [bump, chord_deriv](double x, double y, double t, double mu) {
        return 1000.0 * std::exp(-t) * bump(x) * chord_deriv(y, 1.5 - x, mu);
    };
    return p;
}

ProblemSpec example3_spec(double alpha, double beta, double kx, double ky, double a, double b) {
    check_order(alpha, "alpha");
    check_order(beta, "beta");
    check_diffusivity(kx, "kx");
    check_diffusivity(ky, "ky");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("example3_spec: semi-axes must be positive");

    ProblemSpec p;
    p.name = "example3";
    p.alpha = alpha;
    p.beta = beta;
    p.kx = kx;
    p.ky = ky;
    p.domain = DomainKind::ellipse;
    p.ellipse_a = a;
    p.ellipse_b = b;
    p.F = [](double u) { return -u * u; };
    p.dF = [](double u) { return -2.0 * u; };

    auto level = [a, b](double x, double y) { return b * b * x * x + a * a * y * y - a * a * b * b; };
    p.u_exact = [level](double x, double y, double t) {
        double e = level(x, y);
        return 100.0 * std::exp(-t) * e * e;
    };
    p.phi = [u = p.u_exact](double x, double y) { return u(x, y, 0.0); };

    const double ca = kx * riesz_coefficient(alpha);
    const double cb = ky * riesz_coefficient(beta);
    const Gammas gx(alpha), gy(beta);
    auto hfun = [a, b](double x, double y, double mu, const Gammas& G) {
        double b4 = b * b * b * b;
        return 8.0 * a * a * b4 * y * y * G.inv3 * std::pow(x, 2.0 - 2.0 * mu) +
               24.0 * a * b4 * y * G.inv4 * std::pow(x, 3.0 - 2.0 * mu) +
               24.0 * b4 * G.inv5 * std::pow(x, 4.0 - 2.0 * mu);
    };
    auto gfun = [a, b](double x, double y, double mu, const Gammas& G) {
        double a4 = a * a * a * a;
        return 8.0 * a4 * b * b * x * x * G.inv3 * std::pow(y, 2.0 - 2.0 * mu) +
               24.0 * a4 * b * x * G.inv4 * std::pow(y, 3.0 - 2.0 * mu) +
               24.0 * a4 * G.inv5 * std::pow(y, 4.0 - 2.0 * mu);
    };
    p.f = [level, hfun, gfun, ca, cb, gx, gy, alpha, beta, a, b](double x, double y, double t) {
        double et = std::exp(-t);
        double e = level(x, y);
        double rx = std::sqrt(std::max(0.0, 1.0 - y * y / (b * b)));
        double ry = std::sqrt(std::max(0.0, 1.0 - x * x / (a * a)));
        double xb = a * rx;  // half-chord in x at this y
        double yb = b * ry;
        return -100.0 * et * e * e + 1.0e4 * et * et * e * e * e * e +
               100.0 * ca * et * (hfun(x + xb, -rx, alpha, gx) + hfun(xb - x, -rx, alpha, gx)) +
               100.0 * cb * et * (gfun(-ry, y + yb, beta, gy) + gfun(-ry, yb - y, beta, gy));
    };
    // D^nu of k^4 (s^2 - c^2)^2 from the chord start -c, in xi = s + c
    auto chord_deriv = [](double xi, double c, double k4, double nu) {
        return k4 * (24.0 * std::pow(xi, 4.0 - nu) / std::tgamma(5.0 - nu) -
                     24.0 * c * std::pow(xi, 3.0 - nu) / std::tgamma(4.0 - nu) +
                     8.0 * c * c * std::pow(xi, 2.0 - nu) / std::tgamma(3.0 - nu));
    };
    p.dux_exact = [chord_deriv, a, b](double x, double y, double t, double mu) {
        double xb = a * std::sqrt(std::max(0.0, 1.0 - y * y / (b * b)));
        return 100.0 * std::exp(-t) * chord_deriv(x + xb, xb, b * b * b * b, mu);
    };
    p.duy_exact = [chord_deriv, a, b](double x, double y, double t, double mu) {
        double yb = b * std::sqrt(std::max(0.0, 1.0 - x * x / (a * a)));
        return 100.0 * std::exp(-t) * chord_deriv(y + yb, yb, a * a * a * a, mu);
    };
    return p;
}

FhnSpec fhn_spec(double alpha, double beta, double kx, double ky) {
    check_order(alpha, "alpha");
    check_order(beta, "beta");
    check_diffusivity(kx, "kx");
    check_diffusivity(ky, "ky");

    FhnSpec s;
    s.params = FhnParams{};
    const double r = 1.25;
    const double mu = s.params.mu;

    ProblemSpec& p = s.base;
    p.name = "fhn";
    p.alpha = alpha;
    p.beta = beta;
    p.kx = kx;
    p.ky = ky;
    p.domain = DomainKind::disk;
    p.disk_cx = r;
    p.disk_cy = r;
    p.disk_r = r;
    p.F = [mu](double u) { return u * (1.0 - u) * (u - mu); };
    p.dF = [mu](double u) { return -3.0 * u * u + 2.0 * (1.0 + mu) * u - mu; };
    p.phi = [r](double x, double y) { return (x < r && y < r) ? 1.0 : 0.0; };
    p.f = [](double, double, double) { return 0.0; };  // the -w coupling is applied per step

    s.w0 = [r](double, double y) { return (y >= r) ? 0.1 : 0.0; };
    return s;
}

}  // namespace fracfem
