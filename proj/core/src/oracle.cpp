#include "fracfem/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracfem/errors.hpp"

namespace fracfem {
namespace oracle {

namespace {

// 4-point Gauss-Legendre; all nodes interior, so integrands may jump exactly
// at panel boundaries without poisoning the refinement estimate.
double gauss4(const Fn1D& f, double a, double b) {
    static const double xg[2] = {0.3399810435848563, 0.8611363115940526};
    static const double wg[2] = {0.6521451548625461, 0.3478548451374538};
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    return h * (wg[0] * (f(c - h * xg[0]) + f(c + h * xg[0])) +
                wg[1] * (f(c - h * xg[1]) + f(c + h * xg[1])));
}

double adaptive_gauss_rec(const Fn1D& f, double a, double b, double whole, double tol,
                          int depth) {
    if (depth <= 0) throw NoConvergence("oracle quadrature: max refinement depth reached");
    double m = 0.5 * (a + b);
    double left = gauss4(f, a, m);
    double right = gauss4(f, m, b);
    if (std::abs(left + right - whole) <= tol) return left + right;
    return adaptive_gauss_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_gauss_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

double adaptive_quadrature(const Fn1D& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    return adaptive_gauss_rec(f, a, b, gauss4(f, a, b), tol, 48);
}

// \int_p^x (x-t)^{-power} g(t) dt with power in (0,1) resolved analytically by
// t = x - W sigma^{1/(1-power)}.
double singular_tail(const Fn1D& g, double p, double x, double power, double tol) {
    double W = x - p;
    if (W <= 0.0) return 0.0;
    double q = 1.0 / (1.0 - power);
    Fn1D integrand = [&g, x, W, q](double sigma) { return g(x - W * std::pow(sigma, q)); };
    return std::pow(W, 1.0 - power) * q * adaptive_quadrature(integrand, 0.0, 1.0, tol);
}

std::vector<double> clip_breakpoints(const std::vector<double>& breakpoints, double a, double x) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double b : breakpoints) {
        if (b > a + 1e-15 && b < x - 1e-15) pts.push_back(b);
    }
    pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

double rl_deriv_quadrature(const Fn1D& f, const Fn1D& df, double a, double x, double mu,
                           const std::vector<double>& breakpoints, double abs_tol) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("rl_deriv_quadrature: mu not in (0,1)");
    if (!(x > a)) throw std::invalid_argument("rl_deriv_quadrature: requires x > a");
    double result = f(a) * std::pow(x - a, -mu);
    auto pts = clip_breakpoints(breakpoints, a, x);
    double piece_tol = abs_tol / static_cast<double>(pts.size());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double p = pts[i], q = pts[i + 1];
        if (i + 2 == pts.size()) {
            result += singular_tail(df, p, x, mu, piece_tol);
        } else {
            Fn1D integrand = [&df, x, mu](double t) { return std::pow(x - t, -mu) * df(t); };
            result += adaptive_quadrature(integrand, p, q, piece_tol);
        }
    }
    return result / std::tgamma(1.0 - mu);
}

double rl_deriv2_quadrature(const Fn1D& f, const Fn1D& df, const Fn1D& d2f, double a, double x,
                            double mu, const std::vector<double>& breakpoints, double abs_tol) {
    if (!(mu > 1.0 && mu < 2.0)) throw std::invalid_argument("rl_deriv2_quadrature: mu not in (1,2)");
    if (!(x > a)) throw std::invalid_argument("rl_deriv2_quadrature: requires x > a");
    double result = f(a) * std::pow(x - a, -mu) / std::tgamma(1.0 - mu) +
                    df(a) * std::pow(x - a, 1.0 - mu) / std::tgamma(2.0 - mu);
    auto pts = clip_breakpoints(breakpoints, a, x);
    double piece_tol = abs_tol / static_cast<double>(pts.size());
    double integral = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double p = pts[i], q = pts[i + 1];
        if (i + 2 == pts.size()) {
            integral += singular_tail(d2f, p, x, mu - 1.0, piece_tol);
        } else {
            Fn1D integrand = [&d2f, x, mu](double t) { return std::pow(x - t, 1.0 - mu) * d2f(t); };
            integral += adaptive_quadrature(integrand, p, q, piece_tol);
        }
    }
    return result + integral / std::tgamma(2.0 - mu);
}

namespace {

std::vector<double> negate_sorted(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = -v[v.size() - 1 - i];
    return out;
}

}  // namespace

double rl_right_deriv_quadrature(const Fn1D& f, const Fn1D& df, double x, double b, double mu,
                                 const std::vector<double>& breakpoints, double abs_tol) {
    Fn1D rf = [&f](double t) { return f(-t); };
    Fn1D rdf = [&df](double t) { return -df(-t); };
    return rl_deriv_quadrature(rf, rdf, -b, -x, mu, negate_sorted(breakpoints), abs_tol);
}

double rl_right_deriv2_quadrature(const Fn1D& f, const Fn1D& df, const Fn1D& d2f, double x,
                                  double b, double mu, const std::vector<double>& breakpoints,
                                  double abs_tol) {
    Fn1D rf = [&f](double t) { return f(-t); };
    Fn1D rdf = [&df](double t) { return -df(-t); };
    Fn1D rd2f = [&d2f](double t) { return d2f(-t); };
    return rl_deriv2_quadrature(rf, rdf, rd2f, -b, -x, mu, negate_sorted(breakpoints), abs_tol);
}

double gl_deriv(const std::vector<double>& samples, double mu, double step) {
    double g = 1.0;
    double sum = 0.0;
    const size_t n = samples.size();
    for (size_t k = 0; k < n; ++k) {
        sum += g * samples[n - 1 - k];
        g *= 1.0 - (mu + 1.0) / static_cast<double>(k + 1);
    }
    return sum / std::pow(step, mu);
}

namespace {

// Piecewise-linear restriction of the P1 space along the ray r == const in
// path coordinates, built by brute force over every cell and edge.
struct Scanline {
    Direction dir;
    double r = 0.0;
    std::vector<double> cuts;     // ascending s over the whole chord
    std::vector<int> owners;      // owning cell per interval
    const Triangulation* mesh = nullptr;

    double basis_value(int node, double s) const {
        size_t j = interval_of(s);
        if (j == npos) return 0.0;
        int cell = owners[j];
        const auto& cv = mesh->cells()[cell].v;
        int local = -1;
        for (int a = 0; a < 3; ++a)
            if (cv[a] == node) local = a;
        if (local < 0) return 0.0;
        double x, y;
        physical(s, &x, &y);
        return mesh->barycentric(cell, x, y)[local];
    }

    void physical(double s, double* x, double* y) const {
        double c = dir.from_upper ? -s : s;
        if (dir.axis == Axis::x) {
            *x = c;
            *y = r;
        } else {
            *x = r;
            *y = c;
        }
    }

    static constexpr size_t npos = std::numeric_limits<size_t>::max();
    size_t interval_of(double s) const {
        if (cuts.size() < 2 || s < cuts.front() || s > cuts.back()) return npos;
        auto it = std::upper_bound(cuts.begin(), cuts.end(), s);
        size_t j = static_cast<size_t>(it - cuts.begin());
        if (j == 0) return 0;
        if (j >= cuts.size()) return cuts.size() - 2;
        return j - 1;
    }

    std::vector<int> support_nodes(double s_max) const {
        std::vector<int> nodes;
        for (size_t j = 0; j < owners.size(); ++j) {
            if (cuts[j] >= s_max) break;
            for (int v : mesh->cells()[owners[j]].v) nodes.push_back(v);
        }
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        return nodes;
    }
};

Scanline build_scanline(const Triangulation& mesh, double px, double py, Direction dir) {
    Scanline sc;
    sc.dir = dir;
    sc.mesh = &mesh;
    sc.r = path_r(dir, px, py);
    const double tol = 1e-12 * mesh.diameter();
    std::vector<double> cuts;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const Triangle& t = mesh.cells()[c];
        for (int e = 0; e < 3; ++e) {
            const Vertex& a = mesh.vertices()[t.v[e]];
            const Vertex& b = mesh.vertices()[t.v[(e + 1) % 3]];
            double ra = path_r(dir, a.x, a.y) - sc.r;
            double rb = path_r(dir, b.x, b.y) - sc.r;
            if (ra == 0.0) cuts.push_back(path_s(dir, a.x, a.y));
            if (rb == 0.0) cuts.push_back(path_s(dir, b.x, b.y));
            if ((ra < 0.0 && rb > 0.0) || (ra > 0.0 && rb < 0.0)) {
                double sa = path_s(dir, a.x, a.y);
                double sb = path_s(dir, b.x, b.y);
                cuts.push_back(sa + (sb - sa) * (-ra) / (rb - ra));
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    for (double s : cuts) {
        if (sc.cuts.empty() || s - sc.cuts.back() > tol) sc.cuts.push_back(s);
    }
    sc.owners.assign(sc.cuts.size() > 1 ? sc.cuts.size() - 1 : 0, -1);
    for (size_t j = 0; j + 1 < sc.cuts.size(); ++j) {
        double x, y;
        sc.physical(0.5 * (sc.cuts[j] + sc.cuts[j + 1]), &x, &y);
        sc.owners[j] = mesh.locate(x, y, 1e-9);
    }
    return sc;
}

double scanline_basis_deriv(const Scanline& sc, int node, double s_eval, double mu,
                            double abs_tol) {
    if (sc.cuts.size() < 2) throw DegeneratePath("oracle scanline has no chord");
    double a = sc.cuts.front();
    std::vector<double> inner(sc.cuts.begin(), sc.cuts.end());
    Fn1D f = [&sc, node](double t) { return sc.basis_value(node, t); };
    Fn1D df = [&sc, node](double t) {
        size_t j = sc.interval_of(t);
        if (j == Scanline::npos || sc.owners[j] < 0) return 0.0;
        double s0 = sc.cuts[j], s1 = sc.cuts[j + 1];
        return (sc.basis_value(node, s1) - sc.basis_value(node, s0)) / (s1 - s0);
    };
    return rl_deriv_quadrature(f, df, a, s_eval, mu, inner, abs_tol);
}

}  // namespace

double basis_deriv(const Triangulation& mesh, int node, double px, double py, double mu,
                   Direction dir, double abs_tol) {
    Scanline sc = build_scanline(mesh, px, py, dir);
    return scanline_basis_deriv(sc, node, path_s(dir, px, py), mu, abs_tol);
}

double pairing_oracle(const Triangulation& mesh, int k, int l, double mu, Axis axis,
                      const TriangleRule& rule) {
    Direction lower{axis, false};
    Direction upper{axis, true};
    double sum = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        for (const QuadPoint& qp : map_rule_to_cell(rule, mesh, c)) {
            double dl = basis_deriv(mesh, l, qp.x, qp.y, mu, lower, 1e-9);
            double dk = basis_deriv(mesh, k, qp.x, qp.y, mu, upper, 1e-9);
            sum += qp.w * dl * dk;
        }
    }
    return sum;
}

std::vector<std::vector<double>> stiffness_oracle(const Triangulation& mesh, double alpha,
                                                  double beta, double kx, double ky,
                                                  const TriangleRule& rule) {
    const int n = mesh.num_vertices();
    const double ca = kx / (2.0 * std::cos(alpha * M_PI));
    const double cb = ky / (2.0 * std::cos(beta * M_PI));
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));

    auto dir_values = [&](double px, double py, Direction dir,
                          double mu) -> std::vector<std::pair<int, double>> {
        Scanline sc = build_scanline(mesh, px, py, dir);
        double s_eval = path_s(dir, px, py);
        std::vector<std::pair<int, double>> out;
        for (int node : sc.support_nodes(s_eval)) {
            out.emplace_back(node, scanline_basis_deriv(sc, node, s_eval, mu, 1e-9));
        }
        return out;
    };

    for (int c = 0; c < mesh.num_cells(); ++c) {
        for (const QuadPoint& qp : map_rule_to_cell(rule, mesh, c)) {
            auto left = dir_values(qp.x, qp.y, kXLeft, alpha);
            auto right = dir_values(qp.x, qp.y, kXRight, alpha);
            auto down = dir_values(qp.x, qp.y, kYDown, beta);
            auto up = dir_values(qp.x, qp.y, kYUp, beta);
            auto accumulate = [&](const std::vector<std::pair<int, double>>& lo,
                                  const std::vector<std::pair<int, double>>& hi, double w) {
                for (const auto& [nk, vk] : hi)
                    for (const auto& [nl, vl] : lo) {
                        a[nk][nl] += w * vk * vl;
                        a[nl][nk] += w * vk * vl;
                    }
            };
            accumulate(left, right, ca * qp.w);
            accumulate(down, up, cb * qp.w);
        }
    }
    return a;
}

}  // namespace oracle
}  // namespace fracfem
