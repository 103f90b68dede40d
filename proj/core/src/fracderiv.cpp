#include "fracfem/fracderiv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracfem {

double interval_contribution(const LinearRestriction& r, double x_eval, double mu,
                             bool is_terminal) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("interval_contribution: mu not in (0,1)");
    const double g1 = 1.0 / std::tgamma(1.0 - mu);
    const double g2 = 1.0 / std::tgamma(2.0 - mu);
    const double d0 = x_eval - r.t0;
    if (is_terminal) {
        double p0 = std::pow(d0, -mu);
        return r.f0 * p0 * g1 + r.slope * d0 * p0 * g2;
    }
    const double d1 = x_eval - r.t1;
    if (d1 <= 0.0) throw std::domain_error("interval_contribution: non-terminal interval reaches x_eval");
    double p0 = std::pow(d0, -mu);
    double p1 = std::pow(d1, -mu);
    double f1 = r.f0 + r.slope * (r.t1 - r.t0);
    return (r.f0 * p0 - f1 * p1) * g1 + r.slope * (d0 * p0 - d1 * p1) * g2;
}

double NodalDerivMap::sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

double NodalDerivMap::dot(const std::vector<double>& coeffs) const {
    double s = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) s += coeffs[nodes[i]] * values[i];
    return s;
}

NodalDerivMap basis_derivs_along_path(const Triangulation& mesh, const IntegralPath& path,
                                      double mu) {
    std::vector<std::pair<int, double>> raw;
    raw.reserve(3 * path.interval_cells.size());
    const size_t n_int = path.interval_cells.size();
    for (size_t j = 0; j < n_int; ++j) {
        double s0 = path.breakpoints[j];
        double s1 = path.breakpoints[j + 1];
        if (s1 - s0 < 1e-14) continue;
        int cell = path.interval_cells[j];
        double x0, y0, x1, y1;
        path.physical(s0, &x0, &y0);
        path.physical(s1, &x1, &y1);
        auto l0 = mesh.barycentric(cell, x0, y0);
        auto l1 = mesh.barycentric(cell, x1, y1);
        bool terminal = (j + 1 == n_int);
        double inv_len = 1.0 / (s1 - s0);
        for (int a = 0; a < 3; ++a) {
            LinearRestriction r{s0, s1, l0[a], (l1[a] - l0[a]) * inv_len};
            raw.emplace_back(mesh.cells()[cell].v[a],
                             interval_contribution(r, path.s_eval, mu, terminal));
        }
    }
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    NodalDerivMap map;
    map.nodes.reserve(raw.size());
    map.values.reserve(raw.size());
    for (const auto& [node, val] : raw) {
        if (!map.nodes.empty() && map.nodes.back() == node) {
            map.values.back() += val;
        } else {
            map.nodes.push_back(node);
            map.values.push_back(val);
        }
    }
    return map;
}

double eval_frac_deriv_of_fe_function(const Triangulation& mesh,
                                      const std::vector<double>& coeffs, double px, double py,
                                      double mu, Direction dir, int cell_hint) {
    int cell = cell_hint >= 0 ? cell_hint : mesh.locate(px, py);
    if (cell < 0) throw std::domain_error("eval_frac_deriv_of_fe_function: point outside mesh");
    auto influence = influence_elements(mesh, cell, dir);
    auto path = integral_path(mesh, influence, px, py, dir);
    return basis_derivs_along_path(mesh, path, mu).dot(coeffs);
}

}  // namespace fracfem
