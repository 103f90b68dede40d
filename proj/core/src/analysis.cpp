#include "fracfem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

#include "fracfem/errors.hpp"
#include "fracfem/fracderiv.hpp"
#include "fracfem/timestep.hpp"

namespace fracfem {

namespace {

double fe_value(const Triangulation& mesh, const DenseVector& coeffs, int cell,
                const std::array<double, 3>& l) {
    const auto& v = mesh.cells()[cell].v;
    return l[0] * coeffs[v[0]] + l[1] * coeffs[v[1]] + l[2] * coeffs[v[2]];
}

}  // namespace

double error_l2(const Triangulation& mesh, const DenseVector& coeffs_full, const ExactFn& u_exact,
                double t, const TriangleRule& rule) {
    double sum = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        auto qps = map_rule_to_cell(rule, mesh, c);
        for (size_t q = 0; q < qps.size(); ++q) {
            double diff = fe_value(mesh, coeffs_full, c, rule.points[q]) -
                          u_exact(qps[q].x, qps[q].y, t);
            sum += qps[q].w * diff * diff;
        }
    }
    return std::sqrt(sum);
}

double error_linf(const Triangulation& mesh, const DenseVector& coeffs_full, const ExactFn& u_exact,
                  double t, const TriangleRule& rule) {
    double m = 0.0;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const Vertex& p = mesh.vertices()[v];
        m = std::max(m, std::abs(coeffs_full[v] - u_exact(p.x, p.y, t)));
    }
    for (int c = 0; c < mesh.num_cells(); ++c) {
        auto qps = map_rule_to_cell(rule, mesh, c);
        for (size_t q = 0; q < qps.size(); ++q) {
            m = std::max(m, std::abs(fe_value(mesh, coeffs_full, c, rule.points[q]) -
                                     u_exact(qps[q].x, qps[q].y, t)));
        }
    }
    return m;
}

double error_energy(const Triangulation& mesh, const DenseVector& coeffs_full,
                    const ExactFn& u_exact, double t, double alpha, double beta, double kx,
                    double ky, const TriangleRule& rule) {
    DenseVector e(coeffs_full.size());
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const Vertex& p = mesh.vertices()[v];
        e[v] = coeffs_full[v] - u_exact(p.x, p.y, t);
    }
    bool zero = true;
    for (double ev : e)
        if (ev != 0.0) zero = false;
    if (zero) return 0.0;

    double l2 = 0.0, semi_x = 0.0, semi_y = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        auto inf_x = influence_elements(mesh, c, kXLeft);
        auto inf_y = influence_elements(mesh, c, kYDown);
        auto qps = map_rule_to_cell(rule, mesh, c);
        for (size_t q = 0; q < qps.size(); ++q) {
            double val = fe_value(mesh, e, c, rule.points[q]);
            l2 += qps[q].w * val * val;
            double dx = basis_derivs_along_path(
                            mesh, integral_path(mesh, inf_x, qps[q].x, qps[q].y, kXLeft), alpha)
                            .dot(e);
            double dy = basis_derivs_along_path(
                            mesh, integral_path(mesh, inf_y, qps[q].x, qps[q].y, kYDown), beta)
                            .dot(e);
            semi_x += qps[q].w * dx * dx;
            semi_y += qps[q].w * dy * dy;
        }
    }
    return std::sqrt(l2 + kx * semi_x + ky * semi_y);
}

double error_energy(const Triangulation& mesh, const DenseVector& coeffs_full,
                    const ProblemSpec& problem, double t, const TriangleRule& rule) {
    if (!problem.dux_exact || !problem.duy_exact) {
        return error_energy(mesh, coeffs_full, problem.u_exact, t, problem.alpha, problem.beta,
                            problem.kx, problem.ky, rule);
    }
    double l2 = 0.0, semi_x = 0.0, semi_y = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        auto inf_x = influence_elements(mesh, c, kXLeft);
        auto inf_y = influence_elements(mesh, c, kYDown);
        auto qps = map_rule_to_cell(rule, mesh, c);
        for (size_t q = 0; q < qps.size(); ++q) {
            double px = qps[q].x, py = qps[q].y;
            double val = fe_value(mesh, coeffs_full, c, rule.points[q]) - problem.u_exact(px, py, t);
            l2 += qps[q].w * val * val;
            double dx = basis_derivs_along_path(
                            mesh, integral_path(mesh, inf_x, px, py, kXLeft), problem.alpha)
                            .dot(coeffs_full) -
                        problem.dux_exact(px, py, t, problem.alpha);
            double dy = basis_derivs_along_path(
                            mesh, integral_path(mesh, inf_y, px, py, kYDown), problem.beta)
                            .dot(coeffs_full) -
                        problem.duy_exact(px, py, t, problem.beta);
            semi_x += qps[q].w * dx * dx;
            semi_y += qps[q].w * dy * dy;
        }
    }
    return std::sqrt(l2 + problem.kx * semi_x + problem.ky * semi_y);
}

std::vector<ConvergenceRecord> convergence_study(const ProblemSpec& problem,
                                                 const std::vector<int>& ladder, TauSpec tau,
                                                 double T, const StudyOptions& opts) {
    if (ladder.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 mesh sizes");
    if (std::set<int>(ladder.begin(), ladder.end()).size() != ladder.size())
        throw std::invalid_argument("convergence_study: duplicate ladder entry");
    if (!problem.has_exact())
        throw std::invalid_argument("convergence_study: problem has no exact solution");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<ConvergenceRecord> records;
    for (int n : ladder) {
        if (n < 2) throw std::invalid_argument("convergence_study: ladder entry must be >= 2");
        double h = 1.0 / n;
        double tau_value = 0.0;
        switch (tau.rule) {
            case TauRule::h_squared: tau_value = h * h; break;
            case TauRule::h: tau_value = h; break;
            case TauRule::explicit_value: tau_value = tau.value; break;
        }
        Triangulation mesh = problem.make_mesh(n);
        BegmSystem sys = build_begm_system(mesh, problem, opts.quadrature_degree, opts.threads);
        TimeGrid grid = TimeGrid::with_tau(T, tau_value);
        Trajectory traj = begm_solve(sys, problem, grid);
        DenseVector full = sys.dofs.embed(traj.final_state.u);

        ConvergenceRecord rec;
        rec.h = h;
        rec.tau = grid.tau;
        rec.error_l2 = error_l2(mesh, full, problem.u_exact, T, sys.rule);
        rec.error_linf = error_linf(mesh, full, problem.u_exact, T, sys.rule);
        rec.error_energy = error_energy(mesh, full, problem, T, sys.rule);
        rec.order_l2 = rec.order_linf = rec.order_energy = nan;
        if (!records.empty()) {
            const ConvergenceRecord& prev = records.back();
            double scale = std::log(prev.h / rec.h);
            rec.order_l2 = std::log(prev.error_l2 / rec.error_l2) / scale;
            rec.order_linf = std::log(prev.error_linf / rec.error_linf) / scale;
            rec.order_energy = std::log(prev.error_energy / rec.error_energy) / scale;
        }
        records.push_back(rec);
        if (opts.on_record) opts.on_record(rec);
    }
    return records;
}

void write_csv(const std::vector<ConvergenceRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "h,tau,error_l2,error_linf,error_energy,order_l2,order_linf,order_energy\n";
    char buf[64];
    auto field = [&](double v, bool last) {
        if (std::isnan(v)) {
            out << (last ? "\n" : ",");
            return;
        }
        std::snprintf(buf, sizeof buf, "%.6e", v);
        out << buf << (last ? "\n" : ",");
    };
    for (const ConvergenceRecord& r : records) {
        field(r.h, false);
        field(r.tau, false);
        field(r.error_l2, false);
        field(r.error_linf, false);
        field(r.error_energy, false);
        field(r.order_l2, false);
        field(r.order_linf, false);
        field(r.order_energy, true);
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_field(const Triangulation& mesh, const DenseVector& coeffs_full,
                 const std::string& path, const std::string& field_name) {
    if (static_cast<int>(coeffs_full.size()) != mesh.num_vertices())
        throw std::invalid_argument("write_field: coefficient size mismatch");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    char buf[128];
    out << "# vtk DataFile Version 2.0\n";
    out << field_name << " field\n";
    out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.num_vertices() << " double\n";
    for (const Vertex& v : mesh.vertices()) {
        std::snprintf(buf, sizeof buf, "%.12g %.12g 0\n", v.x, v.y);
        out << buf;
    }
    out << "CELLS " << mesh.num_cells() << ' ' << 4 * mesh.num_cells() << '\n';
    for (const Triangle& t : mesh.cells())
        out << "3 " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
    out << "CELL_TYPES " << mesh.num_cells() << '\n';
    for (int c = 0; c < mesh.num_cells(); ++c) out << "5\n";
    out << "POINT_DATA " << mesh.num_vertices() << '\n';
    out << "SCALARS " << field_name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : coeffs_full) {
        std::snprintf(buf, sizeof buf, "%.12g\n", v);
        out << buf;
    }
    if (!out) throw IoError("write failed: " + path);
}

double excited_area(const Triangulation& mesh, const DenseVector& coeffs_full, double threshold) {
    // Exact area of {u_h > threshold} per cell: the sublevel set of a linear
    // function cuts a triangle into a triangle or a quadrilateral.
    double area = 0.0;
    for (const Triangle& t : mesh.cells()) {
        double d[3];
        for (int i = 0; i < 3; ++i) d[i] = coeffs_full[t.v[i]] - threshold;
        int above = (d[0] > 0) + (d[1] > 0) + (d[2] > 0);
        if (above == 0) continue;
        if (above == 3) {
            area += t.area;
            continue;
        }
        // isolate the odd vertex: the one on the minority side
        int odd = -1;
        for (int i = 0; i < 3; ++i) {
            bool pos = d[i] > 0;
            if ((above == 1 && pos) || (above == 2 && !pos)) odd = i;
        }
        int j = (odd + 1) % 3, k = (odd + 2) % 3;
        // fractions of the two edges from the odd vertex cut by the level set
        double fj = d[odd] / (d[odd] - d[j]);
        double fk = d[odd] / (d[odd] - d[k]);
        double corner = t.area * fj * fk;
        area += (above == 1) ? corner : t.area - corner;
    }
    return area;
}

}  // namespace fracfem
