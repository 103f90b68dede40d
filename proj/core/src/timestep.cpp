#include "fracfem/timestep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fracfem {

TimeGrid TimeGrid::with_steps(double T, int n_steps) {
    if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: T must be positive");
    if (n_steps < 1) throw std::invalid_argument("TimeGrid: need at least one step");
    return {T / n_steps, n_steps, T};
}

TimeGrid TimeGrid::with_tau(double T, double tau) {
    if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: T must be positive");
    if (!(tau > 0.0)) throw std::invalid_argument("TimeGrid: tau must be positive");
    int n = static_cast<int>(std::llround(T / tau));
    if (n < 1) n = 1;
    return with_steps(T, n);
}

BegmSystem build_begm_system(const Triangulation& mesh, const ProblemSpec& problem,
                             int quadrature_degree, int threads) {
    BegmSystem sys;
    sys.mesh = &mesh;
    sys.dofs = DirichletMap::build(mesh);
    sys.rule = triangle_rule(quadrature_degree);
    sys.mass_full = assemble_mass(mesh);
    sys.mass = apply_dirichlet(sys.mass_full, sys.dofs);
    AssemblyOptions opts;
    opts.threads = threads;
    sys.stiffness = apply_dirichlet(
        assemble_stiffness(mesh, problem.alpha, problem.beta, problem.kx, problem.ky, sys.rule,
                           opts),
        sys.dofs);
    return sys;
}

SchemeState begm_init(const BegmSystem& sys, const std::function<double(double, double)>& phi) {
    const Triangulation& mesh = *sys.mesh;
    DenseVector full(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v)
        full[v] = phi(mesh.vertices()[v].x, mesh.vertices()[v].y);
    return SchemeState{0, sys.dofs.restrict_to_free(full)};
}

namespace {

// rhs = (M - tau D) u_prev + tau b1 + tau b2 on the free nodes.
SchemeState step_impl(const BegmSystem& sys, const SchemeState& state, const ProblemSpec& problem,
                      double tau, double t_n, const DenseVector* fhn_w_full,
                      SolveReport* report) {
    const Triangulation& mesh = *sys.mesh;
    DenseVector u_prev_full = sys.dofs.embed(state.u);

    SparseMatrix D =
        apply_dirichlet(assemble_reaction(mesh, u_prev_full, problem.dF, sys.rule), sys.dofs);
    DenseVector b1 =
        apply_dirichlet(assemble_load_F(mesh, u_prev_full, problem.F, sys.rule), sys.dofs);
    DenseVector b2;
    if (fhn_w_full) {
        DenseVector mw = sys.mass_full.multiply(*fhn_w_full);
        b2 = sys.dofs.restrict_to_free(mw);
        for (double& v : b2) v = -v;
    } else {
        b2 = apply_dirichlet(assemble_load_f(mesh, problem.f, t_n, sys.rule), sys.dofs);
    }

    SparseMatrix S = sparse_add(1.0, sparse_add(1.0, sys.mass, tau, sys.stiffness), -tau, D);
    DenseVector rhs = sys.mass.multiply(state.u);
    DenseVector du = D.multiply(state.u);
    for (int i = 0; i < sys.dofs.num_free; ++i) rhs[i] += -tau * du[i] + tau * (b1[i] + b2[i]);

    auto [u_new, rep] = solve(S, rhs);
    if (report) *report = rep;
    return SchemeState{state.step + 1, std::move(u_new)};
}

void warn_stability(const BegmSystem& sys, const ProblemSpec& problem, const SchemeState& s0,
                    double tau) {
    DenseVector full = sys.dofs.embed(s0.u);
    double m2 = 0.0;
    for (double u : full) m2 = std::max(m2, std::abs(problem.dF(u)));
    if (m2 > 0.0 && tau >= 1.0 / (2.0 * m2)) {
        std::fprintf(stderr,
                     "warning: tau=%.3g may violate the stability proviso tau < 1/(2*M2) with "
                     "estimated M2=%.3g\n",
                     tau, m2);
    }
}

}  // namespace

SchemeState begm_step(const BegmSystem& sys, const SchemeState& state, const ProblemSpec& problem,
                      double tau, double t_n, SolveReport* report) {
    return step_impl(sys, state, problem, tau, t_n, nullptr, report);
}

Trajectory begm_solve(const BegmSystem& sys, const ProblemSpec& problem, const TimeGrid& grid,
                      int snapshot_every) {
    Trajectory traj;
    SchemeState state = begm_init(sys, problem.phi);
    warn_stability(sys, problem, state, grid.tau);
    auto snap = [&](const SchemeState& s) {
        traj.snapshots.push_back(Snapshot{s.step, s.step * grid.tau, s.u, {}});
    };
    if (snapshot_every > 0) snap(state);
    for (int n = 1; n <= grid.n_steps; ++n) {
        state = begm_step(sys, state, problem, grid.tau, n * grid.tau);
        if (snapshot_every > 0 && (n % snapshot_every == 0 || n == grid.n_steps)) snap(state);
    }
    traj.final_state = std::move(state);
    return traj;
}

Trajectory begm_solve(const Triangulation& mesh, const ProblemSpec& problem, const TimeGrid& grid,
                      int snapshot_every, int threads) {
    BegmSystem sys = build_begm_system(mesh, problem, kDefaultQuadratureDegree, threads);
    return begm_solve(sys, problem, grid, snapshot_every);
}

Trajectory fhn_simulate(const BegmSystem& sys, const FhnSpec& spec, const TimeGrid& grid,
                        int snapshot_every) {
    const Triangulation& mesh = *sys.mesh;
    const FhnParams& prm = spec.params;
    Trajectory traj;
    SchemeState state = begm_init(sys, spec.base.phi);
    DenseVector w(mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v)
        w[v] = spec.w0(mesh.vertices()[v].x, mesh.vertices()[v].y);
    warn_stability(sys, spec.base, state, grid.tau);

    auto snap = [&](const SchemeState& s) {
        traj.snapshots.push_back(Snapshot{s.step, s.step * grid.tau, s.u, w});
    };
    if (snapshot_every > 0) snap(state);
    for (int n = 1; n <= grid.n_steps; ++n) {
        state = step_impl(sys, state, spec.base, grid.tau, n * grid.tau, &w, nullptr);
        DenseVector u_full = sys.dofs.embed(state.u);
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            w[v] += grid.tau * prm.eps * (prm.lambda * u_full[v] - prm.gamma * w[v] - prm.delta);
        }
        if (snapshot_every > 0 && (n % snapshot_every == 0 || n == grid.n_steps)) snap(state);
    }
    traj.final_state = std::move(state);
    traj.final_w = std::move(w);
    return traj;
}

}  // namespace fracfem
