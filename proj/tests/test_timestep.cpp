#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracfem/analysis.hpp"
#include "fracfem/timestep.hpp"

using namespace fracfem;

namespace {

double mass_norm(const SparseMatrix& M, const DenseVector& u) {
    return std::sqrt(std::max(0.0, M.quadratic_form(u)));
}

ProblemSpec zero_source_problem(double alpha, double beta) {
    ProblemSpec p = example1_spec(alpha, beta);
    p.F = [](double) { return 0.0; };
    p.dF = [](double) { return 0.0; };
    p.f = [](double, double, double) { return 0.0; };
    return p;
}

}  // namespace

TEST_CASE("time grid validation") {
    TimeGrid g = TimeGrid::with_steps(1.0, 8);
    CHECK(g.tau == doctest::Approx(0.125));
    CHECK(std::abs(g.tau * g.n_steps - g.T) <= 1e-12);
    TimeGrid g2 = TimeGrid::with_tau(1.0, 0.0625);
    CHECK(g2.n_steps == 16);
    CHECK_THROWS_AS(TimeGrid::with_steps(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::with_tau(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::with_tau(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("begm_init interpolates the initial data") {
    ProblemSpec p = example1_spec(0.8, 0.8);
    Triangulation mesh = p.make_mesh(4);
    BegmSystem sys = build_begm_system(mesh, p);

    SchemeState zero = begm_init(sys, [](double, double) { return 0.0; });
    for (double v : zero.u) CHECK(v == 0.0);

    SchemeState s0 = begm_init(sys, p.phi);
    DenseVector full = sys.dofs.embed(s0.u);
    int center = -1;
    for (int v = 0; v < mesh.num_vertices(); ++v)
        if (mesh.vertices()[v].x == 0.5 && mesh.vertices()[v].y == 0.5) center = v;
    REQUIRE(center >= 0);
    CHECK(full[center] == doctest::Approx(0.0390625).epsilon(1e-14));

    // interpolation is exact for linears (away from the zeroed boundary)
    SchemeState lin = begm_init(sys, [](double x, double y) { return 2.0 * x - y; });
    DenseVector lin_full = sys.dofs.embed(lin.u);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        if (mesh.vertices()[v].on_boundary) CHECK(lin_full[v] == 0.0);
        else CHECK(lin_full[v] == doctest::Approx(2.0 * mesh.vertices()[v].x - mesh.vertices()[v].y));
    }
}

TEST_CASE("zero problem stays zero") {
    ProblemSpec p = zero_source_problem(0.8, 0.8);
    p.phi = [](double, double) { return 0.0; };
    Triangulation mesh = p.make_mesh(3);
    Trajectory traj = begm_solve(mesh, p, TimeGrid::with_steps(1.0, 5));
    for (double v : traj.final_state.u) CHECK(v == 0.0);
}

TEST_CASE("unforced trajectories decay in the mass norm") {
    ProblemSpec p = zero_source_problem(0.8, 0.8);
    Triangulation mesh = p.make_mesh(4);
    BegmSystem sys = build_begm_system(mesh, p);
    std::mt19937 rng(9);
    std::normal_distribution<double> dist;
    for (double tau : {1e-3, 1e-1, 1.0}) {
        for (int trial = 0; trial < 10; ++trial) {
            SchemeState state{0, DenseVector(sys.dofs.num_free)};
            for (double& v : state.u) v = dist(rng);
            double prev = mass_norm(sys.mass, state.u);
            for (int n = 1; n <= 3; ++n) {
                state = begm_step(sys, state, p, tau, n * tau);
                double cur = mass_norm(sys.mass, state.u);
                CHECK(cur <= prev * (1.0 + 1e-12));
                prev = cur;
            }
        }
    }
}

TEST_CASE("one solve per step, solver report plumbed") {
    ProblemSpec p = example1_spec(0.8, 0.8);
    Triangulation mesh = p.make_mesh(3);
    BegmSystem sys = build_begm_system(mesh, p);
    SchemeState s0 = begm_init(sys, p.phi);
    SolveReport rep;
    SchemeState s1 = begm_step(sys, s0, p, 0.01, 0.01, &rep);
    CHECK(s1.step == 1);
    CHECK(rep.relative_residual <= 1e-10);
}

TEST_CASE("manufactured solution error shrinks with the mesh") {
    // coarse sanity run; the paper-scale studies live in the acceptance suite
    ProblemSpec p = example1_spec(0.8, 0.8);
    double prev = -1.0;
    for (int n : {4, 8}) {
        Triangulation mesh = p.make_mesh(n);
        BegmSystem sys = build_begm_system(mesh, p);
        TimeGrid grid = TimeGrid::with_tau(0.25, 1.0 / (n * n));
        Trajectory traj = begm_solve(sys, p, grid);
        double err = error_l2(mesh, sys.dofs.embed(traj.final_state.u), p.u_exact, grid.T,
                              sys.rule);
        if (prev > 0.0) CHECK(err < 0.5 * prev);
        prev = err;
    }
}

TEST_CASE("end-state field peaks near the center at the expected height") {
    ProblemSpec p = example1_spec(0.8, 0.8);
    Triangulation mesh = p.make_mesh(8);
    BegmSystem sys = build_begm_system(mesh, p);
    Trajectory traj = begm_solve(sys, p, TimeGrid::with_tau(1.0, 1.0 / 64.0));
    DenseVector full = sys.dofs.embed(traj.final_state.u);
    double peak = 0.0;
    int arg = -1;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        if (full[v] > peak) {
            peak = full[v];
            arg = v;
        }
    }
    // exact solution at (0.5, 0.5), t=1 is 10 e^-1 / 256
    CHECK(peak == doctest::Approx(10.0 * std::exp(-1.0) / 256.0).epsilon(0.05));
    CHECK(mesh.vertices()[arg].x == doctest::Approx(0.5).epsilon(0.26));
    CHECK(mesh.vertices()[arg].y == doctest::Approx(0.5).epsilon(0.26));
}

TEST_CASE("fhn zero start is a fixed point") {
    FhnSpec spec = fhn_spec(0.75, 0.75);
    spec.base.phi = [](double, double) { return 0.0; };
    spec.w0 = [](double, double) { return 0.0; };
    Triangulation mesh = spec.base.make_mesh(3);
    BegmSystem sys = build_begm_system(mesh, spec.base);
    Trajectory traj = fhn_simulate(sys, spec, TimeGrid::with_steps(5.0, 5));
    for (double v : traj.final_state.u) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));
    for (double v : traj.final_w) CHECK(v == 0.0);
}

TEST_CASE("fhn splitting tracks the scalar ODE away from the boundary") {
    // weak diffusion + classical orders so the center node follows the 0D update
    FhnSpec spec = fhn_spec(1.0, 1.0, 1e-10, 1e-10);
    double u0 = 0.3, w0 = 0.05;
    spec.base.phi = [u0](double, double) { return u0; };
    spec.w0 = [w0](double, double) { return w0; };
    Triangulation mesh = spec.base.make_mesh(6);
    BegmSystem sys = build_begm_system(mesh, spec.base);
    double tau = 0.05;
    int steps = 10;
    Trajectory traj = fhn_simulate(sys, spec, TimeGrid::with_steps(tau * steps, steps));

    // same splitting in 0D: implicit linearized u-update, explicit w-update
    double u = u0, w = w0;
    const FhnParams& prm = spec.params;
    for (int n = 0; n < steps; ++n) {
        double dF = spec.base.dF(u);
        double rhs = u + tau * (spec.base.F(u) - dF * u) - tau * w;
        u = rhs / (1.0 - tau * dF);
        w += tau * prm.eps * (prm.lambda * u - prm.gamma * w - prm.delta);
    }
    DenseVector full = sys.dofs.embed(traj.final_state.u);
    int center = -1;
    double best = 1e30;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        double d = std::hypot(mesh.vertices()[v].x - 1.25, mesh.vertices()[v].y - 1.25);
        if (d < best) {
            best = d;
            center = v;
        }
    }
    CHECK(std::abs(full[center] - u) <= 2.0 * tau);
    CHECK(std::abs(traj.final_w[center] - w) <= 2.0 * tau);
}

TEST_CASE("snapshots follow the requested cadence") {
    ProblemSpec p = example1_spec(0.8, 0.8);
    Triangulation mesh = p.make_mesh(3);
    BegmSystem sys = build_begm_system(mesh, p);
    Trajectory traj = begm_solve(sys, p, TimeGrid::with_steps(0.1, 10), 5);
    REQUIRE(traj.snapshots.size() == 3);  // steps 0, 5, 10
    CHECK(traj.snapshots[0].step == 0);
    CHECK(traj.snapshots[1].step == 5);
    CHECK(traj.snapshots[2].step == 10);
}
