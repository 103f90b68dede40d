// Command-line driver: manufactured-solution solves, convergence studies,
// the FitzHugh-Nagumo simulation, and the oracle validation suite.
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "fracfem/analysis.hpp"
#include "fracfem/errors.hpp"
#include "fracfem/fracderiv.hpp"
#include "fracfem/oracle.hpp"
#include "fracfem/parallel.hpp"
#include "fracfem/timestep.hpp"

namespace fs = std::filesystem;
using namespace fracfem;

namespace {

struct RunConfig {
    std::string command;
    std::string problem = "example1";
    double alpha = 0.8;
    double beta = 0.8;
    double kx = -1.0;  // <0: problem default
    double ky = -1.0;
    double h = 0.0;
    std::string mesh_path;
    std::string tau = "h2";
    double T = 1.0;
    std::vector<int> ladder;
    std::string out_dir = "out";
    int snapshots = 0;
    int threads = 0;  // 0: FRACFEM_THREADS or hardware
    unsigned seed = 12345;
};

ProblemSpec make_problem(const RunConfig& cfg) {
    auto with_defaults = [&](ProblemSpec p) {
        return p;
    };
    if (cfg.problem == "example1")
        return with_defaults(example1_spec(cfg.alpha, cfg.beta, cfg.kx > 0 ? cfg.kx : 1.0,
                                           cfg.ky > 0 ? cfg.ky : 1.0));
    if (cfg.problem == "example2")
        return with_defaults(example2_spec(cfg.alpha, cfg.beta, cfg.kx > 0 ? cfg.kx : 1.0,
                                           cfg.ky > 0 ? cfg.ky : 2.0));
    if (cfg.problem == "example3")
        return with_defaults(example3_spec(cfg.alpha, cfg.beta, cfg.kx > 0 ? cfg.kx : 2.0,
                                           cfg.ky > 0 ? cfg.ky : 2.0));
    if (cfg.problem == "fhn")
        return fhn_spec(cfg.alpha, cfg.beta, cfg.kx > 0 ? cfg.kx : 1e-4,
                        cfg.ky > 0 ? cfg.ky : 1e-4)
            .base;
    throw std::invalid_argument("unknown problem: " + cfg.problem);
}

double tau_for(const std::string& spec, double h) {
    if (spec == "h2") return h * h;
    if (spec == "h") return h;
    double v = std::stod(spec);
    if (!(v > 0.0)) throw std::invalid_argument("--tau must be positive");
    return v;
}

TauSpec tau_spec_for(const std::string& spec) {
    if (spec == "h2") return {TauRule::h_squared, 0.0};
    if (spec == "h") return {TauRule::h, 0.0};
    return {TauRule::explicit_value, std::stod(spec)};
}

int mesh_n_for(double h) {
    int n = static_cast<int>(std::llround(1.0 / h));
    if (!(h > 0.0) || n < 2) throw CLI::ValidationError("--h", "needs 0 < h <= 1/2");
    return n;
}

void write_run_txt(const RunConfig& cfg, const fs::path& dir, int threads) {
    std::ofstream out(dir / "run.txt");
    out << "command " << cfg.command << "\n"
        << "problem " << cfg.problem << "\n"
        << "alpha " << cfg.alpha << "\n"
        << "beta " << cfg.beta << "\n"
        << "kx " << cfg.kx << "\n"
        << "ky " << cfg.ky << "\n"
        << "h " << cfg.h << "\n"
        << "mesh " << (cfg.mesh_path.empty() ? "-" : cfg.mesh_path) << "\n"
        << "tau " << cfg.tau << "\n"
        << "T " << cfg.T << "\n"
        << "ladder ";
    for (size_t i = 0; i < cfg.ladder.size(); ++i) out << (i ? "," : "") << cfg.ladder[i];
    out << "\nout " << cfg.out_dir << "\n"
        << "snapshots " << cfg.snapshots << "\n"
        << "threads " << threads << "\n"
        << "seed " << cfg.seed << "\n";
}

Triangulation make_mesh(const RunConfig& cfg, const ProblemSpec& problem) {
    if (!cfg.mesh_path.empty()) return load_mesh(cfg.mesh_path);
    if (!(cfg.h > 0.0)) throw CLI::ValidationError("--h", "either --h or --mesh is required");
    return problem.make_mesh(mesh_n_for(cfg.h));
}

int cmd_fhn(const RunConfig& cfg, int threads);

int cmd_solve(const RunConfig& cfg, int threads) {
    if (cfg.problem == "fhn") return cmd_fhn(cfg, threads);  // always the coupled system
    ProblemSpec problem = make_problem(cfg);
    Triangulation mesh = make_mesh(cfg, problem);
    fs::create_directories(cfg.out_dir);
    write_run_txt(cfg, cfg.out_dir, threads);

    BegmSystem sys = build_begm_system(mesh, problem, kDefaultQuadratureDegree, threads);
    double h_nominal = cfg.h > 0.0 ? cfg.h : mesh.h();
    TimeGrid grid = TimeGrid::with_tau(cfg.T, tau_for(cfg.tau, h_nominal));
    Trajectory traj = begm_solve(sys, problem, grid, cfg.snapshots > 0 ? std::max(1, grid.n_steps / cfg.snapshots) : 0);
    DenseVector full = sys.dofs.embed(traj.final_state.u);
    write_field(mesh, full, (fs::path(cfg.out_dir) / "u_final.vtk").string());
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "u_%04zu.vtk", i);
        write_field(mesh, sys.dofs.embed(traj.snapshots[i].u),
                    (fs::path(cfg.out_dir) / name).string());
    }
    if (problem.has_exact()) {
        std::ofstream rep(fs::path(cfg.out_dir) / "errors.txt");
        double el2 = error_l2(mesh, full, problem.u_exact, cfg.T, sys.rule);
        double eli = error_linf(mesh, full, problem.u_exact, cfg.T, sys.rule);
        double een = error_energy(mesh, full, problem.u_exact, cfg.T, problem.alpha, problem.beta,
                                  problem.kx, problem.ky, sys.rule);
        rep << "l2 " << el2 << "\nlinf " << eli << "\nenergy " << een << "\n";
        std::printf("l2=%.6e linf=%.6e energy=%.6e\n", el2, eli, een);
    }
    std::printf("wrote %s\n", (fs::path(cfg.out_dir) / "u_final.vtk").c_str());
    return 0;
}

int cmd_converge(const RunConfig& cfg, int threads) {
    ProblemSpec problem = make_problem(cfg);
    if (cfg.ladder.size() < 3) throw CLI::ValidationError("--ladder", "need at least 3 sizes");
    fs::create_directories(cfg.out_dir);
    write_run_txt(cfg, cfg.out_dir, threads);

    StudyOptions opts;
    opts.threads = threads;
    opts.on_record = [](const ConvergenceRecord& r) {
        std::printf("h=1/%-4.0f tau=%-10.4g L2=%.3e (%.2f)  Linf=%.3e (%.2f)  energy=%.3e (%.2f)\n",
                    1.0 / r.h, r.tau, r.error_l2, r.order_l2, r.error_linf, r.order_linf,
                    r.error_energy, r.order_energy);
        std::fflush(stdout);
    };
    auto records = convergence_study(problem, cfg.ladder, tau_spec_for(cfg.tau), cfg.T, opts);
    write_csv(records, (fs::path(cfg.out_dir) / "convergence.csv").string());
    std::printf("wrote %s\n", (fs::path(cfg.out_dir) / "convergence.csv").c_str());
    return 0;
}

int cmd_fhn(const RunConfig& cfg, int threads) {
    FhnSpec spec = fhn_spec(cfg.alpha, cfg.beta, cfg.kx > 0 ? cfg.kx : 1e-4,
                            cfg.ky > 0 ? cfg.ky : 1e-4);
    Triangulation mesh = make_mesh(cfg, spec.base);
    fs::create_directories(cfg.out_dir);
    write_run_txt(cfg, cfg.out_dir, threads);

    BegmSystem sys = build_begm_system(mesh, spec.base, kDefaultQuadratureDegree, threads);
    double h_nominal = cfg.h > 0.0 ? cfg.h : mesh.h();
    TimeGrid grid = TimeGrid::with_tau(cfg.T, tau_for(cfg.tau, h_nominal));
    int cadence = cfg.snapshots > 0 ? std::max(1, grid.n_steps / cfg.snapshots) : 0;
    Trajectory traj = fhn_simulate(sys, spec, grid, cadence);
    DenseVector u_full = sys.dofs.embed(traj.final_state.u);
    write_field(mesh, u_full, (fs::path(cfg.out_dir) / "u_final.vtk").string());
    write_field(mesh, traj.final_w, (fs::path(cfg.out_dir) / "w_final.vtk").string(), "w");
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "u_%04zu.vtk", i);
        write_field(mesh, sys.dofs.embed(traj.snapshots[i].u),
                    (fs::path(cfg.out_dir) / name).string());
        std::snprintf(name, sizeof name, "w_%04zu.vtk", i);
        write_field(mesh, traj.snapshots[i].w, (fs::path(cfg.out_dir) / name).string(), "w");
    }
    std::printf("excited area (u>0.5) at T=%g: %.6f\n", cfg.T,
                excited_area(mesh, u_full, 0.5));
    return 0;
}

bool check(bool ok, const char* what, int& failures) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what);
    if (!ok) ++failures;
    return ok;
}

int cmd_validate(const RunConfig& cfg) {
    std::mt19937 rng(cfg.seed);
    int failures = 0;

    // Power rule: oracle quadrature vs closed form.
    {
        bool ok = true;
        for (int p = 0; p <= 4; ++p) {
            for (double mu : {0.6, 0.75, 0.9}) {
                double x = 0.8;
                auto f = [p](double t) { return std::pow(t, p); };
                auto df = [p](double t) { return p == 0 ? 0.0 : p * std::pow(t, p - 1); };
                double got = oracle::rl_deriv_quadrature(f, df, 0.0, x, mu);
                double want = std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - mu) * std::pow(x, p - mu);
                if (std::abs(got - want) > 1e-8) ok = false;
            }
        }
        check(ok, "oracle power rule (rl_deriv_quadrature)", failures);
    }
    // Grunwald-Letnikov convergence and self-consistency.
    {
        double mu = 0.75, x = 1.0;
        double want = std::tgamma(2.0) / std::tgamma(2.0 - mu) * std::pow(x, 1.0 - mu);
        double prev_err = -1.0;
        bool ok = true;
        for (int n : {64, 128, 256, 512}) {
            std::vector<double> samples(n + 1);
            double step = x / n;
            for (int i = 0; i <= n; ++i) samples[i] = i * step;
            double err = std::abs(oracle::gl_deriv(samples, mu, step) - want);
            if (prev_err > 0 && err > 0.75 * prev_err) ok = false;
            prev_err = err;
        }
        check(ok, "oracle Grunwald-Letnikov first-order convergence", failures);
    }
    // Partition of unity of the production fractional derivative maps.
    {
        Triangulation mesh = generate_square_mesh(4);
        const TriangleRule& rule = triangle_rule(4);
        double mu = 0.8;
        bool ok = true;
        for (int c = 0; c < mesh.num_cells() && ok; ++c) {
            auto inf = influence_elements(mesh, c, kXLeft);
            for (const QuadPoint& qp : map_rule_to_cell(rule, mesh, c)) {
                auto path = integral_path(mesh, inf, qp.x, qp.y, kXLeft);
                double got = basis_derivs_along_path(mesh, path, mu).sum();
                double span = path.s_eval - path.breakpoints.front();
                double want = std::pow(span, -mu) / std::tgamma(1.0 - mu);
                if (std::abs(got - want) > 1e-10 * std::abs(want)) ok = false;
            }
        }
        check(ok, "partition-of-unity identity at quadrature points", failures);
    }
    // Stiffness vs oracle assembly on a small mesh.
    {
        Triangulation mesh = generate_square_mesh(2);
        const TriangleRule& rule = triangle_rule(4);
        double alpha = 0.75, beta = 0.75;
        SparseMatrix A = assemble_stiffness(mesh, alpha, beta, 1.0, 1.0, rule);
        auto O = oracle::stiffness_oracle(mesh, alpha, beta, 1.0, 1.0, rule);
        double max_abs = 0.0;
        for (const auto& row : O)
            for (double v : row) max_abs = std::max(max_abs, std::abs(v));
        bool ok = true;
        for (int k = 0; k < mesh.num_vertices(); ++k)
            for (int l = 0; l < mesh.num_vertices(); ++l) {
                double diff = std::abs(A.entry(k, l) - O[k][l]);
                if (diff > 1e-6 * std::max(std::abs(O[k][l]), 1e-6 * max_abs)) ok = false;
            }
        check(ok, "assemble_stiffness matches pairing oracle (n=2)", failures);
    }
    // SPD sanity of the reduced system.
    {
        Triangulation mesh = generate_square_mesh(4);
        DirichletMap dofs = DirichletMap::build(mesh);
        SparseMatrix A = apply_dirichlet(
            assemble_stiffness(mesh, 0.8, 0.8, 1.0, 1.0, triangle_rule(4)), dofs);
        std::normal_distribution<double> dist;
        bool ok = A.max_asymmetry() <= 1e-10 * A.max_abs();
        for (int trial = 0; trial < 20; ++trial) {
            DenseVector u(dofs.num_free);
            for (double& v : u) v = dist(rng);
            if (!(A.quadratic_form(u) > 0.0)) ok = false;
        }
        check(ok, "stiffness symmetric positive definite on free nodes", failures);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite element solver for nonlinear Riesz space-fractional diffusion"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // --h is the mesh-size flag

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool needs_mesh) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--alpha", cfg.alpha, "fractional order in x, in (1/2,1) or 1");
        sub->add_option("--beta", cfg.beta, "fractional order in y, in (1/2,1) or 1");
        sub->add_option("--kx", cfg.kx, "diffusivity in x (problem default when omitted)");
        sub->add_option("--ky", cfg.ky, "diffusivity in y (problem default when omitted)");
        sub->add_option("--tau", cfg.tau, "time step: h2, h, or an explicit value");
        sub->add_option("--T", cfg.T, "final time");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--threads", cfg.threads, "assembly threads (default: FRACFEM_THREADS or cores)");
        sub->add_option("--seed", cfg.seed, "seed for randomized validation checks");
        if (needs_mesh) {
            sub->add_option("--h", cfg.h, "target mesh size (n = round(1/h))");
            sub->add_option("--mesh", cfg.mesh_path, "mesh file overriding the generator");
        }
    };

    CLI::App* solve = app.add_subcommand("solve", "single run, writes the final field");
    solve->add_option("--problem", cfg.problem, "example1|example2|example3|fhn");
    solve->add_option("--snapshots", cfg.snapshots, "number of snapshot fields");
    add_common(solve, true);

    CLI::App* converge = app.add_subcommand("converge", "convergence study over a mesh ladder");
    converge->add_option("--problem", cfg.problem, "example1|example2|example3");
    converge->add_option("--ladder", cfg.ladder, "comma-separated 1/h values")->delimiter(',');
    add_common(converge, false);

    CLI::App* fhn = app.add_subcommand("fhn", "FitzHugh-Nagumo simulation on the disk");
    fhn->add_option("--snapshots", cfg.snapshots, "number of snapshot fields");
    add_common(fhn, true);

    CLI::App* validate = app.add_subcommand("validate", "run the oracle validation suite");
    validate->set_help_flag("--help", "print help");
    validate->add_option("--seed", cfg.seed, "seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        int threads = resolve_thread_count(cfg.threads);
        if (solve->parsed()) {
            cfg.command = "solve";
            return cmd_solve(cfg, threads);
        }
        if (converge->parsed()) {
            cfg.command = "converge";
            return cmd_converge(cfg, threads);
        }
        if (fhn->parsed()) {
            cfg.command = "fhn";
            cfg.problem = "fhn";
            return cmd_fhn(cfg, threads);
        }
        cfg.command = "validate";
        return cmd_validate(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
