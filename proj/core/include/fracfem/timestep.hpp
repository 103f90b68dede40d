#pragma once
#include <functional>
#include <vector>

#include "fracfem/assembly.hpp"
#include "fracfem/linalg.hpp"
#include "fracfem/problems.hpp"

namespace fracfem {

struct TimeGrid {
    double tau = 0.0;
    int n_steps = 0;
    double T = 0.0;

    // Exact division: tau = T / n_steps.
    static TimeGrid with_steps(double T, int n_steps);
    // Rounds T/tau to the nearest step count, then retakes tau = T/n.
    static TimeGrid with_tau(double T, double tau);
};

struct SchemeState {
    int step = 0;
    DenseVector u;  // free-node coefficients
};

// Cached per-run data: M and A are assembled once, D and the load vectors are
// rebuilt every step.
struct BegmSystem {
    const Triangulation* mesh = nullptr;
    DirichletMap dofs;
    TriangleRule rule;
    SparseMatrix mass_full;  // all nodes
    SparseMatrix mass;       // free nodes
    SparseMatrix stiffness;  // free nodes
};

BegmSystem build_begm_system(const Triangulation& mesh, const ProblemSpec& problem,
                             int quadrature_degree = kDefaultQuadratureDegree, int threads = 1);

// u^0 = nodal interpolant of phi with boundary entries zeroed.
SchemeState begm_init(const BegmSystem& sys, const std::function<double(double, double)>& phi);

// One backward Euler step ending at time t_n; a single linear solve.
SchemeState begm_step(const BegmSystem& sys, const SchemeState& state, const ProblemSpec& problem,
                      double tau, double t_n, SolveReport* report = nullptr);

struct Snapshot {
    int step = 0;
    double t = 0.0;
    DenseVector u;  // free-node coefficients
    DenseVector w;  // full-node recovery field (FHN only, empty otherwise)
};

struct Trajectory {
    SchemeState final_state;
    DenseVector final_w;  // FHN only
    std::vector<Snapshot> snapshots;
};

// Runs grid.n_steps BEGM steps; snapshots every `snapshot_every` steps when > 0
// (initial and final states included). Warns on stderr when tau may violate
// the stability proviso for the estimated bound on |F'|.
Trajectory begm_solve(const BegmSystem& sys, const ProblemSpec& problem, const TimeGrid& grid,
                      int snapshot_every = 0);

// Convenience overload assembling the system internally.
Trajectory begm_solve(const Triangulation& mesh, const ProblemSpec& problem, const TimeGrid& grid,
                      int snapshot_every = 0, int threads = 1);

// Operator splitting for the FitzHugh-Nagumo system: a BEGM step for u with
// source -w^{n-1} interpolated nodally, then the explicit nodal update
// w^n = w^{n-1} + tau*eps*(lambda*u^n - gamma*w^{n-1} - delta).
Trajectory fhn_simulate(const BegmSystem& sys, const FhnSpec& spec, const TimeGrid& grid,
                        int snapshot_every = 0);

}  // namespace fracfem
