#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "permlim/forcing.hpp"

namespace permlim {

/// Find a block-size sequence b that is not the geometric one a (alpha) but
/// shares its first n power sums: b_1..b_n solve F_i(b) = 0 with the final
/// coordinate pinned to a_{n+1} + epsilon and the geometric tail shared.
struct WitnessProblem {
    int n = 1;
    double alpha = 0.5;
    double epsilon = 0.0;

    /// a_i = (1-alpha) alpha^(i-1) for i = 1..n+1.
    std::vector<double> geometric_sizes() const;
};

struct WitnessResult {
    // n+1 sizes in construction order: the solved x_1..x_n followed by the
    // pinned x_{n+1}.  Entries are positive and pairwise distinct; the
    // sequence is strictly decreasing except when the pinned perturbation
    // overtakes a neighboring size.
    std::vector<double> b;
    std::vector<double> residuals;         // F_1..F_n at b
    std::vector<double> residual_history;  // max |F_i| before each step and at the end
    double realized_epsilon = 0.0;         // after any halvings
    int halvings = 0;
    int iterations = 0;
    bool converged = false;
};

/// F_i = sum_j (x_j^i - a_j^i) for i = 1..n with n = len(x) - 1; the shared
/// geometric tail beyond index n+1 cancels term by term and is omitted.
std::vector<double> power_sum_residuals(const std::vector<double>& x,
                                        const std::vector<double>& a);

/// d F_i / d x_j = i x_j^(i-1) as an n x n matrix over the first n entries;
/// its determinant is n! * prod_{j<j'} (x_j' - x_j).
Eigen::MatrixXd witness_jacobian(const std::vector<double>& x, int n);

/// Damped Newton iteration from x = a with x_{n+1} pinned.  Steps are halved
/// until the iterate stays positive with pairwise-distinct entries; if the
/// damping floor or the iteration budget is hit, epsilon is halved and the
/// solve restarts (at most 20 times).  The result keeps construction order,
/// so b_{n+1} - a_{n+1} equals the realized epsilon exactly.
WitnessResult solve_witness(const WitnessProblem& p, int max_iter = 50, double tol = 1e-12);

/// Equality of the first n block power sums between b and a (within 1e-9),
/// separation of power sum n+1 (beyond 1e-8), and equality of
/// planted densities with base Constant(rho) for every clique union on at
/// most n vertices (within 1e-9).  The separation row reports the gap as its
/// value and the required minimum as its target.
std::vector<ForcingReport> certify_witness(const WitnessResult& r, const WitnessProblem& p,
                                           double rho = 0.5);

/// "index,a,b" rows for the sizes, a blank line, then the certification rows
/// in the standard constraint CSV layout.
std::string witness_csv(const WitnessProblem& p, const WitnessResult& r,
                        const std::vector<ForcingReport>& certification);

}  // namespace permlim
