#include "permlim/witness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "permlim/block_sizes.hpp"
#include "permlim/clique.hpp"
#include "permlim/graph.hpp"

namespace permlim {

namespace {

constexpr double kMinGap = 1e-12;
constexpr int kMaxStepHalvings = 40;
constexpr int kMaxEpsilonHalvings = 20;
constexpr double kMatchTol = 1e-9;
constexpr double kSeparationMin = 1e-8;

// positive entries, pairwise separated by at least kMinGap
bool admissible(std::vector<double> x) {
    for (double v : x)
        if (!(v > 0.0)) return false;
    std::sort(x.begin(), x.end());
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (x[i + 1] - x[i] < kMinGap) return false;
    return true;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::string fmt_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// all multisets of positive integers with the given total, ascending parts
std::vector<std::vector<int>> unions_with_total(int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const std::function<void(int, int)> grow = [&](int left, int min_part) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = min_part; part <= left; ++part) {
            cur.push_back(part);
            grow(left - part, part);
            cur.pop_back();
        }
    };
    grow(total, 1);
    return out;
}

}  // namespace

std::vector<double> WitnessProblem::geometric_sizes() const {
    if (n < 1) throw std::invalid_argument("witness problems need n >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    std::vector<double> a(static_cast<std::size_t>(n) + 1);
    double term = 1.0 - alpha;
    for (auto& v : a) {
        v = term;
        term *= alpha;
    }
    return a;
}

std::vector<double> power_sum_residuals(const std::vector<double>& x,
                                        const std::vector<double>& a) {
    if (x.size() != a.size()) throw std::invalid_argument("size sequences differ in length");
    if (x.size() < 2) throw std::invalid_argument("need at least two sizes");
    const std::size_t n = x.size() - 1;
    std::vector<double> px(x), pa(a), f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            sum += px[j] - pa[j];
            px[j] *= x[j];
            pa[j] *= a[j];
        }
        f[i] = sum;
    }
    return f;
}

Eigen::MatrixXd witness_jacobian(const std::vector<double>& x, int n) {
    if (n < 1) throw std::invalid_argument("jacobian order must be >= 1");
    if (static_cast<int>(x.size()) < n)
        throw std::invalid_argument("jacobian needs at least n coordinates");
    Eigen::MatrixXd j(n, n);
    for (int col = 0; col < n; ++col) {
        double power = 1.0;
        for (int row = 0; row < n; ++row) {
            j(row, col) = (row + 1) * power;
            power *= x[static_cast<std::size_t>(col)];
        }
    }
    return j;
}

WitnessResult solve_witness(const WitnessProblem& p, int max_iter, double tol) {
    const auto a = p.geometric_sizes();
    const std::size_t n = static_cast<std::size_t>(p.n);
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double pinned = a[n] + p.epsilon;
    if (!(pinned > 0.0 && pinned < 1.0))
        throw std::invalid_argument("perturbed size a_{n+1} + epsilon must stay in (0,1)");

    double eps = p.epsilon;
    WitnessResult last;
    for (int halving = 0; halving <= kMaxEpsilonHalvings; ++halving) {
        WitnessResult r;
        r.realized_epsilon = eps;
        r.halvings = halving;
        std::vector<double> x = a;
        x[n] = a[n] + eps;
        bool stuck = !admissible(x);
        for (int iter = 0; !stuck; ++iter) {
            const auto f = power_sum_residuals(x, a);
            const double resid = max_abs(f);
            r.residual_history.push_back(resid);
            r.iterations = iter;
            r.residuals = f;
            if (resid <= tol) {
                r.converged = true;
                break;
            }
            if (iter >= max_iter) break;
            const Eigen::MatrixXd j = witness_jacobian(x, p.n);
            const Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
            const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
            const double dmax = diag.maxCoeff();
            if (!(dmax > 0.0) || diag.minCoeff() <= dmax * 1e-14) {
                std::string where;
                for (double v : x) where += fmt_g(v) + std::string(" ");
                throw std::runtime_error("jacobian is numerically singular at x = " + where);
            }
            const Eigen::VectorXd fv =
                Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(n));
            const Eigen::VectorXd dx = lu.solve(fv);
            double scale = 1.0;
            std::vector<double> trial = x;
            bool stepped = false;
            for (int cut = 0; cut <= kMaxStepHalvings; ++cut) {
                for (std::size_t k = 0; k < n; ++k)
                    trial[k] = x[k] - scale * dx(static_cast<Eigen::Index>(k));
                if (admissible(trial)) {
                    stepped = true;
                    break;
                }
                scale *= 0.5;
            }
            if (!stepped) {
                stuck = true;
                break;
            }
            x = trial;
        }
        r.b = x;
        if (r.converged && !stuck) return r;
        r.converged = false;
        last = std::move(r);
        if (eps == 0.0) break;
        eps *= 0.5;
    }
    return last;
}

std::vector<ForcingReport> certify_witness(const WitnessResult& r, const WitnessProblem& p,
                                           double rho) {
    if (!r.converged) throw std::invalid_argument("cannot certify an unconverged witness");
    if (r.b.size() != static_cast<std::size_t>(p.n) + 1)
        throw std::invalid_argument("witness length does not match the problem");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0,1]");
    const auto a_blocks = BlockSizes::geometric(p.alpha);
    const auto b_blocks = BlockSizes::with_geometric_tail(r.b, p.alpha);
    std::vector<ForcingReport> rows;
    for (int i = 1; i <= p.n; ++i)
        rows.push_back(make_forcing_report(
            "power-sum-" + std::to_string(i), clique_density_blocks(a_blocks, i),
            Estimate{clique_density_blocks(b_blocks, i), 0.0, 0}, kMatchTol));
    const double gap = std::abs(clique_density_blocks(b_blocks, p.n + 1) -
                                clique_density_blocks(a_blocks, p.n + 1));
    rows.push_back(ForcingReport{"power-sum-" + std::to_string(p.n + 1) + "-separation",
                                 kSeparationMin, Estimate{gap, 0.0, 0}, 0.0,
                                 gap > kSeparationMin});
    for (int total = 1; total <= p.n; ++total)
        for (const auto& sizes : unions_with_total(total)) {
            const Graph g = Graph::clique_union(sizes);
            const auto base = constant_base_map(g, rho);
            rows.push_back(make_forcing_report(
                "planted-" + format_clique_union(sizes), planted_density(g, base, a_blocks),
                Estimate{planted_density(g, base, b_blocks), 0.0, 0}, kMatchTol));
        }
    return rows;
}

std::string witness_csv(const WitnessProblem& p, const WitnessResult& r,
                        const std::vector<ForcingReport>& certification) {
    const auto a = p.geometric_sizes();
    std::string out = "index,a,b\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += fmt_g(a[i]);
        out += ',';
        out += i < r.b.size() ? fmt_g(r.b[i]) : "";
        out += '\n';
    }
    out += '\n';
    out += forcing_csv(certification);
    return out;
}

}  // namespace permlim
