#include "permlim/expression.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "permlim/errors.hpp"
#include "permlim/mc.hpp"

namespace permlim {

namespace {

constexpr int kMaxExpressionOrder = 9;

// Falling factorial n (n-1) ... (n-j+1); zero when fewer than j values remain.
std::uint64_t falling(int n, int j) {
    if (j < 0 || n < j) return 0;
    std::uint64_t r = 1;
    for (int t = 0; t < j; ++t) r *= static_cast<std::uint64_t>(n - t);
    return r;
}

std::uint64_t choose_small(int n, int k) {
    if (k < 0 || n < k) return 0;
    return binomial(n, k).convert_to<std::uint64_t>();
}

// Number of ways to give distinct values to alpha positions constrained in x,
// beta positions constrained in y and k positions constrained in both, when
// nx values satisfy the x constraint, ny the y constraint and nxy both.
// Values used by the k "both" positions come from the nxy pool; of the alpha
// x-positions, j take leftover "both" values and alpha - j take x-only ones.
std::uint64_t constrained_assignments(int alpha, int beta, int k, int nx, int ny, int nxy) {
    std::uint64_t both = falling(nxy, k);
    if (both == 0 && k > 0) return 0;
    std::uint64_t total = 0;
    for (int j = 0; j <= alpha; ++j) {
        total += choose_small(alpha, j) * falling(nxy - k, j) * falling(nx - nxy, alpha - j) *
                 falling(ny - k - j, beta);
    }
    return both * total;
}

void check_exponents(int alpha, int beta, int k, int order) {
    if (alpha < 0 || beta < 0 || k < 0) {
        throw std::invalid_argument("expression exponents must be nonnegative");
    }
    if (order > kMaxExpressionOrder) {
        throw unsupported_error("expression pattern order exceeds 9");
    }
}

// #{u <= v : sigma(u) <= t} for all (v, t), with a zero row/column at index 0.
std::vector<std::vector<int>> prefix_table(const Permutation& sigma) {
    int m = sigma.order();
    std::vector<std::vector<int>> p(static_cast<size_t>(m) + 1,
                                    std::vector<int>(static_cast<size_t>(m) + 1, 0));
    for (int v = 1; v <= m; ++v) {
        for (int t = 1; t <= m; ++t) {
            p[v][t] = p[v - 1][t] + (sigma(v) <= t ? 1 : 0);
        }
    }
    return p;
}

// Depth-first count of assignments of the non-root positions to flag groups;
// a group is validated as soon as it is full, so dead branches are pruned.
struct GroupCounter {
    const std::vector<RootedPermutation>& flags;
    const std::vector<int>& sizes;
    const Permutation& tau;
    int root;
    const std::vector<int>& others;
    std::vector<std::vector<int>> groups;
    std::uint64_t count = 0;

    void run(std::size_t idx) {
        if (idx == others.size()) {
            ++count;
            return;
        }
        for (std::size_t f = 0; f < flags.size(); ++f) {
            if (static_cast<int>(groups[f].size()) == sizes[f]) continue;
            groups[f].push_back(others[idx]);
            bool ok = true;
            if (static_cast<int>(groups[f].size()) == sizes[f]) {
                ok = rooted_pattern_indicator(flags[f], tau, root, groups[f]);
            }
            if (ok) run(idx + 1);
            groups[f].pop_back();
        }
    }
};

std::uint64_t pack_pattern(const Permutation& pi) {
    std::uint64_t key = 0;
    for (int v : pi.one_line()) key = key * 16 + static_cast<std::uint64_t>(v);
    return key;
}

}  // namespace

Rational DensityExpression::coefficient(const Permutation& pattern) const {
    auto it = terms_.find(pattern);
    return it == terms_.end() ? Rational(0) : it->second;
}

void DensityExpression::set(const Permutation& pattern, const Rational& coeff) {
    if (pattern.order() == 0) throw std::invalid_argument("expression pattern must be nonempty");
    if (coeff == 0) {
        terms_.erase(pattern);
    } else {
        terms_[pattern] = coeff;
    }
}

std::string DensityExpression::to_string() const {
    std::string out;
    for (const auto& [pattern, coeff] : terms_) {
        out += pattern.to_string();
        out += ':';
        out += rational_string(coeff);
        out += '\n';
    }
    return out;
}

DensityExpression DensityExpression::from_string(const std::string& s) {
    auto trim = [](std::string t) {
        auto first = t.find_first_not_of(" \t\r");
        if (first == std::string::npos) return std::string();
        auto last = t.find_last_not_of(" \t\r");
        return t.substr(first, last - first + 1);
    };
    DensityExpression e;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("expression term needs pattern:coefficient, got '" + line +
                                        "'");
        }
        Permutation pattern = Permutation::from_string(trim(line.substr(0, colon)));
        Rational coeff = rational_from_string(trim(line.substr(colon + 1)));
        if (e.terms_.count(pattern)) {
            throw std::invalid_argument("duplicate pattern " + pattern.to_string());
        }
        e.set(pattern, coeff);
    }
    return e;
}

DensityExpression express_lambda_integral(int alpha, int beta, int k) {
    int m = alpha + beta + k + 2;
    check_exponents(alpha, beta, k, m);
    DensityExpression e;
    BigInt mfact = factorial(m);
    for (const Permutation& sigma : all_patterns(m)) {
        auto prefix = prefix_table(sigma);
        std::uint64_t count = 0;
        // Roots: v is the value at the x-root position, w at the y-root one.
        for (int v = 1; v <= m; ++v) {
            for (int w = 1; w <= m; ++w) {
                if (w == v) continue;
                int nx = (v - 1) - (w < v ? 1 : 0);
                int sw = sigma(w);
                int ny = (sw - 1) - (sigma(v) < sw ? 1 : 0);
                int nxy = prefix[v - 1][sw - 1];
                count += constrained_assignments(alpha, beta, k, nx, ny, nxy);
            }
        }
        if (count) e.set(sigma, Rational(BigInt(count), mfact));
    }
    return e;
}

DensityExpression express_mu_integral(int alpha, int beta, int k) {
    int m = alpha + beta + k + 1;
    check_exponents(alpha, beta, k, m);
    DensityExpression e;
    BigInt mfact = factorial(m);
    for (const Permutation& sigma : all_patterns(m)) {
        auto prefix = prefix_table(sigma);
        std::uint64_t count = 0;
        for (int v = 1; v <= m; ++v) {
            int nx = v - 1;
            int ny = sigma(v) - 1;
            int nxy = prefix[v - 1][sigma(v) - 1];
            count += constrained_assignments(alpha, beta, k, nx, ny, nxy);
        }
        if (count) e.set(sigma, Rational(BigInt(count), mfact));
    }
    return e;
}

DensityExpression express_flag_product(const std::vector<RootedPermutation>& flags) {
    int m = 1;
    std::vector<int> sizes;
    BigInt weight = 1;
    for (const auto& flag : flags) {
        int order = flag.pattern.order();
        if (order == 0) throw std::invalid_argument("flag pattern must be nonempty");
        if (order > 1) {
            sizes.push_back(order - 1);
            m += order - 1;
            weight *= factorial(order - 1);
        }
    }
    if (m > kMaxExpressionOrder) throw unsupported_error("expression pattern order exceeds 9");

    std::vector<RootedPermutation> live;
    for (const auto& flag : flags) {
        if (flag.pattern.order() > 1) live.push_back(flag);
    }

    DensityExpression e;
    BigInt mfact = factorial(m);
    for (const Permutation& tau : all_patterns(m)) {
        std::uint64_t count = 0;
        for (int root = 1; root <= m; ++root) {
            std::vector<int> others;
            for (int i = 1; i <= m; ++i) {
                if (i != root) others.push_back(i);
            }
            GroupCounter counter{live,   sizes, tau, root, others,
                                 std::vector<std::vector<int>>(live.size()),
                                 0};
            counter.run(0);
            count += counter.count;
        }
        if (count) e.set(tau, Rational(BigInt(count) * weight, mfact));
    }
    return e;
}

ExpressionValue evaluate_expression(const DensityExpression& e, const Permuton& mu, EvalMode mode,
                                    std::uint64_t samples, std::uint64_t seed) {
    ExpressionValue out;
    out.requested = mode;
    out.used = mode;
    if (e.empty()) return out;

    int max_order = e.terms().rbegin()->first.order();
    bool exact_possible = false;
    if (mu.get_if<Permuton::Uniform>()) {
        exact_possible = true;
    } else if (mu.get_if<Permuton::MonotoneGeometric>() || mu.get_if<Permuton::SquareGeometric>()) {
        exact_possible = max_order <= 7;
    }

    if (mode == EvalMode::exact && exact_possible) {
        double total = 0.0;
        for (const auto& [pattern, coeff] : e.terms()) {
            double d = mu.get_if<Permuton::Uniform>()
                           ? to_double(Rational(1, factorial(pattern.order())))
                           : density_exact_diagonal(mu, pattern);
            total += to_double(coeff) * d;
        }
        out.estimate = Estimate{total, 0.0, 0};
        return out;
    }

    out.used = EvalMode::mc;
    if (samples == 0) throw std::invalid_argument("samples must be positive");

    std::unordered_map<int, std::unordered_map<std::uint64_t, double>> by_order;
    for (const auto& [pattern, coeff] : e.terms()) {
        by_order[pattern.order()][pack_pattern(pattern)] = to_double(coeff);
    }

    double value = 0.0;
    double variance = 0.0;
    std::uint64_t total_samples = 0;
    for (const auto& [pattern, coeff] : e.terms()) {
        (void)coeff;
        int order = pattern.order();
        auto it = by_order.find(order);
        if (it == by_order.end()) continue;  // already consumed
        const auto table = it->second;
        by_order.erase(it);
        Estimate est = mc_mean(samples, mix_seed(seed, static_cast<std::uint64_t>(order)),
                               [order, &mu, &table](Rng& rng) {
                                   Permutation pi = mu.sample_permutation(order, rng);
                                   auto hit = table.find(pack_pattern(pi));
                                   return hit == table.end() ? 0.0 : hit->second;
                               });
        value += est.value;
        variance += est.std_error * est.std_error;
        total_samples += est.samples;
    }
    out.estimate = Estimate{value, std::sqrt(variance), total_samples};
    return out;
}

}  // namespace permlim
