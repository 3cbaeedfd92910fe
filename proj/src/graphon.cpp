#include "permlim/graphon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "permlim/errors.hpp"
#include "permlim/mc.hpp"

namespace permlim {

namespace {

double clamp01_open(double t) {
    if (t < 0.0) return 0.0;
    if (t >= 1.0) return std::nextafter(1.0, 0.0);
    return t;
}

}  // namespace

Graphon Graphon::constant(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("constant graphon level must lie in [0,1]");
    return Graphon(Form{Constant{rho}});
}

Graphon Graphon::step(std::vector<double> widths, std::vector<std::vector<double>> values) {
    const std::size_t k = widths.size();
    if (k == 0) throw std::invalid_argument("step graphon needs at least one band");
    if (values.size() != k) throw std::invalid_argument("step value matrix must be k x k");
    double total = 0.0;
    for (double w : widths) {
        if (!(w > 0.0)) throw std::invalid_argument("step band widths must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("step band widths must sum to 1");
    for (std::size_t i = 0; i < k; ++i) {
        if (values[i].size() != k) throw std::invalid_argument("step value matrix must be k x k");
        for (std::size_t j = 0; j < k; ++j) {
            if (!(values[i][j] >= 0.0 && values[i][j] <= 1.0))
                throw std::invalid_argument("step values must lie in [0,1]");
            if (values[i][j] != values[j][i])
                throw std::invalid_argument("step value matrix must be symmetric");
        }
    }
    return Graphon(Form{Step{std::move(widths), std::move(values)}});
}

Graphon Graphon::clique_blocks(BlockSizes sizes) {
    return Graphon(Form{CliqueBlocks{std::move(sizes)}});
}

Graphon Graphon::planted(Graphon base, BlockSizes sizes) {
    if (!base.pointwise())
        throw unsupported_error("planted graphons need a pointwise base kernel");
    return Graphon(Form{Planted{std::make_shared<Graphon>(std::move(base)), std::move(sizes)}});
}

Graphon Graphon::permuton_induced(Permuton mu) {
    return Graphon(Form{PermutonInduced{std::move(mu)}});
}

bool Graphon::pointwise() const { return get_if<PermutonInduced>() == nullptr; }

double Graphon::kernel(double x, double y) const {
    x = clamp01_open(x);
    y = clamp01_open(y);
    return std::visit(
        [x, y](const auto& form) -> double {
            using T = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return form.rho;
            } else if constexpr (std::is_same_v<T, Step>) {
                const std::size_t k = form.widths.size();
                std::size_t i = 0, j = 0;
                double acc = 0.0;
                for (std::size_t t = 0; t < k; ++t) {
                    acc += form.widths[t];
                    if (x < acc || t + 1 == k) {
                        i = t;
                        break;
                    }
                }
                acc = 0.0;
                for (std::size_t t = 0; t < k; ++t) {
                    acc += form.widths[t];
                    if (y < acc || t + 1 == k) {
                        j = t;
                        break;
                    }
                }
                return form.values[i][j];
            } else if constexpr (std::is_same_v<T, CliqueBlocks>) {
                const int bx = form.sizes.block_of(x);
                return (bx != 0 && bx == form.sizes.block_of(y)) ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, Planted>) {
                const int bx = form.sizes.block_of(x);
                if (bx == 0 || bx != form.sizes.block_of(y)) return 0.0;
                const auto [lo, hi] = form.sizes.span(bx);
                const double w = hi - lo;
                return form.base->kernel((x - lo) / w, (y - lo) / w);
            } else {
                throw unsupported_error(
                    "permuton-induced graphons have no pointwise kernel; sample instead");
            }
        },
        form_);
}

Graph Graphon::sample_graph(int n, Rng& rng) const {
    if (n < 1) throw std::invalid_argument("sampled graph order must be >= 1");
    Graph g(n);
    if (const auto* pi = get_if<PermutonInduced>()) {
        std::vector<Point> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pts.push_back(pi->mu.sample_point(rng));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const Point& a = pts[static_cast<std::size_t>(i - 1)];
                const Point& b = pts[static_cast<std::size_t>(j - 1)];
                if ((a.x - b.x) * (a.y - b.y) < 0.0) g.add_edge(i, j);
            }
        return g;
    }
    std::vector<double> u(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = rng.uniform01();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (rng.bernoulli(
                    kernel(u[static_cast<std::size_t>(i - 1)], u[static_cast<std::size_t>(j - 1)])))
                g.add_edge(i, j);
    return g;
}

Graph Graphon::sample_graph(int n, std::uint64_t seed) const {
    Rng rng(seed);
    return sample_graph(n, rng);
}

Estimate density_mc(const Graph& h, const Graphon& w, std::uint64_t samples,
                    std::uint64_t seed) {
    const int k = h.order();
    if (k > 8) throw std::invalid_argument("sampled densities support patterns up to 8 vertices");
    const std::vector<std::uint32_t> codes = orbit_codes(h);

    if (const auto* pi = w.get_if<Graphon::PermutonInduced>()) {
        const Permuton mu = pi->mu;
        return mc_proportion(samples, seed, [k, &codes, mu](Rng& rng) {
            std::array<Point, 8> pts;
            for (int i = 0; i < k; ++i) pts[static_cast<std::size_t>(i)] = mu.sample_point(rng);
            std::uint32_t code = 0;
            int bit = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j, ++bit) {
                    const Point& a = pts[static_cast<std::size_t>(i)];
                    const Point& b = pts[static_cast<std::size_t>(j)];
                    if ((a.x - b.x) * (a.y - b.y) < 0.0) code |= 1u << bit;
                }
            return std::binary_search(codes.begin(), codes.end(), code);
        });
    }

    return mc_proportion(samples, seed, [k, &codes, &w](Rng& rng) {
        std::array<double, 8> u;
        for (int i = 0; i < k; ++i) u[static_cast<std::size_t>(i)] = rng.uniform01();
        std::uint32_t code = 0;
        int bit = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j, ++bit)
                if (rng.bernoulli(w.kernel(u[static_cast<std::size_t>(i)],
                                           u[static_cast<std::size_t>(j)])))
                    code |= 1u << bit;
        return std::binary_search(codes.begin(), codes.end(), code);
    });
}

double density_quadrature(const Graph& h, const Graphon& w, int grid) {
    if (!w.pointwise())
        throw unsupported_error("quadrature needs a pointwise kernel; sample instead");
    const int k = h.order();
    if (k > 5) throw std::invalid_argument("quadrature supports patterns up to 5 vertices");
    if (grid < 2) throw std::invalid_argument("quadrature grid must be >= 2");

    std::vector<std::pair<int, int>> edges, non_edges;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            (h.has_edge(i, j) ? edges : non_edges).emplace_back(i - 1, j - 1);

    // fixed odometer order makes the summation order deterministic
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    std::vector<double> x(static_cast<std::size_t>(k));
    double total = 0.0;
    while (true) {
        for (int i = 0; i < k; ++i)
            x[static_cast<std::size_t>(i)] = (idx[static_cast<std::size_t>(i)] + 0.5) / grid;
        double prod = 1.0;
        for (const auto& [a, b] : edges)
            prod *= w.kernel(x[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(b)]);
        if (prod != 0.0)
            for (const auto& [a, b] : non_edges)
                prod *= 1.0 - w.kernel(x[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(b)]);
        total += prod;

        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == grid - 1) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    total /= std::pow(static_cast<double>(grid), k);

    double kf = 1.0;
    for (int i = 2; i <= k; ++i) kf *= i;
    return total * kf / static_cast<double>(automorphism_count(h));
}

QuadratureResult density_quadrature_refined(const Graph& h, const Graphon& w, double tol,
                                            int start_grid, int max_grid) {
    int g = start_grid;
    double prev = density_quadrature(h, w, g);
    while (2 * g <= max_grid) {
        g *= 2;
        const double cur = density_quadrature(h, w, g);
        if (std::abs(cur - prev) <= tol) return {cur, g, true};
        prev = cur;
    }
    return {prev, g, false};
}

}  // namespace permlim
