#include "permlim/permuton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "permlim/errors.hpp"
#include "permlim/mc.hpp"

namespace permlim {

namespace {

constexpr double kGeomTol = 1e-12;
constexpr double kMarginalTol = 1e-9;

// --- polygon helpers -------------------------------------------------------

double shoelace_area(const std::vector<Point>& poly) {
    const std::size_t m = poly.size();
    if (m < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % m];
        twice += a.x * b.y - b.x * a.y;
    }
    return std::abs(twice) / 2.0;
}

// Clip a convex polygon by the half-plane keep(P) <= bound, where coord
// selects the coordinate.  Standard Sutherland-Hodgman step.
std::vector<Point> clip_halfplane(const std::vector<Point>& poly, bool use_x, double bound) {
    std::vector<Point> out;
    const std::size_t m = poly.size();
    if (m == 0) return out;
    auto val = [use_x](const Point& p) { return use_x ? p.x : p.y; };
    for (std::size_t i = 0; i < m; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % m];
        const bool cur_in = val(cur) <= bound;
        const bool nxt_in = val(nxt) <= bound;
        if (cur_in) out.push_back(cur);
        if (cur_in != nxt_in) {
            const double denom = val(nxt) - val(cur);
            const double t = (bound - val(cur)) / denom;
            out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
        }
    }
    return out;
}

struct PieceGeometry {
    bool is_segment = false;
    Point a{}, b{};      // segment endpoints
    double area = 0.0;   // polygon area (when not a segment)
};

PieceGeometry piece_geometry(const PolygonPiece& piece) {
    PieceGeometry g;
    g.area = shoelace_area(piece.vertices);
    if (piece.vertices.size() == 2 || g.area < 1e-15) {
        g.is_segment = true;
        auto lex_less = [](const Point& p, const Point& q) {
            return p.x != q.x ? p.x < q.x : p.y < q.y;
        };
        g.a = *std::min_element(piece.vertices.begin(), piece.vertices.end(), lex_less);
        g.b = *std::max_element(piece.vertices.begin(), piece.vertices.end(), lex_less);
    }
    return g;
}

// Fraction of the piece's mass landing in [0,x] x [0,y].
double piece_lower_left_fraction(const PolygonPiece& piece, const PieceGeometry& g, double x,
                                 double y) {
    if (g.is_segment) {
        const double dx = g.b.x - g.a.x;
        const double dy = g.b.y - g.a.y;
        double lo = 0.0, hi = 1.0;
        auto restrict1d = [&lo, &hi](double origin, double delta, double bound) {
            if (std::abs(delta) < 1e-15) {
                if (origin > bound) hi = -1.0;
                return;
            }
            const double t = (bound - origin) / delta;
            if (delta > 0.0)
                hi = std::min(hi, t);
            else
                lo = std::max(lo, t);
        };
        restrict1d(g.a.x, dx, x);
        restrict1d(g.a.y, dy, y);
        return std::max(0.0, hi - lo);
    }
    std::vector<Point> clipped = clip_halfplane(piece.vertices, true, x);
    clipped = clip_halfplane(clipped, false, y);
    return shoelace_area(clipped) / g.area;
}

void validate_piece(const PolygonPiece& piece) {
    if (piece.vertices.size() < 2) throw std::invalid_argument("polygon piece needs >= 2 vertices");
    if (!(piece.weight >= 0.0)) throw std::invalid_argument("polygon piece weight must be >= 0");
    double max_dist = 0.0;
    for (const Point& p : piece.vertices) {
        if (p.x < -1e-9 || p.x > 1.0 + 1e-9 || p.y < -1e-9 || p.y > 1.0 + 1e-9)
            throw std::invalid_argument("polygon piece vertex outside the unit square");
        for (const Point& q : piece.vertices)
            max_dist = std::max(max_dist, std::hypot(p.x - q.x, p.y - q.y));
    }
    if (max_dist < 1e-12) throw std::invalid_argument("polygon piece degenerates to a point");
    const std::size_t m = piece.vertices.size();
    if (m >= 3) {
        bool has_pos = false, has_neg = false;
        for (std::size_t i = 0; i < m; ++i) {
            const Point& a = piece.vertices[i];
            const Point& b = piece.vertices[(i + 1) % m];
            const Point& c = piece.vertices[(i + 2) % m];
            const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
            if (cross > 1e-12) has_pos = true;
            if (cross < -1e-12) has_neg = true;
        }
        if (has_pos && has_neg)
            throw std::invalid_argument("polygon piece vertices are not in convex position");
    }
}

// --- geometric block families ----------------------------------------------

// Index of the geometric block containing t, counting from 1; block i spans
// [1 - alpha^(i-1), 1 - alpha^i).  Values >= 1 map to a sentinel past every
// block.
int block_index(double t, double alpha) {
    if (t <= 0.0) return 1;
    if (t >= 1.0) return std::numeric_limits<int>::max();
    const int j = 1 + static_cast<int>(std::floor(std::log1p(-t) / std::log(alpha)));
    return std::max(1, j);
}

void block_span(int i, double alpha, double& z, double& zp) {
    z = 1.0 - std::pow(alpha, i - 1);
    zp = 1.0 - std::pow(alpha, i);
}

double cdf_monotone(double alpha, double x, double y) {
    const int jx = block_index(x, alpha);
    const int jy = block_index(y, alpha);
    if (jx < jy) return x;
    if (jy < jx) return y;
    if (jx == std::numeric_limits<int>::max()) return 1.0;
    double z, zp;
    block_span(jx, alpha, z, zp);
    return z + std::max(0.0, x + y - z - zp);
}

double cdf_square(double alpha, double x, double y) {
    const int jx = block_index(x, alpha);
    const int jy = block_index(y, alpha);
    if (jx < jy) return x;
    if (jy < jx) return y;
    if (jx == std::numeric_limits<int>::max()) return 1.0;
    double z, zp;
    block_span(jx, alpha, z, zp);
    return z + (x - z) * (y - z) / (zp - z);
}

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("block ratio alpha must lie in (0,1)");
}

// --- step matrix ------------------------------------------------------------

void validate_step(const std::vector<double>& z, const std::vector<std::vector<double>>& mass) {
    const std::size_t k = z.size();
    if (k == 0) throw std::invalid_argument("step permuton needs at least one band");
    if (mass.size() != k) throw std::invalid_argument("step mass matrix must be k x k");
    double total = 0.0;
    for (double zi : z) {
        if (!(zi > 0.0)) throw std::invalid_argument("step band widths must be positive");
        total += zi;
    }
    if (std::abs(total - 1.0) > kMarginalTol)
        throw std::invalid_argument("step band widths must sum to 1");
    for (std::size_t i = 0; i < k; ++i) {
        if (mass[i].size() != k) throw std::invalid_argument("step mass matrix must be k x k");
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (mass[i][j] < 0.0) throw std::invalid_argument("step mass entries must be >= 0");
            row += mass[i][j];
            col += mass[j][i];
        }
        if (std::abs(row - z[i]) > kMarginalTol || std::abs(col - z[i]) > kMarginalTol)
            throw std::invalid_argument("step mass row/column sums must match the band widths");
    }
}

double cdf_step(const Permuton::StepMatrix& sm, double x, double y) {
    const std::size_t k = sm.z.size();
    double total = 0.0;
    double sx0 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double sx1 = sx0 + sm.z[i];
        const double fx = std::clamp((x - sx0) / (sx1 - sx0), 0.0, 1.0);
        if (fx > 0.0) {
            double sy0 = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                const double sy1 = sy0 + sm.z[j];
                const double fy = std::clamp((y - sy0) / (sy1 - sy0), 0.0, 1.0);
                if (fy > 0.0) total += sm.mass[i][j] * fx * fy;
                sy0 = sy1;
            }
        }
        sx0 = sx1;
    }
    return total;
}

}  // namespace

Permuton Permuton::uniform() { return Permuton(Form{Uniform{}}); }

Permuton Permuton::mixture(std::vector<PolygonPiece> pieces) {
    if (pieces.empty()) throw std::invalid_argument("mixture needs at least one piece");
    double total = 0.0;
    for (const PolygonPiece& piece : pieces) {
        validate_piece(piece);
        total += piece.weight;
    }
    if (std::abs(total - 1.0) > kMarginalTol)
        throw std::invalid_argument("mixture weights must sum to 1");
    Permuton mu(Form{Mixture{std::move(pieces)}});
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        if (std::abs(mu.cdf(t, 1.0) - t) > kMarginalTol ||
            std::abs(mu.cdf(1.0, t) - t) > kMarginalTol)
            throw std::invalid_argument("mixture does not have uniform marginals");
    }
    return mu;
}

Permuton Permuton::monotone_geometric(double alpha) {
    validate_alpha(alpha);
    return Permuton(Form{MonotoneGeometric{alpha}});
}

Permuton Permuton::square_geometric(double alpha) {
    validate_alpha(alpha);
    return Permuton(Form{SquareGeometric{alpha}});
}

Permuton Permuton::step_matrix(std::vector<double> z, std::vector<std::vector<double>> mass) {
    validate_step(z, mass);
    return Permuton(Form{StepMatrix{std::move(z), std::move(mass)}});
}

double Permuton::cdf(double x, double y) const {
    x = std::clamp(x, 0.0, 1.0);
    y = std::clamp(y, 0.0, 1.0);
    return std::visit(
        [x, y](const auto& form) -> double {
            using T = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                return x * y;
            } else if constexpr (std::is_same_v<T, Mixture>) {
                double total = 0.0;
                for (const PolygonPiece& piece : form.pieces)
                    total += piece.weight *
                             piece_lower_left_fraction(piece, piece_geometry(piece), x, y);
                return total;
            } else if constexpr (std::is_same_v<T, MonotoneGeometric>) {
                return cdf_monotone(form.alpha, x, y);
            } else if constexpr (std::is_same_v<T, SquareGeometric>) {
                return cdf_square(form.alpha, x, y);
            } else {
                return cdf_step(form, x, y);
            }
        },
        form_);
}

QuadrantFlags Permuton::quadrant_flags(double x, double y) const {
    const double sw = cdf(x, y);
    return QuadrantFlags{sw, x - sw, y - sw, 1.0 - x - y + sw};
}

double Permuton::rect_mass(double x0, double y0, double x1, double y1) const {
    return cdf(x1, y1) - cdf(x0, y1) - cdf(x1, y0) + cdf(x0, y0);
}

Point Permuton::sample_point(Rng& rng) const {
    return std::visit(
        [&rng](const auto& form) -> Point {
            using T = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                const double x = rng.uniform01();
                const double y = rng.uniform01();
                return {x, y};
            } else if constexpr (std::is_same_v<T, Mixture>) {
                double u = rng.uniform01();
                const PolygonPiece* chosen = nullptr;
                for (const PolygonPiece& piece : form.pieces) {
                    if (piece.weight <= 0.0) continue;
                    chosen = &piece;
                    if (u < piece.weight) break;
                    u -= piece.weight;
                }
                const PieceGeometry g = piece_geometry(*chosen);
                if (g.is_segment) {
                    const double t = rng.uniform01();
                    return {g.a.x + t * (g.b.x - g.a.x), g.a.y + t * (g.b.y - g.a.y)};
                }
                // Fan triangulation; pick a triangle by area, then a uniform
                // point of it.
                const auto& v = chosen->vertices;
                double pick = rng.uniform01() * g.area;
                std::size_t tri = 1;
                for (; tri + 2 < v.size(); ++tri) {
                    const double a =
                        shoelace_area(std::vector<Point>{v[0], v[tri], v[tri + 1]});
                    if (pick < a) break;
                    pick -= a;
                }
                double r1 = rng.uniform01();
                double r2 = rng.uniform01();
                if (r1 + r2 > 1.0) {
                    r1 = 1.0 - r1;
                    r2 = 1.0 - r2;
                }
                const Point& p0 = v[0];
                const Point& p1 = v[tri];
                const Point& p2 = v[tri + 1];
                return {p0.x + r1 * (p1.x - p0.x) + r2 * (p2.x - p0.x),
                        p0.y + r1 * (p1.y - p0.y) + r2 * (p2.y - p0.y)};
            } else if constexpr (std::is_same_v<T, MonotoneGeometric>) {
                const int i = block_index(rng.uniform01(), form.alpha);
                double z, zp;
                block_span(i, form.alpha, z, zp);
                const double x = z + (zp - z) * rng.uniform01();
                return {x, z + zp - x};
            } else if constexpr (std::is_same_v<T, SquareGeometric>) {
                const int i = block_index(rng.uniform01(), form.alpha);
                double z, zp;
                block_span(i, form.alpha, z, zp);
                const double x = z + (zp - z) * rng.uniform01();
                const double y = z + (zp - z) * rng.uniform01();
                return {x, y};
            } else {
                const std::size_t k = form.z.size();
                double u = rng.uniform01();
                std::size_t ci = 0, cj = 0;
                bool found = false;
                for (std::size_t i = 0; i < k && !found; ++i)
                    for (std::size_t j = 0; j < k && !found; ++j) {
                        if (form.mass[i][j] <= 0.0) continue;
                        ci = i;
                        cj = j;
                        if (u < form.mass[i][j])
                            found = true;
                        else
                            u -= form.mass[i][j];
                    }
                double sx0 = 0.0, sy0 = 0.0;
                for (std::size_t i = 0; i < ci; ++i) sx0 += form.z[i];
                for (std::size_t j = 0; j < cj; ++j) sy0 += form.z[j];
                const double x = sx0 + form.z[ci] * rng.uniform01();
                const double y = sy0 + form.z[cj] * rng.uniform01();
                return {x, y};
            }
        },
        form_);
}

std::vector<Point> Permuton::sample(int n, Rng& rng) const {
    if (n < 0) throw std::invalid_argument("sample size must be >= 0");
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) points.push_back(sample_point(rng));
    return points;
}

std::vector<Point> Permuton::sample(int n, std::uint64_t seed) const {
    Rng rng(seed);
    return sample(n, rng);
}

Permutation Permuton::sample_permutation(int n, Rng& rng) const {
    if (n < 1) throw std::invalid_argument("sampled permutation order must be >= 1");
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Point p = sample_point(rng);
        // A coordinate collision has probability zero in exact arithmetic;
        // redraw the colliding point so the pattern stays well defined.
        bool clash = true;
        while (clash) {
            clash = false;
            for (int j = 0; j < i; ++j)
                if (points[j].x == p.x || points[j].y == p.y) {
                    clash = true;
                    p = sample_point(rng);
                    break;
                }
        }
        points.push_back(p);
    }
    std::vector<std::pair<double, double>> xy;
    xy.reserve(points.size());
    for (const Point& p : points) xy.emplace_back(p.x, p.y);
    return pattern_of_points(xy);
}

Permutation Permuton::sample_permutation(int n, std::uint64_t seed) const {
    Rng rng(seed);
    return sample_permutation(n, rng);
}

Estimate density_mc(const Permuton& mu, const Permutation& sigma, std::uint64_t samples,
                    std::uint64_t seed) {
    const int k = sigma.order();
    return mc_proportion(samples, seed, [&mu, &sigma, k](Rng& rng) {
        return mu.sample_permutation(k, rng) == sigma;
    });
}

double density_exact_diagonal(const Permuton& mu, const Permutation& sigma, double tail_epsilon) {
    (void)tail_epsilon;  // the block series is summed in closed form
    const bool monotone = mu.get_if<Permuton::MonotoneGeometric>() != nullptr;
    const bool square = mu.get_if<Permuton::SquareGeometric>() != nullptr;
    if (!monotone && !square)
        throw unsupported_error("exact diagonal densities need a geometric block family");
    const double alpha = monotone ? mu.get_if<Permuton::MonotoneGeometric>()->alpha
                                  : mu.get_if<Permuton::SquareGeometric>()->alpha;
    const int k = sigma.order();
    if (k > 7) throw std::invalid_argument("exact diagonal densities support orders up to 7");

    double k_factorial = 1.0;
    for (int i = 2; i <= k; ++i) k_factorial *= i;

    // Sum over ordered compositions (m_1, ..., m_r) of k: the counts of the
    // points in the r lowest occupied blocks.  sigma must split into
    // consecutive blocks of these sizes (each block decreasing for the
    // monotone family); the blocks themselves are then placed among the
    // geometric levels, which sums to a finite product of geometric series.
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int i = 0; i < k - 1; ++i) {
            if (mask & (1u << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);

        bool ok = true;
        int base = 0;
        for (int m : parts) {
            for (int pos = base + 1; pos <= base + m && ok; ++pos) {
                const int value = sigma(pos);
                if (value <= base || value > base + m) ok = false;
                if (monotone && pos > base + 1 && sigma(pos) >= sigma(pos - 1)) ok = false;
            }
            base += m;
            if (!ok) break;
        }
        if (!ok) continue;

        double weight = k_factorial;
        for (int m : parts) {
            double mf = 1.0;
            for (int i = 2; i <= m; ++i) mf *= i;
            weight /= mf;
            if (square) weight /= mf;
        }

        int level_shift = 0;
        for (std::size_t i = 0; i < parts.size(); ++i)
            level_shift += static_cast<int>(i) * parts[i];
        double geom = std::pow(1.0 - alpha, k) * std::pow(alpha, level_shift);
        int suffix = k;
        for (int m : parts) {
            geom /= 1.0 - std::pow(alpha, suffix);
            suffix -= m;
        }
        total += weight * geom;
    }
    return total;
}

}  // namespace permlim
