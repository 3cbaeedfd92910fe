#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "permlim/estimate.hpp"
#include "permlim/permutation.hpp"
#include "permlim/rng.hpp"

namespace permlim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// A convex polygon (or a line segment, as the degenerate case) in [0,1]^2
// carrying a share of the total mass, distributed uniformly over its area
// (respectively its length).
struct PolygonPiece {
    std::vector<Point> vertices;
    double weight = 0.0;
};

// The four quadrant masses relative to an anchor point (x, y):
// sw = mu([0,x] x [0,y]), nw = mu([0,x] x [y,1]),
// se = mu([x,1] x [0,y]), ne = mu([x,1] x [y,1]).
struct QuadrantFlags {
    double sw = 0.0;
    double nw = 0.0;
    double se = 0.0;
    double ne = 0.0;
};

// A probability measure on [0,1]^2 with uniform marginals.  Supported forms:
//
//   Uniform            Lebesgue measure, cdf xy.
//   Mixture            weighted polygon/segment pieces (weights sum to 1,
//                      marginals validated numerically).
//   MonotoneGeometric  mass w_i = (1-alpha) alpha^(i-1) on the anti-diagonal
//                      segment of the block [z_i, z'_i], z_i = 1 - alpha^(i-1),
//                      z'_i = 1 - alpha^i.
//   SquareGeometric    the same blocks, but mass spread uniformly over the
//                      full square [z_i, z'_i]^2.
//   StepMatrix         k x k doubly "stochastic-like" mass matrix M over a
//                      grid with column/row widths z (row and column sums of M
//                      must equal z), uniform within each cell.
class Permuton {
public:
    struct Uniform {};
    struct Mixture {
        std::vector<PolygonPiece> pieces;
    };
    struct MonotoneGeometric {
        double alpha = 0.5;
    };
    struct SquareGeometric {
        double alpha = 0.5;
    };
    struct StepMatrix {
        std::vector<double> z;
        std::vector<std::vector<double>> mass;
    };
    using Form = std::variant<Uniform, Mixture, MonotoneGeometric, SquareGeometric, StepMatrix>;

    static Permuton uniform();
    static Permuton mixture(std::vector<PolygonPiece> pieces);
    static Permuton monotone_geometric(double alpha);
    static Permuton square_geometric(double alpha);
    static Permuton step_matrix(std::vector<double> z, std::vector<std::vector<double>> mass);

    // Cumulative distribution function mu([0,x] x [0,y]); exact closed form
    // for every supported representation.
    double cdf(double x, double y) const;

    QuadrantFlags quadrant_flags(double x, double y) const;

    // mu([x0,x1] x [y0,y1]) by inclusion-exclusion on the cdf.
    double rect_mass(double x0, double y0, double x1, double y1) const;

    Point sample_point(Rng& rng) const;

    // n independent points.
    std::vector<Point> sample(int n, Rng& rng) const;
    std::vector<Point> sample(int n, std::uint64_t seed) const;

    // The pattern of n independent points (x-sorted, y-ranked).  Ties in
    // either coordinate are broken by redrawing the colliding point, so the
    // result is a.s. well defined for atomless marginals.
    Permutation sample_permutation(int n, Rng& rng) const;
    Permutation sample_permutation(int n, std::uint64_t seed) const;

    const Form& form() const { return form_; }

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&form_);
    }

private:
    explicit Permuton(Form form) : form_(std::move(form)) {}

    Form form_;
};

// Monte Carlo estimate of the pattern density d(sigma, mu): the probability
// that |sigma| independent mu-points form the pattern sigma.
Estimate density_mc(const Permuton& mu, const Permutation& sigma, std::uint64_t samples,
                    std::uint64_t seed);

// Exact pattern density for the block-diagonal geometric families
// (MonotoneGeometric and SquareGeometric).  The series over blocks is summed
// in closed form, so tail_epsilon only caps the error bound reported by the
// caller; the returned value is exact up to rounding.  Requires |sigma| <= 7.
double density_exact_diagonal(const Permuton& mu, const Permutation& sigma,
                              double tail_epsilon = 1e-12);

}  // namespace permlim
