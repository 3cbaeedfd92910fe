#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "permlim/block_sizes.hpp"
#include "permlim/estimate.hpp"
#include "permlim/graph.hpp"
#include "permlim/permuton.hpp"

namespace permlim {

// A symmetric measurable function [0,1]^2 -> [0,1] up to weak isomorphism.
// Supported forms:
//
//   Constant        W = rho everywhere.
//   Step            piecewise constant on a grid of bands.
//   CliqueBlocks    1 on the diagonal squares of a block partition, else 0
//                   (a disjoint union of "clique" blocks).
//   Planted         a base graphon copied onto each diagonal block, 0 off
//                   the blocks.
//   PermutonInduced the inversion graphon of a permuton; it has no pointwise
//                   kernel on the uniform ground space and is used through
//                   sampling only.
class Graphon {
public:
    struct Constant {
        double rho = 0.0;
    };
    struct Step {
        std::vector<double> widths;
        std::vector<std::vector<double>> values;
    };
    struct CliqueBlocks {
        BlockSizes sizes;
    };
    struct Planted {
        std::shared_ptr<const Graphon> base;
        BlockSizes sizes;
    };
    struct PermutonInduced {
        Permuton mu;
    };
    using Form = std::variant<Constant, Step, CliqueBlocks, Planted, PermutonInduced>;

    static Graphon constant(double rho);
    static Graphon step(std::vector<double> widths, std::vector<std::vector<double>> values);
    static Graphon clique_blocks(BlockSizes sizes);
    static Graphon planted(Graphon base, BlockSizes sizes);
    static Graphon permuton_induced(Permuton mu);

    bool pointwise() const;

    // Kernel value; coordinates are clamped into [0,1).  Throws
    // unsupported-form for PermutonInduced.
    double kernel(double x, double y) const;

    Graph sample_graph(int n, Rng& rng) const;
    Graph sample_graph(int n, std::uint64_t seed) const;

    const Form& form() const { return form_; }

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&form_);
    }

private:
    explicit Graphon(Form form) : form_(std::move(form)) {}

    Form form_;
};

// Monte Carlo estimate of d(H, W): the probability that a W-random graph of
// order |H| is isomorphic to H.  Requires |H| <= 8.
Estimate density_mc(const Graph& h, const Graphon& w, std::uint64_t samples, std::uint64_t seed);

// Midpoint tensor-grid quadrature of d(H, W) = k!/|Aut(H)| * integral of the
// edge/non-edge product.  Requires a pointwise kernel, |H| <= 5, grid >= 2.
double density_quadrature(const Graph& h, const Graphon& w, int grid);

struct QuadratureResult {
    double value = 0.0;
    int grid = 0;
    bool converged = false;
};

// Doubles the grid until two successive evaluations agree within tol or the
// grid cap is exceeded; returns the finest evaluation either way.
QuadratureResult density_quadrature_refined(const Graph& h, const Graphon& w, double tol,
                                            int start_grid = 16, int max_grid = 512);

}  // namespace permlim
