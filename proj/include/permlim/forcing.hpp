#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "permlim/estimate.hpp"
#include "permlim/permuton.hpp"

namespace permlim {

// One checked constraint of a forcing system.  `pass` always means
// |measured.value - target| <= tolerance.
struct ForcingReport {
    std::string constraint;
    double target = 0.0;
    Estimate measured;
    double tolerance = 0.0;
    bool pass = false;
};

ForcingReport make_forcing_report(std::string constraint, double target, Estimate measured,
                                  double tolerance);

bool all_pass(const std::vector<ForcingReport>& reports);

// "constraint,target,value,std_error,tolerance,pass" with one row per report;
// numbers use %.12g, so equal inputs give byte-identical output.
std::string forcing_csv(const std::vector<ForcingReport>& reports);

struct ForcingTolerances {
    double exact = 1e-12;    // closed-form evaluations
    double support = 1e-12;  // pointwise residuals on support samples / grids
    double mc_z = 4.0;       // MC rows pass within max(mc_floor, mc_z * se)
    double mc_floor = 1e-4;
};

// Checks the constraint system characterizing the decreasing-segment
// geometric permuton: zero density of 231 and 312, inversion density
// (1-alpha)/(1+alpha), and a linear support residual that vanishes exactly
// on the anti-diagonal block segments.  With `target` set, the same
// constraints are evaluated against that permuton instead (densities by
// Monte Carlo), which is the negative-control mode.
std::vector<ForcingReport> verify_monotone_forcing(double alpha, std::uint64_t samples,
                                                   std::uint64_t seed,
                                                   const ForcingTolerances& tols = {},
                                                   const Permuton* target = nullptr);

// Checks the constraint system characterizing the uniform-square geometric
// permuton: inversion density (1-alpha)/(2(1+alpha)) (closed form and MC),
// a quadrant-flag product identity evaluated in closed form on in-block
// grids, and an unbiased Monte Carlo estimate of the integrated squared
// flag-product residual.  With `target` set, only the MC rows are emitted,
// evaluated against that permuton.
std::vector<ForcingReport> verify_square_forcing(double alpha, std::uint64_t samples,
                                                 std::uint64_t seed,
                                                 const ForcingTolerances& tols = {},
                                                 const Permuton* target = nullptr);

// Which corner rectangle between sampled support points is tested for
// uniformity: two_point spans [x1,x2] x [y2,y1] for support points with
// x1 < x2, y2 < y1; three_point spans [x2,x3] x [y2,y3] for support points
// with x1 < x2 < x3 and y2 < y3 < y1.
enum class MomentGate { two_point, three_point };

// Monte Carlo moment statistic that vanishes iff the permuton restricted to
// every gated corner rectangle is a multiple of the Lebesgue measure there.
// Per outer trial the gating support points are drawn from mu and the
// integrand is averaged over inner_samples draws of two lambda points; the
// rectangle masses come from the exact cdf.  Nonnegative in expectation.
Estimate moment_uniformity_statistic(const Permuton& mu, std::uint64_t samples,
                                     std::uint32_t inner_samples, std::uint64_t seed,
                                     MomentGate gate = MomentGate::two_point);

// Bivariate polynomial sum of coeff * x^xdeg * y^ydeg.
struct Poly2 {
    struct Term {
        int xdeg = 0;
        int ydeg = 0;
        double coeff = 0.0;
    };
    std::vector<Term> terms;

    double operator()(double x, double y) const;
};

// Midpoint-rule quadrature of the two residuals of a polynomial forcing
// pair: the product integral of (F - p_i)^2 over all given polynomials, and
// the single integral of (F - reference)^2, both against the Lebesgue
// measure on the unit square.  Total degree of every term is capped at 8.
std::pair<double, double> polynomial_constraint_residual(const Permuton& mu,
                                                         const std::vector<Poly2>& polys,
                                                         const Poly2& reference, int grid = 512);

}  // namespace permlim
