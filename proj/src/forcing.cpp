#include "permlim/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "permlim/mc.hpp"
#include "permlim/permutation.hpp"

namespace permlim {

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void check_mc_args(double alpha, std::uint64_t samples) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
    if (samples == 0) throw std::invalid_argument("samples must be positive");
}

double mc_tolerance(const ForcingTolerances& tols, const Estimate& est) {
    return std::max(tols.mc_floor, tols.mc_z * est.std_error);
}

// Largest |1 - x - y + F + (alpha/(1-alpha))(2F - x - y)| over sampled
// support points; identically zero when the mass sits on segments
// x + y = z + z' with z' = 1 - alpha (1 - z).
ForcingReport support_residual_report(const Permuton& mu, double alpha, std::uint64_t n,
                                      std::uint64_t seed, double tolerance) {
    Rng rng(seed);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        Point p = mu.sample_point(rng);
        double f = mu.cdf(p.x, p.y);
        double g = 1.0 - p.x - p.y + f - alpha / (1.0 - alpha) * (p.x + p.y - 2.0 * f);
        worst = std::max(worst, std::abs(g));
    }
    return make_forcing_report("support-residual", 0.0, Estimate{worst, 0.0, n}, tolerance);
}

bool in_quadrant(const Point& p, const Point& root, bool east, bool north) {
    bool x_ok = east ? p.x > root.x : p.x < root.x;
    bool y_ok = north ? p.y > root.y : p.y < root.y;
    return x_ok && y_ok;
}

// One unbiased sample of the flag-product combination
//   (1-a)(F_ne f_se - F_se f_ne) f_nw
//     - a (F_nw f_nw f_se + F_se f_nw f_se + F_nw f_sw f_se + F_se f_nw f_ne),
// with every factor estimated from fresh points: single-point indicators for
// the quadrant masses F, ordered two-point indicators for the f flags.
double flag_combination_sample(const Permuton& mu, const Point& root, double alpha, Rng& rng) {
    auto f_mass = [&](bool east, bool north) {
        return in_quadrant(mu.sample_point(rng), root, east, north) ? 1.0 : 0.0;
    };
    auto f_same = [&](bool east, bool north) {
        Point p = mu.sample_point(rng);
        Point q = mu.sample_point(rng);
        return in_quadrant(p, root, east, north) && in_quadrant(q, root, east, north) ? 1.0 : 0.0;
    };
    // One point in the upper and one in the lower of two vertically stacked
    // quadrants, the upper one first in x order.
    auto f_split = [&](bool east) {
        Point p = mu.sample_point(rng);
        Point q = mu.sample_point(rng);
        bool fwd = in_quadrant(p, root, east, true) && in_quadrant(q, root, east, false) &&
                   p.x < q.x;
        bool rev = in_quadrant(q, root, east, true) && in_quadrant(p, root, east, false) &&
                   q.x < p.x;
        return fwd || rev ? 1.0 : 0.0;
    };

    double value = 0.0;
    {
        double a = f_mass(true, true), b = f_same(true, false), c = f_same(false, true);
        value += (1.0 - alpha) * a * b * c;
    }
    {
        double a = f_mass(true, false), b = f_split(true), c = f_same(false, true);
        value -= (1.0 - alpha) * a * b * c;
    }
    {
        double a = f_mass(false, true), b = f_same(false, true), c = f_same(true, false);
        value -= alpha * a * b * c;
    }
    {
        double a = f_mass(true, false), b = f_same(false, true), c = f_same(true, false);
        value -= alpha * a * b * c;
    }
    {
        double a = f_mass(false, true), b = f_split(false), c = f_same(true, false);
        value -= alpha * a * b * c;
    }
    {
        double a = f_mass(true, false), b = f_same(false, true), c = f_split(true);
        value -= alpha * a * b * c;
    }
    return value;
}

ForcingReport flag_identity_mc_report(const Permuton& mu, double alpha, std::uint64_t samples,
                                      std::uint64_t seed, const ForcingTolerances& tols) {
    Estimate est = mc_mean(samples, seed, [&mu, alpha](Rng& rng) {
        Point root = mu.sample_point(rng);
        double first = flag_combination_sample(mu, root, alpha, rng);
        double second = flag_combination_sample(mu, root, alpha, rng);
        return first * second;
    });
    return make_forcing_report("flag-identity-mc", 0.0, est, mc_tolerance(tols, est));
}

// The same combination evaluated in closed form on in-block grid points of
// the square-geometric permuton, where the two-point flags reduce to
// products of quadrant masses.
ForcingReport flag_identity_grid_report(const Permuton& mu, double alpha, int blocks, int grid,
                                        double tolerance) {
    double worst = 0.0;
    double z = 0.0;
    for (int i = 0; i < blocks; ++i) {
        double zp = 1.0 - (1.0 - z) * alpha;
        double w = zp - z;
        for (int a = 0; a < grid; ++a) {
            double x = z + (a + 0.5) * w / grid;
            for (int b = 0; b < grid; ++b) {
                double y = z + (b + 0.5) * w / grid;
                QuadrantFlags q = mu.quadrant_flags(x, y);
                double f_nw = q.nw * q.nw;
                double f_se = q.se * q.se;
                double f_ne = q.se * (q.ne - (1.0 - zp));
                double f_sw = (q.sw - z) * q.nw;
                double lhs = (1.0 - alpha) * (q.ne * f_se - q.se * f_ne) * f_nw;
                double rhs = alpha * (q.nw * f_nw * f_se + q.se * f_nw * f_se +
                                      q.nw * f_sw * f_se + q.se * f_nw * f_ne);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        z = zp;
    }
    return make_forcing_report("flag-identity-grid", 0.0,
                               Estimate{worst, 0.0,
                                        static_cast<std::uint64_t>(blocks) * grid * grid},
                               tolerance);
}

double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void validate_poly(const Poly2& poly) {
    for (const auto& term : poly.terms) {
        if (term.xdeg < 0 || term.ydeg < 0) {
            throw std::invalid_argument("polynomial degrees must be nonnegative");
        }
        if (term.xdeg + term.ydeg > 8) {
            throw std::invalid_argument("polynomial total degree exceeds 8");
        }
    }
}

}  // namespace

ForcingReport make_forcing_report(std::string constraint, double target, Estimate measured,
                                  double tolerance) {
    ForcingReport report;
    report.constraint = std::move(constraint);
    report.target = target;
    report.measured = measured;
    report.tolerance = tolerance;
    report.pass = std::abs(measured.value - target) <= tolerance;
    return report;
}

bool all_pass(const std::vector<ForcingReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const ForcingReport& r) { return r.pass; });
}

std::string forcing_csv(const std::vector<ForcingReport>& reports) {
    std::string out = "constraint,target,value,std_error,tolerance,pass\n";
    for (const auto& r : reports) {
        out += r.constraint;
        out += ',';
        out += fmt_g(r.target);
        out += ',';
        out += fmt_g(r.measured.value);
        out += ',';
        out += fmt_g(r.measured.std_error);
        out += ',';
        out += fmt_g(r.tolerance);
        out += ',';
        out += r.pass ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::vector<ForcingReport> verify_monotone_forcing(double alpha, std::uint64_t samples,
                                                   std::uint64_t seed,
                                                   const ForcingTolerances& tols,
                                                   const Permuton* target) {
    check_mc_args(alpha, samples);
    Permuton family = Permuton::monotone_geometric(alpha);
    const Permuton& mu = target ? *target : family;

    std::vector<ForcingReport> out;
    std::uint64_t row = 0;
    for (const char* name : {"231", "312"}) {
        Permutation sigma = Permutation::from_string(name);
        Estimate est = density_mc(mu, sigma, samples, mix_seed(seed, row++));
        out.push_back(make_forcing_report(std::string("pattern-") + name + "-zero", 0.0, est,
                                          0.0));
    }

    double d21_target = (1.0 - alpha) / (1.0 + alpha);
    Permutation inv = Permutation::from_string("21");
    if (target) {
        Estimate est = density_mc(mu, inv, samples, mix_seed(seed, row++));
        out.push_back(make_forcing_report("inversion-density", d21_target, est,
                                          mc_tolerance(tols, est)));
    } else {
        double v = density_exact_diagonal(mu, inv);
        ++row;
        out.push_back(
            make_forcing_report("inversion-density", d21_target, Estimate{v, 0.0, 0}, tols.exact));
    }

    std::uint64_t n = std::min<std::uint64_t>(samples, 16384);
    out.push_back(support_residual_report(mu, alpha, n, mix_seed(seed, row++), tols.support));
    return out;
}

std::vector<ForcingReport> verify_square_forcing(double alpha, std::uint64_t samples,
                                                 std::uint64_t seed,
                                                 const ForcingTolerances& tols,
                                                 const Permuton* target) {
    check_mc_args(alpha, samples);
    Permuton family = Permuton::square_geometric(alpha);
    const Permuton& mu = target ? *target : family;

    std::vector<ForcingReport> out;
    double d21_target = (1.0 - alpha) / (2.0 * (1.0 + alpha));
    Permutation inv = Permutation::from_string("21");
    if (!target) {
        double v = density_exact_diagonal(mu, inv);
        out.push_back(
            make_forcing_report("inversion-density", d21_target, Estimate{v, 0.0, 0}, tols.exact));
    }
    Estimate est = density_mc(mu, inv, samples, mix_seed(seed, 1));
    out.push_back(
        make_forcing_report("inversion-density-mc", d21_target, est, mc_tolerance(tols, est)));
    if (!target) {
        out.push_back(flag_identity_grid_report(mu, alpha, 10, 20, tols.support));
    }
    out.push_back(flag_identity_mc_report(mu, alpha, samples, mix_seed(seed, 3), tols));
    return out;
}

Estimate moment_uniformity_statistic(const Permuton& mu, std::uint64_t samples,
                                     std::uint32_t inner_samples, std::uint64_t seed,
                                     MomentGate gate) {
    if (samples == 0 || inner_samples == 0) {
        throw std::invalid_argument("samples and inner_samples must be positive");
    }
    return mc_mean(samples, seed, [&mu, inner_samples, gate](Rng& rng) {
        Point a = mu.sample_point(rng);
        Point b = mu.sample_point(rng);
        double lx, rx, by, ty;
        if (gate == MomentGate::two_point) {
            if (!(a.x < b.x && b.y < a.y)) return 0.0;
            lx = a.x;
            rx = b.x;
            by = b.y;
            ty = a.y;
        } else {
            Point c = mu.sample_point(rng);
            if (!(a.x < b.x && b.x < c.x && b.y < c.y && c.y < a.y)) return 0.0;
            lx = b.x;
            rx = c.x;
            by = b.y;
            ty = c.y;
        }
        double acc = 0.0;
        for (std::uint32_t t = 0; t < inner_samples; ++t) {
            double x = rng.uniform01();
            double y = rng.uniform01();
            double xp = rng.uniform01();
            double yp = rng.uniform01();
            if (x < lx || x > rx || xp < lx || xp > rx) continue;
            if (y < by || y > ty || yp < by || yp > ty) continue;
            double m = mu.rect_mass(lx, by, x, y);
            double mp = mu.rect_mass(lx, by, xp, yp);
            double u = (x - lx) * (y - by);
            double v = (xp - lx) * (yp - by);
            acc += v * v * m * m - u * m * v * mp;
        }
        return acc / inner_samples;
    });
}

double Poly2::operator()(double x, double y) const {
    double total = 0.0;
    for (const auto& term : terms) {
        total += term.coeff * ipow(x, term.xdeg) * ipow(y, term.ydeg);
    }
    return total;
}

std::pair<double, double> polynomial_constraint_residual(const Permuton& mu,
                                                         const std::vector<Poly2>& polys,
                                                         const Poly2& reference, int grid) {
    if (polys.empty()) throw std::invalid_argument("need at least one polynomial");
    if (grid < 1) throw std::invalid_argument("grid must be positive");
    for (const auto& poly : polys) validate_poly(poly);
    validate_poly(reference);

    double product_sum = 0.0;
    double reference_sum = 0.0;
    for (int i = 0; i < grid; ++i) {
        double x = (i + 0.5) / grid;
        for (int j = 0; j < grid; ++j) {
            double y = (j + 0.5) / grid;
            double f = mu.cdf(x, y);
            double product = 1.0;
            for (const auto& poly : polys) {
                double diff = f - poly(x, y);
                product *= diff * diff;
            }
            product_sum += product;
            double diff = f - reference(x, y);
            reference_sum += diff * diff;
        }
    }
    double cells = static_cast<double>(grid) * grid;
    return {product_sum / cells, reference_sum / cells};
}

}  // namespace permlim
