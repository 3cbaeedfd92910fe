#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "permlim/clique.hpp"
#include "permlim/descriptor.hpp"
#include "permlim/errors.hpp"
#include "permlim/forcing.hpp"
#include "permlim/heatmap.hpp"
#include "permlim/rng.hpp"
#include "permlim/witness.hpp"

namespace {

using namespace permlim;

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Minimal CSV quoting: needed for graph strings like "3; 1-2,2-3".
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\" ") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

struct DensityArgs {
    std::string object;
    std::vector<std::string> items;
    int order = 0;
    std::string mode = "auto";
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    int grid = 0;
    double tol = 1e-6;
    std::string out;
};

struct VerifyArgs {
    std::string family;
    double alpha = 0.0;
    std::string object;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::string out;
};

struct WitnessArgs {
    int n = 1;
    double alpha = 0.5;
    double epsilon = 0.0;
    double rho = 0.5;
    int max_iter = 50;
    double tol = 1e-12;
    std::string out;
};

struct HeatmapArgs {
    std::string object;
    int resolution = 256;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string out;
};

bool exact_diagonal_available(const Permuton& mu, const Permutation& sigma) {
    if (sigma.order() > 7) return false;
    return mu.get_if<Permuton::MonotoneGeometric>() != nullptr ||
           mu.get_if<Permuton::SquareGeometric>() != nullptr;
}

double graphon_exact_density(const Graph& h, const Graphon& w) {
    if (h.order() == 0) return 1.0;
    if (const auto* c = w.get_if<Graphon::Constant>()) return constant_graphon_density(h, c->rho);
    if (const auto* cb = w.get_if<Graphon::CliqueBlocks>()) {
        auto profile = h.clique_component_sizes();
        if (!profile)
            throw unsupported_error(
                "exact density on clique blocks needs a disjoint union of cliques");
        return clique_union_density(*profile,
                                    CliqueDensityVector::from_blocks(cb->sizes, h.order()));
    }
    if (const auto* p = w.get_if<Graphon::Planted>()) {
        if (const auto* base = p->base->get_if<Graphon::Constant>())
            return planted_density(h, constant_base_map(h, base->rho), p->sizes);
    }
    throw unsupported_error(
        "no exact density for this graphon form; use --mode mc or --mode quadrature");
}

int run_density(const DensityArgs& a) {
    LimitObject object = parse_limit_object(a.object);
    std::string csv = "pattern_or_graph,value,std_error,mode\n";
    std::uint64_t row = 0;
    auto add = [&](const std::string& item, const Estimate& e, const char* mode) {
        csv += csv_field(item) + "," + fmt_g(e.value) + "," + fmt_g(e.std_error) + "," + mode +
               "\n";
    };

    if (const auto* mu = std::get_if<Permuton>(&object)) {
        if (a.mode == "quadrature")
            throw std::invalid_argument("quadrature applies to pointwise graphons only");
        std::vector<Permutation> patterns;
        for (const auto& item : a.items) patterns.push_back(Permutation::from_string(item));
        if (a.order > 0) {
            std::vector<int> line(static_cast<std::size_t>(a.order));
            std::iota(line.begin(), line.end(), 1);
            do {
                patterns.emplace_back(line);
            } while (std::next_permutation(line.begin(), line.end()));
        }
        if (patterns.empty())
            throw std::invalid_argument(
                "nothing to measure: pass patterns (e.g. 21 2413) or --order N");
        for (const auto& sigma : patterns) {
            const std::uint64_t row_seed = mix_seed(a.seed, row++);
            const bool available = exact_diagonal_available(*mu, sigma);
            if (a.mode == "exact" && !available)
                throw unsupported_error(
                    "exact pattern density needs monotone:A or square:A and order <= 7");
            if (available && a.mode != "mc")
                add(sigma.to_string(), {density_exact_diagonal(*mu, sigma), 0.0, 0}, "exact");
            else
                add(sigma.to_string(), density_mc(*mu, sigma, a.samples, row_seed), "mc");
        }
    } else {
        const Graphon& w = std::get<Graphon>(object);
        if (a.order > 0)
            throw std::invalid_argument(
                "--order enumerates permutation patterns; graphons take explicit graphs");
        if (a.items.empty())
            throw std::invalid_argument("nothing to measure: pass graphs like \"3; 1-2,2-3\"");
        for (const auto& item : a.items) {
            const Graph h = Graph::from_string(item);
            const std::uint64_t row_seed = mix_seed(a.seed, row++);
            if (a.mode == "exact") {
                add(h.to_string(), {graphon_exact_density(h, w), 0.0, 0}, "exact");
            } else if (a.mode == "quadrature") {
                const double v = a.grid > 0 ? density_quadrature(h, w, a.grid)
                                            : density_quadrature_refined(h, w, a.tol).value;
                add(h.to_string(), {v, 0.0, 0}, "quadrature");
            } else {
                add(h.to_string(), density_mc(h, w, a.samples, row_seed), "mc");
            }
        }
    }
    write_output(a.out, csv);
    return 0;
}

int run_verify(const VerifyArgs& a) {
    ForcingTolerances tols;
    if (a.tol > 0.0) {
        tols.exact = a.tol;
        tols.support = a.tol;
    }
    std::optional<Permuton> target;
    if (!a.object.empty()) target = parse_permuton(a.object);
    const Permuton* tp = target ? &*target : nullptr;
    const auto reports = a.family == "monotone"
                             ? verify_monotone_forcing(a.alpha, a.samples, a.seed, tols, tp)
                             : verify_square_forcing(a.alpha, a.samples, a.seed, tols, tp);
    write_output(a.out, forcing_csv(reports));
    return all_pass(reports) ? 0 : 1;
}

int run_witness(const WitnessArgs& a) {
    if (a.epsilon == 0.0)
        throw std::invalid_argument(
            "epsilon=0 is degenerate: the unperturbed block sizes already satisfy the system; "
            "pick a nonzero perturbation");
    WitnessProblem problem;
    problem.n = a.n;
    problem.alpha = a.alpha;
    problem.epsilon = a.epsilon;
    const WitnessResult result = solve_witness(problem, a.max_iter, a.tol);
    if (!result.converged) {
        std::fprintf(stderr,
                     "permlim: witness iteration did not converge (n=%d alpha=%g epsilon=%g, "
                     "%d halvings, last residual %g)\n",
                     a.n, a.alpha, a.epsilon, result.halvings,
                     result.residual_history.empty() ? 0.0 : result.residual_history.back());
        return 3;
    }
    const auto certification = certify_witness(result, problem, a.rho);
    write_output(a.out, witness_csv(problem, result, certification));
    return all_pass(certification) ? 0 : 1;
}

int run_heatmap(const HeatmapArgs& a) {
    const HeatmapConfig config{a.resolution, a.samples, a.seed};
    const LimitObject object = parse_limit_object(a.object);
    write_output(a.out,
                 std::visit([&](const auto& o) { return heatmap_pgm(o, config); }, object));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "permutation and graph limit toolkit: substructure densities, forcing verification, "
        "block-size witnesses, heatmaps"};
    app.require_subcommand(1);

    DensityArgs d;
    auto* density = app.add_subcommand(
        "density", "Tabulate substructure densities of a permuton or graphon as CSV");
    density->add_option("object", d.object, "object descriptor (shorthand or JSON file)")
        ->required();
    density->add_option("items", d.items,
                        "patterns like 21 2413, or graphs like \"3; 1-2,2-3\"");
    density->add_option("--order", d.order, "measure every pattern of this order (permutons)")
        ->check(CLI::Range(1, 8));
    density->add_option("--mode", d.mode, "auto, exact, mc, or quadrature (default auto)")
        ->check(CLI::IsMember({"auto", "exact", "mc", "quadrature"}));
    density->add_option("--samples", d.samples, "Monte Carlo sample count (default 1000000)")
        ->check(CLI::PositiveNumber);
    density->add_option("--seed", d.seed, "RNG seed (default 0)");
    density->add_option("--grid", d.grid, "fixed quadrature grid (default: refine until --tol)");
    density->add_option("--tol", d.tol, "quadrature refinement tolerance (default 1e-6)");
    density->add_option("--out", d.out, "output file (default stdout)");

    VerifyArgs v;
    auto* verify = app.add_subcommand(
        "verify", "Check the forcing constraint system of a geometric block family");
    verify->add_option("family", v.family, "monotone or square")
        ->required()
        ->check(CLI::IsMember({"monotone", "square"}));
    verify->add_option("alpha", v.alpha, "block ratio in (0,1)")->required();
    verify->add_option("--object", v.object,
                       "evaluate the constraints against this permuton instead of the family's "
                       "own (negative control)");
    verify->add_option("--samples", v.samples, "Monte Carlo sample count (default 1000000)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", v.seed, "RNG seed (default 0)");
    verify->add_option("--tol", v.tol, "override the closed-form and support tolerances");
    verify->add_option("--out", v.out, "output file (default stdout)");

    WitnessArgs w;
    auto* witness = app.add_subcommand(
        "witness", "Solve for perturbed block sizes sharing the leading power sums and certify "
                   "the resulting graphon pair");
    witness->add_option("n", w.n, "number of matched power sums")
        ->required()
        ->check(CLI::PositiveNumber);
    witness->add_option("alpha", w.alpha, "geometric ratio in (0,1)")->required();
    witness->add_option("epsilon", w.epsilon, "perturbation of block n+1 (nonzero)")->required();
    witness->add_option("--rho", w.rho, "edge density for the planted certification rows");
    witness->add_option("--max-iter", w.max_iter, "iteration cap per restart (default 50)")
        ->check(CLI::PositiveNumber);
    witness->add_option("--tol", w.tol, "residual tolerance (default 1e-12)");
    witness->add_option("--out", w.out, "output file (default stdout)");

    HeatmapArgs h;
    auto* heatmap =
        app.add_subcommand("heatmap", "Render a permuton or graphon as an ASCII graymap (P2)");
    heatmap->add_option("object", h.object, "object descriptor (shorthand or JSON file)")
        ->required();
    heatmap->add_option("--resolution", h.resolution, "pixels per side, in [16,4096]");
    heatmap->add_option("--samples", h.samples, "sample budget for sampled renders (0 = auto)");
    heatmap->add_option("--seed", h.seed, "RNG seed (default 0)");
    heatmap->add_option("--out", h.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (density->parsed()) return run_density(d);
        if (verify->parsed()) return run_verify(v);
        if (witness->parsed()) return run_witness(w);
        if (heatmap->parsed()) return run_heatmap(h);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "permlim: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "permlim: %s\n", e.what());
        return 3;
    }
    return 2;
}
