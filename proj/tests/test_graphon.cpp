#include "doctest.h"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "permlim/errors.hpp"
#include "permlim/graph.hpp"
#include "permlim/graphon.hpp"
#include "permlim/rng.hpp"

using namespace permlim;

namespace {

// independent subset-enumeration oracle using only is_isomorphic
Rational brute_density(const Graph& h, const Graph& g) {
    const int k = h.order();
    const int n = g.order();
    if (k > n) return Rational(0);
    BigInt hits(0);
    std::vector<int> sel;
    const auto recurse = [&](auto&& self, int next) -> void {
        if (static_cast<int>(sel.size()) == k) {
            if (is_isomorphic(g.induced(sel), h)) ++hits;
            return;
        }
        for (int v = next; v <= n; ++v) {
            sel.push_back(v);
            self(self, v + 1);
            sel.pop_back();
        }
    };
    recurse(recurse, 1);
    return Rational(hits, binomial(n, k));
}

Graphon half_step() {
    return Graphon::step({0.5, 0.5}, {{0.2, 0.7}, {0.7, 0.4}});
}

}  // namespace

TEST_CASE("graph construction and serialization") {
    const Graph p3 = Graph::path(3);
    CHECK(p3.order() == 3);
    CHECK(p3.edge_count() == 2);
    CHECK(p3.has_edge(1, 2));
    CHECK(p3.has_edge(3, 2));
    CHECK_FALSE(p3.has_edge(1, 3));
    CHECK(p3.to_string() == "3; 1-2,2-3");
    CHECK(Graph::from_string("3; 1-2,2-3") == p3);
    CHECK(Graph::from_string("4").edge_count() == 0);
    CHECK(Graph::from_string("4;").order() == 4);
    CHECK(Graph::from_string(Graph::cycle(5).to_string()) == Graph::cycle(5));

    CHECK_THROWS_AS(Graph::from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_string("3; 1-4"), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_string("3; 2-2"), std::invalid_argument);
    CHECK_THROWS_AS(Graph(0), std::invalid_argument);

    const Graph cu = Graph::clique_union({3, 2});
    CHECK(cu.order() == 5);
    CHECK(cu.edge_count() == 4);
    CHECK(*cu.clique_component_sizes() == std::vector<int>{3, 2});
    CHECK_FALSE(Graph::path(3).clique_component_sizes().has_value());
    CHECK(disjoint_union(Graph::complete(3), Graph::complete(2)) == cu);
}

TEST_CASE("isomorphism and automorphisms") {
    Graph c4_relabeled(4);  // cycle 1-3-2-4
    c4_relabeled.add_edge(1, 3);
    c4_relabeled.add_edge(3, 2);
    c4_relabeled.add_edge(2, 4);
    c4_relabeled.add_edge(4, 1);
    CHECK(is_isomorphic(Graph::cycle(4), c4_relabeled));
    CHECK_FALSE(is_isomorphic(Graph::cycle(4), Graph::path(4)));
    CHECK_FALSE(is_isomorphic(Graph::cycle(4), Graph::complete(4)));
    CHECK(is_isomorphic(Graph::clique_union({4, 2, 2, 1}), Graph::clique_union({2, 4, 1, 2})));
    CHECK_FALSE(is_isomorphic(Graph::clique_union({4, 2}), Graph::clique_union({3, 3})));

    // 12 vertices, not clique unions: rejected rather than silently wrong
    CHECK_THROWS_AS(is_isomorphic(Graph::path(12), Graph::path(12)), unsupported_error);

    CHECK(automorphism_count(Graph::complete(3)) == 6);
    CHECK(automorphism_count(Graph::path(3)) == 2);
    CHECK(automorphism_count(Graph::cycle(4)) == 8);
    CHECK(automorphism_count(Graph::empty_graph(4)) == 24);
    CHECK(automorphism_count(Graph::clique_union({2, 2})) == 8);
}

TEST_CASE("exact graph densities") {
    CHECK(graph_density(Graph::complete(2), Graph::complete(3)) == Rational(1));
    CHECK(graph_density(Graph::path(3), Graph::complete(3)) == Rational(0));
    CHECK(graph_density(Graph::complete(2), Graph::path(3)) == Rational(2, 3));
    CHECK(graph_density(Graph::complete(4), Graph::complete(3)) == Rational(0));

    SUBCASE("order-3 classes partition the subsets") {
        Rng rng(5);
        Graph g(7);
        for (int i = 1; i <= 7; ++i)
            for (int j = i + 1; j <= 7; ++j)
                if (rng.bernoulli(0.4)) g.add_edge(i, j);
        Graph k2_plus(3);
        k2_plus.add_edge(1, 2);
        const Graph classes[] = {Graph::empty_graph(3), k2_plus, Graph::path(3),
                                 Graph::complete(3)};
        Rational total(0);
        for (const Graph& h : classes) total += graph_density(h, g);
        CHECK(total == Rational(1));
    }

    SUBCASE("matches the brute-force oracle") {
        Rng rng(9);
        Graph g(8);
        for (int i = 1; i <= 8; ++i)
            for (int j = i + 1; j <= 8; ++j)
                if (rng.bernoulli(0.5)) g.add_edge(i, j);
        for (const Graph& h : {Graph::path(4), Graph::cycle(4), Graph::clique_union({2, 2})})
            CHECK(graph_density(h, g) == brute_density(h, g));
    }

    SUBCASE("clique-union fast path agrees with enumeration") {
        const Graph host = Graph::clique_union({4, 3, 1});
        for (const Graph& h :
             {Graph::clique_union({2, 2}), Graph::clique_union({3, 1}), Graph::complete(3),
              Graph::clique_union({1, 1, 1})})
            CHECK(graph_density(h, host) == brute_density(h, host));
        // host beyond the 8-vertex canonical limit
        const Graph big = Graph::clique_union({5, 4, 2, 2, 1});
        const Graph want = Graph::clique_union({4, 2});
        // direct count: components {4,2} into distinct host cliques
        // C(5,4)C(4,2)+C(5,4)C(2,2)x2+C(4,4)C(5,2)+C(4,4)C(2,2)x2
        const BigInt count = 5 * 6 + 5 * 1 * 2 + 1 * 10 + 1 * 1 * 2;
        CHECK(graph_density(want, big) == Rational(count, binomial(14, 6)));
    }
}

TEST_CASE("inversion graphs") {
    CHECK(inversion_graph(Permutation::identity(5)) == Graph::empty_graph(5));
    CHECK(inversion_graph(Permutation::from_string("54321")) == Graph::complete(5));
    Graph one_edge(3);
    one_edge.add_edge(2, 3);
    CHECK(inversion_graph(Permutation::from_string("132")) == one_edge);

    Rng rng(3);
    const Permutation pi = Permuton::uniform().sample_permutation(10, rng);
    const Graph g = inversion_graph(pi);
    CHECK(Rational(g.edge_count(), binomial(10, 2)) ==
          pattern_density(Permutation::from_string("21"), pi));
}

TEST_CASE("graphon kernels") {
    const Graphon cb = Graphon::clique_blocks(BlockSizes::geometric(0.5));
    CHECK(cb.kernel(0.1, 0.4) == 1.0);
    CHECK(cb.kernel(0.1, 0.6) == 0.0);
    CHECK(cb.kernel(0.55, 0.7) == 1.0);

    const Graphon planted = Graphon::planted(Graphon::constant(0.3), BlockSizes::geometric(0.5));
    CHECK(planted.kernel(0.1, 0.4) == doctest::Approx(0.3));
    CHECK(planted.kernel(0.1, 0.6) == 0.0);

    CHECK(half_step().kernel(0.25, 0.75) == doctest::Approx(0.7));
    CHECK(half_step().kernel(0.75, 0.8) == doctest::Approx(0.4));
    CHECK(Graphon::constant(0.42).kernel(0.9, 0.9) == doctest::Approx(0.42));

    CHECK_FALSE(Graphon::permuton_induced(Permuton::uniform()).pointwise());
    CHECK_THROWS_AS(Graphon::permuton_induced(Permuton::uniform()).kernel(0.5, 0.5),
                    unsupported_error);

    SUBCASE("explicit prefix with a matching geometric tail is the pure geometric law") {
        const BlockSizes pure = BlockSizes::geometric(0.5);
        const BlockSizes split = BlockSizes::with_geometric_tail({0.5}, 0.5);
        for (int i = 1; i <= 6; ++i) CHECK(split.size(i) == doctest::Approx(pure.size(i)));
        for (double t : {0.1, 0.3, 0.6, 0.8, 0.93, 0.99})
            CHECK(split.block_of(t) == pure.block_of(t));
        CHECK(split.power_sum(2) == doctest::Approx(pure.power_sum(2)));
        CHECK(pure.power_sum(2) == doctest::Approx(1.0 / 3.0));
    }

    SUBCASE("block size validation") {
        CHECK_THROWS_AS(BlockSizes::explicit_sizes({0.5, 0.4}), std::invalid_argument);
        CHECK_THROWS_AS(BlockSizes::explicit_sizes({1.5, -0.5}), std::invalid_argument);
        CHECK_THROWS_AS(BlockSizes::with_geometric_tail({1.0}, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(BlockSizes::geometric(1.0), std::invalid_argument);
        CHECK_THROWS_AS(Graphon::step({0.5, 0.5}, {{0.2, 0.7}, {0.6, 0.4}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(Graphon::step({0.5, 0.6}, {{0.2, 0.7}, {0.7, 0.4}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(Graphon::constant(1.2), std::invalid_argument);
    }
}

TEST_CASE("graph sampling") {
    CHECK(Graphon::constant(1.0).sample_graph(6, 4) == Graph::complete(6));
    CHECK(Graphon::constant(0.0).sample_graph(6, 4) == Graph::empty_graph(6));
    CHECK(Graphon::constant(0.5).sample_graph(12, 8) == Graphon::constant(0.5).sample_graph(12, 8));

    const Permuton reversal =
        Permuton::mixture({PolygonPiece{{{0.0, 1.0}, {1.0, 0.0}}, 1.0}});
    CHECK(Graphon::permuton_induced(reversal).sample_graph(7, 2) == Graph::complete(7));

    // clique-blocks samples are disjoint unions of cliques
    const Graph g = Graphon::clique_blocks(BlockSizes::geometric(0.4)).sample_graph(40, 11);
    CHECK(g.clique_component_sizes().has_value());
}

TEST_CASE("graphon densities by sampling") {
    SUBCASE("constant edge density") {
        const Estimate e = density_mc(Graph::complete(2), Graphon::constant(0.3), 200'000, 1);
        CHECK(std::abs(e.value - 0.3) < 4.0 * e.std_error);
    }

    SUBCASE("no induced path in clique blocks, ever") {
        const Estimate e = density_mc(Graph::path(3),
                                      Graphon::clique_blocks(BlockSizes::geometric(0.37)),
                                      100'000, 2);
        CHECK(e.value == 0.0);
    }

    SUBCASE("edge density of geometric clique blocks") {
        const Estimate e = density_mc(Graph::complete(2),
                                      Graphon::clique_blocks(BlockSizes::geometric(0.5)),
                                      1'000'000, 3);
        CHECK(std::abs(e.value - 1.0 / 3.0) < 3.0 * e.std_error);
    }
}

TEST_CASE("quadrature densities") {
    CHECK(density_quadrature(Graph::complete(2), Graphon::constant(0.37), 8) ==
          doctest::Approx(0.37).epsilon(1e-12));
    CHECK(density_quadrature(Graph::complete(3), Graphon::constant(0.5), 16) ==
          doctest::Approx(0.125).epsilon(1e-9));

    SUBCASE("grid-aligned step graphon is quadrature-exact") {
        const Graphon w = half_step();
        const auto* step = w.get_if<Graphon::Step>();
        double exact = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                exact += step->widths[static_cast<std::size_t>(i)] *
                         step->widths[static_cast<std::size_t>(j)] *
                         step->values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        CHECK(density_quadrature(Graph::complete(2), w, 8) ==
              doctest::Approx(exact).epsilon(1e-12));
    }

    SUBCASE("quadrature agrees with sampling on step graphons") {
        const Graphon w = half_step();
        for (const Graph& h : {Graph::complete(2), Graph::complete(3), Graph::path(3)}) {
            const double q = density_quadrature(h, w, 64);
            const Estimate e = density_mc(h, w, 300'000, 17);
            CHECK(std::abs(q - e.value) < std::max(4.0 * e.std_error, 1e-3));
        }
    }

    SUBCASE("refinement loop reports convergence") {
        const QuadratureResult r =
            density_quadrature_refined(Graph::complete(3), Graphon::constant(0.5), 1e-10);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(0.125).epsilon(1e-9));
    }

    SUBCASE("rejects kernels that are not pointwise") {
        CHECK_THROWS_AS(
            density_quadrature(Graph::complete(2),
                               Graphon::permuton_induced(Permuton::uniform()), 8),
            unsupported_error);
        CHECK_THROWS_AS(density_quadrature(Graph::complete(6), Graphon::constant(0.5), 8),
                        std::invalid_argument);
        CHECK_THROWS_AS(density_quadrature(Graph::complete(2), Graphon::constant(0.5), 1),
                        std::invalid_argument);
    }
}

TEST_CASE("permuton-induced graphons match inversion graphs of sampled permutations") {
    const Permuton mu = Permuton::square_geometric(0.5);
    const Graphon w = Graphon::permuton_induced(mu);

    const Estimate direct = density_mc(Graph::complete(3), w, 300'000, 21);
    // K_3 in the inversion graphon is the 321 pattern
    CHECK(std::abs(direct.value - 1.0 / 42.0) < 4.0 * direct.std_error);

    const Permutation big = mu.sample_permutation(500, 22);
    const Rational sampled = graph_density(Graph::complete(3), inversion_graph(big));
    // the induced-density fluctuation of a 500-vertex sample stays well
    // within ~4 * sqrt(9 * var / n) ~ 0.04
    CHECK(std::abs(direct.value - to_double(sampled)) < 0.04);
}
