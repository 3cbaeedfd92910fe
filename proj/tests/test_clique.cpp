#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "permlim/block_sizes.hpp"
#include "permlim/clique.hpp"
#include "permlim/errors.hpp"
#include "permlim/graph.hpp"
#include "permlim/graphon.hpp"
#include "permlim/rng.hpp"

using namespace permlim;

namespace {

double geometric_power_sum(double alpha, int ell) {
    return std::pow(1.0 - alpha, ell) / (1.0 - std::pow(alpha, ell));
}

// all multisets of positive integers with the given total, nondecreasing
std::vector<std::vector<int>> partitions_of(int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const auto recurse = [&](auto&& self, int left, int min_part) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = min_part; p <= left; ++p) {
            cur.push_back(p);
            self(self, left - p, p);
            cur.pop_back();
        }
    };
    recurse(recurse, total, 1);
    return out;
}

}  // namespace

TEST_CASE("block clique densities follow the closed forms") {
    for (const double alpha : {1.0 / 3.0, 0.5}) {
        const auto a = BlockSizes::geometric(alpha);
        CHECK(clique_density_blocks(a, 1) == doctest::Approx(1.0).epsilon(1e-12));
        for (int ell = 2; ell <= 6; ++ell)
            CHECK(clique_density_blocks(a, ell) ==
                  doctest::Approx(geometric_power_sum(alpha, ell)).epsilon(1e-12));
    }
    CHECK(clique_density_blocks(BlockSizes::geometric(0.5), 2) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const auto finite = BlockSizes::explicit_sizes({0.5, 0.3, 0.2});
    CHECK(clique_density_blocks(finite, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(clique_density_blocks(finite, 2) == doctest::Approx(0.38).epsilon(1e-12));
    CHECK(clique_density_blocks(finite, 3) == doctest::Approx(0.16).epsilon(1e-12));

    // 1/4 head plus a geometric-half tail of mass 1/2: 1/4 + (1/4)(1/4)/(3/4)
    const auto tailed = BlockSizes::with_geometric_tail({0.5}, 0.5);
    CHECK(clique_density_blocks(tailed, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(clique_density_blocks(finite, 0), std::invalid_argument);
}

TEST_CASE("clique density vectors from blocks satisfy the basic shape") {
    const auto v = CliqueDensityVector::from_blocks(BlockSizes::geometric(1.0 / 3.0), 8);
    CHECK(v.at(1) == doctest::Approx(1.0).epsilon(1e-12));
    for (int ell = 1; ell <= 8; ++ell) {
        CHECK(v.covers(ell));
        CHECK(v.at(ell) >= 0.0);
        CHECK(v.at(ell) <= 1.0);
        if (ell > 1) CHECK(v.at(ell) <= v.at(ell - 1));
    }
    CHECK_FALSE(v.covers(9));
    CHECK_THROWS_AS(v.at(9), std::invalid_argument);
}

TEST_CASE("clique union densities match direct occupancy counting") {
    const auto a = BlockSizes::geometric(0.5);
    const auto v = CliqueDensityVector::from_blocks(a, 6);
    const double s2 = v.at(2);
    const double s3 = v.at(3);
    const double s4 = v.at(4);
    const double s5 = v.at(5);

    for (int m = 1; m <= 5; ++m)
        CHECK(clique_union_density({m}, v) == doctest::Approx(v.at(m)).epsilon(1e-12));

    // two isolated points: the complement of an edge
    CHECK(clique_union_density({1, 1}, v) == doctest::Approx(1.0 - s2).epsilon(1e-12));
    // direct block-occupancy sums over ordered block choices:
    //   {2,1}: 3 (S2 S1 - S3),  {2,2}: 3 (S2^2 - S4),  {2,3}: 10 (S2 S3 - S5),
    //   {1,1,1}: 6 e3 = 1 - 3 S2 + 2 S3
    CHECK(clique_union_density({2, 1}, v) == doctest::Approx(3.0 * (s2 - s3)).epsilon(1e-12));
    CHECK(clique_union_density({2, 2}, v) == doctest::Approx(3.0 * (s2 * s2 - s4)).epsilon(1e-12));
    CHECK(clique_union_density({2, 3}, v) ==
          doctest::Approx(10.0 * (s2 * s3 - s5)).epsilon(1e-12));
    CHECK(clique_union_density({1, 1, 1}, v) ==
          doctest::Approx(1.0 - 3.0 * s2 + 2.0 * s3).epsilon(1e-12));
    // input order is irrelevant
    CHECK(clique_union_density({3, 2}, v) ==
          doctest::Approx(clique_union_density({2, 3}, v)).epsilon(1e-12));
}

TEST_CASE("clique union densities agree with graphon sampling") {
    constexpr std::uint64_t kSamples = 300000;
    std::uint64_t stream = 0;
    for (const double alpha : {1.0 / 3.0, 0.5}) {
        const auto blocks = BlockSizes::geometric(alpha);
        const auto w = Graphon::clique_blocks(blocks);
        const auto v = CliqueDensityVector::from_blocks(blocks, 6);
        for (int total = 2; total <= 6; ++total) {
            for (const auto& sizes : partitions_of(total)) {
                const double exact = clique_union_density(sizes, v);
                const auto mc = density_mc(Graph::clique_union(sizes), w, kSamples,
                                           mix_seed(0x5eedc11f0ed5ULL, stream++));
                CHECK(std::abs(exact - mc.value) <= std::max(4.0 * mc.std_error, 1e-4));
            }
        }
    }
}

TEST_CASE("clique union density depends only on the covered orders") {
    const auto base = CliqueDensityVector::from_blocks(BlockSizes::geometric(0.5), 6);
    auto padded = base;
    padded.values[7] = 0.123;
    padded.values[8] = 0.0005;
    auto arbitrary = CliqueDensityVector{};
    auto arbitrary_twin = CliqueDensityVector{};
    for (int ell = 1; ell <= 6; ++ell) {
        const double d = 1.0 / (1.0 + 0.7 * ell * ell);
        arbitrary.values[ell] = d;
        arbitrary_twin.values[ell] = d;
    }
    arbitrary_twin.values[9] = 0.9;
    const std::vector<std::vector<int>> unions = {
        {2, 3}, {1, 2, 3}, {2, 2, 2}, {1, 1, 1, 1, 1, 1}, {5, 1}};
    for (const auto& sizes : unions) {
        CHECK(clique_union_density(sizes, base) == clique_union_density(sizes, padded));
        CHECK(clique_union_density(sizes, arbitrary) ==
              clique_union_density(sizes, arbitrary_twin));
    }
}

TEST_CASE("clique union density rejects bad input") {
    const auto v = CliqueDensityVector::from_blocks(BlockSizes::geometric(0.5), 4);
    CHECK_THROWS_AS(clique_union_density({}, v), std::invalid_argument);
    CHECK_THROWS_AS(clique_union_density({2, 0}, v), std::invalid_argument);
    CHECK_THROWS_AS(clique_union_density({-1}, v), std::invalid_argument);
    // needs orders up to 5
    CHECK_THROWS_AS(clique_union_density({2, 3}, v), std::invalid_argument);
    CHECK_NOTHROW(clique_union_density({2, 2}, v));
}

TEST_CASE("set partitions enumerate each partition once") {
    CHECK(set_partitions(0, 0).size() == 1);
    CHECK(set_partitions(1, 1).size() == 1);
    CHECK(set_partitions(3, 3).size() == 5);
    CHECK(set_partitions(4, 4).size() == 15);
    CHECK(set_partitions(3, 2).size() == 4);
    CHECK(set_partitions(3, 1).size() == 1);

    const auto parts = set_partitions(4, 4);
    std::set<std::vector<std::vector<int>>> seen;
    for (auto partition : parts) {
        int covered = 0;
        for (auto& cell : partition) {
            CHECK_FALSE(cell.empty());
            CHECK(std::is_sorted(cell.begin(), cell.end()));
            for (int x : cell) {
                CHECK((covered & (1 << x)) == 0);
                covered |= 1 << x;
            }
        }
        CHECK(covered == 0xF);
        std::sort(partition.begin(), partition.end());
        seen.insert(partition);
    }
    CHECK(seen.size() == parts.size());
}

TEST_CASE("graph density maps look up by isomorphism class") {
    GraphDensityMap map;
    map.set(Graph::from_string("3; 1-2"), 0.25);
    CHECK(map.size() == 1);
    CHECK(map.contains(Graph::from_string("3; 2-3")));
    CHECK(map.at(Graph::from_string("3; 1-3")) == 0.25);
    CHECK_FALSE(map.contains(Graph::path(3)));
    CHECK_THROWS_AS(map.at(Graph::path(3)), std::invalid_argument);
    map.set(Graph::from_string("3; 2-3"), 0.75);
    CHECK(map.size() == 1);
    CHECK(map.at(Graph::from_string("3; 1-2")) == 0.75);
    CHECK_THROWS_AS(map.contains(Graph::complete(9)), unsupported_error);
}

TEST_CASE("constant graphon densities sum to one over order-3 classes") {
    const double rho = 0.37;
    CHECK(constant_graphon_density(Graph::complete(3), rho) ==
          doctest::Approx(rho * rho * rho).epsilon(1e-12));
    CHECK(constant_graphon_density(Graph::path(3), rho) ==
          doctest::Approx(3.0 * rho * rho * (1.0 - rho)).epsilon(1e-12));
    CHECK(constant_graphon_density(Graph::empty_graph(2), rho) ==
          doctest::Approx(1.0 - rho).epsilon(1e-12));
    CHECK(constant_graphon_density(Graph::from_string("3; 1-2"), rho) ==
          doctest::Approx(3.0 * rho * (1.0 - rho) * (1.0 - rho)).epsilon(1e-12));
    const double total = constant_graphon_density(Graph::empty_graph(3), rho) +
                         constant_graphon_density(Graph::from_string("3; 1-2"), rho) +
                         constant_graphon_density(Graph::path(3), rho) +
                         constant_graphon_density(Graph::complete(3), rho);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // grid quadrature is exact for a constant kernel
    for (const auto& h : {Graph::path(4), Graph::cycle(4), Graph::clique_union({2, 2})})
        CHECK(constant_graphon_density(h, rho) ==
              doctest::Approx(density_quadrature(h, Graphon::constant(rho), 2)).epsilon(1e-10));
    CHECK_THROWS_AS(constant_graphon_density(Graph::complete(3), 1.5), std::invalid_argument);
    CHECK_THROWS_AS(constant_graphon_density(Graph::complete(9), 0.5), unsupported_error);
}

TEST_CASE("planted densities collapse to block densities for complete graphs") {
    const auto a = BlockSizes::geometric(0.5);
    for (int m = 1; m <= 4; ++m) {
        const Graph km = Graph::complete(m);
        CHECK(planted_density(km, constant_base_map(km, 1.0), a) ==
              doctest::Approx(clique_density_blocks(a, m)).epsilon(1e-12));
    }
    // with a constant base the connected factor is just rho^pairs
    const Graph k3 = Graph::complete(3);
    CHECK(planted_density(k3, constant_base_map(k3, 0.6), a) ==
          doctest::Approx(0.6 * 0.6 * 0.6 * clique_density_blocks(a, 3)).epsilon(1e-12));
}

TEST_CASE("planting the all-one base recovers the clique union calculus") {
    const auto a = BlockSizes::geometric(0.5);
    const auto v = CliqueDensityVector::from_blocks(a, 6);
    const std::vector<std::vector<int>> unions = {{2, 3}, {1, 1, 2}, {2, 2}, {1, 1, 1}};
    for (const auto& sizes : unions) {
        const Graph g = Graph::clique_union(sizes);
        CHECK(planted_density(g, constant_base_map(g, 1.0), a) ==
              doctest::Approx(clique_union_density(sizes, v)).epsilon(1e-12));
    }
}

TEST_CASE("planted densities match graphon sampling") {
    constexpr std::uint64_t kSamples = 400000;
    const struct {
        Graph g;
        double rho;
        double alpha;
    } rows[] = {
        {Graph::empty_graph(2), 0.6, 1.0 / 3.0},
        {Graph::path(3), 0.5, 0.5},
        {disjoint_union(Graph::path(3), Graph::complete(2)), 0.7, 0.5},
    };
    std::uint64_t stream = 0;
    for (const auto& row : rows) {
        const auto blocks = BlockSizes::geometric(row.alpha);
        const double exact =
            planted_density(row.g, constant_base_map(row.g, row.rho), blocks);
        const auto w = Graphon::planted(Graphon::constant(row.rho), blocks);
        const auto mc = density_mc(row.g, w, kSamples, mix_seed(0x9a0fb1dULL, stream++));
        CHECK(std::abs(exact - mc.value) <= std::max(4.0 * mc.std_error, 1e-4));
    }
    // two isolated vertices planted on blocks: an edge needs one block and
    // one base edge, so d = 1 - rho * S2
    const auto blocks = BlockSizes::geometric(1.0 / 3.0);
    const Graph pair = Graph::empty_graph(2);
    CHECK(planted_density(pair, constant_base_map(pair, 0.6), blocks) ==
          doctest::Approx(1.0 - 0.6 * clique_density_blocks(blocks, 2)).epsilon(1e-12));
}

TEST_CASE("planted densities keep interchangeable components straight") {
    // three isolated vertices: conditioning on how the points share blocks,
    // d = (1-rho)^3 S3 + 3 (1-rho)(S2 - S3) + (1 - 3 S2 + 2 S3)
    const double rho = 0.5;
    const auto blocks = BlockSizes::geometric(0.5);
    const double s2 = clique_density_blocks(blocks, 2);
    const double s3 = clique_density_blocks(blocks, 3);
    const Graph lone3 = Graph::empty_graph(3);
    const double expected = (1.0 - rho) * (1.0 - rho) * (1.0 - rho) * s3 +
                            3.0 * (1.0 - rho) * (s2 - s3) + (1.0 - 3.0 * s2 + 2.0 * s3);
    CHECK(expected == doctest::Approx(33.0 / 56.0).epsilon(1e-12));
    CHECK(planted_density(lone3, constant_base_map(lone3, rho), blocks) ==
          doctest::Approx(expected).epsilon(1e-12));

    // repeated component orders must also agree with sampling
    const struct {
        Graph g;
        double rho;
    } rows[] = {{Graph::empty_graph(3), 0.6},
                {Graph::clique_union({1, 1, 2}), 0.6},
                {Graph::empty_graph(4), 0.5}};
    std::uint64_t stream = 0;
    for (const auto& row : rows) {
        const double exact =
            planted_density(row.g, constant_base_map(row.g, row.rho), blocks);
        const auto w = Graphon::planted(Graphon::constant(row.rho), blocks);
        const auto mc = density_mc(row.g, w, 400000, mix_seed(0x5ab3cdULL, stream++));
        CHECK(std::abs(exact - mc.value) <= std::max(4.0 * mc.std_error, 1e-4));
    }
}

TEST_CASE("planted density coverage gaps are reported") {
    const auto a = BlockSizes::geometric(0.5);
    const Graph two = Graph::empty_graph(2);
    GraphDensityMap sparse;
    sparse.set(Graph::empty_graph(1), 1.0);
    CHECK_THROWS_AS(planted_density(two, sparse, a), std::invalid_argument);
    CHECK_THROWS_AS(planted_density(Graph::clique_union({5, 4}), GraphDensityMap{}, a),
                    unsupported_error);
}

TEST_CASE("clique union serialization round trips") {
    CHECK(format_clique_union({3, 2}) == "2+3");
    CHECK(format_clique_union({4}) == "4");
    CHECK(format_clique_union({1, 1, 2}) == "1+1+2");
    CHECK(parse_clique_union("2+3") == std::vector<int>{2, 3});
    CHECK(parse_clique_union("3+2+1") == std::vector<int>{1, 2, 3});
    CHECK(parse_clique_union("7") == std::vector<int>{7});
    const std::vector<std::vector<int>> unions = {{2, 3}, {1, 1, 1}, {6}};
    for (const auto& sizes : unions)
        CHECK(parse_clique_union(format_clique_union(sizes)) == sizes);
    for (const char* bad : {"", "2++3", "0+1", "a", "2+", "+2", "1.5"})
        CHECK_THROWS_AS(parse_clique_union(bad), std::invalid_argument);

    CliqueDensityVector v;
    v.values[1] = 1.0;
    v.values[2] = 1.0 / 3.0;
    CHECK(clique_vector_csv(v) == "ell,value\n1,1\n2,0.333333333333\n");
}
