#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlim/permutation.hpp"
#include "permlim/rational.hpp"

namespace permlim {

/// Simple undirected graph on vertices 1..n, adjacency stored as bit rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    static Graph empty_graph(int n) { return Graph(n); }
    static Graph complete(int n);
    static Graph path(int n);
    static Graph cycle(int n);
    static Graph clique_union(const std::vector<int>& sizes);

    /// Parses "n; i-j,i-j,..." (or just "n" for an edgeless graph).
    static Graph from_string(const std::string& s);
    std::string to_string() const;

    int order() const { return n_; }
    bool has_edge(int i, int j) const;
    void add_edge(int i, int j);

    int edge_count() const;
    int degree(int i) const;
    std::vector<int> degree_sequence() const;  // sorted ascending

    /// Connected components as sorted 1-based vertex lists.
    std::vector<std::vector<int>> components() const;

    /// Subgraph induced by the given 1-based vertices (sorted, deduplicated).
    Graph induced(std::vector<int> vertices) const;

    /// Component sizes, largest first, when every component is a clique.
    std::optional<std::vector<int>> clique_component_sizes() const;

    bool operator==(const Graph&) const = default;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

Graph disjoint_union(const Graph& a, const Graph& b);

/// Upper-triangle adjacency bits of g under the given 0-based vertex order,
/// packed into an integer.  Requires |g| <= 8.
std::uint32_t adjacency_code(const Graph& g, const std::vector<int>& order);

/// Smallest adjacency code over all vertex orders.  Requires |g| <= 8.
std::uint32_t canonical_code(const Graph& g);

/// Sorted distinct adjacency codes over all vertex orders (the isomorphism
/// class of g as a set of labeled graphs).  Requires |g| <= 8.
std::vector<std::uint32_t> orbit_codes(const Graph& g);

/// Number of adjacency-preserving vertex bijections.  Requires |g| <= 8.
std::uint64_t automorphism_count(const Graph& g);

/// Isomorphism test: any order when both graphs are disjoint unions of
/// cliques, otherwise order <= 8.
bool is_isomorphic(const Graph& a, const Graph& b);

/// Exact induced-subgraph density d(H, G); zero when |H| > |G|.
Rational graph_density(const Graph& h, const Graph& g);

/// Graph on [n] with an edge for every inversion of pi.
Graph inversion_graph(const Permutation& pi);

}  // namespace permlim
