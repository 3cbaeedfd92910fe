#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "permlim/block_sizes.hpp"
#include "permlim/graph.hpp"

namespace permlim {

/// Densities of complete graphs, keyed by order; d(K_1) = 1 for any graphon.
struct CliqueDensityVector {
    std::map<int, double> values;

    bool covers(int ell) const { return values.count(ell) != 0; }
    double at(int ell) const;

    /// d(K_ell) for the pure block graphon on a, ell = 1..max_ell.
    static CliqueDensityVector from_blocks(const BlockSizes& a, int max_ell);
};

/// CSV "ell,value" lines with a header row, ascending ell.
std::string clique_vector_csv(const CliqueDensityVector& v);

/// Probability that ell independent uniform points all land in one block of a.
double clique_density_blocks(const BlockSizes& a, int ell);

/// Density of the disjoint union of cliques with the given orders in any
/// graphon whose random graphs are unions of cliques, expressed through the
/// single-clique densities alone.  v must cover orders 1..sum(sizes).
double clique_union_density(std::vector<int> sizes, const CliqueDensityVector& v);

/// Clique orders sorted ascending and joined by '+', e.g. "2+3".
std::string format_clique_union(std::vector<int> sizes);
std::vector<int> parse_clique_union(const std::string& s);

/// All partitions of {0,...,k-1} into at most max_parts nonempty cells, each
/// cell sorted ascending, every partition listed exactly once.
std::vector<std::vector<std::vector<int>>> set_partitions(int k, int max_parts);

/// Density table keyed by graphs up to isomorphism (orders <= 8).
class GraphDensityMap {
public:
    void set(const Graph& g, double value);
    bool contains(const Graph& g) const;
    double at(const Graph& g) const;
    std::size_t size() const { return table_.size(); }

private:
    std::map<std::pair<int, std::uint32_t>, double> table_;
};

/// Density of h in the constant-rho graphon:
/// (k!/|Aut(h)|) rho^edges (1-rho)^non_edges.
double constant_graphon_density(const Graph& h, double rho);

/// Constant-rho densities for every union of connected components of g,
/// which is exactly the coverage planted_density requires.
GraphDensityMap constant_base_map(const Graph& g, double rho);

/// Density of g in the graphon that plants a rescaled copy of a base graphon
/// on each diagonal block of a and vanishes elsewhere.  The sum runs over
/// partitions of the components of g; each term multiplies the base densities
/// of the merged component groups with the density of the matching clique
/// union under the pure block graphon.
double planted_density(const Graph& g, const GraphDensityMap& base, const BlockSizes& a);

}  // namespace permlim
