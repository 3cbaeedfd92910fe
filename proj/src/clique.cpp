#include "permlim/clique.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "permlim/errors.hpp"
#include "permlim/rational.hpp"

namespace permlim {

namespace {

int total_order(const std::vector<int>& sizes) {
    int n = 0;
    for (int s : sizes) n += s;
    return n;
}

// Points grouped into cliques of the orders in `host`: the probability that a
// uniformly random q-subset lies inside a single clique and that removing it
// leaves exactly the multiset `want`.
Rational subset_match_probability(std::vector<int> host, int q, std::vector<int> want) {
    std::sort(host.begin(), host.end());
    std::sort(want.begin(), want.end());
    const int n = total_order(host);
    Rational hits = 0;
    for (std::size_t i = 0; i < host.size(); ++i) {
        if (i > 0 && host[i] == host[i - 1]) continue;
        const int t = host[i];
        if (t < q) continue;
        std::vector<int> reduced;
        reduced.reserve(host.size());
        bool dropped = false;
        for (int s : host) {
            if (!dropped && s == t) {
                dropped = true;
                continue;
            }
            reduced.push_back(s);
        }
        if (t > q) reduced.push_back(t - q);
        std::sort(reduced.begin(), reduced.end());
        if (reduced != want) continue;
        const auto mult = std::count(host.begin(), host.end(), t);
        hits += Rational(BigInt(mult) * binomial(t, q));
    }
    return hits / Rational(binomial(n, q));
}

// d(K_q) d(rest) = sum over achievable clique-order multisets T of
// subset_match_probability(T, q, rest) d(T); the achievable T are the full
// union and the merges of q into one part of rest.  Solving for the full
// union gives the recursion; sizes stay sorted descending so duplicates are
// adjacent and the memo key is canonical.
double union_density_rec(std::vector<int> sizes, const CliqueDensityVector& v,
                         std::map<std::vector<int>, double>& memo) {
    if (sizes.empty()) return 1.0;
    if (sizes.size() == 1) return v.at(sizes.front());
    if (auto it = memo.find(sizes); it != memo.end()) return it->second;
    const int q = sizes.front();
    const std::vector<int> rest(sizes.begin() + 1, sizes.end());
    double acc = v.at(q) * union_density_rec(rest, v, memo);
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (i > 0 && rest[i] == rest[i - 1]) continue;
        std::vector<int> merged = rest;
        merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
        merged.push_back(rest[i] + q);
        std::sort(merged.begin(), merged.end(), std::greater<int>());
        const Rational p = subset_match_probability(merged, q, rest);
        acc -= to_double(p) * union_density_rec(merged, v, memo);
    }
    const Rational p_full = subset_match_probability(sizes, q, rest);
    const double value = acc / to_double(p_full);
    memo.emplace(std::move(sizes), value);
    return value;
}

std::pair<int, std::uint32_t> graph_key(const Graph& g) {
    if (g.order() > 8) throw unsupported_error("graph density maps are limited to order 8");
    return {g.order(), canonical_code(g)};
}

std::string fmt_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

double CliqueDensityVector::at(int ell) const {
    const auto it = values.find(ell);
    if (it == values.end())
        throw std::invalid_argument("clique density vector has no order " + std::to_string(ell));
    return it->second;
}

CliqueDensityVector CliqueDensityVector::from_blocks(const BlockSizes& a, int max_ell) {
    CliqueDensityVector v;
    for (int ell = 1; ell <= max_ell; ++ell) v.values[ell] = clique_density_blocks(a, ell);
    return v;
}

std::string clique_vector_csv(const CliqueDensityVector& v) {
    std::string out = "ell,value\n";
    for (const auto& [ell, value] : v.values) {
        out += std::to_string(ell);
        out += ',';
        out += fmt_g(value);
        out += '\n';
    }
    return out;
}

double clique_density_blocks(const BlockSizes& a, int ell) {
    if (ell < 1) throw std::invalid_argument("clique order must be >= 1");
    return a.power_sum(ell);
}

double clique_union_density(std::vector<int> sizes, const CliqueDensityVector& v) {
    if (sizes.empty()) throw std::invalid_argument("clique union needs at least one part");
    for (int s : sizes)
        if (s < 1) throw std::invalid_argument("clique orders must be positive");
    const int n = total_order(sizes);
    for (int ell = 1; ell <= n; ++ell)
        if (!v.covers(ell))
            throw std::invalid_argument("clique density vector has no order " +
                                        std::to_string(ell));
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    std::map<std::vector<int>, double> memo;
    return union_density_rec(std::move(sizes), v, memo);
}

std::string format_clique_union(std::vector<int> sizes) {
    if (sizes.empty()) throw std::invalid_argument("clique union needs at least one part");
    std::sort(sizes.begin(), sizes.end());
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw std::invalid_argument("clique orders must be positive");
        if (i > 0) out += '+';
        out += std::to_string(sizes[i]);
    }
    return out;
}

std::vector<int> parse_clique_union(const std::string& s) {
    std::vector<int> sizes;
    std::istringstream in(s);
    std::string token;
    while (std::getline(in, token, '+')) {
        std::size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(token, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad clique union '" + s + "'");
        }
        while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
        if (pos != token.size() || value < 1)
            throw std::invalid_argument("bad clique union '" + s + "'");
        sizes.push_back(value);
    }
    if (sizes.empty() || s.back() == '+')
        throw std::invalid_argument("bad clique union '" + s + "'");
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::vector<std::vector<std::vector<int>>> set_partitions(int k, int max_parts) {
    if (k < 0) throw std::invalid_argument("cannot partition a negative ground set");
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> cell_of(static_cast<std::size_t>(k), 0);
    // Restricted growth: element i may join an existing cell or open the next
    // one, so every set partition appears exactly once.
    std::function<void(int, int)> grow = [&](int i, int used) {
        if (i == k) {
            std::vector<std::vector<int>> cells(static_cast<std::size_t>(used));
            for (int j = 0; j < k; ++j)
                cells[static_cast<std::size_t>(cell_of[static_cast<std::size_t>(j)])].push_back(j);
            out.push_back(std::move(cells));
            return;
        }
        for (int c = 0; c < used; ++c) {
            cell_of[static_cast<std::size_t>(i)] = c;
            grow(i + 1, used);
        }
        if (used < max_parts) {
            cell_of[static_cast<std::size_t>(i)] = used;
            grow(i + 1, used + 1);
        }
    };
    grow(0, 0);
    return out;
}

void GraphDensityMap::set(const Graph& g, double value) { table_[graph_key(g)] = value; }

bool GraphDensityMap::contains(const Graph& g) const { return table_.count(graph_key(g)) != 0; }

double GraphDensityMap::at(const Graph& g) const {
    const auto it = table_.find(graph_key(g));
    if (it == table_.end())
        throw std::invalid_argument("no base density for graph '" + g.to_string() + "'");
    return it->second;
}

double constant_graphon_density(const Graph& h, double rho) {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("rho must lie in [0,1]");
    const int k = h.order();
    if (k > 8) throw unsupported_error("constant graphon densities are limited to order 8");
    const int edges = h.edge_count();
    const int pairs = k * (k - 1) / 2;
    const double labelings = to_double(Rational(factorial(k), BigInt(automorphism_count(h))));
    return labelings * std::pow(rho, edges) * std::pow(1.0 - rho, pairs - edges);
}

GraphDensityMap constant_base_map(const Graph& g, double rho) {
    if (g.order() > 8) throw unsupported_error("graph density maps are limited to order 8");
    const auto comps = g.components();
    const int k = static_cast<int>(comps.size());
    GraphDensityMap map;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<int> vertices;
        for (int j = 0; j < k; ++j)
            if (mask & (1u << j))
                vertices.insert(vertices.end(), comps[static_cast<std::size_t>(j)].begin(),
                                comps[static_cast<std::size_t>(j)].end());
        const Graph sub = g.induced(std::move(vertices));
        map.set(sub, constant_graphon_density(sub, rho));
    }
    return map;
}

double planted_density(const Graph& g, const GraphDensityMap& base, const BlockSizes& a) {
    if (g.order() > 8) throw unsupported_error("planted densities are limited to order 8");
    if (g.order() == 0) return 1.0;
    const auto comps = g.components();
    const int k = static_cast<int>(comps.size());
    const auto v = CliqueDensityVector::from_blocks(a, g.order());
    const double aut_g = static_cast<double>(automorphism_count(g));
    double total = 0.0;
    for (const auto& partition : set_partitions(k, k)) {
        // Both the base densities and the clique-union density the parts are
        // matched against are unlabeled, so the labeling factors have to be
        // reconciled: each part keeps its own automorphisms, equal part
        // orders are interchangeable in the clique union but pinned here,
        // and the automorphisms of g itself are divided out once.
        double term = 1.0;
        std::vector<int> profile;
        profile.reserve(partition.size());
        for (const auto& cell : partition) {
            std::vector<int> vertices;
            for (int j : cell)
                vertices.insert(vertices.end(), comps[static_cast<std::size_t>(j)].begin(),
                                comps[static_cast<std::size_t>(j)].end());
            const Graph sub = g.induced(std::move(vertices));
            term *= base.at(sub) * static_cast<double>(automorphism_count(sub));
            profile.push_back(sub.order());
        }
        int order_counts[9] = {};
        for (int m : profile) {
            ++order_counts[m];
            term *= order_counts[m];
        }
        term *= clique_union_density(std::move(profile), v) / aut_g;
        total += term;
    }
    return total;
}

}  // namespace permlim
