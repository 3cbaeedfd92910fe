#include "permlim/graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "permlim/errors.hpp"

namespace permlim {

namespace {

void check_vertex(int n, int i) {
    if (i < 1 || i > n) throw std::invalid_argument("vertex out of range");
}

void check_small(const Graph& g, const char* what) {
    if (g.order() > 8)
        throw std::invalid_argument(std::string(what) + " supports at most 8 vertices");
}

}  // namespace

Graph::Graph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("graph order must be >= 1");
    words_ = (n + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(words_), 0);
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
    return g;
}

Graph Graph::path(int n) {
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph Graph::cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    Graph g = path(n);
    g.add_edge(n, 1);
    return g;
}

Graph Graph::clique_union(const std::vector<int>& sizes) {
    if (sizes.empty()) throw std::invalid_argument("clique union needs at least one part");
    int total = 0;
    for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("clique sizes must be >= 1");
        total += s;
    }
    Graph g(total);
    int base = 0;
    for (int s : sizes) {
        for (int i = 1; i <= s; ++i)
            for (int j = i + 1; j <= s; ++j) g.add_edge(base + i, base + j);
        base += s;
    }
    return g;
}

Graph Graph::from_string(const std::string& s) {
    const std::size_t semi = s.find(';');
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(s.substr(0, semi), &used);
        while (used < (semi == std::string::npos ? s.size() : semi))
            if (!std::isspace(static_cast<unsigned char>(s[used++])))
                throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad graph string: " + s);
    }
    Graph g(n);
    if (semi == std::string::npos) return g;
    std::stringstream rest(s.substr(semi + 1));
    std::string tok;
    while (std::getline(rest, tok, ',')) {
        const std::size_t dash = tok.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("bad edge token: " + tok);
        int i = 0, j = 0;
        try {
            i = std::stoi(tok.substr(0, dash));
            j = std::stoi(tok.substr(dash + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad edge token: " + tok);
        }
        g.add_edge(i, j);
    }
    return g;
}

std::string Graph::to_string() const {
    std::string out = std::to_string(n_) + ";";
    bool first = true;
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j)
            if (has_edge(i, j)) {
                out += first ? " " : ",";
                out += std::to_string(i) + "-" + std::to_string(j);
                first = false;
            }
    return out;
}

bool Graph::has_edge(int i, int j) const {
    check_vertex(n_, i);
    check_vertex(n_, j);
    if (i == j) return false;
    const std::size_t row = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(words_);
    return (bits_[row + static_cast<std::size_t>((j - 1) / 64)] >> ((j - 1) % 64)) & 1u;
}

void Graph::add_edge(int i, int j) {
    check_vertex(n_, i);
    check_vertex(n_, j);
    if (i == j) throw std::invalid_argument("loops are not allowed");
    const std::size_t ri = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(words_);
    const std::size_t rj = static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(words_);
    bits_[ri + static_cast<std::size_t>((j - 1) / 64)] |= 1ULL << ((j - 1) % 64);
    bits_[rj + static_cast<std::size_t>((i - 1) / 64)] |= 1ULL << ((i - 1) % 64);
}

int Graph::edge_count() const {
    int total = 0;
    for (int i = 1; i <= n_; ++i) total += degree(i);
    return total / 2;
}

int Graph::degree(int i) const {
    check_vertex(n_, i);
    const std::size_t row = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(words_);
    int d = 0;
    for (int w = 0; w < words_; ++w) d += __builtin_popcountll(bits_[row + static_cast<std::size_t>(w)]);
    return d;
}

std::vector<int> Graph::degree_sequence() const {
    std::vector<int> ds(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i) ds[static_cast<std::size_t>(i - 1)] = degree(i);
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<std::vector<int>> Graph::components() const {
    std::vector<int> label(static_cast<std::size_t>(n_), 0);
    std::vector<std::vector<int>> comps;
    for (int start = 1; start <= n_; ++start) {
        if (label[static_cast<std::size_t>(start - 1)]) continue;
        std::vector<int> stack{start};
        std::vector<int> comp;
        label[static_cast<std::size_t>(start - 1)] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int u = 1; u <= n_; ++u)
                if (!label[static_cast<std::size_t>(u - 1)] && has_edge(v, u)) {
                    label[static_cast<std::size_t>(u - 1)] = 1;
                    stack.push_back(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Graph Graph::induced(std::vector<int> vertices) const {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    for (int v : vertices) check_vertex(n_, v);
    Graph g(static_cast<int>(vertices.size()));
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (has_edge(vertices[a], vertices[b]))
                g.add_edge(static_cast<int>(a) + 1, static_cast<int>(b) + 1);
    return g;
}

std::optional<std::vector<int>> Graph::clique_component_sizes() const {
    std::vector<int> sizes;
    for (const std::vector<int>& comp : components()) {
        const int m = static_cast<int>(comp.size());
        for (int v : comp)
            if (degree(v) != m - 1) return std::nullopt;
        sizes.push_back(m);
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    return sizes;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.order() + b.order());
    for (int i = 1; i <= a.order(); ++i)
        for (int j = i + 1; j <= a.order(); ++j)
            if (a.has_edge(i, j)) g.add_edge(i, j);
    const int off = a.order();
    for (int i = 1; i <= b.order(); ++i)
        for (int j = i + 1; j <= b.order(); ++j)
            if (b.has_edge(i, j)) g.add_edge(off + i, off + j);
    return g;
}

std::uint32_t adjacency_code(const Graph& g, const std::vector<int>& order) {
    const int n = g.order();
    std::uint32_t code = 0;
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (g.has_edge(order[static_cast<std::size_t>(i)] + 1,
                           order[static_cast<std::size_t>(j)] + 1))
                code |= 1u << bit;
    return code;
}

std::vector<std::uint32_t> orbit_codes(const Graph& g) {
    check_small(g, "orbit enumeration");
    const int n = g.order();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint32_t> codes;
    do {
        codes.push_back(adjacency_code(g, order));
    } while (std::next_permutation(order.begin(), order.end()));
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
}

std::uint32_t canonical_code(const Graph& g) { return orbit_codes(g).front(); }

std::uint64_t automorphism_count(const Graph& g) {
    check_small(g, "automorphism counting");
    const int n = g.order();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const std::uint32_t self = adjacency_code(g, order);
    std::uint64_t count = 0;
    do {
        if (adjacency_code(g, order) == self) ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return count;
}

namespace {

// Count of vertex subsets of g inducing a graph isomorphic to the clique
// union with the given part sizes.  Components of the pattern must land in
// distinct components of g, so a DP over g's components suffices (and works
// for any graph order).
BigInt clique_union_subset_count(const std::vector<int>& pattern_sizes,
                                 const std::vector<int>& host_sizes) {
    std::map<int, int> need;
    for (int s : pattern_sizes) ++need[s];
    std::vector<int> sizes;  // distinct pattern sizes
    std::vector<int> mult;
    for (const auto& [s, c] : need) {
        sizes.push_back(s);
        mult.push_back(c);
    }
    const std::size_t classes = sizes.size();
    std::vector<int> radix(classes + 1, 1);
    for (std::size_t c = 0; c < classes; ++c)
        radix[c + 1] = radix[c] * (mult[c] + 1);
    const int states = radix[classes];

    std::vector<BigInt> dp(static_cast<std::size_t>(states), BigInt(0));
    dp[0] = 1;  // nothing assigned yet
    for (int host : host_sizes) {
        std::vector<BigInt> next = dp;
        for (int st = 0; st < states; ++st) {
            if (dp[static_cast<std::size_t>(st)] == 0) continue;
            for (std::size_t c = 0; c < classes; ++c) {
                const int used = (st / radix[c]) % (mult[c] + 1);
                if (used == mult[c] || sizes[c] > host) continue;
                next[static_cast<std::size_t>(st + radix[c])] +=
                    dp[static_cast<std::size_t>(st)] * binomial(host, sizes[c]);
            }
        }
        dp = std::move(next);
    }
    return dp[static_cast<std::size_t>(states - 1)];
}

}  // namespace

bool is_isomorphic(const Graph& a, const Graph& b) {
    if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
    if (a.degree_sequence() != b.degree_sequence()) return false;
    const auto ca = a.clique_component_sizes();
    const auto cb = b.clique_component_sizes();
    if (ca.has_value() != cb.has_value()) return false;
    if (ca) return *ca == *cb;
    if (a.order() > 8)
        throw unsupported_error("isomorphism beyond 8 vertices needs clique-union structure");
    return canonical_code(a) == canonical_code(b);
}

Rational graph_density(const Graph& h, const Graph& g) {
    const int k = h.order();
    const int n = g.order();
    if (k > n) return Rational(0);

    const auto hc = h.clique_component_sizes();
    if (hc) {
        const auto gc = g.clique_component_sizes();
        if (gc) {
            const BigInt count = clique_union_subset_count(*hc, *gc);
            return Rational(count, binomial(n, k));
        }
    }
    if (k > 8) throw unsupported_error("pattern graphs beyond 8 vertices need clique-union hosts");

    const std::vector<std::uint32_t> codes = orbit_codes(h);
    std::vector<int> sel(static_cast<std::size_t>(k));
    std::iota(sel.begin(), sel.end(), 1);
    BigInt count(0);
    while (true) {
        std::uint32_t code = 0;
        int bit = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j, ++bit)
                if (g.has_edge(sel[static_cast<std::size_t>(i)], sel[static_cast<std::size_t>(j)]))
                    code |= 1u << bit;
        if (std::binary_search(codes.begin(), codes.end(), code)) ++count;

        int pos = k - 1;
        while (pos >= 0 && sel[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++sel[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < k; ++q)
            sel[static_cast<std::size_t>(q)] = sel[static_cast<std::size_t>(q - 1)] + 1;
    }
    return Rational(count, binomial(n, k));
}

Graph inversion_graph(const Permutation& pi) {
    const int n = pi.order();
    Graph g(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (pi(i) > pi(j)) g.add_edge(i, j);
    return g;
}

}  // namespace permlim
