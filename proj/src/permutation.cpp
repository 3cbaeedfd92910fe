#include "permlim/permutation.hpp"

#include <algorithm>
#include <stdexcept>

#include "permlim/errors.hpp"

namespace permlim {

namespace {

void check_one_line(const std::vector<int>& v) {
    int n = static_cast<int>(v.size());
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (int x : v) {
        if (x < 1 || x > n || seen[static_cast<size_t>(x)])
            throw std::invalid_argument("not a permutation of 1..n");
        seen[static_cast<size_t>(x)] = true;
    }
}

std::vector<int> ranks_of(const std::vector<int>& vals) {
    int k = static_cast<int>(vals.size());
    std::vector<int> pat(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        int r = 1;
        for (int j = 0; j < k; ++j)
            if (vals[static_cast<size_t>(j)] < vals[static_cast<size_t>(i)]) ++r;
        pat[static_cast<size_t>(i)] = r;
    }
    return pat;
}

}  // namespace

Permutation::Permutation(std::vector<int> one_line) : v_(std::move(one_line)) {
    check_one_line(v_);
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
    return Permutation(std::move(v));
}

Permutation Permutation::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty permutation string");
    std::vector<int> v;
    if (s.find(',') == std::string::npos) {
        for (char c : s) {
            if (c < '1' || c > '9') throw std::invalid_argument("bad permutation digit: " + s);
            v.push_back(c - '0');
        }
    } else {
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t comma = s.find(',', pos);
            std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty()) throw std::invalid_argument("bad permutation string: " + s);
            v.push_back(std::stoi(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return Permutation(std::move(v));
}

std::string Permutation::to_string() const {
    std::string s;
    bool digits = order() <= 9;
    for (size_t i = 0; i < v_.size(); ++i) {
        if (!digits && i > 0) s += ',';
        s += std::to_string(v_[i]);
    }
    return s;
}

RootedPermutation::RootedPermutation(Permutation p, int root_position)
    : pattern(std::move(p)), root(root_position) {
    if (root < 1 || root > pattern.order())
        throw std::invalid_argument("root position out of range");
}

std::string RootedPermutation::to_string() const {
    std::string s;
    for (int i = 1; i <= pattern.order(); ++i) {
        if (i > 1) s += ',';
        s += std::to_string(pattern(i));
        if (i == root) s += '\'';
    }
    return s;
}

RootedPermutation RootedPermutation::from_string(const std::string& s) {
    std::vector<int> v;
    int root = 0;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty() && tok.back() == '\'') {
            tok.pop_back();
            if (root != 0)
                throw std::invalid_argument("rooted permutation has several root marks: " + s);
            root = static_cast<int>(v.size()) + 1;
        }
        if (tok.empty()) throw std::invalid_argument("bad rooted permutation string: " + s);
        v.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (root == 0) throw std::invalid_argument("rooted permutation lacks a root mark: " + s);
    return RootedPermutation(Permutation(std::move(v)), root);
}

Permutation induced_pattern(const Permutation& pi, std::vector<int> positions) {
    std::sort(positions.begin(), positions.end());
    if (std::adjacent_find(positions.begin(), positions.end()) != positions.end())
        throw std::invalid_argument("duplicate positions");
    std::vector<int> vals;
    vals.reserve(positions.size());
    for (int p : positions) {
        if (p < 1 || p > pi.order()) throw std::invalid_argument("position out of range");
        vals.push_back(pi(p));
    }
    return Permutation(ranks_of(vals));
}

namespace {

// DFS over increasing positions; a branch survives while the chosen values'
// relative order matches the prefix of sigma.
struct PatternCounter {
    const Permutation& sigma;
    const Permutation& pi;
    int k, n;
    std::vector<int> prefix_rank;  // rank of sigma(j) within sigma(1..j)
    std::vector<int> chosen;       // values picked so far, unsorted
    std::uint64_t count = 0;

    PatternCounter(const Permutation& s, const Permutation& p)
        : sigma(s), pi(p), k(s.order()), n(p.order()) {
        prefix_rank.resize(static_cast<size_t>(k) + 1);
        for (int j = 1; j <= k; ++j) {
            int r = 0;
            for (int i = 1; i <= j; ++i)
                if (sigma(i) <= sigma(j)) ++r;
            prefix_rank[static_cast<size_t>(j)] = r;
        }
        chosen.reserve(static_cast<size_t>(k));
    }

    void dfs(int from, int depth) {
        if (depth == k) {
            ++count;
            return;
        }
        for (int pos = from; pos <= n - (k - depth - 1); ++pos) {
            int v = pi(pos);
            int r = 1;
            for (int c : chosen)
                if (c < v) ++r;
            if (r != prefix_rank[static_cast<size_t>(depth) + 1]) continue;
            chosen.push_back(v);
            dfs(pos + 1, depth + 1);
            chosen.pop_back();
        }
    }
};

}  // namespace

std::uint64_t pattern_count(const Permutation& sigma, const Permutation& pi) {
    if (sigma.order() < 1 || sigma.order() > 9)
        throw unsupported_error("pattern order must be 1..9");
    if (pi.order() > 64) throw unsupported_error("host permutation order must be <= 64");
    if (sigma.order() > pi.order()) return 0;
    PatternCounter pc(sigma, pi);
    pc.dfs(1, 0);
    return pc.count;
}

Rational pattern_density(const Permutation& sigma, const Permutation& pi) {
    if (sigma.order() > pi.order()) return Rational(0);
    std::uint64_t c = pattern_count(sigma, pi);
    return Rational(BigInt(c), binomial(pi.order(), sigma.order()));
}

bool rooted_pattern_indicator(const RootedPermutation& rooted, const Permutation& pi,
                              int root_index, const std::vector<int>& other_indices) {
    if (static_cast<int>(other_indices.size()) + 1 != rooted.pattern.order())
        throw std::invalid_argument("index count does not match rooted pattern order");
    std::vector<int> all(other_indices);
    all.push_back(root_index);
    Permutation pat = induced_pattern(pi, all);  // validates range/duplicates
    std::sort(all.begin(), all.end());
    int root_pos = 1 + static_cast<int>(std::lower_bound(all.begin(), all.end(), root_index) - all.begin());
    return pat == rooted.pattern && root_pos == rooted.root;
}

std::vector<Permutation> all_patterns(int k) {
    if (k < 1 || k > 9) throw unsupported_error("pattern order must be 1..9");
    std::vector<int> v(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) v[static_cast<size_t>(i)] = i + 1;
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

Permutation pattern_of_points(const std::vector<std::pair<double, double>>& pts) {
    int k = static_cast<int>(pts.size());
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return pts[static_cast<size_t>(a)].first < pts[static_cast<size_t>(b)].first; });
    std::vector<int> pat(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        int r = 1;
        for (int j = 0; j < k; ++j)
            if (pts[static_cast<size_t>(idx[static_cast<size_t>(j)])].second <
                pts[static_cast<size_t>(idx[static_cast<size_t>(i)])].second)
                ++r;
        pat[static_cast<size_t>(i)] = r;
    }
    return Permutation(pat);
}

}  // namespace permlim
