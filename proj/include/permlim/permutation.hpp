#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "permlim/rational.hpp"

namespace permlim {

/// Permutation in one-line notation with values 1..n.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> one_line);

    static Permutation identity(int n);

    /// Parses "7126354" (digits, n <= 9) or "7,1,2,6,3,5,4".
    static Permutation from_string(const std::string& s);

    int order() const { return static_cast<int>(v_.size()); }

    /// Value at 1-based position i.
    int operator()(int i) const { return v_[static_cast<size_t>(i) - 1]; }

    const std::vector<int>& one_line() const { return v_; }

    /// Digit string when n <= 9, comma-separated otherwise.
    std::string to_string() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> v_;
};

/// Permutation with one distinguished entry (a flag); root is its 1-based
/// position.
struct RootedPermutation {
    Permutation pattern;
    int root = 1;

    RootedPermutation() = default;
    RootedPermutation(Permutation p, int root_position);

    /// Comma-separated with a trailing apostrophe on the root entry,
    /// e.g. "2,3',4,1".
    std::string to_string() const;
    static RootedPermutation from_string(const std::string& s);

    bool operator==(const RootedPermutation&) const = default;
};

/// Relative-order pattern of pi on the given 1-based positions (any order,
/// duplicates rejected).
Permutation induced_pattern(const Permutation& pi, std::vector<int> positions);

/// Number of |sigma|-subsets of positions of pi inducing sigma.
/// Caps: |sigma| <= 9 and |pi| <= 64.
std::uint64_t pattern_count(const Permutation& sigma, const Permutation& pi);

/// d(sigma, pi) = pattern_count / C(|pi|, |sigma|), exactly.  Zero when
/// |sigma| > |pi|.
Rational pattern_density(const Permutation& sigma, const Permutation& pi);

/// Whether root_index together with other_indices induces rooted.pattern in
/// pi with the root at rooted.root.
bool rooted_pattern_indicator(const RootedPermutation& rooted, const Permutation& pi,
                              int root_index, const std::vector<int>& other_indices);

/// All k! patterns of order k in lexicographic order.  Cap: k <= 9.
std::vector<Permutation> all_patterns(int k);

/// Pattern of k points given as (x, y) pairs with distinct coordinates:
/// sort by x, read y-ranks.
Permutation pattern_of_points(const std::vector<std::pair<double, double>>& pts);

}  // namespace permlim
