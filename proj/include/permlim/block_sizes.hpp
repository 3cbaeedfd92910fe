#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace permlim {

// A sequence of interval lengths partitioning [0,1]: an explicit finite list
// summing to 1, a pure geometric sequence (1-alpha) alpha^(i-1), or an
// explicit prefix summing to less than 1 whose remaining mass is spread
// geometrically.  Blocks are indexed from 1 and laid out left to right.
class BlockSizes {
public:
    static BlockSizes geometric(double alpha);
    static BlockSizes explicit_sizes(std::vector<double> sizes);
    static BlockSizes with_geometric_tail(std::vector<double> prefix, double alpha);

    const std::vector<double>& prefix() const { return prefix_; }
    bool has_tail() const { return tail_alpha_.has_value(); }
    double tail_alpha() const { return *tail_alpha_; }
    double prefix_mass() const { return prefix_mass_; }
    double tail_mass() const { return 1.0 - prefix_mass_; }

    double size(int i) const;
    // [left end, right end) of block i.
    std::pair<double, double> span(int i) const;
    // 1-based index of the block containing t in [0,1); 0 if t lies past every
    // block (possible only for t >= 1).
    int block_of(double t) const;
    // sum over all blocks of size^ell (closed-form geometric tail); ell >= 1.
    double power_sum(int ell) const;

    bool operator==(const BlockSizes&) const = default;

private:
    BlockSizes(std::vector<double> prefix, std::optional<double> tail_alpha);

    std::vector<double> prefix_;
    std::optional<double> tail_alpha_;
    double prefix_mass_ = 0.0;
};

}  // namespace permlim
