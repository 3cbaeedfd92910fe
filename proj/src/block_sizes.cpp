#include "permlim/block_sizes.hpp"

#include <cmath>
#include <stdexcept>

namespace permlim {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("geometric ratio must lie in (0,1)");
}

}  // namespace

BlockSizes::BlockSizes(std::vector<double> prefix, std::optional<double> tail_alpha)
    : prefix_(std::move(prefix)), tail_alpha_(tail_alpha) {
    for (double s : prefix_) {
        if (!(s >= 0.0)) throw std::invalid_argument("block sizes must be >= 0");
        prefix_mass_ += s;
    }
    if (tail_alpha_) {
        check_alpha(*tail_alpha_);
        if (prefix_mass_ >= 1.0 - 1e-12)
            throw std::invalid_argument("geometric tail needs leftover mass");
    } else if (std::abs(prefix_mass_ - 1.0) > 1e-9) {
        throw std::invalid_argument("explicit block sizes must sum to 1");
    }
}

BlockSizes BlockSizes::geometric(double alpha) { return BlockSizes({}, alpha); }

BlockSizes BlockSizes::explicit_sizes(std::vector<double> sizes) {
    return BlockSizes(std::move(sizes), std::nullopt);
}

BlockSizes BlockSizes::with_geometric_tail(std::vector<double> prefix, double alpha) {
    return BlockSizes(std::move(prefix), alpha);
}

double BlockSizes::size(int i) const {
    if (i < 1) throw std::invalid_argument("block index must be >= 1");
    const int p = static_cast<int>(prefix_.size());
    if (i <= p) return prefix_[static_cast<std::size_t>(i) - 1];
    if (!tail_alpha_) throw std::invalid_argument("block index past the last block");
    const double alpha = *tail_alpha_;
    return tail_mass() * (1.0 - alpha) * std::pow(alpha, i - p - 1);
}

std::pair<double, double> BlockSizes::span(int i) const {
    if (i < 1) throw std::invalid_argument("block index must be >= 1");
    const int p = static_cast<int>(prefix_.size());
    double left = 0.0;
    if (i <= p + 1) {
        for (int j = 1; j < i; ++j) left += prefix_[static_cast<std::size_t>(j) - 1];
        if (i <= p) return {left, left + prefix_[static_cast<std::size_t>(i) - 1]};
    } else {
        left = prefix_mass_;
    }
    if (!tail_alpha_) throw std::invalid_argument("block index past the last block");
    // tail block i sits at the geometric offset within the leftover interval
    const double alpha = *tail_alpha_;
    const int t = i - p;  // 1-based tail index
    const double lo = prefix_mass_ + tail_mass() * (1.0 - std::pow(alpha, t - 1));
    const double hi = prefix_mass_ + tail_mass() * (1.0 - std::pow(alpha, t));
    return {lo, hi};
}

int BlockSizes::block_of(double t) const {
    if (t < 0.0 || t >= 1.0) return 0;
    double left = 0.0;
    for (std::size_t j = 0; j < prefix_.size(); ++j) {
        left += prefix_[j];
        if (t < left) return static_cast<int>(j) + 1;
    }
    if (!tail_alpha_) return prefix_.empty() ? 0 : static_cast<int>(prefix_.size());
    const double u = (t - prefix_mass_) / tail_mass();
    if (u < 0.0) return static_cast<int>(prefix_.size());
    if (u >= 1.0) return 0;
    const int j = 1 + static_cast<int>(std::floor(std::log1p(-u) / std::log(*tail_alpha_)));
    return static_cast<int>(prefix_.size()) + std::max(1, j);
}

double BlockSizes::power_sum(int ell) const {
    if (ell < 1) throw std::invalid_argument("power sum exponent must be >= 1");
    double total = 0.0;
    for (double s : prefix_) total += std::pow(s, ell);
    if (tail_alpha_) {
        const double alpha = *tail_alpha_;
        total += std::pow(tail_mass() * (1.0 - alpha), ell) / (1.0 - std::pow(alpha, ell));
    }
    return total;
}

}  // namespace permlim
