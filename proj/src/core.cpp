#include "polarlist/core.hpp"

#include <algorithm>

namespace polarlist {

CodeSpec::CodeSpec(unsigned m, std::vector<FrozenBit> frozen, std::size_t crc_width)
    : m_(m), crc_width_(crc_width) {
    if (m < 1 || m > 30)
        throw std::invalid_argument("CodeSpec: m must be in [1, 30], got " + std::to_string(m));
    n_ = std::size_t{1} << m;
    if (frozen.size() > n_)
        throw std::invalid_argument("CodeSpec: more frozen positions than code positions");

    frozen_mask_.assign(n_, 0);
    frozen_values_.assign(n_, 0);
    for (const FrozenBit& f : frozen) {
        if (f.pos >= n_)
            throw std::invalid_argument("CodeSpec: frozen position " + std::to_string(f.pos) +
                                        " out of range for n=" + std::to_string(n_));
        if (f.value > 1)
            throw std::invalid_argument("CodeSpec: frozen value must be 0 or 1");
        if (frozen_mask_[f.pos])
            throw std::invalid_argument("CodeSpec: duplicate frozen position " +
                                        std::to_string(f.pos));
        frozen_mask_[f.pos] = 1;
        frozen_values_[f.pos] = f.value;
        frozen_positions_.push_back(f.pos);
    }
    std::sort(frozen_positions_.begin(), frozen_positions_.end());

    k_ = n_ - frozen_positions_.size();
    if (crc_width_ > 0 && crc_width_ >= k_)
        throw std::invalid_argument("CodeSpec: check width " + std::to_string(crc_width_) +
                                    " must be smaller than k=" + std::to_string(k_));
}

std::vector<std::size_t> CodeSpec::unfrozen_positions() const {
    std::vector<std::size_t> out;
    out.reserve(k_);
    for (std::size_t i = 0; i < n_; ++i)
        if (!frozen_mask_[i]) out.push_back(i);
    return out;
}

CodeSpec CodeSpec::with_crc(std::size_t crc_width) const {
    CodeSpec copy = *this;
    if (crc_width > 0 && crc_width >= copy.k_)
        throw std::invalid_argument("CodeSpec: check width must be smaller than k");
    copy.crc_width_ = crc_width;
    return copy;
}

bool operator==(const CodeSpec& a, const CodeSpec& b) {
    return a.m_ == b.m_ && a.crc_width_ == b.crc_width_ && a.frozen_mask_ == b.frozen_mask_ &&
           a.frozen_values_ == b.frozen_values_;
}

std::size_t phase_branch_index(unsigned lambda, std::size_t phi, std::size_t beta, unsigned m) {
    if (lambda > m)
        throw std::invalid_argument("phase_branch_index: lambda exceeds m");
    const std::size_t phases = std::size_t{1} << lambda;
    const std::size_t branches = std::size_t{1} << (m - lambda);
    if (phi >= phases)
        throw std::invalid_argument("phase_branch_index: phase out of range");
    if (beta >= branches)
        throw std::invalid_argument("phase_branch_index: branch out of range");
    return phi + phases * beta;
}

}  // namespace polarlist
