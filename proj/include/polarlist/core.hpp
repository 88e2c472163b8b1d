#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarlist {

using Bit = std::uint8_t;

/// Bit sequence, one value per element, each in {0,1}.
using BitVec = std::vector<Bit>;

/// Pair of likelihood values (W(y|0), W(y|1)), indexable by the input bit.
template <class R>
struct ProbPairT {
    R p0{};
    R p1{};

    R& operator[](unsigned b) { return b ? p1 : p0; }
    const R& operator[](unsigned b) const { return b ? p1 : p0; }

    friend bool operator==(const ProbPairT& a, const ProbPairT& b) {
        return a.p0 == b.p0 && a.p1 == b.p1;
    }
};

using ProbPair = ProbPairT<double>;

/// Two-slot bit cell, indexed by phase parity.
struct BitPair {
    Bit slot[2]{0, 0};

    Bit& operator[](unsigned parity) { return slot[parity & 1u]; }
    Bit operator[](unsigned parity) const { return slot[parity & 1u]; }

    friend bool operator==(const BitPair& a, const BitPair& b) {
        return a.slot[0] == b.slot[0] && a.slot[1] == b.slot[1];
    }
};

struct FrozenBit {
    std::size_t pos = 0;
    Bit value = 0;
};

/// Code definition: block length n = 2^m, frozen positions with their
/// values, and an optional check width r carved out of the unfrozen set.
class CodeSpec {
  public:
    CodeSpec(unsigned m, std::vector<FrozenBit> frozen, std::size_t crc_width = 0);

    unsigned m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    std::size_t crc_width() const { return crc_width_; }
    /// Number of payload bits per codeword (k - r).
    std::size_t info_bits() const { return k_ - crc_width_; }

    bool is_frozen(std::size_t pos) const { return frozen_mask_[pos] != 0; }
    Bit frozen_value(std::size_t pos) const { return frozen_values_[pos]; }

    /// Frozen positions in increasing order.
    const std::vector<std::size_t>& frozen_positions() const { return frozen_positions_; }
    /// Unfrozen positions in increasing order.
    std::vector<std::size_t> unfrozen_positions() const;

    /// Same code with a different check width.
    CodeSpec with_crc(std::size_t crc_width) const;

    friend bool operator==(const CodeSpec& a, const CodeSpec& b);

  private:
    unsigned m_;
    std::size_t n_;
    std::size_t k_;
    std::size_t crc_width_;
    std::vector<Bit> frozen_mask_;
    std::vector<Bit> frozen_values_;
    std::vector<std::size_t> frozen_positions_;
};

/// Index of (phase phi, branch beta) within a layer-lambda array of size 2^m.
/// Quotient/remainder form: phi + 2^lambda * beta.
std::size_t phase_branch_index(unsigned lambda, std::size_t phi, std::size_t beta, unsigned m);

/// The two layer-(lambda-1) branches feeding branch beta.
constexpr std::pair<std::size_t, std::size_t> child_branches(std::size_t beta) {
    return {2 * beta, 2 * beta + 1};
}

}  // namespace polarlist
