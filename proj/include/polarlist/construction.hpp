#pragma once

#include <cstdint>
#include <filesystem>

#include "polarlist/channel.hpp"
#include "polarlist/core.hpp"

namespace polarlist {

/// Thrown by load_spec on malformed input; carries the 1-based line number.
class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Frozen-set construction by the erasure-channel Bhattacharyya recursion
/// z- = 2z - z^2, z+ = z^2 starting from z = design_param. The n - k
/// positions with the largest z are frozen; ties freeze the lower index.
CodeSpec bhattacharyya_construct(std::size_t n, std::size_t k, double design_param);

/// Frozen-set construction by genie-aided SC simulation: transmit the
/// all-zero codeword `trials` times, run SC with every decision forced back
/// to the true bit after recording whether the hard decision was wrong, and
/// freeze the n - k positions with the most first-decision errors (ties
/// freeze the lower index). Deterministic given the seed.
CodeSpec monte_carlo_construct(std::size_t n, std::size_t k, const ChannelModel& model,
                               std::size_t trials, std::uint64_t seed);

/// Text format: first line `n k`, then one frozen index per line in
/// increasing order, with a ` # value=1` suffix for nonzero frozen values.
void save_spec(const CodeSpec& spec, const std::filesystem::path& path);
CodeSpec load_spec(const std::filesystem::path& path);

}  // namespace polarlist
