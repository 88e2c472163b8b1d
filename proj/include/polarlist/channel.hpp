#pragma once

#include <vector>

#include "polarlist/core.hpp"
#include "polarlist/rng.hpp"

namespace polarlist {

/// Received symbols. BSC outputs are 0.0/1.0; BEC outputs additionally use
/// ChannelModel::erasure; AWGN outputs are arbitrary reals (BPSK maps bit 0
/// to +1 and bit 1 to -1 before the noise is added).
using ReceivedVec = std::vector<double>;

class ChannelModel {
  public:
    enum class Kind { bsc, awgn, bec };

    /// Sentinel for an erased BEC symbol.
    static constexpr double erasure = -1.0;

    static ChannelModel bsc(double crossover_prob);
    static ChannelModel awgn(double sigma);
    static ChannelModel bec(double erasure_prob);

    Kind kind() const { return kind_; }
    double param() const { return param_; }

    /// Push a codeword through the channel.
    ReceivedVec transmit(const BitVec& codeword, RngEngine& rng) const;

    /// (W(y|0), W(y|1)) for one received symbol: probabilities for BSC/BEC,
    /// Gaussian densities for AWGN. Rejects symbols the channel cannot emit.
    ProbPair prob_pair(double y) const;

    /// prob_pair applied symbol-wise.
    std::vector<ProbPair> prob_pairs(const ReceivedVec& y) const;

    /// log W(y|b); -inf when the symbol is impossible under bit b.
    double log_likelihood(double y, Bit b) const;

    /// Sum of per-symbol log-likelihoods for a full codeword.
    double log_likelihood(const ReceivedVec& y, const BitVec& codeword) const;

  private:
    ChannelModel(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

/// Noise level for a target Eb/N0 in dB at code rate `rate`:
/// sigma = sqrt(1 / (2 * rate * 10^(snr_db/10))).
double snr_db_to_sigma(double snr_db, double rate);

}  // namespace polarlist
