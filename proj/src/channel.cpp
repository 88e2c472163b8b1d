#include "polarlist/channel.hpp"

#include <cmath>
#include <limits>

namespace polarlist {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

double gaussian_density(double x, double sigma) {
    const double z = x / sigma;
    return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

}  // namespace

ChannelModel ChannelModel::bsc(double crossover_prob) {
    if (!(crossover_prob >= 0.0 && crossover_prob <= 0.5))
        throw std::invalid_argument("ChannelModel::bsc: crossover probability must be in [0, 1/2]");
    return ChannelModel(Kind::bsc, crossover_prob);
}

ChannelModel ChannelModel::awgn(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("ChannelModel::awgn: sigma must be positive and finite");
    return ChannelModel(Kind::awgn, sigma);
}

ChannelModel ChannelModel::bec(double erasure_prob) {
    if (!(erasure_prob >= 0.0 && erasure_prob <= 1.0))
        throw std::invalid_argument("ChannelModel::bec: erasure probability must be in [0, 1]");
    return ChannelModel(Kind::bec, erasure_prob);
}

ReceivedVec ChannelModel::transmit(const BitVec& codeword, RngEngine& rng) const {
    ReceivedVec y(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const Bit c = codeword[i];
        if (c > 1) throw std::invalid_argument("transmit: codeword bits must be 0 or 1");
        switch (kind_) {
            case Kind::bsc: {
                const bool flip = uniform01(rng) <= param_;
                y[i] = static_cast<double>(c ^ (flip ? 1 : 0));
                break;
            }
            case Kind::awgn:
                y[i] = (c ? -1.0 : 1.0) + param_ * gaussian(rng);
                break;
            case Kind::bec: {
                const bool erased = uniform01(rng) <= param_;
                y[i] = erased ? erasure : static_cast<double>(c);
                break;
            }
        }
    }
    return y;
}

ProbPair ChannelModel::prob_pair(double y) const {
    switch (kind_) {
        case Kind::bsc:
            if (y == 0.0) return ProbPair{1.0 - param_, param_};
            if (y == 1.0) return ProbPair{param_, 1.0 - param_};
            throw std::invalid_argument("prob_pair: BSC symbol must be 0 or 1");
        case Kind::awgn:
            if (!std::isfinite(y))
                throw std::invalid_argument("prob_pair: AWGN symbol must be finite");
            return ProbPair{gaussian_density(y - 1.0, param_), gaussian_density(y + 1.0, param_)};
        case Kind::bec:
            if (y == erasure) return ProbPair{0.5, 0.5};
            if (y == 0.0) return ProbPair{1.0 - param_, 0.0};
            if (y == 1.0) return ProbPair{0.0, 1.0 - param_};
            throw std::invalid_argument("prob_pair: BEC symbol must be 0, 1, or the erasure mark");
    }
    throw std::logic_error("prob_pair: unknown channel kind");
}

std::vector<ProbPair> ChannelModel::prob_pairs(const ReceivedVec& y) const {
    std::vector<ProbPair> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = prob_pair(y[i]);
    return out;
}

double ChannelModel::log_likelihood(double y, Bit b) const {
    const ProbPair pair = prob_pair(y);
    const double w = pair[b];
    return w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity();
}

double ChannelModel::log_likelihood(const ReceivedVec& y, const BitVec& codeword) const {
    if (y.size() != codeword.size())
        throw std::invalid_argument("log_likelihood: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += log_likelihood(y[i], codeword[i]);
    return sum;
}

double snr_db_to_sigma(double snr_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("snr_db_to_sigma: rate must be in (0, 1]");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0)));
}

}  // namespace polarlist
