#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <utility>
#include <vector>

#include "polarlist/core.hpp"

namespace polarlist {

template <class R>
struct ScOutputT {
    BitVec u_hat;
    BitVec c_hat;
};

using ScOutput = ScOutputT<double>;

/// Hard decision on a likelihood pair: 0 unless W(y|1) is strictly larger,
/// so ties resolve to 0. Shared by every decoder in the library.
template <class R>
inline Bit hard_decision(const ProbPairT<R>& pair) {
    return pair.p1 > pair.p0 ? Bit{1} : Bit{0};
}

/// Divisor used when rescaling a layer whose largest probability is `sigma`.
/// For floating-point types this is the smallest power of two >= sigma
/// (1 when sigma is 0): dividing by a power of two is exact in binary
/// floating point, so a rescale can never perturb a probability comparison
/// and every decoder in the library makes exactly the decisions that
/// unbounded-exponent arithmetic would make. Exact number types (rationals)
/// divide without rounding anyway, so they use sigma itself and the largest
/// entry becomes exactly 1.
template <class R>
R normalization_divisor(R sigma) {
    if constexpr (std::is_floating_point_v<R>) {
        if (sigma == R(0)) return R(1);
        int exp = 0;
        const R mant = std::frexp(sigma, &exp);  // sigma = mant * 2^exp, mant in [0.5, 1)
        return std::ldexp(R(1), mant == R(0.5) ? exp - 1 : exp);
    } else {
        return sigma;
    }
}

/// Reference SC decoder: per-layer probability and bit arrays of size n,
/// indexed by phase_branch_index. Kept as the permanent oracle for the
/// compact decoder and instrumented so that any read of a cell that was
/// never written throws instead of returning garbage.
template <class R>
class ScReferenceDecoderT {
  public:
    ScReferenceDecoderT(const CodeSpec& spec, const std::vector<ProbPairT<R>>& probs)
        : spec_(spec), m_(spec.m()), n_(spec.n()) {
        if (probs.size() != n_)
            throw std::invalid_argument("sc_decode_reference: expected n likelihood pairs");
        p_.assign(m_ + 1, std::vector<ProbPairT<R>>(n_));
        b_.assign(m_ + 1, std::vector<Bit>(n_, 0));
        p_written_.assign(m_ + 1, std::vector<std::uint8_t>(n_, 0));
        b_written_.assign(m_ + 1, std::vector<std::uint8_t>(n_, 0));
        for (std::size_t beta = 0; beta < n_; ++beta) {
            if (probs[beta].p0 < R(0) || probs[beta].p1 < R(0))
                throw std::invalid_argument("sc_decode_reference: negative likelihood");
            write_p(0, 0, beta, probs[beta]);
        }
        u_hat_.reserve(n_);
    }

    bool done() const { return phi_ == n_; }
    std::size_t phase() const { return phi_; }

    /// Decode the current phase: frozen forcing or hard decision.
    Bit step() { return advance(nullptr); }

    /// Decode the current phase but write `value` as the decision (the
    /// frozen/unfrozen distinction is ignored). Returns the hard decision
    /// the decoder would have made, which is what genie-aided construction
    /// wants to count.
    Bit step_forced(Bit value) {
        if (value > 1) throw std::invalid_argument("step_forced: bit must be 0 or 1");
        return advance(&value);
    }

    /// Top-layer pair examined by the last step. Floating-point instances
    /// carry the power-of-two rescale (ratios and comparisons unaffected);
    /// exact instances hold the raw recursion values.
    const ProbPairT<R>& decision_pair() const {
        if (phi_ == 0) throw std::logic_error("decision_pair: no phase decoded yet");
        return last_pair_;
    }

    const BitVec& u_hat() const { return u_hat_; }

    /// Layer-0 bit array = codeword estimate; requires done().
    BitVec c_hat() const {
        if (!done()) throw std::logic_error("c_hat: decode incomplete");
        BitVec c(n_);
        for (std::size_t beta = 0; beta < n_; ++beta) c[beta] = read_b(0, 0, beta);
        return c;
    }

  private:
    Bit advance(const Bit* forced) {
        if (done()) throw std::logic_error("step: all phases already decoded");
        recursively_calc_p(m_, phi_);
        last_pair_ = read_p(m_, phi_, 0);
        const Bit decision = hard_decision(last_pair_);
        Bit out;
        if (forced)
            out = *forced;
        else
            out = spec_.is_frozen(phi_) ? spec_.frozen_value(phi_) : decision;
        write_b(m_, phi_, 0, out);
        u_hat_.push_back(out);
        if (phi_ % 2 == 1) recursively_update_b(m_, phi_);
        ++phi_;
        return forced ? decision : out;
    }

    void recursively_calc_p(unsigned lambda, std::size_t phi) {
        if (lambda == 0) return;
        const std::size_t psi = phi / 2;
        if (phi % 2 == 0) recursively_calc_p(lambda - 1, psi);
        const R half = R(1) / R(2);
        const std::size_t branches = n_ >> lambda;
        for (std::size_t beta = 0; beta < branches; ++beta) {
            const ProbPairT<R>& left = read_p(lambda - 1, psi, 2 * beta);
            const ProbPairT<R>& right = read_p(lambda - 1, psi, 2 * beta + 1);
            ProbPairT<R> out;
            if (phi % 2 == 0) {
                out.p0 = half * (left.p0 * right.p0 + left.p1 * right.p1);
                out.p1 = half * (left.p1 * right.p0 + left.p0 * right.p1);
            } else {
                const Bit u = read_b(lambda, phi - 1, beta);
                out.p0 = half * (u ? left.p1 : left.p0) * right.p0;
                out.p1 = half * (u ? left.p0 : left.p1) * right.p1;
            }
            write_p(lambda, phi, beta, out);
        }
        // Keep the exponents of floating-point probabilities in range; the
        // divisor is a power of two, so no decision is ever affected. Exact
        // arithmetic runs unscaled so the raw recursion values can be
        // observed (e.g. the 2^-phase decay of the top layer).
        if constexpr (std::is_floating_point_v<R>) {
            R sigma = R(0);
            for (std::size_t beta = 0; beta < branches; ++beta) {
                const ProbPairT<R>& pair = read_p(lambda, phi, beta);
                sigma = std::max({sigma, pair.p0, pair.p1});
            }
            const R divisor = normalization_divisor(sigma);
            for (std::size_t beta = 0; beta < branches; ++beta) {
                ProbPairT<R> pair = read_p(lambda, phi, beta);
                pair.p0 /= divisor;
                pair.p1 /= divisor;
                write_p(lambda, phi, beta, pair);
            }
        }
    }

    void recursively_update_b(unsigned lambda, std::size_t phi) {
        if (phi % 2 != 1) throw std::invalid_argument("recursively_update_b: phase must be odd");
        const std::size_t psi = phi / 2;
        const std::size_t branches = n_ >> lambda;
        for (std::size_t beta = 0; beta < branches; ++beta) {
            const Bit even = read_b(lambda, phi - 1, beta);
            const Bit odd = read_b(lambda, phi, beta);
            write_b(lambda - 1, psi, 2 * beta, static_cast<Bit>(even ^ odd));
            write_b(lambda - 1, psi, 2 * beta + 1, odd);
        }
        if (psi % 2 == 1) recursively_update_b(lambda - 1, psi);
    }

    const ProbPairT<R>& read_p(unsigned lambda, std::size_t phi, std::size_t beta) const {
        const std::size_t i = phase_branch_index(lambda, phi, beta, m_);
        if (!p_written_[lambda][i])
            throw std::logic_error("sc_decode_reference: read of unwritten probability cell");
        return p_[lambda][i];
    }

    void write_p(unsigned lambda, std::size_t phi, std::size_t beta, const ProbPairT<R>& v) {
        const std::size_t i = phase_branch_index(lambda, phi, beta, m_);
        p_[lambda][i] = v;
        p_written_[lambda][i] = 1;
    }

    Bit read_b(unsigned lambda, std::size_t phi, std::size_t beta) const {
        const std::size_t i = phase_branch_index(lambda, phi, beta, m_);
        if (!b_written_[lambda][i])
            throw std::logic_error("sc_decode_reference: read of unwritten bit cell");
        return b_[lambda][i];
    }

    void write_b(unsigned lambda, std::size_t phi, std::size_t beta, Bit v) {
        const std::size_t i = phase_branch_index(lambda, phi, beta, m_);
        b_[lambda][i] = v;
        b_written_[lambda][i] = 1;
    }

    CodeSpec spec_;
    unsigned m_;
    std::size_t n_;
    std::size_t phi_ = 0;
    std::vector<std::vector<ProbPairT<R>>> p_;
    std::vector<std::vector<Bit>> b_;
    std::vector<std::vector<std::uint8_t>> p_written_;
    std::vector<std::vector<std::uint8_t>> b_written_;
    ProbPairT<R> last_pair_{};
    BitVec u_hat_;
};

/// Space-efficient SC decoder: one ProbPair array and one BitPair array per
/// layer, of size 2^(m-lambda) each, so Theta(n) cells in total. The layer-0
/// bit cells only ever use their even slot.
template <class R>
class ScCompactDecoderT {
  public:
    ScCompactDecoderT(const CodeSpec& spec, const std::vector<ProbPairT<R>>& probs)
        : spec_(spec), m_(spec.m()), n_(spec.n()) {
        if (probs.size() != n_)
            throw std::invalid_argument("sc_decode: expected n likelihood pairs");
        p_.resize(m_ + 1);
        c_.resize(m_ + 1);
        for (unsigned lambda = 0; lambda <= m_; ++lambda) {
            p_[lambda].resize(n_ >> lambda);
            c_[lambda].resize(n_ >> lambda);
        }
        for (std::size_t beta = 0; beta < n_; ++beta) {
            if (probs[beta].p0 < R(0) || probs[beta].p1 < R(0))
                throw std::invalid_argument("sc_decode: negative likelihood");
            p_[0][beta] = probs[beta];
        }
        u_hat_.reserve(n_);
    }

    bool done() const { return phi_ == n_; }
    std::size_t phase() const { return phi_; }

    Bit step() { return advance(nullptr); }

    Bit step_forced(Bit value) {
        if (value > 1) throw std::invalid_argument("step_forced: bit must be 0 or 1");
        return advance(&value);
    }

    const ProbPairT<R>& decision_pair() const {
        if (phi_ == 0) throw std::logic_error("decision_pair: no phase decoded yet");
        return p_[m_][0];
    }

    const BitVec& u_hat() const { return u_hat_; }

    BitVec c_hat() const {
        if (!done()) throw std::logic_error("c_hat: decode incomplete");
        BitVec c(n_);
        for (std::size_t beta = 0; beta < n_; ++beta) c[beta] = c_[0][beta][0];
        return c;
    }

    /// Allocation accounting for the memory-footprint property test.
    std::size_t prob_cells() const {
        std::size_t total = 0;
        for (const auto& layer : p_) total += layer.size();
        return total;
    }
    std::size_t bit_cells() const {
        std::size_t total = 0;
        for (const auto& layer : c_) total += layer.size();
        return total;
    }

  private:
    Bit advance(const Bit* forced) {
        if (done()) throw std::logic_error("step: all phases already decoded");
        recursively_calc_p(m_, phi_);
        const Bit decision = hard_decision(p_[m_][0]);
        Bit out;
        if (forced)
            out = *forced;
        else
            out = spec_.is_frozen(phi_) ? spec_.frozen_value(phi_) : decision;
        c_[m_][0][phi_ % 2] = out;
        u_hat_.push_back(out);
        if (phi_ % 2 == 1) recursively_update_c(m_, phi_);
        ++phi_;
        return forced ? decision : out;
    }

    void recursively_calc_p(unsigned lambda, std::size_t phi) {
        if (lambda == 0) return;
        const std::size_t psi = phi / 2;
        if (phi % 2 == 0) recursively_calc_p(lambda - 1, psi);
        const R half = R(1) / R(2);
        const std::size_t branches = n_ >> lambda;
        for (std::size_t beta = 0; beta < branches; ++beta) {
            const ProbPairT<R>& left = p_[lambda - 1][2 * beta];
            const ProbPairT<R>& right = p_[lambda - 1][2 * beta + 1];
            ProbPairT<R>& out = p_[lambda][beta];
            if (phi % 2 == 0) {
                out.p0 = half * (left.p0 * right.p0 + left.p1 * right.p1);
                out.p1 = half * (left.p1 * right.p0 + left.p0 * right.p1);
            } else {
                const Bit u = c_[lambda][beta][0];
                out.p0 = half * (u ? left.p1 : left.p0) * right.p0;
                out.p1 = half * (u ? left.p0 : left.p1) * right.p1;
            }
        }
        // Same power-of-two exponent management as the reference decoder:
        // exact, decision-neutral, and shared with the list decoder so all
        // of them agree bit for bit.
        if constexpr (std::is_floating_point_v<R>) {
            R sigma = R(0);
            for (std::size_t beta = 0; beta < branches; ++beta)
                sigma = std::max({sigma, p_[lambda][beta].p0, p_[lambda][beta].p1});
            const R divisor = normalization_divisor(sigma);
            for (std::size_t beta = 0; beta < branches; ++beta) {
                p_[lambda][beta].p0 /= divisor;
                p_[lambda][beta].p1 /= divisor;
            }
        }
    }

    void recursively_update_c(unsigned lambda, std::size_t phi) {
        if (phi % 2 != 1) throw std::invalid_argument("recursively_update_c: phase must be odd");
        const std::size_t psi = phi / 2;
        const std::size_t branches = n_ >> lambda;
        for (std::size_t beta = 0; beta < branches; ++beta) {
            c_[lambda - 1][2 * beta][psi % 2] = static_cast<Bit>(c_[lambda][beta][0] ^ c_[lambda][beta][1]);
            c_[lambda - 1][2 * beta + 1][psi % 2] = c_[lambda][beta][1];
        }
        if (psi % 2 == 1) recursively_update_c(lambda - 1, psi);
    }

    CodeSpec spec_;
    unsigned m_;
    std::size_t n_;
    std::size_t phi_ = 0;
    std::vector<std::vector<ProbPairT<R>>> p_;
    std::vector<std::vector<BitPair>> c_;
    BitVec u_hat_;
};

using ScReferenceDecoder = ScReferenceDecoderT<double>;
using ScCompactDecoder = ScCompactDecoderT<double>;

template <class R>
ScOutputT<R> sc_decode_reference_t(const CodeSpec& spec, const std::vector<ProbPairT<R>>& probs) {
    ScReferenceDecoderT<R> dec(spec, probs);
    while (!dec.done()) dec.step();
    return {dec.u_hat(), dec.c_hat()};
}

template <class R>
ScOutputT<R> sc_decode_t(const CodeSpec& spec, const std::vector<ProbPairT<R>>& probs) {
    ScCompactDecoderT<R> dec(spec, probs);
    while (!dec.done()) dec.step();
    return {dec.u_hat(), dec.c_hat()};
}

ScOutput sc_decode_reference(const CodeSpec& spec, const std::vector<ProbPair>& probs);
ScOutput sc_decode(const CodeSpec& spec, const std::vector<ProbPair>& probs);

}  // namespace polarlist
