#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <type_traits>
#include <utility>

#include "polarlist/crc.hpp"
#include "polarlist/encoder.hpp"
#include "polarlist/path_manager.hpp"
#include "polarlist/sc_decoder.hpp"

namespace polarlist {

/// Thrown when every surviving path reaches probability zero, i.e. the
/// received word is impossible under the channel model.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SclOptions {
    std::size_t list_size = 1;
    /// Restrict the final selection to paths whose unfrozen bits pass the
    /// outer check, falling back to the plain metric when none do.
    bool crc_selection = false;
    OuterCheck outer = OuterCheck::none();
    /// Rescale each layer by normalization_divisor of its largest
    /// probability (keeps doubles alive at large n; provably does not
    /// change any decision).
    bool normalize = true;
    /// When true, array pointers are privatized on reads as well as writes;
    /// when false, pure reads skip the copy. Both modes must decode
    /// identically — that is what the transparency tests check.
    bool copy_on_read = true;
};

template <class R>
struct SclResultT {
    BitVec c_hat;
    BitVec u_hat;
    /// Payload bits only: u_hat at the first k - r unfrozen positions.
    BitVec info_hat;
    std::size_t selected_path = 0;
    /// crc_selection was requested but no surviving path passed the check.
    bool crc_fallback = false;
    std::size_t final_active_paths = 0;
    /// (path index, final metric) for every surviving path, ascending index.
    std::vector<std::pair<std::size_t, R>> path_metrics;
    /// Cells copied by lazy privatization during this decode.
    std::uint64_t copied_cells = 0;
};

using SclResult = SclResultT<double>;

/// One fork-selection table: metrics for both continuations of every path
/// slot (-1 marks an unusable slot) and the chosen continuation marks.
template <class R>
struct ForkTableT {
    std::vector<std::array<R, 2>> prob;
    std::vector<std::array<std::uint8_t, 2>> cont;
    std::size_t rho = 0;
};

/// Mark the rho largest entries of `table.prob` in `table.cont`. Ties are
/// broken toward the lower path index, then toward bit 0, so selection is a
/// total order and deterministic everywhere.
template <class R>
void select_forks(ForkTableT<R>& table) {
    const std::size_t L = table.prob.size();
    table.cont.assign(L, {0, 0});
    if (table.rho == 0) return;
    if (table.rho > 2 * L) throw std::invalid_argument("select_forks: rho exceeds fork count");

    std::vector<std::pair<std::size_t, unsigned>> order;
    order.reserve(2 * L);
    for (std::size_t ell = 0; ell < L; ++ell) {
        order.emplace_back(ell, 0);
        order.emplace_back(ell, 1);
    }
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        const R& pa = table.prob[a.first][a.second];
        const R& pb = table.prob[b.first][b.second];
        if (pa != pb) return pa > pb;
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; i < table.rho; ++i) {
        if (table.prob[order[i].first][order[i].second] < R(0))
            throw std::logic_error("select_forks: rho exceeds the number of valid forks");
        table.cont[order[i].first][order[i].second] = 1;
    }
}

/// Successive-cancellation list decoder. One instance per decode call's
/// worth of state; decode() may be called repeatedly, each call starts from
/// a fresh path manager.
template <class R>
class ListDecoderT {
  public:
    ListDecoderT(const CodeSpec& spec, SclOptions opts)
        : spec_(spec), opts_(std::move(opts)) {
        if (opts_.list_size < 1)
            throw std::invalid_argument("ListDecoder: list size must be >= 1");
        if (opts_.crc_selection) {
            if (opts_.outer.kind == OuterCheck::Kind::none)
                throw std::invalid_argument("ListDecoder: crc_selection requires an outer check");
            if (opts_.outer.width() != spec_.crc_width())
                throw std::invalid_argument(
                    "ListDecoder: outer check width does not match the code's check width");
        }
    }

    const SclOptions& options() const { return opts_; }

    /// Manager of the most recent decode; for instrumentation and tests.
    PathManagerT<R>& manager() {
        if (!mgr_) throw std::logic_error("manager: no decode has run yet");
        return *mgr_;
    }

    SclResultT<R> decode(const std::vector<ProbPairT<R>>& probs) {
        const std::size_t n = spec_.n();
        const unsigned m = spec_.m();
        if (probs.size() != n)
            throw std::invalid_argument("scl_decode: expected n likelihood pairs");
        for (const ProbPairT<R>& pair : probs)
            if (pair.p0 < R(0) || pair.p1 < R(0))
                throw std::invalid_argument("scl_decode: negative likelihood");

        mgr_.emplace(m, opts_.list_size);
        PathManagerT<R>& mgr = *mgr_;

        const std::size_t first = mgr.assign_initial_path();
        ProbPairT<R>* p0 = mgr.get_array_p(0, first);
        for (std::size_t beta = 0; beta < n; ++beta) p0[beta] = probs[beta];

        for (std::size_t phi = 0; phi < n; ++phi) {
            recursively_calc_p(m, phi);
            if (spec_.is_frozen(phi))
                continue_frozen(phi);
            else
                continue_unfrozen(phi);
            if (phi % 2 == 1) recursively_update_c(m, phi);
        }

        SclResultT<R> out;
        out.crc_fallback = false;
        out.selected_path = select_final_path(&out.crc_fallback);
        out.c_hat = path_codeword(out.selected_path);
        out.u_hat = polar_transform(out.c_hat);

        const BitVec unfrozen = extract_unfrozen(out.u_hat, spec_);
        out.info_hat.assign(unfrozen.begin(), unfrozen.begin() + spec_.info_bits());

        out.final_active_paths = mgr.active_count();
        for (std::size_t ell = 0; ell < opts_.list_size; ++ell)
            if (mgr.path_active(ell)) out.path_metrics.emplace_back(ell, path_metric(ell));
        out.copied_cells = mgr.copied_cells();
        return out;
    }

  private:
    // Pure-read pointer into a path's layer arrays. The strict mode
    // privatizes even these; the relaxed mode leaves shared slots alone.
    const ProbPairT<R>* read_p(unsigned lambda, std::size_t ell) {
        return opts_.copy_on_read ? mgr_->get_array_p(lambda, ell)
                                  : mgr_->peek_array_p(lambda, ell);
    }
    const BitPair* read_c(unsigned lambda, std::size_t ell) {
        return opts_.copy_on_read ? mgr_->get_array_c(lambda, ell)
                                  : mgr_->peek_array_c(lambda, ell);
    }

    void recursively_calc_p(unsigned lambda, std::size_t phi) {
        if (lambda == 0) return;
        const std::size_t psi = phi / 2;
        if (phi % 2 == 0) recursively_calc_p(lambda - 1, psi);

        const R half = R(1) / R(2);
        const std::size_t branches = spec_.n() >> lambda;
        const std::size_t L = opts_.list_size;
        R sigma = R(0);
        for (std::size_t ell = 0; ell < L; ++ell) {
            if (!mgr_->path_active(ell)) continue;
            ProbPairT<R>* out = mgr_->get_array_p(lambda, ell);
            const ProbPairT<R>* in = read_p(lambda - 1, ell);
            const BitPair* bits = (phi % 2 == 1) ? read_c(lambda, ell) : nullptr;
            for (std::size_t beta = 0; beta < branches; ++beta) {
                const ProbPairT<R>& left = in[2 * beta];
                const ProbPairT<R>& right = in[2 * beta + 1];
                if (phi % 2 == 0) {
                    out[beta].p0 = half * (left.p0 * right.p0 + left.p1 * right.p1);
                    out[beta].p1 = half * (left.p1 * right.p0 + left.p0 * right.p1);
                } else {
                    const Bit u = bits[beta][0];
                    out[beta].p0 = half * (u ? left.p1 : left.p0) * right.p0;
                    out[beta].p1 = half * (u ? left.p0 : left.p1) * right.p1;
                }
                if (out[beta].p0 > sigma) sigma = out[beta].p0;
                if (out[beta].p1 > sigma) sigma = out[beta].p1;
            }
        }

        if (!opts_.normalize) return;
        if (sigma == R(0))
            throw numeric_error(
                "scl_decode: all path probabilities vanished; the received word is "
                "impossible under the channel model");
        const R divisor = normalization_divisor(sigma);
        for (std::size_t ell = 0; ell < L; ++ell) {
            if (!mgr_->path_active(ell)) continue;
            ProbPairT<R>* out = mgr_->get_array_p(lambda, ell);
            for (std::size_t beta = 0; beta < branches; ++beta) {
                out[beta].p0 = out[beta].p0 / divisor;
                out[beta].p1 = out[beta].p1 / divisor;
            }
        }
    }

    void recursively_update_c(unsigned lambda, std::size_t phi) {
        if (phi % 2 != 1)
            throw std::invalid_argument("recursively_update_c: phase must be odd");
        const std::size_t psi = phi / 2;
        const std::size_t branches = spec_.n() >> lambda;
        for (std::size_t ell = 0; ell < opts_.list_size; ++ell) {
            if (!mgr_->path_active(ell)) continue;
            const BitPair* src = read_c(lambda, ell);
            BitPair* dst = mgr_->get_array_c(lambda - 1, ell);
            for (std::size_t beta = 0; beta < branches; ++beta) {
                dst[2 * beta][psi % 2] = static_cast<Bit>(src[beta][0] ^ src[beta][1]);
                dst[2 * beta + 1][psi % 2] = src[beta][1];
            }
        }
        if (psi % 2 == 1) recursively_update_c(lambda - 1, psi);
    }

    void continue_frozen(std::size_t phi) {
        const Bit value = spec_.frozen_value(phi);
        for (std::size_t ell = 0; ell < opts_.list_size; ++ell) {
            if (!mgr_->path_active(ell)) continue;
            mgr_->get_array_c(spec_.m(), ell)[0][phi % 2] = value;
        }
    }

    void continue_unfrozen(std::size_t phi) {
        const std::size_t L = opts_.list_size;
        const unsigned m = spec_.m();

        ForkTableT<R> table;
        table.prob.assign(L, {R(-1), R(-1)});
        std::size_t actives = 0;
        for (std::size_t ell = 0; ell < L; ++ell) {
            if (!mgr_->path_active(ell)) continue;
            const ProbPairT<R>* pm = read_p(m, ell);
            table.prob[ell] = {pm[0].p0, pm[0].p1};
            ++actives;
        }
        table.rho = std::min(2 * actives, L);
        select_forks(table);

        // Kill every path with no surviving fork first; their slots refill
        // the pool before any clone draws from it, which is what keeps the
        // path count within L.
        for (std::size_t ell = 0; ell < L; ++ell) {
            if (!mgr_->path_active(ell)) continue;
            if (!table.cont[ell][0] && !table.cont[ell][1]) mgr_->kill_path(ell);
        }

        // Freshly recycled indices are safe to skip: their fork marks are
        // necessarily both false.
        for (std::size_t ell = 0; ell < L; ++ell) {
            if (!table.cont[ell][0] && !table.cont[ell][1]) continue;
            if (table.cont[ell][0] && table.cont[ell][1]) {
                mgr_->get_array_c(m, ell)[0][phi % 2] = 0;
                const std::size_t ell2 = mgr_->clone_path(ell);
                mgr_->get_array_c(m, ell2)[0][phi % 2] = 1;
            } else {
                const Bit b = table.cont[ell][1] ? Bit{1} : Bit{0};
                mgr_->get_array_c(m, ell)[0][phi % 2] = b;
            }
        }
    }

    /// Final metric of a path: the top-layer probability of its own last
    /// decision, P_m[0][C_m[0][1]].
    R path_metric(std::size_t ell) const {
        const Bit last = mgr_->peek_array_c(spec_.m(), ell)[0][1];
        return mgr_->peek_array_p(spec_.m(), ell)[0][last];
    }

    BitVec path_codeword(std::size_t ell) const {
        const BitPair* c0 = mgr_->peek_array_c(0, ell);
        BitVec c(spec_.n());
        for (std::size_t beta = 0; beta < spec_.n(); ++beta) c[beta] = c0[beta][0];
        return c;
    }

    bool path_passes_check(std::size_t ell) const {
        const BitVec u = polar_transform(path_codeword(ell));
        return opts_.outer.check(extract_unfrozen(u, spec_));
    }

    std::size_t select_final_path(bool* fallback) const {
        if (opts_.crc_selection) {
            if (auto best = best_path(true)) return *best;
            *fallback = true;
        }
        if (auto best = best_path(false)) return *best;
        throw std::logic_error("select_final_path: no active path survived");
    }

    /// Lowest-index path among those with the strictly largest metric
    /// (restricted to check-passing paths when asked). The lowest active
    /// index also serves as the answer when every metric is zero.
    std::optional<std::size_t> best_path(bool restrict_to_check) const {
        std::optional<std::size_t> best;
        R best_metric = R(0);
        for (std::size_t ell = 0; ell < opts_.list_size; ++ell) {
            if (!mgr_->path_active(ell)) continue;
            if (restrict_to_check && !path_passes_check(ell)) continue;
            const R metric = path_metric(ell);
            if (!best || metric > best_metric) {
                best = ell;
                best_metric = metric;
            }
        }
        return best;
    }

    CodeSpec spec_;
    SclOptions opts_;
    std::optional<PathManagerT<R>> mgr_;
};

using ListDecoder = ListDecoderT<double>;

template <class R>
SclResultT<R> scl_decode_t(const CodeSpec& spec, const std::vector<ProbPairT<R>>& probs,
                           const SclOptions& opts) {
    ListDecoderT<R> dec(spec, opts);
    return dec.decode(probs);
}

SclResult scl_decode(const CodeSpec& spec, const std::vector<ProbPair>& probs,
                     const SclOptions& opts);

}  // namespace polarlist
