// Acceptance gate for the library: each check prints exactly one PASS/FAIL
// line with its measured numbers, and the process exit code is the number of
// failed checks. Run through ctest (test name "acceptance") or directly.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "polarlist/channel.hpp"
#include "polarlist/construction.hpp"
#include "polarlist/encoder.hpp"
#include "polarlist/list_decoder.hpp"
#include "polarlist/rng.hpp"
#include "polarlist/sc_decoder.hpp"
#include "polarlist/sim.hpp"
#include "support/naive_scl.hpp"
#include "support/pm_fuzz.hpp"
#include "support/rational.hpp"

using namespace polarlist;
using polarlist::testing::naive_scl_decode;
using polarlist::testing::pm_fuzz_run;
using polarlist::testing::Rational;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CodeSpec random_spec(RngEngine& rng, unsigned m) {
    std::vector<FrozenBit> frozen;
    for (std::size_t pos = 0; pos < (std::size_t{1} << m); ++pos)
        if (rng() % 2 == 0) frozen.push_back({pos, random_bit(rng)});
    return CodeSpec(m, std::move(frozen));
}

std::vector<ProbPair> transmit_random(RngEngine& rng, const CodeSpec& spec,
                                      const OuterCheck& outer, const ChannelModel& model) {
    BitVec info(spec.info_bits());
    for (Bit& b : info) b = random_bit(rng);
    return model.prob_pairs(model.transmit(encode(info, spec, outer), rng));
}

ChannelModel random_channel(RngEngine& rng, bool bsc) {
    return bsc ? ChannelModel::bsc(0.02 + 0.43 * uniform01(rng))
               : ChannelModel::awgn(0.3 + 1.2 * uniform01(rng));
}

template <class R>
bool same_full_decode(const SclResultT<R>& a, const SclResultT<R>& b) {
    return a.c_hat == b.c_hat && a.u_hat == b.u_hat && a.info_hat == b.info_hat &&
           a.selected_path == b.selected_path && a.crc_fallback == b.crc_fallback &&
           a.final_active_paths == b.final_active_paths && a.path_metrics == b.path_metrics;
}

// ---------------------------------------------------------------------------
// 1. Both SC implementations and the list decoder at L=1 must agree
//    bit-for-bit on randomized instances over both channel families.
bool check_oracle_chain(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    RngEngine rng = substream(1001, 0);
    std::size_t total = 0;
    std::size_t mismatches = 0;
    for (const unsigned m : {3u, 6u, 8u}) {
        for (int i = 0; i < 1000; ++i) {
            const CodeSpec spec = random_spec(rng, m);
            const ChannelModel model = random_channel(rng, i % 2 == 0);
            const auto probs = transmit_random(rng, spec, OuterCheck::none(), model);
            const ScOutput ref = sc_decode_reference(spec, probs);
            const ScOutput com = sc_decode(spec, probs);
            const SclResult one = scl_decode(spec, probs, SclOptions{});
            if (ref.u_hat != com.u_hat || ref.c_hat != com.c_hat || one.u_hat != com.u_hat ||
                one.c_hat != com.c_hat)
                ++mismatches;
            ++total;
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << mismatches << " mismatches over " << total
       << " instances (n in {8,64,256}, BSC+AWGN), " << std::fixed << std::setprecision(1)
       << secs << " s (limit 60 s)";
    detail = os.str();
    return mismatches == 0 && total == 3000 && secs < 60.0;
}

// ---------------------------------------------------------------------------
// 2. The lazy-copy list decoder must produce results identical to a deep-copy
//    implementation for every list size and length in the grid.
bool check_lazy_copy_transparency(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    RngEngine rng = substream(2001, 0);
    std::size_t total = 0;
    std::size_t mismatches = 0;
    for (const std::size_t L : {2, 4, 8}) {
        for (const unsigned m : {3u, 5u, 7u}) {
            for (int i = 0; i < 500; ++i) {
                const CodeSpec spec = random_spec(rng, m);
                const ChannelModel model = random_channel(rng, i % 2 == 0);
                const auto probs = transmit_random(rng, spec, OuterCheck::none(), model);
                SclOptions opts;
                opts.list_size = L;
                opts.copy_on_read = (i % 2 == 0);
                const SclResult lazy = scl_decode(spec, probs, opts);
                const SclResult deep = naive_scl_decode(spec, probs, opts);
                if (!same_full_decode(lazy, deep)) ++mismatches;
                ++total;
            }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << mismatches << " mismatches over " << total
       << " decodes (L in {2,4,8}, n in {8,32,128}), " << std::fixed << std::setprecision(1)
       << secs << " s (limit 120 s)";
    detail = os.str();
    return mismatches == 0 && total == 4500 && secs < 120.0;
}

// ---------------------------------------------------------------------------
// 3. At n=8, k=4 a list of 16 holds every candidate, so the decoder must be
//    exactly maximum-likelihood against a brute-force codebook scan.
bool check_ml_equivalence(std::string& detail) {
    const CodeSpec spec = bhattacharyya_construct(8, 4, 0.5);
    std::vector<BitVec> codebook;
    for (unsigned w = 0; w < 16; ++w) {
        BitVec info(4);
        for (unsigned j = 0; j < 4; ++j) info[j] = static_cast<Bit>((w >> j) & 1);
        codebook.push_back(encode(info, spec));
    }

    SclOptions opts;
    opts.list_size = 16;
    RngEngine rng = substream(3001, 0);
    std::size_t total = 0;
    std::size_t violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const ChannelModel model =
            (i % 2 == 0) ? ChannelModel::awgn(0.9) : ChannelModel::bsc(0.2);
        const auto probs = transmit_random(rng, spec, OuterCheck::none(), model);
        const SclResult res = scl_decode(spec, probs, opts);

        const auto likelihood = [&](const BitVec& c) {
            double prod = 1.0;
            for (std::size_t s = 0; s < c.size(); ++s) prod *= probs[s][c[s]];
            return prod;
        };
        double best = 0.0;
        for (const BitVec& c : codebook) best = std::max(best, likelihood(c));
        if (likelihood(res.c_hat) < best * (1.0 - 1e-12)) ++violations;
        ++total;
    }
    std::ostringstream os;
    os << violations << " sub-optimal decodes over " << total
       << " instances (relative tolerance 1e-12)";
    detail = os.str();
    return violations == 0 && total == 10000;
}

// ---------------------------------------------------------------------------
// 4. Copying work must scale as O(L * n * log2 n) per decode: fit the
//    constant at (L=2, n=64) and demand every grid cell stays within 2x of
//    it. Allocated bank cells must stay within 4*L*n.
bool check_copy_complexity(std::string& detail) {
    RngEngine rng = substream(4001, 0);
    const auto mean_copied = [&](std::size_t L, unsigned m, bool* banks_ok) {
        const std::size_t n = std::size_t{1} << m;
        const CodeSpec spec = bhattacharyya_construct(n, n / 2, 0.5);
        const ChannelModel model = ChannelModel::awgn(0.9);
        SclOptions opts;
        opts.list_size = L;
        ListDecoder dec(spec, opts);
        double sum = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto probs = transmit_random(rng, spec, OuterCheck::none(), model);
            sum += static_cast<double>(dec.decode(probs).copied_cells);
        }
        const std::size_t banks =
            dec.manager().prob_cells_allocated() + dec.manager().bit_cells_allocated();
        *banks_ok = banks <= 4 * L * n;
        return sum / 50.0;
    };

    bool banks_ok = true;
    const double fit_cells = mean_copied(2, 6, &banks_ok);
    const double c = fit_cells / (2.0 * 64.0 * 6.0);

    double worst_ratio = 0.0;
    bool all_within = banks_ok;
    for (const std::size_t L : {2, 8, 32}) {
        for (const unsigned m : {6u, 10u}) {
            bool cell_banks_ok = true;
            const double measured = mean_copied(L, m, &cell_banks_ok);
            const double n = static_cast<double>(std::size_t{1} << m);
            const double ratio = measured / (c * static_cast<double>(L) * n * m);
            worst_ratio = std::max(worst_ratio, ratio);
            if (ratio > 2.0 || !cell_banks_ok) all_within = false;
        }
    }
    std::ostringstream os;
    os << "fitted c=" << std::fixed << std::setprecision(3) << c << " cells/(L*n*log2 n); "
       << "worst cell at " << std::setprecision(2) << worst_ratio
       << "x of fit (limit 2x) over L in {2,8,32}, n in {64,1024}; bank cells "
       << (all_within ? "<=" : "exceed") << " 4*L*n";
    detail = os.str();
    return all_within;
}

// ---------------------------------------------------------------------------
// 5. With exact rational arithmetic, per-layer rescaling must not change a
//    single decision, selection, or survivor set.
bool check_normalization_neutrality(std::string& detail) {
    RngEngine rng = substream(5001, 0);
    std::size_t total = 0;
    std::size_t mismatches = 0;
    const long dens[3][2] = {{1, 4}, {3, 10}, {1, 8}};
    for (int i = 0; i < 1000; ++i) {
        const unsigned m = 1 + static_cast<unsigned>(i % 4);  // n in {2,...,16}
        CodeSpec spec = random_spec(rng, m);
        SclOptions opts;
        opts.list_size = (i % 3 == 0) ? 1 : ((i % 3 == 1) ? 2 : 4);
        if (i % 5 == 0 && spec.k() >= 3) {
            spec = spec.with_crc(2);
            opts.crc_selection = true;
            opts.outer = OuterCheck::random(2, 90 + static_cast<std::uint64_t>(i));
        }
        BitVec y(spec.n());
        for (Bit& b : y) b = random_bit(rng);
        const auto probs =
            polarlist::testing::bsc_pairs_exact(y, dens[i % 3][0], dens[i % 3][1]);

        opts.normalize = true;
        const SclResultT<Rational> scaled = scl_decode_t<Rational>(spec, probs, opts);
        opts.normalize = false;
        const SclResultT<Rational> exact = scl_decode_t<Rational>(spec, probs, opts);

        bool same = scaled.c_hat == exact.c_hat && scaled.u_hat == exact.u_hat &&
                    scaled.info_hat == exact.info_hat &&
                    scaled.selected_path == exact.selected_path &&
                    scaled.crc_fallback == exact.crc_fallback &&
                    scaled.final_active_paths == exact.final_active_paths &&
                    scaled.path_metrics.size() == exact.path_metrics.size();
        if (same) {
            for (std::size_t a = 0; same && a < scaled.path_metrics.size(); ++a) {
                same = scaled.path_metrics[a].first == exact.path_metrics[a].first;
                for (std::size_t b = a + 1; same && b < scaled.path_metrics.size(); ++b) {
                    const bool lt_s = scaled.path_metrics[a].second < scaled.path_metrics[b].second;
                    const bool eq_s =
                        scaled.path_metrics[a].second == scaled.path_metrics[b].second;
                    const bool lt_e = exact.path_metrics[a].second < exact.path_metrics[b].second;
                    const bool eq_e =
                        exact.path_metrics[a].second == exact.path_metrics[b].second;
                    same = (lt_s == lt_e) && (eq_s == eq_e);
                }
            }
        }
        if (!same) ++mismatches;
        ++total;
    }
    std::ostringstream os;
    os << mismatches << " decision differences over " << total
       << " exact-arithmetic decodes (n <= 16, L in {1,2,4})";
    detail = os.str();
    return mismatches == 0 && total == 1000;
}

// ---------------------------------------------------------------------------
// 6. Monte-Carlo trends at n=1024, rate 1/2, Eb/N0 = 2 dB: larger lists must
//    improve WER beyond CI overlap, the ML-error bound can never exceed the
//    WER, and CRC-16-aided selection at L=32 must beat metric-only selection.
bool check_list_and_crc_gains(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const double sigma_plain = snr_db_to_sigma(2.0, 512.0 / 1024.0);
    const double design_z = std::exp(-1.0 / (2.0 * sigma_plain * sigma_plain));
    const CodeSpec plain = bhattacharyya_construct(1024, 512, design_z);
    const CodeSpec crc16 = plain.with_crc(16);
    const double sigma_crc = snr_db_to_sigma(2.0, 496.0 / 1024.0);

    RunOptions run;
    run.max_word_errors = 0;  // full trial budget for tight intervals
    run.threads = 1;

    struct Cell {
        const char* label;
        TrialStats stats;
        double wer, lo, hi;
    };
    const auto measure = [&](const char* label, const CodeSpec& spec, double sigma,
                             std::size_t L, bool crc, std::uint64_t trials,
                             std::uint64_t seed) {
        Cell cell{label, run_point(spec, ChannelModel::awgn(sigma), L, crc, trials, seed, run),
                  0.0, 0.0, 0.0};
        cell.wer = static_cast<double>(cell.stats.word_errors) /
                   static_cast<double>(cell.stats.trials);
        std::tie(cell.lo, cell.hi) = binomial_ci95(cell.stats.word_errors, cell.stats.trials);
        return cell;
    };

    const Cell l1 = measure("L=1", plain, sigma_plain, 1, false, 10000, 61);
    const Cell l8 = measure("L=8", plain, sigma_plain, 8, false, 10000, 62);
    const Cell l32 = measure("L=32", plain, sigma_plain, 32, false, 20000, 63);
    const Cell l32crc = measure("L=32+CRC16", crc16, sigma_crc, 32, true, 20000, 64);

    const bool list_gain = l8.hi < l1.lo;
    const bool crc_gain = l32crc.hi < l32.lo;
    bool ml_ok = true;
    for (const Cell* cell : {&l1, &l8, &l32, &l32crc})
        if (cell->stats.ml_bound_hits > cell->stats.word_errors) ml_ok = false;
    const double secs = seconds_since(t0);

    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << "WER " << l1.wer << " (L=1) vs " << l8.wer
       << " (L=8), CIs " << (list_gain ? "disjoint" : "OVERLAP") << "; " << l32.wer
       << " (L=32) vs " << l32crc.wer << " (L=32+CRC16), CIs "
       << (crc_gain ? "disjoint" : "OVERLAP") << "; ml-bound "
       << (ml_ok ? "<= wer" : "EXCEEDS wer") << " in all 4 cells; " << std::fixed
       << std::setprecision(0) << secs << " s (limit 1800 s)";
    detail = os.str();
    return list_gain && crc_gain && ml_ok && secs < 1800.0;
}

// ---------------------------------------------------------------------------
// 7. Randomized valid call sequences on the path manager: reference counts,
//    stacks, and per-path array views must survive every mix of clone, kill,
//    and copy-on-write access.
bool check_path_manager_fuzz(std::string& detail) {
    std::size_t sequences = 0;
    std::size_t operations = 0;
    std::string failure;
    for (std::size_t i = 0; i < 100000; ++i) {
        const unsigned m = 1 + static_cast<unsigned>(i % 6);
        const std::size_t L = 1 + (i / 6) % 8;
        try {
            const auto stats = pm_fuzz_run(m, L, 20, 7001 + i);
            operations += stats.operations;
        } catch (const std::exception& e) {
            failure = e.what();
            break;
        }
        ++sequences;
    }
    std::ostringstream os;
    os << sequences << "/100000 sequences clean, " << operations << " operations";
    if (!failure.empty()) os << "; first violation: " << failure;
    detail = os.str();
    return sequences == 100000 && failure.empty();
}

struct Check {
    int id;
    const char* name;
    bool (*fn)(std::string&);
};

}  // namespace

int main() {
    const Check checks[] = {
        {1, "decoder oracle chain", check_oracle_chain},
        {2, "lazy-copy transparency", check_lazy_copy_transparency},
        {3, "maximum-likelihood equivalence (n=8, L=16)", check_ml_equivalence},
        {4, "copy-complexity bound", check_copy_complexity},
        {5, "normalization neutrality (exact arithmetic)", check_normalization_neutrality},
        {6, "list and CRC gains (n=1024, rate 1/2, 2 dB)", check_list_and_crc_gains},
        {7, "path-manager state fuzz", check_path_manager_fuzz},
    };

    int failures = 0;
    for (const Check& check : checks) {
        std::string detail;
        bool ok = false;
        try {
            ok = check.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("unexpected exception: ") + e.what();
            ok = false;
        }
        if (!ok) ++failures;
        std::printf("[%d] %s: %s — %s\n", check.id, check.name, ok ? "PASS" : "FAIL",
                    detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/7 passed\n", 7 - failures);
    return failures;
}
