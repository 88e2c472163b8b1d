#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "polarlist/channel.hpp"
#include "polarlist/core.hpp"

namespace polarlist {

struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t word_errors = 0;
    std::uint64_t bit_errors = 0;
    /// Word errors where the decoded codeword was strictly more likely than
    /// the transmitted one; their rate lower-bounds any decoder's WER.
    std::uint64_t ml_bound_hits = 0;
    std::uint64_t crc_fallbacks = 0;
    /// Lazy-copy cells accumulated over all decodes.
    std::uint64_t copy_elements = 0;
    /// Wall-clock seconds; excluded from the determinism contract.
    double wall_time_s = 0.0;

    TrialStats& operator+=(const TrialStats& other);
};

/// Execution knobs shared by run_point and run_sweep. Results are identical
/// for every thread count: trials are cut into fixed blocks with per-trial
/// RNG streams, and early stopping keeps the shortest block prefix whose
/// word-error total reaches the limit, discarding any extra blocks workers
/// happened to finish.
struct RunOptions {
    /// Stop a cell early once this many word errors accumulate; 0 disables.
    std::uint64_t max_word_errors = 200;
    /// Worker threads; 0 means hardware concurrency.
    unsigned threads = 0;
    /// Trials per scheduling block.
    std::uint64_t block_size = 256;
};

/// Monte-Carlo estimate at one operating point. Per trial: random payload,
/// encode, transmit, list-decode, compare. `crc_aided` selects CRC-restricted
/// final selection and requires spec.crc_width() > 0; the check bits are
/// embedded by the encoder in either case whenever `spec` carries them.
TrialStats run_point(const CodeSpec& spec, const ChannelModel& model, std::size_t list_size,
                     bool crc_aided, std::uint64_t trials, std::uint64_t seed,
                     const RunOptions& run = {});

struct SweepConfig {
    explicit SweepConfig(CodeSpec base) : spec(std::move(base)) {}

    CodeSpec spec;
    /// Eb/N0 grid in dB; sigma per cell is snr_db_to_sigma(snr, (k - r)/n),
    /// so CRC cells pay their rate loss in extra noise.
    std::vector<double> snr_db;
    std::vector<std::size_t> list_sizes;
    /// Outer-check widths; 0 means plain polar (no CRC, selection by metric).
    std::vector<unsigned> crc_widths;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    RunOptions run{};
};

struct ReportRow {
    std::size_t n = 0;
    std::size_t k = 0;
    unsigned r = 0;
    std::size_t list_size = 0;
    double snr_db = 0.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    TrialStats stats;
    double wer = 0.0;
    double wer_ci_lo = 0.0;
    double wer_ci_hi = 0.0;
    double ber = 0.0;
    double ml_bound = 0.0;
};

struct Report {
    std::vector<ReportRow> rows;
};

/// AWGN grid: one run_point per (snr, L, crc width) cell, in that nesting
/// order, each cell on its own derived seed. Identical config and seed give
/// an identical report apart from the wall-time fields.
Report run_sweep(const SweepConfig& config);

enum class ReportFormat { csv, json };

void emit_report(const Report& report, ReportFormat format, std::ostream& out);
void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

/// 95% binomial interval: Clopper-Pearson exact tails below 10 successes,
/// normal approximation otherwise.
std::pair<double, double> binomial_ci95(std::uint64_t successes, std::uint64_t trials);

}  // namespace polarlist
