#include "polarlist/sim.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include <boost/math/distributions/beta.hpp>
#include <json.hpp>

#include "polarlist/encoder.hpp"
#include "polarlist/list_decoder.hpp"
#include "polarlist/rng.hpp"

namespace polarlist {

TrialStats& TrialStats::operator+=(const TrialStats& other) {
    trials += other.trials;
    word_errors += other.word_errors;
    bit_errors += other.bit_errors;
    ml_bound_hits += other.ml_bound_hits;
    crc_fallbacks += other.crc_fallbacks;
    copy_elements += other.copy_elements;
    wall_time_s += other.wall_time_s;
    return *this;
}

namespace {

TrialStats run_one_trial(const CodeSpec& spec, const ChannelModel& model,
                         const OuterCheck& outer, const SclOptions& opts, std::uint64_t seed,
                         std::uint64_t trial_index) {
    RngEngine rng = substream(seed, trial_index);

    BitVec info(spec.info_bits());
    for (Bit& b : info) b = random_bit(rng);
    const BitVec codeword = encode(info, spec, outer);
    const ReceivedVec y = model.transmit(codeword, rng);

    const SclResult res = scl_decode(spec, model.prob_pairs(y), opts);

    TrialStats t;
    t.trials = 1;
    t.copy_elements = res.copied_cells;
    t.crc_fallbacks = res.crc_fallback ? 1 : 0;
    for (std::size_t i = 0; i < info.size(); ++i)
        if (info[i] != res.info_hat[i]) ++t.bit_errors;
    if (res.c_hat != codeword) {
        t.word_errors = 1;
        // Strictly-more-likely test in the log domain; when it holds, even a
        // maximum-likelihood decoder would have erred on this trial.
        if (model.log_likelihood(y, res.c_hat) > model.log_likelihood(y, codeword))
            t.ml_bound_hits = 1;
    }
    return t;
}

}  // namespace

TrialStats run_point(const CodeSpec& spec, const ChannelModel& model, std::size_t list_size,
                     bool crc_aided, std::uint64_t trials, std::uint64_t seed,
                     const RunOptions& run) {
    if (trials < 1) throw std::invalid_argument("run_point: trials must be >= 1");
    if (crc_aided && spec.crc_width() == 0)
        throw std::invalid_argument("run_point: crc-aided selection requires a check width > 0");
    if (run.block_size < 1) throw std::invalid_argument("run_point: block size must be >= 1");

    const OuterCheck outer = default_outer(spec);
    SclOptions opts;
    opts.list_size = list_size;
    opts.crc_selection = crc_aided;
    opts.outer = crc_aided ? outer : OuterCheck::none();

    const auto start = std::chrono::steady_clock::now();

    const std::uint64_t block = run.block_size;
    const std::uint64_t num_blocks = (trials + block - 1) / block;
    std::vector<TrialStats> per_block(num_blocks);

    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> seen_word_errors{0};
    std::atomic<bool> stop{false};

    auto worker = [&]() {
        for (;;) {
            const std::uint64_t b = next_block.fetch_add(1);
            if (b >= num_blocks || stop.load()) return;
            const std::uint64_t lo = b * block;
            const std::uint64_t hi = std::min(trials, lo + block);
            TrialStats acc;
            for (std::uint64_t t = lo; t < hi; ++t)
                acc += run_one_trial(spec, model, outer, opts, seed, t);
            per_block[b] = acc;
            if (run.max_word_errors > 0 &&
                seen_word_errors.fetch_add(acc.word_errors) + acc.word_errors >=
                    run.max_word_errors)
                stop.store(true);
        }
    };

    unsigned threads = run.threads != 0 ? run.threads : std::thread::hardware_concurrency();
    if (threads < 1) threads = 1;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, num_blocks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    // Deterministic aggregation: keep the shortest block prefix that reaches
    // the error limit. Every block in that prefix is guaranteed to have run,
    // because blocks are claimed in order and stopping requires at least the
    // limit's worth of errors among completed blocks.
    TrialStats total;
    for (std::uint64_t b = 0; b < num_blocks; ++b) {
        total += per_block[b];
        if (run.max_word_errors > 0 && total.word_errors >= run.max_word_errors) break;
    }
    total.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return total;
}

std::pair<double, double> binomial_ci95(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("binomial_ci95: trials must be >= 1");
    if (successes > trials) throw std::invalid_argument("binomial_ci95: successes exceed trials");
    const double x = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    if (successes < 10) {
        // Exact tails; the quantiles of the conjugate Beta laws.
        const double lo =
            successes == 0
                ? 0.0
                : boost::math::quantile(boost::math::beta_distribution<double>(x, n - x + 1),
                                        0.025);
        const double hi =
            successes == trials
                ? 1.0
                : boost::math::quantile(boost::math::beta_distribution<double>(x + 1, n - x),
                                        0.975);
        return {lo, hi};
    }
    const double p = x / n;
    const double half = 1.959963984540054 * std::sqrt(p * (1.0 - p) / n);
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

Report run_sweep(const SweepConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
    for (std::size_t L : config.list_sizes)
        if (L < 1) throw std::invalid_argument("run_sweep: list_sizes entries must be >= 1");
    for (unsigned r : config.crc_widths)
        if (r != 0 && r != 8 && r != 16 && r != 32)
            throw std::invalid_argument("run_sweep: crc_widths entries must be 0, 8, 16, or 32");

    Report report;
    std::uint64_t cell_index = 0;
    for (double snr : config.snr_db) {
        for (std::size_t L : config.list_sizes) {
            for (unsigned r : config.crc_widths) {
                const CodeSpec spec = config.spec.with_crc(r);
                const double rate = static_cast<double>(spec.info_bits()) /
                                    static_cast<double>(spec.n());
                const double sigma = snr_db_to_sigma(snr, rate);
                const ChannelModel model = ChannelModel::awgn(sigma);

                std::uint64_t state = config.seed ^ (0x9E3779B97F4A7C15ull * (cell_index + 1));
                const std::uint64_t cell_seed = splitmix64(state);

                ReportRow row;
                row.n = spec.n();
                row.k = spec.k();
                row.r = r;
                row.list_size = L;
                row.snr_db = snr;
                row.sigma = sigma;
                row.seed = cell_seed;
                row.stats = run_point(spec, model, L, r > 0, config.trials, cell_seed,
                                      config.run);
                const double trials_d = static_cast<double>(row.stats.trials);
                row.wer = static_cast<double>(row.stats.word_errors) / trials_d;
                row.ber = static_cast<double>(row.stats.bit_errors) /
                          (trials_d * static_cast<double>(spec.info_bits()));
                row.ml_bound = static_cast<double>(row.stats.ml_bound_hits) / trials_d;
                std::tie(row.wer_ci_lo, row.wer_ci_hi) =
                    binomial_ci95(row.stats.word_errors, row.stats.trials);
                report.rows.push_back(row);
                ++cell_index;
            }
        }
    }
    return report;
}

namespace {

std::string fmt_double(double v, const char* spec_str = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec_str, v);
    return buf;
}

std::string crc_label(unsigned r) { return r == 0 ? "off" : std::to_string(r); }

void emit_csv(const Report& report, std::ostream& out) {
    out << "n,k,r,L,crc,snr_db,sigma,trials,word_errors,wer,wer_ci_lo,wer_ci_hi,"
           "bit_errors,ber,ml_bound,seed\n";
    for (const ReportRow& row : report.rows) {
        out << row.n << ',' << row.k << ',' << row.r << ',' << row.list_size << ','
            << crc_label(row.r) << ',' << fmt_double(row.snr_db, "%.6g") << ','
            << fmt_double(row.sigma) << ',' << row.stats.trials << ',' << row.stats.word_errors
            << ',' << fmt_double(row.wer) << ',' << fmt_double(row.wer_ci_lo) << ','
            << fmt_double(row.wer_ci_hi) << ',' << row.stats.bit_errors << ','
            << fmt_double(row.ber) << ',' << fmt_double(row.ml_bound) << ',' << row.seed
            << '\n';
    }
}

void emit_json(const Report& report, std::ostream& out) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ReportRow& row : report.rows) {
        nlohmann::ordered_json cell;
        cell["n"] = row.n;
        cell["k"] = row.k;
        cell["r"] = row.r;
        cell["L"] = row.list_size;
        cell["crc"] = crc_label(row.r);
        cell["snr_db"] = row.snr_db;
        cell["sigma"] = row.sigma;
        cell["trials"] = row.stats.trials;
        cell["word_errors"] = row.stats.word_errors;
        cell["wer"] = row.wer;
        cell["wer_ci_lo"] = row.wer_ci_lo;
        cell["wer_ci_hi"] = row.wer_ci_hi;
        cell["bit_errors"] = row.stats.bit_errors;
        cell["ber"] = row.ber;
        cell["ml_bound"] = row.ml_bound;
        cell["seed"] = row.seed;
        cell["crc_fallbacks"] = row.stats.crc_fallbacks;
        cell["copy_elements"] = row.stats.copy_elements;
        cell["wall_time_s"] = row.stats.wall_time_s;
        rows.push_back(std::move(cell));
    }
    nlohmann::ordered_json doc;
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

}  // namespace

void emit_report(const Report& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::csv)
        emit_csv(report, out);
    else
        emit_json(report, out);
    if (!out) throw std::runtime_error("emit_report: stream write failed");
}

void emit_report(const Report& report, ReportFormat format,
                 const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path.string());
    emit_report(report, format, out);
    if (!out) throw std::runtime_error("emit_report: write failed for " + path.string());
}

}  // namespace polarlist
