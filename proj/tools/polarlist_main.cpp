#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polarlist/construction.hpp"
#include "polarlist/encoder.hpp"
#include "polarlist/list_decoder.hpp"
#include "polarlist/sim.hpp"

namespace {

using namespace polarlist;

// --snr accepts either an inclusive lo:hi:step range or a comma list.
std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
            throw std::invalid_argument("--snr: expected lo:hi:step, got `" + text + "`");
        if (!(step > 0)) throw std::invalid_argument("--snr: step must be positive");
        if (hi < lo) throw std::invalid_argument("--snr: range end below start");
        const std::size_t count = static_cast<std::size_t>((hi - lo) / step + 0.5) + 1;
        for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("--snr: bad value `" + item + "`");
        }
    }
    if (out.empty()) throw std::invalid_argument("--snr: empty grid");
    return out;
}

std::vector<std::size_t> parse_list_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument("");
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw std::invalid_argument("--list: bad value `" + item + "`");
        }
    }
    if (out.empty()) throw std::invalid_argument("--list: empty list");
    return out;
}

unsigned parse_crc_width(const std::string& item) {
    if (item == "off") return 0;
    if (item == "8" || item == "16" || item == "32")
        return static_cast<unsigned>(std::stoul(item));
    throw std::invalid_argument("--crc: expected off, 8, 16, or 32, got `" + item + "`");
}

std::vector<unsigned> parse_crc_widths(const std::string& text) {
    std::vector<unsigned> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_crc_width(item));
    if (out.empty()) throw std::invalid_argument("--crc: empty list");
    return out;
}

// Received-word file: first line `channel <bsc|awgn|bec> <param>`, then the
// n symbols separated by whitespace. `e` marks a BEC erasure; `#` starts a
// comment. See README for examples.
std::pair<ChannelModel, ReceivedVec> load_received(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::optional<ChannelModel> model;
    ReceivedVec symbols;
    std::string text;
    std::size_t lineno = 0;
    while (std::getline(in, text)) {
        ++lineno;
        const std::size_t hash = text.find('#');
        if (hash != std::string::npos) text.erase(hash);
        std::istringstream line(text);
        if (!model) {
            std::string word, kind;
            double param = 0;
            if (!(line >> word)) continue;  // leading blank line
            if (word != "channel" || !(line >> kind >> param))
                throw parse_error("expected `channel <bsc|awgn|bec> <param>`", lineno);
            if (kind == "bsc")
                model = ChannelModel::bsc(param);
            else if (kind == "awgn")
                model = ChannelModel::awgn(param);
            else if (kind == "bec")
                model = ChannelModel::bec(param);
            else
                throw parse_error("unknown channel kind `" + kind + "`", lineno);
            std::string extra;
            if (line >> extra) throw parse_error("unexpected trailing text", lineno);
            continue;
        }
        std::string token;
        while (line >> token) {
            if (token == "e" || token == "erasure") {
                symbols.push_back(ChannelModel::erasure);
                continue;
            }
            try {
                std::size_t used = 0;
                symbols.push_back(std::stod(token, &used));
                if (used != token.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw parse_error("bad symbol `" + token + "`", lineno);
            }
        }
    }
    if (!model) throw parse_error("missing `channel` header", lineno == 0 ? 1 : lineno);
    return {*model, symbols};
}

std::string bits_to_string(const BitVec& bits) {
    std::string s;
    s.reserve(bits.size());
    for (Bit b : bits) s.push_back(b ? '1' : '0');
    return s;
}

int cmd_construct(const std::string& design, std::size_t n, std::size_t k, double param,
                  std::uint64_t seed, std::size_t trials, const std::string& out_path) {
    CodeSpec spec = [&] {
        if (design == "bhatta") return bhattacharyya_construct(n, k, param);
        if (design == "mc")
            return monte_carlo_construct(n, k, ChannelModel::awgn(param), trials, seed);
        throw std::invalid_argument("--design: expected bhatta or mc, got `" + design + "`");
    }();
    save_spec(spec, out_path);
    std::cout << "wrote " << out_path << " (n=" << spec.n() << ", k=" << spec.k() << ")\n";
    return 0;
}

int cmd_decode(const std::string& spec_path, std::size_t list_size, const std::string& crc,
               const std::string& in_path) {
    const unsigned r = parse_crc_width(crc);
    const CodeSpec spec = load_spec(spec_path).with_crc(r);
    auto [model, symbols] = load_received(in_path);
    if (symbols.size() != spec.n())
        throw std::invalid_argument("received word has " + std::to_string(symbols.size()) +
                                    " symbols, code expects " + std::to_string(spec.n()));

    SclOptions opts;
    opts.list_size = list_size;
    opts.crc_selection = r > 0;
    opts.outer = default_outer(spec);
    const SclResult res = scl_decode(spec, model.prob_pairs(symbols), opts);

    std::cout << "info: " << bits_to_string(res.info_hat) << '\n';
    std::cout << "u: " << bits_to_string(res.u_hat) << '\n';
    std::cout << "c: " << bits_to_string(res.c_hat) << '\n';
    if (r > 0) {
        const bool pass = opts.outer.check(extract_unfrozen(res.u_hat, spec));
        std::cout << "check: " << (pass ? "pass" : "fail") << '\n';
        std::cout << "fallback: " << (res.crc_fallback ? "yes" : "no") << '\n';
    } else {
        std::cout << "check: off\n";
    }
    std::cout << "selected_path: " << res.selected_path << '\n';
    std::cout << "paths: " << res.final_active_paths << '\n';
    return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& snr, const std::string& lists,
              const std::string& crcs, std::uint64_t trials, std::uint64_t seed,
              const std::string& format, const std::string& out_path,
              std::uint64_t max_errors, unsigned threads) {
    SweepConfig config(load_spec(spec_path));
    config.snr_db = parse_snr_grid(snr);
    config.list_sizes = parse_list_sizes(lists);
    config.crc_widths = parse_crc_widths(crcs);
    config.trials = trials;
    config.seed = seed;
    config.run.max_word_errors = max_errors;
    config.run.threads = threads;

    ReportFormat fmt;
    if (format == "csv")
        fmt = ReportFormat::csv;
    else if (format == "json")
        fmt = ReportFormat::json;
    else
        throw std::invalid_argument("--format: expected csv or json, got `" + format + "`");

    const Report report = run_sweep(config);
    if (out_path.empty())
        emit_report(report, fmt, std::cout);
    else
        emit_report(report, fmt, std::filesystem::path(out_path));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar-code list decoding: construction, decoding, Monte-Carlo sweeps"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a frozen set and write a code file");
    std::size_t n = 0, k = 0;
    std::string design = "bhatta";
    double param = 0.5;
    std::uint64_t seed = 1;
    std::size_t mc_trials = 10000;
    std::string out_path;
    construct->add_option("--n", n, "block length (power of two)")->required();
    construct->add_option("--k", k, "code dimension")->required();
    construct->add_option("--design", design, "bhatta (erasure recursion) or mc (genie-aided)");
    construct->add_option("--param", param,
                          "bhatta: initial Bhattacharyya value; mc: AWGN sigma of the design "
                          "channel");
    construct->add_option("--seed", seed, "RNG seed (mc design)");
    construct->add_option("--trials", mc_trials, "simulation trials (mc design)");
    construct->add_option("--out", out_path, "output code file")->required();

    // decode
    auto* decode = app.add_subcommand("decode", "decode one received word from a file");
    std::string spec_path, in_path, crc = "off";
    std::size_t list_size = 1;
    decode->add_option("--spec", spec_path, "code file from `construct`")->required();
    decode->add_option("--list", list_size, "list size L");
    decode->add_option("--crc", crc, "off, 8, 16, or 32");
    decode->add_option("--in", in_path, "received word file (see README)")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo WER/BER grid over AWGN");
    std::string sweep_spec, snr = "1.0:3.0:0.5", lists = "1", crcs = "off";
    std::string format = "csv", sweep_out;
    std::uint64_t trials = 10000, sweep_seed = 1, max_errors = 200;
    unsigned threads = 0;
    sweep->add_option("--spec", sweep_spec, "code file from `construct`")->required();
    sweep->add_option("--snr", snr, "Eb/N0 grid: lo:hi:step or comma list (dB)");
    sweep->add_option("--list", lists, "comma list of L values");
    sweep->add_option("--crc", crcs, "comma list of off/8/16/32");
    sweep->add_option("--trials", trials, "trials per cell");
    sweep->add_option("--seed", sweep_seed, "master seed");
    sweep->add_option("--format", format, "csv or json");
    sweep->add_option("--out", sweep_out, "output path (stdout when omitted)");
    sweep->add_option("--max-errors", max_errors, "early stop per cell; 0 disables");
    sweep->add_option("--threads", threads, "worker threads; 0 = hardware");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed())
            return cmd_construct(design, n, k, param, seed, mc_trials, out_path);
        if (decode->parsed()) return cmd_decode(spec_path, list_size, crc, in_path);
        return cmd_sweep(sweep_spec, snr, lists, crcs, trials, sweep_seed, format, sweep_out,
                         max_errors, threads);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
