#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "polarlist/construction.hpp"
#include "polarlist/encoder.hpp"
#include "polarlist/list_decoder.hpp"
#include "polarlist/sim.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace polarlist;

namespace {

using PyPairs = std::vector<std::pair<double, double>>;

std::vector<ProbPair> to_prob_pairs(const PyPairs& pairs) {
    std::vector<ProbPair> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = {pairs[i].first, pairs[i].second};
    return out;
}

PyPairs from_prob_pairs(const std::vector<ProbPair>& pairs) {
    PyPairs out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = {pairs[i].p0, pairs[i].p1};
    return out;
}

OuterCheck outer_for(const CodeSpec& spec) { return default_outer(spec); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Polar-code encoding, SC/SCL decoding, and Monte-Carlo simulation";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<CodeSpec>(m, "CodeSpec")
        .def(py::init([](unsigned m_, const std::vector<std::pair<std::size_t, int>>& frozen,
                         std::size_t crc_width) {
                 std::vector<FrozenBit> bits;
                 bits.reserve(frozen.size());
                 for (const auto& [pos, value] : frozen)
                     bits.push_back({pos, static_cast<Bit>(value)});
                 return CodeSpec(m_, std::move(bits), crc_width);
             }),
             py::arg("m"), py::arg("frozen"), py::arg("crc_width") = 0,
             "frozen: list of (position, value) pairs")
        .def_property_readonly("m", &CodeSpec::m)
        .def_property_readonly("n", &CodeSpec::n)
        .def_property_readonly("k", &CodeSpec::k)
        .def_property_readonly("crc_width", &CodeSpec::crc_width)
        .def_property_readonly("info_bits", &CodeSpec::info_bits)
        .def("is_frozen", &CodeSpec::is_frozen, py::arg("pos"))
        .def("frozen_value", &CodeSpec::frozen_value, py::arg("pos"))
        .def("frozen_positions",
             [](const CodeSpec& spec) { return spec.frozen_positions(); })
        .def("unfrozen_positions", &CodeSpec::unfrozen_positions)
        .def("with_crc", &CodeSpec::with_crc, py::arg("crc_width"))
        .def("__eq__", [](const CodeSpec& a, const CodeSpec& b) { return a == b; })
        .def("__repr__", [](const CodeSpec& spec) {
            return "CodeSpec(n=" + std::to_string(spec.n()) + ", k=" + std::to_string(spec.k()) +
                   ", crc_width=" + std::to_string(spec.crc_width()) + ")";
        });

    py::class_<ChannelModel>(m, "ChannelModel")
        .def_static("bsc", &ChannelModel::bsc, py::arg("crossover_prob"))
        .def_static("awgn", &ChannelModel::awgn, py::arg("sigma"))
        .def_static("bec", &ChannelModel::bec, py::arg("erasure_prob"))
        .def_property_readonly("param", &ChannelModel::param)
        .def_property_readonly("kind",
                               [](const ChannelModel& model) {
                                   switch (model.kind()) {
                                       case ChannelModel::Kind::bsc: return "bsc";
                                       case ChannelModel::Kind::awgn: return "awgn";
                                       default: return "bec";
                                   }
                               })
        .def_readonly_static("erasure", &ChannelModel::erasure)
        .def(
            "transmit",
            [](const ChannelModel& model, const BitVec& c, std::uint64_t seed,
               std::uint64_t stream) {
                RngEngine rng = substream(seed, stream);
                return model.transmit(c, rng);
            },
            py::arg("codeword"), py::arg("seed"), py::arg("stream") = 0)
        .def("prob_pairs",
             [](const ChannelModel& model, const ReceivedVec& y) {
                 return from_prob_pairs(model.prob_pairs(y));
             },
             py::arg("received"))
        .def("log_likelihood",
             [](const ChannelModel& model, const ReceivedVec& y, const BitVec& c) {
                 return model.log_likelihood(y, c);
             },
             py::arg("received"), py::arg("codeword"));

    py::class_<TrialStats>(m, "TrialStats")
        .def_readonly("trials", &TrialStats::trials)
        .def_readonly("word_errors", &TrialStats::word_errors)
        .def_readonly("bit_errors", &TrialStats::bit_errors)
        .def_readonly("ml_bound_hits", &TrialStats::ml_bound_hits)
        .def_readonly("crc_fallbacks", &TrialStats::crc_fallbacks)
        .def_readonly("copy_elements", &TrialStats::copy_elements)
        .def_readonly("wall_time_s", &TrialStats::wall_time_s);

    py::class_<SclResult>(m, "SclResult")
        .def_readonly("c_hat", &SclResult::c_hat)
        .def_readonly("u_hat", &SclResult::u_hat)
        .def_readonly("info_hat", &SclResult::info_hat)
        .def_readonly("selected_path", &SclResult::selected_path)
        .def_readonly("crc_fallback", &SclResult::crc_fallback)
        .def_readonly("final_active_paths", &SclResult::final_active_paths)
        .def_readonly("path_metrics", &SclResult::path_metrics)
        .def_readonly("copied_cells", &SclResult::copied_cells);

    m.def("polar_transform", &polar_transform, py::arg("u"));
    m.def(
        "encode", [](const BitVec& info, const CodeSpec& spec) { return encode(info, spec); },
        py::arg("info"), py::arg("spec"),
        "Codeword for the payload; embeds a standard CRC when spec.crc_width > 0");
    m.def(
        "crc_compute",
        [](const BitVec& payload, unsigned width) {
            return crc_compute(payload, CrcParams::standard(width));
        },
        py::arg("payload"), py::arg("width") = 16);
    m.def(
        "crc_verify",
        [](const BitVec& payload_with_crc, unsigned width) {
            return crc_verify(payload_with_crc, CrcParams::standard(width));
        },
        py::arg("payload_with_crc"), py::arg("width") = 16);

    m.def("bhattacharyya_construct", &bhattacharyya_construct, py::arg("n"), py::arg("k"),
          py::arg("design_param") = 0.5);
    m.def("monte_carlo_construct", &monte_carlo_construct, py::arg("n"), py::arg("k"),
          py::arg("model"), py::arg("trials"), py::arg("seed"));
    m.def("save_spec", &save_spec, py::arg("spec"), py::arg("path"),
          "Writes the inner code (n, k, frozen set). The CRC width is a "
          "decoding option, not part of the file; reapply with_crc() after "
          "load_spec().");
    m.def("load_spec", &load_spec, py::arg("path"));
    m.def("snr_db_to_sigma", &snr_db_to_sigma, py::arg("snr_db"), py::arg("rate"));

    m.def(
        "sc_decode",
        [](const CodeSpec& spec, const PyPairs& probs) {
            const ScOutput out = sc_decode(spec, to_prob_pairs(probs));
            return py::make_tuple(out.u_hat, out.c_hat);
        },
        py::arg("spec"), py::arg("probs"), "Returns (u_hat, c_hat)");
    m.def(
        "sc_decode_reference",
        [](const CodeSpec& spec, const PyPairs& probs) {
            const ScOutput out = sc_decode_reference(spec, to_prob_pairs(probs));
            return py::make_tuple(out.u_hat, out.c_hat);
        },
        py::arg("spec"), py::arg("probs"), "Returns (u_hat, c_hat)");
    m.def(
        "scl_decode",
        [](const CodeSpec& spec, const PyPairs& probs, std::size_t list_size, bool crc_aided) {
            SclOptions opts;
            opts.list_size = list_size;
            opts.crc_selection = crc_aided;
            opts.outer = crc_aided ? outer_for(spec) : OuterCheck::none();
            return scl_decode(spec, to_prob_pairs(probs), opts);
        },
        py::arg("spec"), py::arg("probs"), py::arg("list_size") = 1,
        py::arg("crc_aided") = false);

    m.def(
        "run_point",
        [](const CodeSpec& spec, const ChannelModel& model, std::size_t list_size,
           bool crc_aided, std::uint64_t trials, std::uint64_t seed,
           std::uint64_t max_word_errors, unsigned threads) {
            RunOptions run;
            run.max_word_errors = max_word_errors;
            run.threads = threads;
            return run_point(spec, model, list_size, crc_aided, trials, seed, run);
        },
        py::arg("spec"), py::arg("model"), py::arg("list_size"), py::arg("crc_aided"),
        py::arg("trials"), py::arg("seed"), py::arg("max_word_errors") = 200,
        py::arg("threads") = 0);

    m.def(
        "run_sweep",
        [](const CodeSpec& spec, const std::vector<double>& snr_db,
           const std::vector<std::size_t>& list_sizes, const std::vector<unsigned>& crc_widths,
           std::uint64_t trials, std::uint64_t seed, std::uint64_t max_word_errors,
           unsigned threads) {
            SweepConfig config(spec);
            config.snr_db = snr_db;
            config.list_sizes = list_sizes;
            config.crc_widths = crc_widths;
            config.trials = trials;
            config.seed = seed;
            config.run.max_word_errors = max_word_errors;
            config.run.threads = threads;
            const Report report = run_sweep(config);
            py::list rows;
            for (const ReportRow& row : report.rows) {
                py::dict cell;
                cell["n"] = row.n;
                cell["k"] = row.k;
                cell["r"] = row.r;
                cell["L"] = row.list_size;
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
                rows.append(std::move(cell));
            }
            return rows;
        },
        py::arg("spec"), py::arg("snr_db"), py::arg("list_sizes"), py::arg("crc_widths"),
        py::arg("trials"), py::arg("seed"), py::arg("max_word_errors") = 200,
        py::arg("threads") = 0);

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
