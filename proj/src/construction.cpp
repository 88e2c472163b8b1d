#include "polarlist/construction.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "polarlist/sc_decoder.hpp"

namespace polarlist {

namespace {

unsigned log2_exact(std::size_t n) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("construction: n must be a power of two, at least 2");
    unsigned m = 0;
    while ((std::size_t{1} << m) < n) ++m;
    return m;
}

/// Freeze the n-k positions with the largest score; equal scores freeze the
/// lower index first.
template <class Score>
CodeSpec freeze_worst(std::size_t n, std::size_t k, const std::vector<Score>& score) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    std::vector<FrozenBit> frozen;
    frozen.reserve(n - k);
    for (std::size_t i = 0; i < n - k; ++i) frozen.push_back({order[i], 0});
    return CodeSpec(log2_exact(n), std::move(frozen));
}

}  // namespace

CodeSpec bhattacharyya_construct(std::size_t n, std::size_t k, double design_param) {
    const unsigned m = log2_exact(n);
    if (k == 0 || k > n)
        throw std::invalid_argument("bhattacharyya_construct: k must satisfy 0 < k <= n");
    if (!(design_param >= 0.0 && design_param <= 1.0))
        throw std::invalid_argument("bhattacharyya_construct: design parameter must be in [0, 1]");

    // Doubling pass per layer; the children of z[p] land at 2p (minus
    // transform) and 2p+1 (plus transform), so the first split ends up in the
    // most significant bit of the final index.
    std::vector<double> z{design_param};
    for (unsigned level = 0; level < m; ++level) {
        std::vector<double> next(z.size() * 2);
        for (std::size_t p = 0; p < z.size(); ++p) {
            next[2 * p] = 2.0 * z[p] - z[p] * z[p];
            next[2 * p + 1] = z[p] * z[p];
        }
        z.swap(next);
    }
    return freeze_worst(n, k, z);
}

CodeSpec monte_carlo_construct(std::size_t n, std::size_t k, const ChannelModel& model,
                               std::size_t trials, std::uint64_t seed) {
    const unsigned m = log2_exact(n);
    if (k == 0 || k > n)
        throw std::invalid_argument("monte_carlo_construct: k must satisfy 0 < k <= n");
    if (trials < 1) throw std::invalid_argument("monte_carlo_construct: trials must be >= 1");

    // Genie-aided SC over the all-zero codeword: every decision is recorded
    // against the true bit (0), then forced back to it so errors never
    // propagate. A position's count is therefore its first-error frequency.
    const CodeSpec all_info(m, {});
    const BitVec zero_codeword(n, 0);
    std::vector<std::uint64_t> errors(n, 0);
    for (std::size_t t = 0; t < trials; ++t) {
        RngEngine rng = substream(seed, t);
        const ReceivedVec y = model.transmit(zero_codeword, rng);
        ScCompactDecoder dec(all_info, model.prob_pairs(y));
        for (std::size_t phi = 0; phi < n; ++phi)
            if (dec.step_forced(0) != 0) ++errors[phi];
    }
    return freeze_worst(n, k, errors);
}

void save_spec(const CodeSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_spec: cannot open " + path.string());
    out << spec.n() << ' ' << spec.k() << '\n';
    for (std::size_t pos : spec.frozen_positions()) {
        out << pos;
        if (spec.frozen_value(pos)) out << " # value=1";
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_spec: write failed for " + path.string());
}

CodeSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_spec: cannot open " + path.string());

    std::string text;
    std::size_t lineno = 0;
    std::size_t n = 0, k = 0;
    bool have_header = false;
    std::vector<FrozenBit> frozen;
    std::vector<std::uint8_t> seen;

    while (std::getline(in, text)) {
        ++lineno;
        std::istringstream line(text);
        if (!have_header) {
            long long n_in = -1, k_in = -1;
            std::string extra;
            if (!(line >> n_in >> k_in) || (line >> extra) || n_in < 2 || k_in < 0 || k_in > n_in)
                throw parse_error("expected header `n k`", lineno);
            if ((n_in & (n_in - 1)) != 0)
                throw parse_error("n must be a power of two", lineno);
            n = static_cast<std::size_t>(n_in);
            k = static_cast<std::size_t>(k_in);
            seen.assign(n, 0);
            have_header = true;
            continue;
        }

        std::string first;
        if (!(line >> first)) continue;           // blank line
        if (first[0] == '#') continue;            // comment line

        long long idx = -1;
        try {
            std::size_t used = 0;
            idx = std::stoll(first, &used);
            if (used != first.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw parse_error("expected a frozen index, got `" + first + "`", lineno);
        }
        if (idx < 0 || static_cast<std::size_t>(idx) >= n)
            throw parse_error("frozen index " + std::to_string(idx) + " out of range", lineno);
        if (seen[static_cast<std::size_t>(idx)])
            throw parse_error("duplicate frozen index " + std::to_string(idx), lineno);
        seen[static_cast<std::size_t>(idx)] = 1;

        Bit value = 0;
        std::string suffix;
        std::getline(line, suffix);
        const std::size_t hash = suffix.find('#');
        if (hash != std::string::npos) {
            std::string tail = suffix.substr(hash + 1);
            tail.erase(0, tail.find_first_not_of(" \t"));
            tail.erase(tail.find_last_not_of(" \t\r") + 1);
            if (tail == "value=0")
                value = 0;
            else if (tail == "value=1")
                value = 1;
            else
                throw parse_error("expected `# value=0` or `# value=1`", lineno);
        } else if (suffix.find_first_not_of(" \t\r") != std::string::npos) {
            throw parse_error("unexpected trailing text", lineno);
        }
        frozen.push_back({static_cast<std::size_t>(idx), value});
    }

    if (!have_header) throw parse_error("empty file", lineno == 0 ? 1 : lineno);
    if (frozen.size() != n - k)
        throw parse_error("expected " + std::to_string(n - k) + " frozen indices, found " +
                              std::to_string(frozen.size()),
                          lineno == 0 ? 1 : lineno);
    return CodeSpec(log2_exact(n), std::move(frozen));
}

}  // namespace polarlist
