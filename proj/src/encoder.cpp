#include "polarlist/encoder.hpp"

namespace polarlist {

namespace {

bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_bits(const BitVec& v, const char* what) {
    for (Bit b : v)
        if (b > 1) throw std::invalid_argument(std::string(what) + ": bits must be 0 or 1");
}

}  // namespace

BitVec polar_transform(const BitVec& u) {
    if (!is_pow2(u.size()))
        throw std::invalid_argument("polar_transform: length must be a power of two");
    check_bits(u, "polar_transform");

    // Each pass splits every block into (XOR of adjacent pairs, odd entries);
    // the first half of the block descends to the lower branch range. Output
    // indices therefore pick up branch bits most-significant-first, which is
    // exactly the ordering the decoders read back at layer 0.
    BitVec x = u;
    BitVec tmp(x.size());
    const std::size_t n = x.size();
    for (std::size_t len = n; len >= 2; len >>= 1) {
        const std::size_t half = len / 2;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t t = 0; t < half; ++t) {
                tmp[t] = static_cast<Bit>(x[start + 2 * t] ^ x[start + 2 * t + 1]);
                tmp[half + t] = x[start + 2 * t + 1];
            }
            for (std::size_t t = 0; t < len; ++t) x[start + t] = tmp[t];
        }
    }
    return x;
}

BitVec build_input(const BitVec& info, const CodeSpec& spec, const OuterCheck& outer) {
    const std::size_t r = spec.crc_width();
    if (outer.width() != r)
        throw std::invalid_argument("build_input: outer check width does not match spec");
    if (info.size() != spec.info_bits())
        throw std::invalid_argument("build_input: expected " + std::to_string(spec.info_bits()) +
                                    " payload bits, got " + std::to_string(info.size()));
    check_bits(info, "build_input");

    BitVec payload = info;
    const BitVec check = outer.compute(info);
    payload.insert(payload.end(), check.begin(), check.end());

    BitVec u(spec.n());
    std::size_t next = 0;
    for (std::size_t i = 0; i < spec.n(); ++i)
        u[i] = spec.is_frozen(i) ? spec.frozen_value(i) : payload[next++];
    return u;
}

BitVec encode(const BitVec& info, const CodeSpec& spec, const OuterCheck& outer) {
    return polar_transform(build_input(info, spec, outer));
}

OuterCheck default_outer(const CodeSpec& spec) {
    return spec.crc_width() == 0 ? OuterCheck::none()
                                 : OuterCheck::standard_crc(static_cast<unsigned>(spec.crc_width()));
}

BitVec build_input(const BitVec& info, const CodeSpec& spec) {
    return build_input(info, spec, default_outer(spec));
}

BitVec encode(const BitVec& info, const CodeSpec& spec) {
    return encode(info, spec, default_outer(spec));
}

BitVec extract_unfrozen(const BitVec& u, const CodeSpec& spec) {
    if (u.size() != spec.n())
        throw std::invalid_argument("extract_unfrozen: length mismatch");
    BitVec out;
    out.reserve(spec.k());
    for (std::size_t i = 0; i < spec.n(); ++i)
        if (!spec.is_frozen(i)) out.push_back(u[i]);
    return out;
}

}  // namespace polarlist
