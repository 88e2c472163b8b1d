#include "polarlist/crc.hpp"

namespace polarlist {

CrcParams CrcParams::standard(unsigned width) {
    switch (width) {
        case 8:
            return CrcParams{8, 0x07, 0x00, 0x00};
        case 16:
            return CrcParams{16, 0x1021, 0xFFFF, 0x0000};
        case 32:
            return CrcParams{32, 0x04C11DB7, 0xFFFFFFFF, 0x00000000};
        default:
            throw std::invalid_argument("CrcParams: no standard preset for width " +
                                        std::to_string(width));
    }
}

BitVec crc_compute(const BitVec& payload, const CrcParams& params) {
    if (params.width == 0 || params.width > 64)
        throw std::invalid_argument("crc_compute: width must be in [1, 64]");
    const std::uint64_t top = std::uint64_t{1} << (params.width - 1);
    const std::uint64_t mask =
        (params.width == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << params.width) - 1;

    std::uint64_t reg = params.init & mask;
    for (Bit b : payload) {
        if (b > 1) throw std::invalid_argument("crc_compute: payload bits must be 0 or 1");
        const bool feedback = ((reg & top) != 0) ^ (b != 0);
        reg = (reg << 1) & mask;
        if (feedback) reg ^= params.poly;
    }
    reg = (reg ^ params.xor_out) & mask;

    BitVec out(params.width);
    for (unsigned i = 0; i < params.width; ++i)
        out[i] = static_cast<Bit>((reg >> (params.width - 1 - i)) & 1u);
    return out;
}

bool crc_verify(const BitVec& payload_with_crc, const CrcParams& params) {
    if (payload_with_crc.size() < params.width)
        throw std::invalid_argument("crc_verify: sequence shorter than CRC width");
    const std::size_t split = payload_with_crc.size() - params.width;
    const BitVec payload(payload_with_crc.begin(), payload_with_crc.begin() + split);
    const BitVec expect = crc_compute(payload, params);
    for (unsigned i = 0; i < params.width; ++i)
        if (expect[i] != payload_with_crc[split + i]) return false;
    return true;
}

namespace {

// splitmix64; used to expand a seed into parity-equation coefficients.
std::uint64_t mix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

BitVec random_parity_compute(const BitVec& payload, const RandomParity& rp) {
    if (rp.width == 0) throw std::invalid_argument("random_parity_compute: width must be > 0");
    BitVec out(rp.width, 0);
    // Row i of the equation matrix is a fresh stream of coefficient bits; the
    // matrix depends only on (seed, width, payload length), so encoder and
    // decoder agree without sharing state.
    for (unsigned i = 0; i < rp.width; ++i) {
        std::uint64_t state = rp.seed ^ (0xA24BAED4963EE407ull * (i + 1));
        std::uint64_t word = 0;
        unsigned have = 0;
        Bit acc = 0;
        for (Bit b : payload) {
            if (have == 0) {
                word = mix64(state);
                have = 64;
            }
            acc ^= static_cast<Bit>(b & word & 1u);
            word >>= 1;
            --have;
        }
        out[i] = acc;
    }
    return out;
}

unsigned OuterCheck::width() const {
    switch (kind) {
        case Kind::none:
            return 0;
        case Kind::crc:
            return crc.width;
        case Kind::random_parity:
            return parity.width;
    }
    return 0;
}

BitVec OuterCheck::compute(const BitVec& payload) const {
    switch (kind) {
        case Kind::none:
            return {};
        case Kind::crc:
            return crc_compute(payload, crc);
        case Kind::random_parity:
            return random_parity_compute(payload, parity);
    }
    return {};
}

bool OuterCheck::check(const BitVec& payload_with_check) const {
    if (kind == Kind::none) return true;
    const unsigned w = width();
    if (payload_with_check.size() < w)
        throw std::invalid_argument("OuterCheck: sequence shorter than check width");
    const std::size_t split = payload_with_check.size() - w;
    const BitVec payload(payload_with_check.begin(), payload_with_check.begin() + split);
    const BitVec expect = compute(payload);
    for (unsigned i = 0; i < w; ++i)
        if (expect[i] != payload_with_check[split + i]) return false;
    return true;
}

}  // namespace polarlist
