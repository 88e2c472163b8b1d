#pragma once

#include <cstdint>

#include "polarlist/core.hpp"

namespace polarlist {

/// CRC parameter set. Processing is bit-serial, MSB-first, with no input or
/// output reflection: the register is shifted once per payload bit and XORed
/// with the polynomial whenever the bit shifted out (XORed with the incoming
/// payload bit) is one.
struct CrcParams {
    unsigned width = 16;
    std::uint64_t poly = 0x1021;
    std::uint64_t init = 0xFFFF;
    std::uint64_t xor_out = 0;

    /// Named presets: 8 -> poly 0x07/init 0, 16 -> CCITT-FALSE,
    /// 32 -> MPEG-2 (0x04C11DB7, init all-ones, no reflection, no xorout).
    static CrcParams standard(unsigned width);
};

/// CRC of a bit sequence, returned MSB-first as `params.width` bits.
BitVec crc_compute(const BitVec& payload, const CrcParams& params);

/// True when the trailing `params.width` bits equal the CRC of the rest.
bool crc_verify(const BitVec& payload_with_crc, const CrcParams& params);

/// Alternative outer code: `width` random GF(2) parity equations over the
/// payload, with the equation matrix derived deterministically from `seed`.
struct RandomParity {
    unsigned width = 16;
    std::uint64_t seed = 0;
};

BitVec random_parity_compute(const BitVec& payload, const RandomParity& rp);

/// Outer check selector used by the encoder and the list decoder: either a
/// standard CRC or seeded random parity equations over the payload bits.
struct OuterCheck {
    enum class Kind { none, crc, random_parity };

    Kind kind = Kind::none;
    CrcParams crc{};
    RandomParity parity{};

    static OuterCheck none() { return OuterCheck{}; }
    static OuterCheck standard_crc(unsigned width) {
        return OuterCheck{Kind::crc, CrcParams::standard(width), {}};
    }
    static OuterCheck random(unsigned width, std::uint64_t seed) {
        return OuterCheck{Kind::random_parity, {}, RandomParity{width, seed}};
    }

    unsigned width() const;
    /// Check bits for `payload`, MSB-first. Empty for kind none.
    BitVec compute(const BitVec& payload) const;
    /// True when the trailing width() bits of `payload_with_check` match.
    bool check(const BitVec& payload_with_check) const;
};

}  // namespace polarlist
