#include <doctest.h>

#include <cstdint>
#include <string>

#include "polarlist/crc.hpp"
#include "polarlist/rng.hpp"

using namespace polarlist;

namespace {

BitVec ascii_bits(const std::string& text) {
    BitVec out;
    out.reserve(text.size() * 8);
    for (unsigned char ch : text)
        for (int i = 7; i >= 0; --i) out.push_back(static_cast<Bit>((ch >> i) & 1));
    return out;
}

std::uint64_t bits_to_uint(const BitVec& bits) {
    std::uint64_t v = 0;
    for (Bit b : bits) v = (v << 1) | b;
    return v;
}

BitVec random_bits(RngEngine& rng, std::size_t count) {
    BitVec out(count);
    for (Bit& b : out) b = random_bit(rng);
    return out;
}

}  // namespace

TEST_CASE("standard CRC presets reproduce the reference check values") {
    // Check values of the usual '123456789' test vector, computed with an
    // independent bit-serial implementation.
    const BitVec payload = ascii_bits("123456789");
    CHECK(bits_to_uint(crc_compute(payload, CrcParams::standard(8))) == 0xF4);
    CHECK(bits_to_uint(crc_compute(payload, CrcParams::standard(16))) == 0x29B1);
    CHECK(bits_to_uint(crc_compute(payload, CrcParams::standard(32))) == 0x0376E6E7);
}

TEST_CASE("all-zero payload with nonzero init leaves a nonzero remainder") {
    const BitVec zeros(64, 0);
    const BitVec crc = crc_compute(zeros, CrcParams::standard(16));
    CHECK(bits_to_uint(crc) == 0x313E);  // independent oracle value
    CHECK(bits_to_uint(crc_compute(BitVec(8, 0), CrcParams::standard(16))) == 0xE1F0);
}

TEST_CASE("crc round-trips through verify for every preset width") {
    RngEngine rng = substream(11, 0);
    for (unsigned width : {8u, 16u, 32u}) {
        const CrcParams params = CrcParams::standard(width);
        for (int i = 0; i < 50; ++i) {
            BitVec payload = random_bits(rng, 1 + (rng() % 120));
            BitVec with_crc = payload;
            const BitVec crc = crc_compute(payload, params);
            with_crc.insert(with_crc.end(), crc.begin(), crc.end());
            CHECK(crc_verify(with_crc, params));
            // Any single flipped bit must break the check.
            BitVec corrupted = with_crc;
            corrupted[rng() % corrupted.size()] ^= 1;
            CHECK(!crc_verify(corrupted, params));
        }
    }
}

TEST_CASE("crc rejects unsupported presets and malformed input") {
    CHECK_THROWS_AS(CrcParams::standard(12), std::invalid_argument);
    CHECK_THROWS_AS(crc_compute({0, 1}, CrcParams{0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(crc_compute({0, 2}, CrcParams::standard(8)), std::invalid_argument);
    CHECK_THROWS_AS(crc_verify(BitVec(4, 0), CrcParams::standard(16)), std::invalid_argument);
}

TEST_CASE("random parity equations are deterministic and GF(2)-linear") {
    const RandomParity rp{8, 1234};
    RngEngine rng = substream(12, 0);
    const BitVec a = random_bits(rng, 40);
    const BitVec b = random_bits(rng, 40);

    CHECK(random_parity_compute(a, rp) == random_parity_compute(a, rp));

    BitVec a_xor_b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) a_xor_b[i] = static_cast<Bit>(a[i] ^ b[i]);
    const BitVec pa = random_parity_compute(a, rp);
    const BitVec pb = random_parity_compute(b, rp);
    BitVec pa_xor_pb(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i)
        pa_xor_pb[i] = static_cast<Bit>(pa[i] ^ pb[i]);
    CHECK(random_parity_compute(a_xor_b, rp) == pa_xor_pb);

    // A different seed gives a different matrix (with overwhelming
    // probability on 8 equations over 40 bits; this pair is pinned).
    CHECK(random_parity_compute(a, RandomParity{8, 99}) != pa);
    CHECK_THROWS_AS(random_parity_compute(a, RandomParity{0, 1}), std::invalid_argument);
}

TEST_CASE("OuterCheck dispatches to its configured scheme") {
    const OuterCheck none = OuterCheck::none();
    CHECK(none.width() == 0);
    CHECK(none.compute({1, 0, 1}).empty());
    CHECK(none.check({1, 0, 1}));

    const OuterCheck crc = OuterCheck::standard_crc(16);
    CHECK(crc.width() == 16);
    const BitVec payload = ascii_bits("123456789");
    CHECK(bits_to_uint(crc.compute(payload)) == 0x29B1);
    BitVec with_check = payload;
    const BitVec check_bits = crc.compute(payload);
    with_check.insert(with_check.end(), check_bits.begin(), check_bits.end());
    CHECK(crc.check(with_check));
    with_check.back() ^= 1;
    CHECK(!crc.check(with_check));

    const OuterCheck parity = OuterCheck::random(4, 7);
    CHECK(parity.width() == 4);
    BitVec p = payload;
    const BitVec pc = parity.compute(payload);
    REQUIRE(pc.size() == 4);
    p.insert(p.end(), pc.begin(), pc.end());
    CHECK(parity.check(p));
    p[0] ^= 1;
    // Flipping payload bit 0 flips every equation whose matrix includes it;
    // for this pinned seed the check must fail.
    CHECK(!parity.check(p));

    CHECK_THROWS_AS(crc.check(BitVec(8, 0)), std::invalid_argument);
}
