#include <doctest.h>

#include "polarlist/encoder.hpp"
#include "polarlist/rng.hpp"
#include "polarlist/sc_decoder.hpp"

using namespace polarlist;

namespace {

BitVec random_bits(RngEngine& rng, std::size_t count) {
    BitVec out(count);
    for (Bit& b : out) b = random_bit(rng);
    return out;
}

// Noiseless likelihood pairs: certainty about each code bit.
std::vector<ProbPair> certain_pairs(const BitVec& c) {
    std::vector<ProbPair> probs(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        probs[i] = c[i] ? ProbPair{0.0, 1.0} : ProbPair{1.0, 0.0};
    return probs;
}

CodeSpec all_unfrozen(unsigned m) { return CodeSpec(m, {}); }

}  // namespace

TEST_CASE("polar_transform matches the hand-traced small cases") {
    for (unsigned u0 = 0; u0 <= 1; ++u0)
        for (unsigned u1 = 0; u1 <= 1; ++u1)
            CHECK(polar_transform({static_cast<Bit>(u0), static_cast<Bit>(u1)}) ==
                  BitVec{static_cast<Bit>(u0 ^ u1), static_cast<Bit>(u1)});

    CHECK(polar_transform({0, 1, 0, 0}) == BitVec{1, 0, 1, 0});
    CHECK(polar_transform(BitVec(64, 0)) == BitVec(64, 0));
}

TEST_CASE("polar_transform is linear over GF(2)") {
    RngEngine rng = substream(21, 0);
    for (int i = 0; i < 50; ++i) {
        const BitVec a = random_bits(rng, 256);
        const BitVec b = random_bits(rng, 256);
        BitVec a_xor_b(a.size());
        for (std::size_t j = 0; j < a.size(); ++j)
            a_xor_b[j] = static_cast<Bit>(a[j] ^ b[j]);
        const BitVec ta = polar_transform(a);
        const BitVec tb = polar_transform(b);
        BitVec ta_xor_tb(ta.size());
        for (std::size_t j = 0; j < ta.size(); ++j)
            ta_xor_tb[j] = static_cast<Bit>(ta[j] ^ tb[j]);
        CHECK(polar_transform(a_xor_b) == ta_xor_tb);
    }
}

TEST_CASE("polar_transform composed with itself is the identity") {
    // Trivially checkable at n=2; the larger sizes back the decoder's use of
    // the transform to invert codewords into u-estimates.
    for (unsigned u0 = 0; u0 <= 1; ++u0)
        for (unsigned u1 = 0; u1 <= 1; ++u1) {
            const BitVec u{static_cast<Bit>(u0), static_cast<Bit>(u1)};
            CHECK(polar_transform(polar_transform(u)) == u);
        }
    RngEngine rng = substream(22, 0);
    for (std::size_t n : {4u, 8u, 64u, 256u, 1024u}) {
        for (int i = 0; i < 20; ++i) {
            const BitVec u = random_bits(rng, n);
            CHECK(polar_transform(polar_transform(u)) == u);
        }
    }
}

TEST_CASE("decoder consistency: noiseless SC recovers every all-unfrozen word") {
    // Binding definition of the encoder: exhaustive for n in {2, 4, 8}.
    for (unsigned m = 1; m <= 3; ++m) {
        const CodeSpec spec = all_unfrozen(m);
        const std::size_t n = spec.n();
        for (std::size_t word = 0; word < (std::size_t{1} << n); ++word) {
            BitVec u(n);
            for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<Bit>((word >> i) & 1);
            const BitVec c = polar_transform(u);
            const ScOutput out = sc_decode(spec, certain_pairs(c));
            REQUIRE(out.u_hat == u);
            REQUIRE(out.c_hat == c);
        }
    }
    // Randomized up to n = 1024.
    RngEngine rng = substream(23, 0);
    for (unsigned m : {5u, 8u, 10u}) {
        const CodeSpec spec = all_unfrozen(m);
        for (int i = 0; i < 10; ++i) {
            const BitVec u = random_bits(rng, spec.n());
            const BitVec c = polar_transform(u);
            const ScOutput out = sc_decode(spec, certain_pairs(c));
            REQUIRE(out.u_hat == u);
        }
    }
}

TEST_CASE("polar_transform validates its input") {
    CHECK_THROWS_AS(polar_transform(BitVec(3, 0)), std::invalid_argument);
    CHECK_THROWS_AS(polar_transform(BitVec{}), std::invalid_argument);
    CHECK_THROWS_AS(polar_transform(BitVec{0, 2}), std::invalid_argument);
}

TEST_CASE("encode places frozen values, payload, and check bits") {
    // n=2, frozen={0 -> 0}: info (1) becomes u=(0,1), c=(1,1).
    const CodeSpec tiny(1, {{0, 0}});
    CHECK(encode({1}, tiny) == BitVec{1, 1});
    CHECK(build_input({1}, tiny) == BitVec{0, 1});

    // r = 0 with no frozen bits is the bare transform.
    const CodeSpec open = all_unfrozen(3);
    RngEngine rng = substream(24, 0);
    const BitVec info = random_bits(rng, 8);
    CHECK(encode(info, open) == polar_transform(info));

    // Nonzero frozen values land verbatim in u.
    const CodeSpec hot(2, {{0, 1}, {1, 1}});
    const BitVec u = build_input({0, 1}, hot);
    CHECK(u == BitVec{1, 1, 0, 1});
}

TEST_CASE("check bits occupy the last unfrozen positions and verify") {
    const CodeSpec spec(4, {{0, 0}, {1, 0}, {2, 0}, {3, 0}}, 8);
    REQUIRE(spec.info_bits() == 4);
    RngEngine rng = substream(25, 0);
    const OuterCheck outer = default_outer(spec);
    REQUIRE(outer.kind == OuterCheck::Kind::crc);
    for (int i = 0; i < 20; ++i) {
        const BitVec info = random_bits(rng, spec.info_bits());
        const BitVec u = build_input(info, spec);
        const BitVec unfrozen = extract_unfrozen(u, spec);
        REQUIRE(unfrozen.size() == spec.k());
        const BitVec payload(unfrozen.begin(), unfrozen.begin() + spec.info_bits());
        const BitVec check(unfrozen.begin() + spec.info_bits(), unfrozen.end());
        CHECK(payload == info);
        CHECK(check == outer.compute(info));
        CHECK(outer.check(unfrozen));
        // encode == transform(build_input)
        CHECK(encode(info, spec) == polar_transform(u));
    }

    // Random parity as the alternative outer code round-trips the same way.
    const OuterCheck parity = OuterCheck::random(8, 42);
    const BitVec info = random_bits(rng, spec.info_bits());
    const BitVec u = build_input(info, spec, parity);
    CHECK(parity.check(extract_unfrozen(u, spec)));
}

TEST_CASE("encode validates lengths and check-width consistency") {
    const CodeSpec spec(3, {{0, 0}, {1, 0}});
    CHECK_THROWS_AS(encode(BitVec(5, 0), spec), std::invalid_argument);
    CHECK_THROWS_AS(encode(BitVec{0, 1, 2, 0, 1, 0}, spec), std::invalid_argument);
    CHECK_THROWS_AS(build_input(BitVec(6, 0), spec, OuterCheck::standard_crc(8)),
                    std::invalid_argument);
    CHECK_THROWS_AS(extract_unfrozen(BitVec(4, 0), spec), std::invalid_argument);
    CHECK(default_outer(spec).kind == OuterCheck::Kind::none);
}
