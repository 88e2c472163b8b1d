#pragma once

#include "polarlist/core.hpp"
#include "polarlist/crc.hpp"

namespace polarlist {

/// Polar transform of u (length a power of two): butterfly combining followed
/// by the bit-reversal output order the decoders assume. The transform is an
/// involution, so it also inverts itself; see the property test.
BitVec polar_transform(const BitVec& u);

/// Place payload (and check bits, when spec.crc_width() > 0) into the
/// unfrozen positions of u, frozen values elsewhere. `info` must have
/// spec.info_bits() elements. Check bits are computed by `outer` over the
/// payload and occupy the last crc_width() unfrozen positions.
BitVec build_input(const BitVec& info, const CodeSpec& spec, const OuterCheck& outer);

/// Codeword for `info`: polar_transform(build_input(...)).
BitVec encode(const BitVec& info, const CodeSpec& spec, const OuterCheck& outer);

/// Convenience overloads using the standard CRC of width spec.crc_width().
BitVec build_input(const BitVec& info, const CodeSpec& spec);
BitVec encode(const BitVec& info, const CodeSpec& spec);

/// Payload (and check) bits of u, i.e. u restricted to unfrozen positions.
BitVec extract_unfrozen(const BitVec& u, const CodeSpec& spec);

/// Default outer check for a spec: standard CRC of width crc_width(), or
/// none when the width is zero.
OuterCheck default_outer(const CodeSpec& spec);

}  // namespace polarlist
