#include "polarlist/sc_decoder.hpp"

namespace polarlist {

ScOutput sc_decode_reference(const CodeSpec& spec, const std::vector<ProbPair>& probs) {
    return sc_decode_reference_t<double>(spec, probs);
}

ScOutput sc_decode(const CodeSpec& spec, const std::vector<ProbPair>& probs) {
    return sc_decode_t<double>(spec, probs);
}

}  // namespace polarlist
