#include "polarlist/list_decoder.hpp"

namespace polarlist {

SclResult scl_decode(const CodeSpec& spec, const std::vector<ProbPair>& probs,
                     const SclOptions& opts) {
    return scl_decode_t<double>(spec, probs, opts);
}

}  // namespace polarlist
