#pragma once

// Hand-written reference designs shared across test binaries. Both are kept
// as literal block lists (not produced by the constructors under test) so
// they can serve as independent fixtures.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cdc/design.hpp"
#include "cdc/scheme.hpp"
#include "cdc/shuffle.hpp"

namespace fixtures {

// The 7-point, 7-line plane: the unique 2-(7,3,1) design up to isomorphism.
inline cdc::BlockDesign fano() {
    cdc::BlockDesign d = cdc::make_design(
        {1, 2, 3, 4, 5, 6, 7},
        {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7}, {1, 5, 6}, {2, 6, 7}, {1, 3, 7}});
    d.strength = 2;
    d.index = 1;
    d.family = "fano-fixture";
    return d;
}

// 2-GDD on 6 points: 3 groups of size 2, four blocks of size 3, every
// cross-group pair covered once.
inline cdc::BlockDesign small_gdd() {
    cdc::BlockDesign d = cdc::make_design(
        {1, 2, 3, 4, 5, 6},
        {{1, 3, 5}, {2, 4, 5}, {2, 3, 6}, {1, 4, 6}},
        {{{1, 2}, {3, 4}, {5, 6}}});
    d.strength = 2;
    d.index = 1;
    d.family = "gdd-fixture";
    return d;
}

// Worker id (1-based) whose stored file set equals `files`.
inline int worker_with_files(const cdc::CdcScheme& s, std::vector<int> files) {
    std::sort(files.begin(), files.end());
    for (std::size_t i = 0; i < s.worker_files.size(); ++i) {
        if (s.worker_files[i] == files) return static_cast<int>(i) + 1;
    }
    throw std::runtime_error("no worker stores exactly that file set");
}

// The unique transcript signal whose summand list is exactly `summands`
// (sorted). Throws unless exactly one matches.
inline const cdc::CodedSignal& signal_with_summands(const cdc::ShuffleTranscript& tr,
                                                    std::vector<cdc::IvId> summands) {
    std::sort(summands.begin(), summands.end());
    const cdc::CodedSignal* found = nullptr;
    for (const auto& sig : tr.signals) {
        if (sig.summands == summands) {
            if (found) throw std::runtime_error("summand list matches two signals");
            found = &sig;
        }
    }
    if (!found) throw std::runtime_error("no signal with those summands");
    return *found;
}

}  // namespace fixtures
