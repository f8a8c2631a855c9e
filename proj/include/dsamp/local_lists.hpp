#pragma once

#include <vector>

#include "dsamp/bits.hpp"
#include "dsamp/codes.hpp"
#include "dsamp/sampler.hpp"

namespace dsamp {

struct ListConfig {
    double epsilon = 0.5;   // agreement parameter; local threshold is epsilon/2
    double epsilon0 = 0.0;  // base-code decoding radius, feeds the default rho
    double rho = 0.0;       // 0 = default (epsilon0/2) * 10^(-8/epsilon)
    int max_ladder = 0;     // cap on the radius index; 0 = the structural bound |L_0|
    long long enumeration_budget = 1ll << 20;

    double resolved_rho() const;
    int default_labels() const;  // ceil(8/epsilon)
    void validate() const;
};

struct ScoredEntry {
    Bits sigma;
    double score;  // local agreement of sigma at its T
};

struct LocalList {
    int tcopy = -1;
    std::vector<int> T;  // sorted elements
    std::vector<ScoredEntry> entries;
    double radius = 0.0;
    int radius_index = 0;
};

// All sigma in {0,1}^T with Pr_{S ~ (Pi_1|Pi_2=T)}[f_S = sigma|_S] >= epsilon/2,
// sorted by descending agreement, ties lexicographic.
std::vector<ScoredEntry> initial_list(const DoubleSampler& ds, int tcopy, const ReceivedWord& w,
                                      const ListConfig& cfg);

struct PruneResult {
    std::vector<ScoredEntry> entries;
    double radius;
    int radius_index;
};

// The radius-ladder loop: maximal independent sets at radii rho * 10^i until
// the list stabilizes. The emitted radius is the one the final (stable) MIS
// was computed at.
PruneResult prune(std::vector<ScoredEntry> l0, const ListConfig& cfg);

LocalList local_list_decode(const DoubleSampler& ds, int tcopy, const ReceivedWord& w, const ListConfig& cfg);

std::vector<LocalList> decode_all_lists(const DoubleSampler& ds, const ReceivedWord& w, const ListConfig& cfg);

}  // namespace dsamp
