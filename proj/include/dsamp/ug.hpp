#pragma once

#include <cstdint>
#include <vector>

#include "dsamp/graph.hpp"
#include "dsamp/local_lists.hpp"

namespace dsamp {

using Assignment = std::vector<int>;  // label per vertex

// Unique-games constraint graph. Constraints are stored once per undirected
// edge, oriented from the lower vertex index to the higher (a self-loop maps
// the vertex's labels to themselves); the reverse direction applies the
// inverse permutation, so both orientations agree on satisfaction.
struct UGInstance {
    WeightedGraph graph;
    int labels = 0;
    std::vector<std::vector<uint8_t>> perms;  // aligned with graph.edges()
    std::vector<int> sampled_s;               // V1 copy drawn per edge (diagnostics); may be empty
    std::vector<LocalList> lists;             // per vertex, padded to `labels`; may be empty
    std::vector<int> radius_index;            // per vertex; empty when lists are absent
    int padding_failures = 0;                 // dummies violating the separation requirement
    int truncated_lists = 0;                  // lists longer than `labels`

    void validate() const;  // permutation + alignment checks
};

struct RadiusGroups {
    std::vector<int> indices;                // distinct radius indices, ascending
    std::vector<std::vector<int>> members;   // vertices per group
    std::vector<double> measures;            // Pi_2 measure per group
};

RadiusGroups radius_partition(const std::vector<LocalList>& lists, const std::vector<double>& pi2);

// Pads (or truncates) every list to exactly `labels` entries. Dummies are
// canonical strings at distance >= r_T from everything already chosen; when no
// such string exists the instance's padding_failures counter records it.
std::vector<LocalList> pad_lists(std::vector<LocalList> lists, int labels, int* padding_failures,
                                 int* truncated);

// Constraint synthesis on the two-step walk of (X(V2,V1), Pi_2):
// per edge, sample S ~ (S | T1, T2), greedily match entries at distance
// <= r_{T1}/2 on S (ascending scan), fill the rest by ascending pairing.
UGInstance build_constraint_graph(const DoubleSampler& ds, const std::vector<LocalList>& lists, int labels,
                                  uint64_t seed);

// weighted fraction of satisfied edges (edge-measure weighting)
double ug_value(const UGInstance& inst, const Assignment& a);

// Sub-instance induced by `keep` (sorted original vertex ids).
UGInstance induced_instance(const UGInstance& inst, const std::vector<int>& keep);

// Test oracle: per radius group, the weighted fraction of intra-group edges
// whose constraint maps the g-closest index of T1 to the g-closest index of
// T2 while both endpoints are within r_T/9 of g. Vacuous groups report 1.
std::vector<double> correct_edge_fraction(const UGInstance& inst, const std::vector<uint8_t>& g,
                                          const RadiusGroups& groups);

}  // namespace dsamp
