#pragma once

#include <vector>

#include "dsamp/graph.hpp"
#include "dsamp/sampler.hpp"
#include "dsamp/spectral.hpp"

namespace dsamp {

struct ExtractReport {
    std::vector<int> subset;  // B, original vertex ids, sorted
    double lambda_final = 0.0;
    double mu_A = 0.0;
    double mu_B = 0.0;
    int iterations = 0;
    bool cut_bounds_ok = true;  // every removed cut met the sweep bound
};

// Repeatedly removes sparse sweep cuts from the subgraph induced by A until
// the second eigenvalue drops below lambda_target. A single remaining vertex
// counts as lambda = 0.
ExtractReport extract_expander(const WeightedGraph& g, const std::vector<int>& A, double lambda_target = 0.99,
                               double tol = kSpectralTol);

struct MixingBounds {
    double lower = 0.0;
    double upper = 1.0;
    bool hypothesis_ok = true;  // mu(A) > delta and mu(B) > alpha
    double mu_A = 0.0;
    double mu_B = 0.0;
};

// Bounds on Pr[T1 in A, T2 in B] for the two-step walk of an (alpha, delta)
// sampler: (mu(A)-delta)(mu(B)-alpha) <= Pr <= mu(A)(mu(B)+alpha) + delta.
// Measures are taken under the walk's top distribution (W, or the left
// marginal when W is empty). Violated hypotheses flip hypothesis_ok instead
// of throwing: the bounds are then report-only.
MixingBounds sampler_mixing_bounds(const WeightedBipartiteGraph& gsamp, const std::vector<double>& W,
                                   const std::vector<int>& A, const std::vector<int>& B, SamplerParams certified);

}  // namespace dsamp
