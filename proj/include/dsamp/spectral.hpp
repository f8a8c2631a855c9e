#pragma once

#include <vector>

#include "dsamp/graph.hpp"

namespace dsamp {

struct SpectralReport {
    double lambda = 0.0;     // second largest eigenvalue in absolute value
    double lambda_sq = 0.0;  // computed quantity (power iteration runs on the square)
    std::vector<double> eigenvector;
    long iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

inline constexpr double kSpectralTol = 1e-9;
inline constexpr long kSpectralMaxIters = 100000;

// lambda(G): second largest |eigenvalue| of A_{u,v} = s(u,v)/sqrt(w_u w_v).
// Power iteration on the square of the deflated operator; deterministic start.
SpectralReport second_eigenvalue(const WeightedGraph& g, double tol = kSpectralTol);

// Second largest *signed* eigenvalue and its eigenvector (drives the sweep cut).
SpectralReport second_eigenvalue_signed(const WeightedGraph& g, double tol = kSpectralTol);

// lambda(G) of a bipartite graph: top singular value of the mean-zero-restricted
// walk operator under the weighted inner products.
SpectralReport bipartite_operator_norm_report(const WeightedBipartiteGraph& g, double tol = kSpectralTol);
double bipartite_operator_norm(const WeightedBipartiteGraph& g, double tol = kSpectralTol);

struct CheegerCut {
    std::vector<int> subset;  // mu(subset) <= 1/2
    double conductance;       // mu(E(U, V\U)) / mu(U), ordered-pair cut measure
    double lambda_signed;     // eigenvalue used for the sweep
};

// Minimum-conductance sweep cut from the signed second eigenvector, vertices
// ordered by x_v / sqrt(w_v). Among admissible cuts picks minimum conductance,
// ties broken by smaller |U| then lexicographic vertex list.
CheegerCut cheeger_cut(const WeightedGraph& g, double tol = kSpectralTol);

// |E_{uv in E}[f(v) h(u)] - E[f] E[h]| for f on the right side, h on the left.
// The expander mixing bound lambda * sqrt(E[f] E[h]) is asserted by callers.
double mixing_defect(const WeightedBipartiteGraph& g, const std::vector<double>& f, const std::vector<double>& h);

// (E_{(u,v)~edges}[||z_u - z_v||^2], E_{u,v~vertices}[||z_u - z_v||^2]).
// The quotient is >= 1 - lambda(G) for any vectors (Laplacian minimum form).
std::pair<double, double> laplacian_quotient(const WeightedGraph& g, const std::vector<std::vector<double>>& z);

}  // namespace dsamp
