#pragma once

// Independent test oracles. Everything here is allowed to be slow and must not
// share code paths with the library's own spectral routines: eigenvalues come
// from Eigen's dense solver, measures from direct summation.

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "dsamp/graph.hpp"
#include "dsamp/rng.hpp"

namespace oracle {

// second largest |eigenvalue| of the normalized adjacency, dense eigensolve
inline double lambda_abs(const dsamp::WeightedGraph& g) {
    const int n = g.num_vertices();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> w(n);
    for (int v = 0; v < n; ++v) w[v] = g.vertex_weight(v);
    for (const auto& e : g.edges()) {
        if (w[e.u] <= 0 || w[e.v] <= 0) continue;
        double a = e.w / std::sqrt(w[e.u] * w[e.v]);
        A(e.u, e.v) = a;
        A(e.v, e.u) = a;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    std::vector<double> abs_ev;
    for (int i = 0; i < n; ++i) abs_ev.push_back(std::abs(es.eigenvalues()[i]));
    std::sort(abs_ev.rbegin(), abs_ev.rend());
    // zero-weight vertices contribute spurious 0 rows; the top |eigenvalue| of
    // the walk is 1 and sits at index 0 regardless
    return abs_ev.size() > 1 ? abs_ev[1] : 0.0;
}

// signed second largest eigenvalue (for sweep bounds)
inline double lambda_signed(const dsamp::WeightedGraph& g) {
    const int n = g.num_vertices();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> w(n);
    for (int v = 0; v < n; ++v) w[v] = g.vertex_weight(v);
    int positive = 0;
    for (double x : w) positive += x > 0;
    for (const auto& e : g.edges()) {
        if (w[e.u] <= 0 || w[e.v] <= 0) continue;
        double a = e.w / std::sqrt(w[e.u] * w[e.v]);
        A(e.u, e.v) = a;
        A(e.v, e.u) = a;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.rbegin(), ev.rend());
    // drop the zero eigenvalues of isolated rows above the true spectrum tail
    return positive > 1 ? ev[1] : 0.0;
}

// top singular value of the mean-zero-restricted bipartite walk operator
inline double bipartite_lambda(const dsamp::WeightedBipartiteGraph& g) {
    const int nl = g.num_left(), nr = g.num_right();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nl, nr);
    for (int u = 0; u < nl; ++u) {
        auto vs = g.left_neighbors(u);
        auto ws = g.left_neighbor_weights(u);
        for (size_t k = 0; k < vs.size(); ++k) {
            if (g.left_weight(u) <= 0 || g.right_weight(vs[k]) <= 0) continue;
            B(u, vs[k]) = ws[k] / std::sqrt(g.left_weight(u) * g.right_weight(vs[k]));
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
    auto s = svd.singularValues();
    return s.size() > 1 ? s[1] : 0.0;
}

// exhaustive minimum-conductance cut (ordered-pair cut measure over mu(U)),
// over all subsets with mu(U) <= 1/2
inline double min_conductance(const dsamp::WeightedGraph& g) {
    const int n = g.num_vertices();
    double best = std::numeric_limits<double>::infinity();
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        std::vector<int> U, rest;
        for (int v = 0; v < n; ++v) ((mask >> v) & 1 ? U : rest).push_back(v);
        double mu = g.subset_measure(U);
        if (mu <= 0 || mu > 0.5 + 1e-15) continue;
        best = std::min(best, g.ordered_measure(U, rest) / mu);
    }
    return best;
}

inline dsamp::WeightedGraph random_graph(int n, double density, uint64_t seed) {
    dsamp::Rng rng(seed);
    dsamp::WeightedGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v)
            if (rng.next_real() < density) g.add_edge(u, v, 0.1 + rng.next_real());
    g.finalize();
    if (g.total_weight() <= 0) return random_graph(n, density, seed + 1);
    return g;
}

}  // namespace oracle
