#include "dsamp/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dsamp {

ExtractReport extract_expander(const WeightedGraph& g, const std::vector<int>& A, double lambda_target, double tol) {
    if (A.empty()) throw std::invalid_argument("A must be nonempty");
    std::vector<int> cur = A;
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    if (g.subset_measure(cur) <= 0) throw std::invalid_argument("A must have positive measure");

    ExtractReport rep;
    rep.mu_A = g.subset_measure(cur);
    while (true) {
        WeightedGraph sub = g.induced(cur);
        if (sub.total_weight() <= 0) {
            // A induces no edges; a single vertex is an expander by convention
            cur.resize(1);
            rep.lambda_final = 0.0;
            break;
        }
        int positive = 0;
        for (int v = 0; v < sub.num_vertices(); ++v) positive += sub.vertex_weight(v) > 0;
        if (positive <= 1) {
            rep.lambda_final = 0.0;
            break;
        }
        SpectralReport spec = second_eigenvalue(sub, tol);
        if (!spec.converged)
            throw std::runtime_error("eigensolver hit its iteration cap during extraction (residual " +
                                     std::to_string(spec.residual) + ")");
        if (spec.lambda < lambda_target) {
            rep.lambda_final = spec.lambda;
            break;
        }
        CheegerCut cut = cheeger_cut(sub, tol);
        double bound = std::sqrt(std::max(0.0, 2.0 * (1.0 - spec.lambda)));
        if (cut.conductance > bound + 1e-6) rep.cut_bounds_ok = false;
        std::vector<char> drop(sub.num_vertices(), 0);
        for (int v : cut.subset) drop[v] = 1;
        std::vector<int> next;
        for (int i = 0; i < sub.num_vertices(); ++i)
            if (!drop[i]) next.push_back(cur[i]);
        if (next.empty() || next.size() == cur.size()) throw std::runtime_error("sweep removal made no progress");
        cur = std::move(next);
        ++rep.iterations;
    }
    rep.subset = std::move(cur);
    rep.mu_B = g.subset_measure(rep.subset);
    return rep;
}

MixingBounds sampler_mixing_bounds(const WeightedBipartiteGraph& gsamp, const std::vector<double>& W,
                                   const std::vector<int>& A, const std::vector<int>& B, SamplerParams certified) {
    const int nl = gsamp.num_left();
    std::vector<double> w(nl);
    if (W.empty()) {
        for (int u = 0; u < nl; ++u) w[u] = gsamp.left_weight(u) / gsamp.total_weight();
    } else {
        if ((int)W.size() != nl) throw std::invalid_argument("W size mismatch");
        double s = std::accumulate(W.begin(), W.end(), 0.0);
        if (s <= 0) throw std::invalid_argument("W has zero mass");
        for (int u = 0; u < nl; ++u) w[u] = W[u] / s;
    }
    MixingBounds out;
    for (int v : A) out.mu_A += w[v];
    for (int v : B) out.mu_B += w[v];
    out.hypothesis_ok = out.mu_A > certified.delta && out.mu_B > certified.alpha;
    out.lower = std::max(0.0, (out.mu_A - certified.delta) * (out.mu_B - certified.alpha));
    out.upper = std::min(1.0, out.mu_A * (out.mu_B + certified.alpha) + certified.delta);
    return out;
}

}  // namespace dsamp
