#include "dsamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "dsamp/rng.hpp"

namespace dsamp {

namespace {

constexpr uint64_t kStartVectorSeed = 0x5eed0f2a11d5a317ull;

// Normalized adjacency restricted to positive-weight vertices, with the top
// eigenvector sqrt(w_v) deflated. Dense mirror for small graphs.
struct Deflated {
    const WeightedGraph* g;
    std::vector<int> verts;   // positive-weight vertices
    std::vector<int> pos;     // vertex -> index in verts, -1 otherwise
    std::vector<double> phi;  // top eigenvector, unit norm
    std::vector<double> isq;  // 1/sqrt(w_v)
    std::vector<double> dense;
    int m = 0;

    explicit Deflated(const WeightedGraph& graph) : g(&graph) {
        const int n = g->num_vertices();
        pos.assign(n, -1);
        for (int v = 0; v < n; ++v)
            if (g->vertex_weight(v) > 0) {
                pos[v] = (int)verts.size();
                verts.push_back(v);
            }
        m = (int)verts.size();
        phi.resize(m);
        isq.resize(m);
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            double w = g->vertex_weight(verts[i]);
            phi[i] = std::sqrt(w);
            isq[i] = 1.0 / phi[i];
            s += w;
        }
        double inv = 1.0 / std::sqrt(s);
        for (int i = 0; i < m; ++i) phi[i] *= inv;
        if (m > 0 && (size_t)m * m <= 4u << 20) {
            dense.assign((size_t)m * m, 0.0);
            for (const auto& e : g->edges()) {
                int i = pos[e.u], j = pos[e.v];
                double a = e.w * isq[i] * isq[j];
                dense[(size_t)i * m + j] = a;
                dense[(size_t)j * m + i] = a;
            }
        }
    }

    // y = (A - phi phi^T) x
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        if (!dense.empty()) {
            for (int i = 0; i < m; ++i) {
                const double* row = dense.data() + (size_t)i * m;
                double acc = 0.0;
                for (int j = 0; j < m; ++j) acc += row[j] * x[j];
                y[i] = acc;
            }
        } else {
            std::fill(y.begin(), y.end(), 0.0);
            for (int i = 0; i < m; ++i) {
                int v = verts[i];
                auto nb = g->neighbors(v);
                auto nw = g->neighbor_weights(v);
                double acc = 0.0;
                for (size_t k = 0; k < nb.size(); ++k) {
                    int j = pos[nb[k]];
                    if (j >= 0) acc += nw[k] * isq[i] * isq[j] * x[j];
                }
                y[i] += acc;
            }
        }
        double d = std::inner_product(phi.begin(), phi.end(), x.begin(), 0.0);
        for (int i = 0; i < m; ++i) y[i] -= d * phi[i];
    }

    std::vector<double> start_vector() const {
        Rng rng(kStartVectorSeed);
        std::vector<double> x(m);
        for (int i = 0; i < m; ++i) x[i] = rng.next_real() - 0.5;
        double d = std::inner_product(phi.begin(), phi.end(), x.begin(), 0.0);
        for (int i = 0; i < m; ++i) x[i] -= d * phi[i];
        double nrm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
        if (nrm == 0) {
            x.assign(m, 0.0);
        } else {
            for (double& v : x) v /= nrm;
        }
        return x;
    }
};

void check_not_degenerate(const WeightedGraph& g) {
    if (!g.finalized()) throw std::logic_error("graph not finalized");
    if (g.total_weight() <= 0) throw std::invalid_argument("degenerate graph: total weight is zero");
}

// Power iteration on a PSD operator given by `apply`; returns (theta, x, iters, res).
template <class Apply>
std::tuple<double, std::vector<double>, long, double> power_iterate(Apply&& apply, std::vector<double> x,
                                                                    double tol, long max_iters) {
    const int m = (int)x.size();
    std::vector<double> y(m);
    double theta = 0.0, res = 0.0;
    long it = 0;
    for (; it < max_iters; ++it) {
        apply(x, y);
        theta = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
        double r2 = 0.0;
        for (int i = 0; i < m; ++i) {
            double d = y[i] - theta * x[i];
            r2 += d * d;
        }
        res = std::sqrt(r2);
        double ynrm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
        if (ynrm <= 1e-300) {
            // operator annihilates x: spectrum below the deflated top is 0
            return {0.0, x, it + 1, 0.0};
        }
        for (int i = 0; i < m; ++i) x[i] = y[i] / ynrm;
        if (res <= tol) {
            ++it;
            break;
        }
    }
    return {theta, x, it, res};
}

SpectralReport finish_report(const Deflated& D, double theta, std::vector<double> x, long it, double res,
                             double tol, bool squared) {
    SpectralReport rep;
    rep.lambda_sq = squared ? std::clamp(theta, 0.0, 1.0) : theta * theta;
    rep.lambda = squared ? std::sqrt(rep.lambda_sq) : theta;
    rep.iterations = it;
    rep.residual = res;
    rep.converged = res <= tol;
    rep.eigenvector.assign(D.g->num_vertices(), 0.0);
    for (int i = 0; i < D.m; ++i) rep.eigenvector[D.verts[i]] = x[i];
    return rep;
}

}  // namespace

SpectralReport second_eigenvalue(const WeightedGraph& g, double tol) {
    check_not_degenerate(g);
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    Deflated D(g);
    if (D.m <= 1) {
        SpectralReport rep;  // single vertex: lambda = 0 by convention
        rep.eigenvector.assign(g.num_vertices(), 0.0);
        return rep;
    }
    std::vector<double> tmp(D.m);
    auto sq = [&](const std::vector<double>& x, std::vector<double>& y) {
        D.apply(x, tmp);
        D.apply(tmp, y);
    };
    auto [theta, x, it, res] = power_iterate(sq, D.start_vector(), tol, kSpectralMaxIters);
    return finish_report(D, theta, std::move(x), it, res, tol, /*squared=*/true);
}

SpectralReport second_eigenvalue_signed(const WeightedGraph& g, double tol) {
    check_not_degenerate(g);
    Deflated D(g);
    if (D.m <= 1) {
        SpectralReport rep;
        rep.eigenvector.assign(g.num_vertices(), 0.0);
        return rep;
    }
    std::vector<double> tmp(D.m);
    // (I - phi phi^T)(A + I)/2: eigenvalues (lambda_i + 1)/2 on the complement
    auto shifted = [&](const std::vector<double>& x, std::vector<double>& y) {
        D.apply(x, y);
        for (int i = 0; i < D.m; ++i) y[i] = 0.5 * (y[i] + x[i]);
        double d = std::inner_product(D.phi.begin(), D.phi.end(), y.begin(), 0.0);
        for (int i = 0; i < D.m; ++i) y[i] -= d * D.phi[i];
    };
    auto [theta, x, it, res] = power_iterate(shifted, D.start_vector(), tol, kSpectralMaxIters);
    SpectralReport rep = finish_report(D, 2.0 * theta - 1.0, std::move(x), it, res, tol, /*squared=*/false);
    rep.lambda_sq = rep.lambda * rep.lambda;
    return rep;
}

SpectralReport bipartite_operator_norm_report(const WeightedBipartiteGraph& g, double tol) {
    if (g.total_weight() <= 0) throw std::invalid_argument("degenerate graph: total weight is zero");
    // Work on the smaller side with B_{u,v} = w_{u,v}/sqrt(w_u w_v); power
    // iteration on B^T B (or B B^T) with sqrt-weight deflation.
    const bool left_small = g.num_left() <= g.num_right();
    const int m = left_small ? g.num_left() : g.num_right();
    const int other = left_small ? g.num_right() : g.num_left();

    std::vector<double> isq_m(m, 0.0), isq_o(other, 0.0), phi(m, 0.0);
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
        double w = left_small ? g.left_weight(i) : g.right_weight(i);
        if (w > 0) {
            isq_m[i] = 1.0 / std::sqrt(w);
            phi[i] = std::sqrt(w);
            s += w;
        }
    }
    for (int j = 0; j < other; ++j) {
        double w = left_small ? g.right_weight(j) : g.left_weight(j);
        if (w > 0) isq_o[j] = 1.0 / std::sqrt(w);
    }
    double inv = 1.0 / std::sqrt(s);
    for (double& p : phi) p *= inv;

    auto fwd = [&](const std::vector<double>& x, std::vector<double>& z) {
        std::fill(z.begin(), z.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            if (x[i] == 0 || isq_m[i] == 0) continue;
            auto vs = left_small ? g.left_neighbors(i) : g.right_neighbors(i);
            auto ws = left_small ? g.left_neighbor_weights(i) : g.right_neighbor_weights(i);
            for (size_t k = 0; k < vs.size(); ++k) z[vs[k]] += ws[k] * isq_m[i] * isq_o[vs[k]] * x[i];
        }
    };
    auto bwd = [&](const std::vector<double>& z, std::vector<double>& y) {
        std::fill(y.begin(), y.end(), 0.0);
        for (int j = 0; j < other; ++j) {
            if (z[j] == 0 || isq_o[j] == 0) continue;
            auto us = left_small ? g.right_neighbors(j) : g.left_neighbors(j);
            auto ws = left_small ? g.right_neighbor_weights(j) : g.left_neighbor_weights(j);
            for (size_t k = 0; k < us.size(); ++k) y[us[k]] += ws[k] * isq_o[j] * isq_m[us[k]] * z[j];
        }
    };

    std::vector<double> mid(other);
    auto op = [&](const std::vector<double>& x, std::vector<double>& y) {
        fwd(x, mid);
        bwd(mid, y);
        double d = std::inner_product(phi.begin(), phi.end(), y.begin(), 0.0);
        for (int i = 0; i < m; ++i) y[i] -= d * phi[i];
    };

    if (m <= 1) {
        SpectralReport rep;
        rep.eigenvector.assign(m, 0.0);
        return rep;
    }
    Rng rng(kStartVectorSeed);
    std::vector<double> x(m);
    for (int i = 0; i < m; ++i) x[i] = rng.next_real() - 0.5;
    double d = std::inner_product(phi.begin(), phi.end(), x.begin(), 0.0);
    for (int i = 0; i < m; ++i) x[i] -= d * phi[i];
    double nrm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    for (double& v : x) v /= (nrm > 0 ? nrm : 1.0);

    auto [theta, xv, it, res] = power_iterate(op, std::move(x), tol, kSpectralMaxIters);
    SpectralReport rep;
    rep.lambda_sq = std::clamp(theta, 0.0, 1.0);
    rep.lambda = std::sqrt(rep.lambda_sq);
    rep.eigenvector = std::move(xv);
    rep.iterations = it;
    rep.residual = res;
    rep.converged = res <= tol;
    return rep;
}

double bipartite_operator_norm(const WeightedBipartiteGraph& g, double tol) {
    return bipartite_operator_norm_report(g, tol).lambda;
}

CheegerCut cheeger_cut(const WeightedGraph& g, double tol) {
    check_not_degenerate(g);
    const int n = g.num_vertices();
    int positive = 0;
    for (int v = 0; v < n; ++v) positive += g.vertex_weight(v) > 0;
    if (n < 2 || positive < 2) throw std::invalid_argument("no cut exists on a single-vertex graph");

    SpectralReport rep = second_eigenvalue_signed(g, tol);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> score(n);
    for (int v = 0; v < n; ++v) {
        double w = g.vertex_weight(v);
        score[v] = w > 0 ? rep.eigenvector[v] / std::sqrt(w) : -std::numeric_limits<double>::infinity();
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });

    const double omega = g.total_weight();
    auto subset_at = [&](int k, bool prefix_side) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if ((i <= k) == prefix_side) s.push_back(order[i]);
        std::sort(s.begin(), s.end());
        return s;
    };
    std::vector<char> in_prefix(n, 0);
    double cut = 0.0, vol = 0.0;
    double best = std::numeric_limits<double>::infinity();
    int best_k = -1;
    bool best_is_prefix = true;
    for (int k = 0; k < n - 1; ++k) {
        int v = order[k];
        auto nb = g.neighbors(v);
        auto nw = g.neighbor_weights(v);
        for (size_t t = 0; t < nb.size(); ++t) {
            if (nb[t] == v) continue;  // loops never cross
            cut += in_prefix[nb[t]] ? -nw[t] : nw[t];
        }
        in_prefix[v] = 1;
        vol += g.vertex_weight(v);
        double mu_p = vol / omega;
        bool prefix_side = mu_p <= 0.5 + 1e-15;
        double side_vol = prefix_side ? vol : omega - vol;
        if (side_vol <= 0) continue;
        double cond = cut / side_vol;
        if (cond < best - 1e-15) {
            best = cond;
            best_k = k;
            best_is_prefix = prefix_side;
        } else if (std::abs(cond - best) <= 1e-15 && best_k >= 0) {
            // ties: smaller side first, then lexicographic vertex list
            int cur_size = prefix_side ? k + 1 : n - k - 1;
            int best_size = best_is_prefix ? best_k + 1 : n - best_k - 1;
            bool take = cur_size < best_size ||
                        (cur_size == best_size && subset_at(k, prefix_side) < subset_at(best_k, best_is_prefix));
            if (take) {
                best = cond;
                best_k = k;
                best_is_prefix = prefix_side;
            }
        }
    }
    if (best_k < 0) throw std::runtime_error("sweep produced no admissible cut");

    CheegerCut out;
    out.conductance = std::max(0.0, best);
    out.lambda_signed = rep.lambda;
    out.subset = subset_at(best_k, best_is_prefix);
    return out;
}

double mixing_defect(const WeightedBipartiteGraph& g, const std::vector<double>& f, const std::vector<double>& h) {
    if ((int)f.size() != g.num_right() || (int)h.size() != g.num_left())
        throw std::invalid_argument("function size mismatch");
    for (double x : f)
        if (x < 0 || x > 1) throw std::invalid_argument("f must map into [0,1]");
    for (double x : h)
        if (x < 0 || x > 1) throw std::invalid_argument("h must map into [0,1]");
    double ef = 0.0, eh = 0.0, efh = 0.0;
    const double tot = g.total_weight();
    for (int v = 0; v < g.num_right(); ++v) ef += g.right_weight(v) / tot * f[v];
    for (int u = 0; u < g.num_left(); ++u) {
        eh += g.left_weight(u) / tot * h[u];
        auto vs = g.left_neighbors(u);
        auto ws = g.left_neighbor_weights(u);
        for (size_t k = 0; k < vs.size(); ++k) efh += ws[k] / tot * f[vs[k]] * h[u];
    }
    return std::abs(efh - ef * eh);
}

std::pair<double, double> laplacian_quotient(const WeightedGraph& g, const std::vector<std::vector<double>>& z) {
    if ((int)z.size() != g.num_vertices()) throw std::invalid_argument("one vector per vertex required");
    auto d2 = [&](int u, int v) {
        double s = 0.0;
        for (size_t k = 0; k < z[u].size(); ++k) {
            double d = z[u][k] - z[v][k];
            s += d * d;
        }
        return s;
    };
    double num = 0.0;
    for (const auto& e : g.edges()) num += g.edge_measure(e.u, e.v) * d2(e.u, e.v);
    double den = 0.0;
    for (int u = 0; u < g.num_vertices(); ++u)
        for (int v = 0; v < g.num_vertices(); ++v) den += g.vertex_measure(u) * g.vertex_measure(v) * d2(u, v);
    return {num, den};
}

}  // namespace dsamp
