#include "dsamp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace dsamp {

void WeightedGraph::add_edge(int u, int v, double w) {
    if (finalized_) throw std::logic_error("graph already finalized");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
    if (w < 0) throw std::invalid_argument("negative edge weight");
    if (w == 0) return;
    if (u > v) std::swap(u, v);
    auto [it, inserted] = lookup_.try_emplace(key(u, v), w);
    if (!inserted) it->second += w;
}

void WeightedGraph::finalize() {
    if (finalized_) return;
    edges_.clear();
    edges_.reserve(lookup_.size());
    for (const auto& [k, w] : lookup_) edges_.push_back({(int)(k >> 32), (int)(uint32_t)k, w});
    std::sort(edges_.begin(), edges_.end(),
              [](const GraphEdge& a, const GraphEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });

    row_weight_.assign(n_, 0.0);
    std::vector<size_t> deg(n_ + 1, 0);
    for (const auto& e : edges_) {
        row_weight_[e.u] += e.w;
        if (e.v != e.u) row_weight_[e.v] += e.w;
        deg[e.u]++;
        if (e.v != e.u) deg[e.v]++;
    }
    omega_ = 0.0;
    for (double w : row_weight_) omega_ += w;

    adj_off_.assign(n_ + 1, 0);
    for (int v = 0; v < n_; ++v) adj_off_[v + 1] = adj_off_[v] + deg[v];
    adj_v_.assign(adj_off_[n_], 0);
    adj_w_.assign(adj_off_[n_], 0.0);
    std::vector<size_t> cur(adj_off_.begin(), adj_off_.end() - 1);
    for (const auto& e : edges_) {
        adj_v_[cur[e.u]] = e.v;
        adj_w_[cur[e.u]++] = e.w;
        if (e.v != e.u) {
            adj_v_[cur[e.v]] = e.u;
            adj_w_[cur[e.v]++] = e.w;
        }
    }
    finalized_ = true;
}

double WeightedGraph::edge_weight(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = lookup_.find(key(u, v));
    return it == lookup_.end() ? 0.0 : it->second;
}

double WeightedGraph::subset_measure(const std::vector<int>& vs) const {
    double s = 0.0;
    for (int v : vs) s += row_weight_[v];
    return s / omega_;
}

double WeightedGraph::ordered_measure(const std::vector<int>& A, const std::vector<int>& B) const {
    std::vector<char> inA(n_, 0), inB(n_, 0);
    for (int v : A) inA[v] = 1;
    for (int v : B) inB[v] = 1;
    double s = 0.0;
    for (const auto& e : edges_) {
        if (e.u == e.v) {
            if (inA[e.u] && inB[e.u]) s += e.w;
        } else {
            if (inA[e.u] && inB[e.v]) s += e.w;
            if (inA[e.v] && inB[e.u]) s += e.w;
        }
    }
    return s / omega_;
}

WeightedGraph WeightedGraph::induced(const std::vector<int>& keep) const {
    std::vector<int> pos(n_, -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= n_) throw std::out_of_range("induced subset out of range");
        pos[keep[i]] = (int)i;
    }
    WeightedGraph g((int)keep.size());
    for (const auto& e : edges_)
        if (pos[e.u] >= 0 && pos[e.v] >= 0) g.add_edge(pos[e.u], pos[e.v], e.w);
    g.finalize();
    return g;
}

void WeightedBipartiteGraph::add_edge(int u, int v, double w) {
    if (finalized_) throw std::logic_error("graph already finalized");
    if (u < 0 || v < 0 || u >= nl_ || v >= nr_) throw std::out_of_range("edge endpoint out of range");
    if (w < 0) throw std::invalid_argument("negative edge weight");
    if (w == 0) return;
    raw_.emplace_back(u, v, w);
}

void WeightedBipartiteGraph::finalize() {
    if (finalized_) return;
    std::sort(raw_.begin(), raw_.end());
    // merge duplicates
    std::vector<std::tuple<int, int, double>> merged;
    merged.reserve(raw_.size());
    for (const auto& t : raw_) {
        if (!merged.empty() && std::get<0>(merged.back()) == std::get<0>(t) &&
            std::get<1>(merged.back()) == std::get<1>(t))
            std::get<2>(merged.back()) += std::get<2>(t);
        else
            merged.push_back(t);
    }
    raw_ = std::move(merged);

    lw_.assign(nl_, 0.0);
    rw_.assign(nr_, 0.0);
    total_ = 0.0;
    std::vector<size_t> ld(nl_ + 1, 0), rd(nr_ + 1, 0);
    for (const auto& [u, v, w] : raw_) {
        lw_[u] += w;
        rw_[v] += w;
        total_ += w;
        ld[u]++;
        rd[v]++;
    }
    ladj_off_.assign(nl_ + 1, 0);
    for (int u = 0; u < nl_; ++u) ladj_off_[u + 1] = ladj_off_[u] + ld[u];
    radj_off_.assign(nr_ + 1, 0);
    for (int v = 0; v < nr_; ++v) radj_off_[v + 1] = radj_off_[v] + rd[v];
    ladj_v_.assign(ladj_off_[nl_], 0);
    ladj_w_.assign(ladj_off_[nl_], 0.0);
    radj_v_.assign(radj_off_[nr_], 0);
    radj_w_.assign(radj_off_[nr_], 0.0);
    std::vector<size_t> lc(ladj_off_.begin(), ladj_off_.end() - 1), rc(radj_off_.begin(), radj_off_.end() - 1);
    for (const auto& [u, v, w] : raw_) {
        ladj_v_[lc[u]] = v;
        ladj_w_[lc[u]++] = w;
        radj_v_[rc[v]] = u;
        radj_w_[rc[v]++] = w;
    }
    finalized_ = true;
}

WeightedGraph two_step_walk(const WeightedBipartiteGraph& g, const std::vector<double>& W) {
    const int nl = g.num_left();
    std::vector<double> left_dist;
    if (W.empty()) {
        left_dist.resize(nl);
        for (int u = 0; u < nl; ++u) left_dist[u] = g.left_weight(u) / g.total_weight();
    } else {
        if ((int)W.size() != nl) throw std::invalid_argument("W size does not match left side");
        double s = 0.0;
        for (double w : W) {
            if (w < 0) throw std::invalid_argument("W has a negative atom");
            s += w;
        }
        if (s <= 0) throw std::invalid_argument("W has zero total mass");
        left_dist.resize(nl);
        for (int u = 0; u < nl; ++u) left_dist[u] = W[u] / s;
    }
    for (int u = 0; u < nl; ++u)
        if (left_dist[u] > 0 && g.left_weight(u) == 0)
            throw std::invalid_argument("isolated left vertex with positive mass");

    // joint(u, v) = W(u) * cond(v | u); walk marginal on the right
    const int nr = g.num_right();
    std::vector<double> pi_right(nr, 0.0);
    for (int u = 0; u < nl; ++u) {
        if (left_dist[u] == 0) continue;
        auto vs = g.left_neighbors(u);
        auto ws = g.left_neighbor_weights(u);
        for (size_t k = 0; k < vs.size(); ++k) pi_right[vs[k]] += left_dist[u] * ws[k] / g.left_weight(u);
    }

    WeightedGraph out(nl);
    // s(T1,T2) = sum_S pi_right(S) p(T1|S) p(T2|S); accumulate per right vertex
    std::vector<std::pair<int, double>> back;
    for (int v = 0; v < nr; ++v) {
        if (pi_right[v] <= 0) continue;
        back.clear();
        auto us = g.right_neighbors(v);
        auto ws = g.right_neighbor_weights(v);
        for (size_t k = 0; k < us.size(); ++k) {
            int u = us[k];
            if (left_dist[u] == 0) continue;
            double joint = left_dist[u] * ws[k] / g.left_weight(u);
            back.emplace_back(u, joint / pi_right[v]);
        }
        for (size_t a = 0; a < back.size(); ++a)
            for (size_t b = a; b < back.size(); ++b) {
                double p = pi_right[v] * back[a].second * back[b].second;
                // the symmetric function value is the ordered-pair probability
                out.add_edge(back[a].first, back[b].first, p);
            }
    }
    out.finalize();
    return out;
}

}  // namespace dsamp
