#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace dsamp {

// Undirected weighted graph. Stored as a symmetric weight function s(u,v)
// (self-loops stored once). Conventions, used consistently everywhere:
//   vertex weight      w_v   = sum_u s(v,u)            (a self-loop counts once)
//   total weight       omega = sum_v w_v
//   vertex measure     mu(v) = w_v / omega
//   edge measure       mu({u,v}) = (2 - [u==v]) s(u,v) / omega
//   mu(E(A,B))         = sum_{u in A, v in B} s(u,v) / omega   (ordered pairs)
// With these, picking a measure-weighted edge and a uniform endpoint gives
// exactly the vertex measure, and induced-subgraph measure identities hold
// without correction terms.
struct GraphEdge {
    int u, v;  // u <= v
    double w;
};

class WeightedGraph {
  public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n) : n_(n), row_weight_(n, 0.0) {}

    void add_edge(int u, int v, double w);
    void finalize();

    bool finalized() const { return finalized_; }
    int num_vertices() const { return n_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    double edge_weight(int u, int v) const;
    double vertex_weight(int v) const { return row_weight_[v]; }
    double total_weight() const { return omega_; }

    double vertex_measure(int v) const { return row_weight_[v] / omega_; }
    double edge_measure(int u, int v) const { return (u == v ? 1.0 : 2.0) * edge_weight(u, v) / omega_; }
    double subset_measure(const std::vector<int>& vs) const;
    // mu_G(E(A,B)) in the ordered-pair sense (see header comment)
    double ordered_measure(const std::vector<int>& A, const std::vector<int>& B) const;
    // mu_G(E(A,A)): total measure of edges inside A
    double internal_measure(const std::vector<int>& A) const { return ordered_measure(A, A); }

    // Subgraph induced by `keep` (original edge weights). Vertices are
    // reindexed by position in `keep`; keep must be sorted and unique.
    WeightedGraph induced(const std::vector<int>& keep) const;

    // CSR adjacency (available after finalize)
    std::span<const int> neighbors(int v) const {
        return {adj_v_.data() + adj_off_[v], adj_v_.data() + adj_off_[v + 1]};
    }
    std::span<const double> neighbor_weights(int v) const {
        return {adj_w_.data() + adj_off_[v], adj_w_.data() + adj_off_[v + 1]};
    }

  private:
    int n_ = 0;
    bool finalized_ = false;
    std::vector<GraphEdge> edges_;
    std::unordered_map<uint64_t, double> lookup_;
    std::vector<double> row_weight_;
    double omega_ = 0.0;
    std::vector<size_t> adj_off_;
    std::vector<int> adj_v_;
    std::vector<double> adj_w_;

    static uint64_t key(int u, int v) { return ((uint64_t)(uint32_t)u << 32) | (uint32_t)v; }
};

// Bipartite graph with joint edge weights; marginals are row/column sums.
class WeightedBipartiteGraph {
  public:
    WeightedBipartiteGraph() = default;
    WeightedBipartiteGraph(int nl, int nr) : nl_(nl), nr_(nr), lw_(nl, 0.0), rw_(nr, 0.0) {}

    void add_edge(int u, int v, double w);
    void finalize();

    int num_left() const { return nl_; }
    int num_right() const { return nr_; }
    double left_weight(int u) const { return lw_[u]; }
    double right_weight(int v) const { return rw_[v]; }
    double total_weight() const { return total_; }

    std::span<const int> left_neighbors(int u) const {
        return {ladj_v_.data() + ladj_off_[u], ladj_v_.data() + ladj_off_[u + 1]};
    }
    std::span<const double> left_neighbor_weights(int u) const {
        return {ladj_w_.data() + ladj_off_[u], ladj_w_.data() + ladj_off_[u + 1]};
    }
    std::span<const int> right_neighbors(int v) const {
        return {radj_v_.data() + radj_off_[v], radj_v_.data() + radj_off_[v + 1]};
    }
    std::span<const double> right_neighbor_weights(int v) const {
        return {radj_w_.data() + radj_off_[v], radj_w_.data() + radj_off_[v + 1]};
    }

  private:
    int nl_ = 0, nr_ = 0;
    bool finalized_ = false;
    std::vector<std::tuple<int, int, double>> raw_;
    std::vector<double> lw_, rw_;
    double total_ = 0.0;
    std::vector<size_t> ladj_off_, radj_off_;
    std::vector<int> ladj_v_, radj_v_;
    std::vector<double> ladj_w_, radj_w_;
};

// Two-step walk (vertex set = left side): sample a right vertex by the walk
// marginal, then two independent left parents. W is the distribution on the
// left side; pass an empty vector to use the graph's own left marginal.
WeightedGraph two_step_walk(const WeightedBipartiteGraph& g, const std::vector<double>& W);

}  // namespace dsamp
