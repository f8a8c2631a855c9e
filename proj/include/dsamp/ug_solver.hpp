#pragma once

#include <cstdint>
#include <vector>

#include "dsamp/ug.hpp"

namespace dsamp {

struct SolverConfig {
    double R = 0.1;  // rounding radius base, r ~ U[R, 2R]
    int rank = 0;    // vector dimension t; 0 = labels (the invariant is t >= labels)
    int epochs = 500;
    int pilot_epochs = 50;
    int random_restarts = 2;
    int propagation_restarts = 2;
    double lr = 0.25;
    int tri_sample = 256;  // triangle triples sampled per epoch
    int tri_cap = 4096;
    double tri_penalty = 4.0;
    double stop_tol = 1e-9;         // early stop on objective stalls
    double constraint_tol = 1e-6;   // tau_c for the feasibility report
    int retries = 8;                // rounding retries, best value kept
    double value_floor = 0.7;       // peeling termination
    uint64_t seed = 1;

    int resolved_rank(int labels) const;
    void validate(int labels) const;
};

struct SDPSolution {
    int num_vertices = 0;
    int labels = 0;
    int rank = 0;
    std::vector<double> x;  // row-major [vertex][label][rank]
    double objective = 0.0;
    double max_orth_residual = 0.0;
    double max_norm_residual = 0.0;
    double max_triangle_violation = 0.0;
    long iterations = 0;
    bool converged = true;

    const double* vec(int v, int i) const { return x.data() + ((size_t)v * labels + i) * rank; }
    double* vec(int v, int i) { return x.data() + ((size_t)v * labels + i) * rank; }
    double norm2(int v, int i) const;
};

// The weighted SDP relaxation, solved by low-rank descent with an exact
// orthogonality/normalization retraction and a sampled triangle-inequality
// active set. Deterministic per cfg.seed; on cap the best iterate is returned
// with honest residuals and converged = false.
SDPSolution solve_ug_sdp(const UGInstance& inst, const SolverConfig& cfg);

// u_{a(u)} = 1/sqrt(t), other labels zero
SDPSolution integral_embedding(const UGInstance& inst, const Assignment& a, int rank);

double sdp_objective(const UGInstance& inst, const SDPSolution& sol);

// Norm-equalizing map: <~u_i, ~v_j> =
// <u_i, v_j> / max(||u_i||^2, ||v_j||^2), realized exactly (nonzero vectors
// become unit functions on a common measure space). Queries avoid
// materializing coordinates; materialize() produces them for tests.
class NormalizedVectors {
  public:
    explicit NormalizedVectors(const SDPSolution& sol);
    int num_vertices() const { return sol_->num_vertices; }
    int labels() const { return sol_->labels; }
    double norm2(int v, int i) const { return n2_[(size_t)v * sol_->labels + i]; }
    double inner(int u, int i, int v, int j) const;
    double distance2(int u, int i, int v, int j) const;
    // explicit coordinates: one block of width rank per distinct positive norm
    std::vector<std::vector<double>> materialize() const;

  private:
    const SDPSolution* sol_;
    std::vector<double> n2_;
};

inline NormalizedVectors normalize_vectors(const SDPSolution& sol) { return NormalizedVectors(sol); }

// Makarychev-Makarychev rounding, cfg.retries independent draws, returns the
// best assignment by ug_value. Vertices with |S_v| != 1 get label 0.
Assignment round_sdp(const UGInstance& inst, const SDPSolution& sol, const SolverConfig& cfg, uint64_t seed);

struct ReducedInstance {
    UGInstance inst;                           // labels - 1
    std::vector<std::vector<int>> new_to_old;  // per vertex: new label -> old label
};
ReducedInstance remove_assignment(const UGInstance& inst, const Assignment& a);

struct ListSolveResult {
    std::vector<Assignment> assignments;  // original label space
    std::vector<double> values;           // ug_value on the original instance
    std::vector<double> sdp_objectives;
    int rounds = 0;
    bool stopped_on_floor = false;
};
ListSolveResult list_solve_ug(const UGInstance& inst, const SolverConfig& cfg);

struct BruteForceResult {
    Assignment assignment;
    double value;
};
// exact maximum over labels^|V| assignments (budget-guarded), lexicographic ties
BruteForceResult brute_force_ug(const UGInstance& inst, long long budget = 10000000);

// Pi-weighted agreement measure of two assignments
double agreement_fraction(const Assignment& a, const Assignment& b, const WeightedGraph& graph);

// Greedy label propagation along heavy edges; cheap initializer and baseline.
Assignment greedy_propagation(const UGInstance& inst, uint64_t seed);

}  // namespace dsamp
