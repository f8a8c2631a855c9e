#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsamp/graph.hpp"
#include "dsamp/rational.hpp"

namespace dsamp {

struct SamplerParams {
    double alpha;
    double delta;
};

// delta of the spectral-to-sampler conversion: a bipartite graph with second
// eigenvalue lambda is an (alpha, lambda^2/alpha^2) sampler.
double spectral_sampler_bound(double lambda, double alpha);

// Minimal D (and its witness R) such that every atom lies in {1/R,...,D/R}.
struct FlatnessResult {
    long long D;
    long long R;
};
FlatnessResult flatness(const std::vector<Rational>& atoms);

// A distribution together with its flatness certificate.
struct FlatDistribution {
    std::vector<Rational> atoms;
    long long D = 1;
    long long R = 1;

    static FlatDistribution certify(std::vector<Rational> atoms) {
        FlatDistribution d;
        auto f = flatness(atoms);
        d.atoms = std::move(atoms);
        d.D = f.D;
        d.R = f.R;
        return d;
    }
};

struct SamplerReport {
    struct PerFunction {
        double violation;  // Pr_{u ~ W}[ |local mean - global mean| >= alpha ]
        double worst_dev;
    };
    std::vector<PerFunction> per_function;
    double max_violation = 0.0;
    bool pass = true;
};

// Exact verification of the sampler definition for a battery of functions on
// the right side. W is a distribution on the left (sampled) side; empty W
// means the graph's own left marginal.
SamplerReport verify_sampler(const WeightedBipartiteGraph& g, const std::vector<double>& W, SamplerParams params,
                             const std::vector<std::vector<double>>& fns);

// Inclusion structure (V2, V1, V0) with a flat top distribution W. V1 and V2
// are multisets: each list entry is one copy; copies of the same logical set
// share containment structure.
class DoubleSampler {
  public:
    DoubleSampler(int n, int m1, int m2, std::vector<std::vector<int>> v1, std::vector<std::vector<int>> v2,
                  std::vector<Rational> w_exact);

    int ground_size() const { return n_; }
    int m1() const { return m1_; }
    int m2() const { return m2_; }
    int num_v1() const { return (int)v1_.size(); }
    int num_v2() const { return (int)v2_.size(); }
    const std::vector<int>& set_v1(int scopy) const { return v1_[scopy]; }
    const std::vector<int>& set_v2(int tcopy) const { return v2_[tcopy]; }

    const std::vector<double>& top_weights() const { return w_; }  // Pi_2 over V2 copies
    const std::vector<double>& pi1() const { return pi1_; }        // over V1 copies
    const std::vector<double>& pi0() const { return pi0_; }        // over V0

    bool exact() const { return exact_; }
    const std::vector<Rational>& top_weights_exact() const { return w_exact_; }
    const std::vector<Rational>& pi1_exact() const { return pi1_exact_; }
    const std::vector<Rational>& pi0_exact() const { return pi0_exact_; }

    const std::vector<int>& contained_in(int tcopy) const { return down_[tcopy]; }
    const std::vector<int>& containers_of(int scopy) const { return up_[scopy]; }
    // copies of the logical m1-set `s`, empty if absent
    std::vector<int> copies_of_v1(const std::vector<int>& s) const;

    // inclusion graphs with joint walk weights
    WeightedBipartiteGraph inclusion_21() const;  // left = V2 copies, right = V1 copies
    WeightedBipartiteGraph inclusion_10() const;  // left = V1 copies, right = V0

    // the constraint graph container: two-step walk of (X(V2,V1), Pi_2)
    WeightedGraph two_step_v2() const;

  private:
    int n_, m1_, m2_;
    std::vector<std::vector<int>> v1_, v2_;
    std::vector<double> w_;
    std::vector<Rational> w_exact_;
    bool exact_ = true;
    std::vector<double> pi1_, pi0_;
    std::vector<Rational> pi1_exact_, pi0_exact_;
    std::vector<std::vector<int>> down_, up_;
};

// All m1-subsets / m2-subsets of [n] in lexicographic order, uniform W.
// Throws if the binomials exceed `budget` entries.
DoubleSampler complete_complex(int n, int m1, int m2, long long budget = 2000000);

// The local bipartite graph (X_|T, W_T): left = copies of S contained in T
// (in contained_in(tcopy) order), right = elements of T in sorted order.
WeightedBipartiteGraph local_graph(const DoubleSampler& ds, int tcopy);

struct PathSample {
    int tcopy;
    int scopy;
    int x;
};
// T ~ W, S uniform among copies inside T, x uniform in S; deterministic per seed.
PathSample sample_path(const DoubleSampler& ds, uint64_t seed);

}  // namespace dsamp
