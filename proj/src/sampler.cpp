#include "dsamp/sampler.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dsamp/rng.hpp"

namespace dsamp {

double spectral_sampler_bound(double lambda, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    return (lambda * lambda) / (alpha * alpha);
}

FlatnessResult flatness(const std::vector<Rational>& atoms) {
    if (atoms.empty()) throw std::invalid_argument("empty distribution");
    Rational sum(0);
    for (const auto& a : atoms) {
        if (a.num() <= 0) throw std::invalid_argument("atoms must be positive");
        sum += a;
    }
    if (sum != Rational(1)) throw std::invalid_argument("atoms must sum to 1");
    // Any admissible R is a common multiple of the reduced denominators, and
    // D scales linearly in R, so the lcm is optimal.
    long long R = 1;
    for (const auto& a : atoms) {
        long long g = std::gcd(R, a.den());
        long long q = R / g;
        if (__builtin_mul_overflow(q, a.den(), &R)) throw RationalOverflow();
    }
    long long D = 0;
    for (const auto& a : atoms) {
        long long scaled;
        if (__builtin_mul_overflow(a.num(), R / a.den(), &scaled)) throw RationalOverflow();
        D = std::max(D, scaled);
    }
    return {D, R};
}

SamplerReport verify_sampler(const WeightedBipartiteGraph& g, const std::vector<double>& W, SamplerParams params,
                             const std::vector<std::vector<double>>& fns) {
    if (fns.empty()) throw std::invalid_argument("function battery must be nonempty");
    if (params.alpha <= 0 || params.alpha >= 1 || params.delta <= 0 || params.delta >= 1)
        throw std::invalid_argument("sampler parameters must lie in (0,1)");
    const int nl = g.num_left(), nr = g.num_right();
    std::vector<double> w(nl);
    if (W.empty()) {
        for (int u = 0; u < nl; ++u) w[u] = g.left_weight(u) / g.total_weight();
    } else {
        if ((int)W.size() != nl) throw std::invalid_argument("W size mismatch");
        double s = std::accumulate(W.begin(), W.end(), 0.0);
        if (s <= 0) throw std::invalid_argument("W has zero mass");
        for (int u = 0; u < nl; ++u) w[u] = W[u] / s;
    }
    // right marginal under the walk started from w
    std::vector<double> pi(nr, 0.0);
    for (int u = 0; u < nl; ++u) {
        if (w[u] == 0) continue;
        if (g.left_weight(u) == 0) throw std::invalid_argument("isolated left vertex with positive mass");
        auto vs = g.left_neighbors(u);
        auto ws = g.left_neighbor_weights(u);
        for (size_t k = 0; k < vs.size(); ++k) pi[vs[k]] += w[u] * ws[k] / g.left_weight(u);
    }

    SamplerReport rep;
    for (const auto& f : fns) {
        if ((int)f.size() != nr) throw std::invalid_argument("function size mismatch");
        for (double x : f)
            if (x < 0 || x > 1) throw std::invalid_argument("test function must map into [0,1]");
        double global = 0.0;
        for (int v = 0; v < nr; ++v) global += pi[v] * f[v];
        double viol = 0.0, worst = 0.0;
        for (int u = 0; u < nl; ++u) {
            if (w[u] == 0) continue;
            auto vs = g.left_neighbors(u);
            auto ws = g.left_neighbor_weights(u);
            double local = 0.0;
            for (size_t k = 0; k < vs.size(); ++k) local += ws[k] / g.left_weight(u) * f[vs[k]];
            double dev = std::abs(local - global);
            worst = std::max(worst, dev);
            if (dev >= params.alpha) viol += w[u];
        }
        rep.per_function.push_back({viol, worst});
        rep.max_violation = std::max(rep.max_violation, viol);
    }
    rep.pass = rep.max_violation <= params.delta;
    return rep;
}

DoubleSampler::DoubleSampler(int n, int m1, int m2, std::vector<std::vector<int>> v1, std::vector<std::vector<int>> v2,
                             std::vector<Rational> w_exact)
    : n_(n), m1_(m1), m2_(m2), v1_(std::move(v1)), v2_(std::move(v2)), w_exact_(std::move(w_exact)) {
    if (!(1 < m1_ && m1_ < m2_ && m2_ <= n_)) throw std::invalid_argument("need 1 < m1 < m2 <= n");
    if (v1_.empty() || v2_.empty()) throw std::invalid_argument("V1 and V2 must be nonempty");
    std::map<std::vector<int>, std::vector<int>> logical1;
    for (size_t i = 0; i < v1_.size(); ++i) {
        auto& s = v1_[i];
        std::sort(s.begin(), s.end());
        if ((int)s.size() != m1_ || std::adjacent_find(s.begin(), s.end()) != s.end() || s.front() < 0 ||
            s.back() >= n_)
            throw std::invalid_argument("V1 entry is not an m1-subset of the ground set");
        logical1[s].push_back((int)i);
    }
    for (auto& t : v2_) {
        std::sort(t.begin(), t.end());
        if ((int)t.size() != m2_ || std::adjacent_find(t.begin(), t.end()) != t.end() || t.front() < 0 ||
            t.back() >= n_)
            throw std::invalid_argument("V2 entry is not an m2-subset of the ground set");
    }

    if (w_exact_.empty()) {
        w_exact_.assign(v2_.size(), Rational(1, (int64_t)v2_.size()));
    }
    if (w_exact_.size() != v2_.size()) throw std::invalid_argument("W size mismatch");
    Rational sum(0);
    for (const auto& r : w_exact_) {
        if (r.num() < 0) throw std::invalid_argument("W has a negative atom");
        sum += r;
    }
    if (sum != Rational(1)) throw std::invalid_argument("W must sum to 1");
    w_.resize(w_exact_.size());
    for (size_t i = 0; i < w_exact_.size(); ++i) w_[i] = w_exact_[i].to_double();

    // containment structure: enumerate m1-subsets of every T copy
    down_.resize(v2_.size());
    up_.resize(v1_.size());
    std::vector<int> idx(m1_);
    for (size_t t = 0; t < v2_.size(); ++t) {
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<int> s(m1_);
            for (int k = 0; k < m1_; ++k) s[k] = v2_[t][idx[k]];
            auto it = logical1.find(s);
            if (it != logical1.end())
                for (int copy : it->second) {
                    down_[t].push_back(copy);
                    up_[copy].push_back((int)t);
                }
            int k = m1_ - 1;
            while (k >= 0 && idx[k] == m2_ - m1_ + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < m1_; ++j) idx[j] = idx[j - 1] + 1;
        }
        std::sort(down_[t].begin(), down_[t].end());
        if (down_[t].empty() && w_[t] > 0)
            throw std::invalid_argument("a V2 set with positive weight contains no V1 set");
    }
    for (size_t s = 0; s < v1_.size(); ++s)
        if (up_[s].empty()) throw std::invalid_argument("a V1 set is contained in no V2 set");

    // path marginals, exact where int64 rationals suffice
    pi1_.assign(v1_.size(), 0.0);
    pi0_.assign(n_, 0.0);
    for (size_t t = 0; t < v2_.size(); ++t)
        for (int s : down_[t]) pi1_[s] += w_[t] / (double)down_[t].size();
    for (size_t s = 0; s < v1_.size(); ++s)
        for (int x : v1_[s]) pi0_[x] += pi1_[s] / (double)m1_;
    try {
        pi1_exact_.assign(v1_.size(), Rational(0));
        for (size_t t = 0; t < v2_.size(); ++t)
            for (int s : down_[t]) pi1_exact_[s] += w_exact_[t] / Rational((int64_t)down_[t].size());
        pi0_exact_.assign(n_, Rational(0));
        for (size_t s = 0; s < v1_.size(); ++s)
            for (int x : v1_[s]) pi0_exact_[x] += pi1_exact_[s] / Rational(m1_);
    } catch (const RationalOverflow&) {
        exact_ = false;
        pi1_exact_.clear();
        pi0_exact_.clear();
    }
}

std::vector<int> DoubleSampler::copies_of_v1(const std::vector<int>& s) const {
    std::vector<int> key = s;
    std::sort(key.begin(), key.end());
    std::vector<int> out;
    for (size_t i = 0; i < v1_.size(); ++i)
        if (v1_[i] == key) out.push_back((int)i);
    return out;
}

WeightedBipartiteGraph DoubleSampler::inclusion_21() const {
    WeightedBipartiteGraph g((int)v2_.size(), (int)v1_.size());
    for (size_t t = 0; t < v2_.size(); ++t) {
        if (w_[t] <= 0) continue;
        for (int s : down_[t]) g.add_edge((int)t, s, w_[t] / (double)down_[t].size());
    }
    g.finalize();
    return g;
}

WeightedBipartiteGraph DoubleSampler::inclusion_10() const {
    WeightedBipartiteGraph g((int)v1_.size(), n_);
    for (size_t s = 0; s < v1_.size(); ++s) {
        if (pi1_[s] <= 0) continue;
        for (int x : v1_[s]) g.add_edge((int)s, x, pi1_[s] / (double)m1_);
    }
    g.finalize();
    return g;
}

WeightedGraph DoubleSampler::two_step_v2() const {
    return two_step_walk(inclusion_21(), w_);
}

DoubleSampler complete_complex(int n, int m1, int m2, long long budget) {
    if (!(1 < m1 && m1 < m2 && m2 <= n)) throw std::invalid_argument("need 1 < m1 < m2 <= n");
    auto binom = [](int nn, int kk) -> long long {
        long long r = 1;
        for (int i = 1; i <= kk; ++i) {
            r = r * (nn - kk + i) / i;
            if (r < 0 || r > (1ll << 40)) return -1;
        }
        return r;
    };
    long long c1 = binom(n, m1), c2 = binom(n, m2);
    if (c1 < 0 || c2 < 0 || c1 > budget || c2 > budget)
        throw std::length_error("complete complex exceeds the configured size budget");

    auto all_subsets = [](int nn, int kk) {
        std::vector<std::vector<int>> out;
        std::vector<int> idx(kk);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            out.push_back(idx);
            int t = kk - 1;
            while (t >= 0 && idx[t] == nn - kk + t) --t;
            if (t < 0) break;
            ++idx[t];
            for (int j = t + 1; j < kk; ++j) idx[j] = idx[j - 1] + 1;
        }
        return out;
    };
    return DoubleSampler(n, m1, m2, all_subsets(n, m1), all_subsets(n, m2),
                         std::vector<Rational>(c2, Rational(1, c2)));
}

WeightedBipartiteGraph local_graph(const DoubleSampler& ds, int tcopy) {
    if (tcopy < 0 || tcopy >= ds.num_v2()) throw std::out_of_range("T is not a V2 copy");
    const auto& inside = ds.contained_in(tcopy);
    const auto& T = ds.set_v2(tcopy);
    WeightedBipartiteGraph g((int)inside.size(), (int)T.size());
    for (size_t i = 0; i < inside.size(); ++i) {
        const auto& S = ds.set_v1(inside[i]);
        for (int x : S) {
            int pos = (int)(std::lower_bound(T.begin(), T.end(), x) - T.begin());
            g.add_edge((int)i, pos, 1.0 / ((double)inside.size() * ds.m1()));
        }
    }
    g.finalize();
    return g;
}

PathSample sample_path(const DoubleSampler& ds, uint64_t seed) {
    Rng rng(seed);
    const auto& w = ds.top_weights();
    double r = rng.next_real();
    int tcopy = 0;
    double acc = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        if (r < acc) {
            tcopy = (int)i;
            break;
        }
        if (i + 1 == w.size()) tcopy = (int)i;
    }
    const auto& inside = ds.contained_in(tcopy);
    int scopy = inside[(size_t)rng.next_below(inside.size())];
    const auto& S = ds.set_v1(scopy);
    int x = S[(size_t)rng.next_below(S.size())];
    return {tcopy, scopy, x};
}

}  // namespace dsamp
