#include "dsamp/ug_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "dsamp/rng.hpp"

namespace dsamp {

int SolverConfig::resolved_rank(int labels) const {
    if (rank == 0) return labels;
    if (rank < labels) throw std::invalid_argument("rank must be at least the label count");
    return rank;
}

void SolverConfig::validate(int labels) const {
    if (!(R > 0 && R < 1)) throw std::invalid_argument("R must lie in (0,1)");
    if (labels < 1) throw std::invalid_argument("label count must be positive");
    (void)resolved_rank(labels);
}

double SDPSolution::norm2(int v, int i) const {
    const double* p = vec(v, i);
    double s = 0.0;
    for (int k = 0; k < rank; ++k) s += p[k] * p[k];
    return s;
}

SDPSolution integral_embedding(const UGInstance& inst, const Assignment& a, int rank) {
    const int n = inst.graph.num_vertices();
    if ((int)a.size() != n) throw std::invalid_argument("assignment is not total");
    SDPSolution sol;
    sol.num_vertices = n;
    sol.labels = inst.labels;
    sol.rank = rank;
    sol.x.assign((size_t)n * inst.labels * rank, 0.0);
    const double val = 1.0 / std::sqrt((double)rank);
    for (int v = 0; v < n; ++v) {
        double* p = sol.vec(v, a[v]);
        for (int k = 0; k < rank; ++k) p[k] = val;
    }
    sol.objective = sdp_objective(inst, sol);
    return sol;
}

double sdp_objective(const UGInstance& inst, const SDPSolution& sol) {
    const auto& edges = inst.graph.edges();
    const int L = sol.labels, T = sol.rank;
    const double inv_omega = 1.0 / inst.graph.total_weight();
    double acc = 0.0;
    for (size_t k = 0; k < edges.size(); ++k) {
        const double* pu = sol.vec(edges[k].u, 0);
        const double* pv = sol.vec(edges[k].v, 0);
        const auto& perm = inst.perms[k];
        double s = 0.0;
        for (int i = 0; i < L; ++i) {
            const double* a = pu + (size_t)i * T;
            const double* b = pv + (size_t)perm[i] * T;
            for (int t = 0; t < T; ++t) {
                double d = a[t] - b[t];
                s += d * d;
            }
        }
        acc += edges[k].w * s;
    }
    return acc * inv_omega;
}

namespace {

struct TriTerm {
    uint8_t type;  // 1: <a-b, b-c> <= 0; 2: <a,b> >= 0; 3: <a,b> <= ||b||^2
    int va, ia, vb, ib, vc, ic;
};

class Descent {
  public:
    Descent(const UGInstance& inst, const SolverConfig& cfg, int rank)
        : inst_(inst), cfg_(cfg), L_(inst.labels), T_(rank), n_(inst.graph.num_vertices()) {
        dim_ = (size_t)n_ * L_ * T_;
        inv_omega_ = 1.0 / inst_.graph.total_weight();
        tri_penalty_ = cfg.tri_penalty;
    }

    size_t dim() const { return dim_; }

    double* vec(std::vector<double>& x, int v, int i) const { return x.data() + ((size_t)v * L_ + i) * T_; }
    const double* vec(const std::vector<double>& x, int v, int i) const {
        return x.data() + ((size_t)v * L_ + i) * T_;
    }

    double edge_objective(const std::vector<double>& x) const {
        const auto& edges = inst_.graph.edges();
        double acc = 0.0;
        for (size_t k = 0; k < edges.size(); ++k) {
            const double* pu = vec(x, edges[k].u, 0);
            const double* pv = vec(x, edges[k].v, 0);
            const auto& perm = inst_.perms[k];
            double s = 0.0;
            for (int i = 0; i < L_; ++i) {
                const double* a = pu + (size_t)i * T_;
                const double* b = pv + (size_t)perm[i] * T_;
                for (int t = 0; t < T_; ++t) {
                    double d = a[t] - b[t];
                    s += d * d;
                }
            }
            acc += edges[k].w * s;
        }
        return acc * inv_omega_;
    }

    double tri_violation(const std::vector<double>& x, const TriTerm& tt) const {
        const double* a = vec(x, tt.va, tt.ia);
        const double* b = vec(x, tt.vb, tt.ib);
        if (tt.type == 1) {
            const double* c = vec(x, tt.vc, tt.ic);
            double s = 0.0;
            for (int t = 0; t < T_; ++t) s += (a[t] - b[t]) * (b[t] - c[t]);
            return std::max(0.0, s);
        }
        double ip = 0.0, nb = 0.0;
        for (int t = 0; t < T_; ++t) {
            ip += a[t] * b[t];
            nb += b[t] * b[t];
        }
        if (tt.type == 2) return std::max(0.0, -ip);
        return std::max(0.0, ip - nb);
    }

    double penalty(const std::vector<double>& x) const {
        double acc = 0.0;
        for (const auto& tt : active_) {
            double v = tri_violation(x, tt);
            acc += v * v;
        }
        return acc * tri_penalty_;
    }

    double total(const std::vector<double>& x) const { return edge_objective(x) + penalty(x); }

    void gradient(const std::vector<double>& x, std::vector<double>& g) const {
        std::fill(g.begin(), g.end(), 0.0);
        const auto& edges = inst_.graph.edges();
        for (size_t k = 0; k < edges.size(); ++k) {
            const double scale = 2.0 * edges[k].w * inv_omega_;
            const auto& perm = inst_.perms[k];
            for (int i = 0; i < L_; ++i) {
                const double* a = vec(x, edges[k].u, i);
                const double* b = vec(x, edges[k].v, perm[i]);
                double* ga = g.data() + (((size_t)edges[k].u * L_ + i) * T_);
                double* gb = g.data() + (((size_t)edges[k].v * L_ + perm[i]) * T_);
                for (int t = 0; t < T_; ++t) {
                    double d = scale * (a[t] - b[t]);
                    ga[t] += d;
                    gb[t] -= d;
                }
            }
        }
        for (const auto& tt : active_) {
            double v = tri_violation(x, tt);
            if (v <= 0) continue;
            const double s = 2.0 * tri_penalty_ * v;
            const double* a = vec(x, tt.va, tt.ia);
            const double* b = vec(x, tt.vb, tt.ib);
            double* ga = g.data() + (((size_t)tt.va * L_ + tt.ia) * T_);
            double* gb = g.data() + (((size_t)tt.vb * L_ + tt.ib) * T_);
            if (tt.type == 1) {
                const double* c = vec(x, tt.vc, tt.ic);
                double* gc = g.data() + (((size_t)tt.vc * L_ + tt.ic) * T_);
                for (int t = 0; t < T_; ++t) {
                    ga[t] += s * (b[t] - c[t]);
                    gb[t] += s * (a[t] - 2.0 * b[t] + c[t]);
                    gc[t] -= s * (a[t] - b[t]);
                }
            } else if (tt.type == 2) {
                for (int t = 0; t < T_; ++t) {
                    ga[t] -= s * b[t];
                    gb[t] -= s * a[t];
                }
            } else {
                for (int t = 0; t < T_; ++t) {
                    ga[t] += s * b[t];
                    gb[t] += s * (a[t] - 2.0 * b[t]);
                }
            }
        }
    }

    // exact feasibility: per-vertex orthogonal rows, norms summing to one
    void retract(std::vector<double>& x, Rng& rng) const {
        std::vector<int> order(L_);
        std::vector<double> basis((size_t)L_ * T_);
        for (int v = 0; v < n_; ++v) {
            double* base = vec(x, v, 0);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                double na = 0, nb = 0;
                for (int t = 0; t < T_; ++t) {
                    na += base[(size_t)a * T_ + t] * base[(size_t)a * T_ + t];
                    nb += base[(size_t)b * T_ + t] * base[(size_t)b * T_ + t];
                }
                if (na != nb) return na > nb;
                return a < b;
            });
            int nb = 0;
            for (int oi = 0; oi < L_; ++oi) {
                double* r = base + (size_t)order[oi] * T_;
                for (int q = 0; q < nb; ++q) {
                    const double* bq = basis.data() + (size_t)q * T_;
                    double d = 0.0;
                    for (int t = 0; t < T_; ++t) d += r[t] * bq[t];
                    for (int t = 0; t < T_; ++t) r[t] -= d * bq[t];
                }
                double nr = 0.0;
                for (int t = 0; t < T_; ++t) nr += r[t] * r[t];
                if (nr < 1e-24) {
                    std::fill(r, r + T_, 0.0);
                } else {
                    double inv = 1.0 / std::sqrt(nr);
                    double* bq = basis.data() + (size_t)nb * T_;
                    for (int t = 0; t < T_; ++t) bq[t] = r[t] * inv;
                    ++nb;
                }
            }
            double total = 0.0;
            for (int i = 0; i < L_; ++i) {
                const double* r = base + (size_t)i * T_;
                for (int t = 0; t < T_; ++t) total += r[t] * r[t];
            }
            if (total < 1e-18) {
                // degenerate vertex; reseed with a random unit label vector
                std::fill(base, base + (size_t)L_ * T_, 0.0);
                int lab = (int)rng.next_below(L_);
                double* r = base + (size_t)lab * T_;
                double nr = 0.0;
                for (int t = 0; t < T_; ++t) {
                    r[t] = rng.next_gaussian();
                    nr += r[t] * r[t];
                }
                double inv = 1.0 / std::sqrt(nr);
                for (int t = 0; t < T_; ++t) r[t] *= inv;
            } else {
                double inv = 1.0 / std::sqrt(total);
                for (int i = 0; i < (int)((size_t)L_ * T_); ++i) base[i] *= inv;
            }
        }
    }

    void sample_triangles(const std::vector<double>& x, Rng& rng) {
        auto rand_vec = [&](int& v, int& i) {
            v = (int)rng.next_below(n_);
            i = (int)rng.next_below(L_);
        };
        for (int s = 0; s < cfg_.tri_sample && (int)active_.size() < cfg_.tri_cap; ++s) {
            TriTerm tt;
            tt.type = (uint8_t)(1 + rng.next_below(3));
            rand_vec(tt.va, tt.ia);
            rand_vec(tt.vb, tt.ib);
            rand_vec(tt.vc, tt.ic);
            if (tri_violation(x, tt) > 1e-9) active_.push_back(tt);
        }
    }

    double max_sampled_violation(const std::vector<double>& x, uint64_t seed, int samples) const {
        Rng rng(seed);
        double worst = 0.0;
        for (const auto& tt : active_) worst = std::max(worst, tri_violation(x, tt));
        for (int s = 0; s < samples; ++s) {
            TriTerm tt;
            tt.type = (uint8_t)(1 + rng.next_below(3));
            tt.va = (int)rng.next_below(n_);
            tt.ia = (int)rng.next_below(L_);
            tt.vb = (int)rng.next_below(n_);
            tt.ib = (int)rng.next_below(L_);
            tt.vc = (int)rng.next_below(n_);
            tt.ic = (int)rng.next_below(L_);
            worst = std::max(worst, tri_violation(x, tt));
        }
        return worst;
    }

    void escalate_penalty() { tri_penalty_ = std::min(tri_penalty_ * 1.5, 1e4); }

    // returns final total objective; x updated in place
    double run(std::vector<double>& x, int epochs, Rng& rng, long& iters) {
        std::vector<double> grad(dim_), mom(dim_, 0.0), prev;
        retract(x, rng);
        double lr = cfg_.lr;
        double fprev = total(x);
        int stall = 0;
        for (int epoch = 0; epoch < epochs; ++epoch) {
            ++iters;
            if (epoch % 8 == 0) {
                size_t before = active_.size();
                sample_triangles(x, rng);
                if (epoch > 0 && epoch % 64 == 0 &&
                    max_sampled_violation(x, rng.next_u64(), 64) > cfg_.constraint_tol)
                    escalate_penalty();
                // keep the backtracking reference in sync with the penalty set
                if (active_.size() != before) fprev = total(x);
            }
            gradient(x, grad);
            for (size_t i = 0; i < dim_; ++i) mom[i] = 0.8 * mom[i] + grad[i];
            prev = x;
            for (size_t i = 0; i < dim_; ++i) x[i] -= lr * mom[i];
            retract(x, rng);
            double f = total(x);
            if (f > fprev + 1e-13) {
                x = prev;
                std::fill(mom.begin(), mom.end(), 0.0);
                lr *= 0.5;
                if (lr < 1e-7) break;
                ++stall;
            } else {
                if (fprev - f < cfg_.stop_tol * std::max(1.0, fprev))
                    ++stall;
                else
                    stall = 0;
                fprev = f;
                lr = std::min(lr * 1.02, cfg_.lr * 2.0);
            }
            if (stall > 40) break;
        }
        return fprev;
    }

    const std::vector<TriTerm>& active() const { return active_; }

  private:
    const UGInstance& inst_;
    const SolverConfig& cfg_;
    int L_, T_, n_;
    size_t dim_;
    double inv_omega_;
    double tri_penalty_;
    std::vector<TriTerm> active_;
};

}  // namespace

Assignment greedy_propagation(const UGInstance& inst, uint64_t seed) {
    const int n = inst.graph.num_vertices();
    const int L = inst.labels;
    Rng seed_rng(seed);
    // incident (neighbor, edge index) lists
    std::vector<std::vector<std::pair<int, int>>> inc(n);
    const auto& edges = inst.graph.edges();
    for (size_t k = 0; k < edges.size(); ++k) {
        inc[edges[k].u].push_back({edges[k].v, (int)k});
        if (edges[k].u != edges[k].v) inc[edges[k].v].push_back({edges[k].u, (int)k});
    }
    std::vector<std::vector<uint8_t>> inv(edges.size());
    auto inverse = [&](int k) -> const std::vector<uint8_t>& {
        if (inv[k].empty()) {
            inv[k].assign(L, 0);
            for (int i = 0; i < L; ++i) inv[k][inst.perms[k][i]] = (uint8_t)i;
        }
        return inv[k];
    };

    const int start = (int)seed_rng.next_below(n);
    const uint64_t tieseed = seed_rng.next_u64();
    Assignment best;
    double best_value = -1.0;
    // the right gauge at the start vertex is unknown; try every label
    for (int start_label = 0; start_label < L; ++start_label) {
        Rng rng(derive_seed(tieseed, {(uint64_t)start_label}));
        Assignment a(n, -1);
        std::vector<double> conn(n, 0.0);
        std::vector<std::vector<double>> votes(n, std::vector<double>(L, 0.0));
        a[start] = start_label;
        auto relax = [&](int u) {
            for (const auto& [v, k] : inc[u]) {
                if (a[v] >= 0) continue;
                conn[v] += edges[k].w;
                int wanted = (edges[k].u == u) ? inst.perms[k][a[u]] : inverse(k)[a[u]];
                votes[v][wanted] += edges[k].w;
            }
        };
        relax(start);
        for (int step = 1; step < n; ++step) {
            int pick = -1;
            for (int v = 0; v < n; ++v) {
                if (a[v] >= 0) continue;
                if (pick < 0 || conn[v] > conn[pick]) pick = v;
            }
            int lab = 0;
            if (conn[pick] > 0) {
                for (int l = 1; l < L; ++l)
                    if (votes[pick][l] > votes[pick][lab]) lab = l;
            } else {
                lab = (int)rng.next_below(L);
            }
            a[pick] = lab;
            relax(pick);
        }
        double v = ug_value(inst, a);
        if (v > best_value) {
            best_value = v;
            best = std::move(a);
        }
    }
    return best;
}

SDPSolution solve_ug_sdp(const UGInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    cfg.validate(inst.labels);
    const int n = inst.graph.num_vertices();
    const int L = inst.labels;
    const int T = cfg.resolved_rank(L);
    if (inst.graph.total_weight() <= 0) throw std::invalid_argument("instance graph has zero weight");

    SDPSolution sol;
    sol.num_vertices = n;
    sol.labels = L;
    sol.rank = T;
    if (L == 1) {
        sol.x.assign((size_t)n * T, 0.0);
        for (int v = 0; v < n; ++v) sol.vec(v, 0)[0] = 1.0;
        sol.objective = sdp_objective(inst, sol);
        return sol;
    }

    Descent D(inst, cfg, T);
    long iters = 0;

    struct Candidate {
        std::vector<double> x;
        double f;
    };
    std::vector<Candidate> cands;
    for (int p = 0; p < cfg.propagation_restarts; ++p) {
        Assignment a = greedy_propagation(inst, derive_seed(cfg.seed, {0x9709u, (uint64_t)p}));
        cands.push_back({integral_embedding(inst, a, T).x, 0.0});
    }
    for (int r = 0; r < cfg.random_restarts; ++r) {
        Rng rng(derive_seed(cfg.seed, {0x9a4du, (uint64_t)r}));
        std::vector<double> x(D.dim());
        for (auto& v : x) v = rng.next_gaussian();
        cands.push_back({std::move(x), 0.0});
    }
    if (cands.empty()) cands.push_back({integral_embedding(inst, Assignment(n, 0), T).x, 0.0});

    for (size_t c = 0; c < cands.size(); ++c) {
        Rng rng(derive_seed(cfg.seed, {0x9170u, (uint64_t)c}));
        cands[c].f = D.run(cands[c].x, cfg.pilot_epochs, rng, iters);
    }
    size_t best = 0;
    for (size_t c = 1; c < cands.size(); ++c)
        if (cands[c].f < cands[best].f) best = c;

    Rng rng(derive_seed(cfg.seed, {0xf19a1u}));
    std::vector<double> x = std::move(cands[best].x);
    D.run(x, cfg.epochs, rng, iters);

    sol.x = std::move(x);
    sol.iterations = iters;
    sol.objective = sdp_objective(inst, sol);
    // feasibility report: orthogonality/normalization are exact by retraction,
    // triangle violations from the active set plus a fresh deterministic sample
    double worst_orth = 0.0, worst_norm = 0.0;
    for (int v = 0; v < n; ++v) {
        double total = 0.0;
        for (int i = 0; i < L; ++i) {
            total += sol.norm2(v, i);
            for (int j = i + 1; j < L; ++j) {
                double ip = 0.0;
                const double* a = sol.vec(v, i);
                const double* b = sol.vec(v, j);
                for (int t = 0; t < T; ++t) ip += a[t] * b[t];
                worst_orth = std::max(worst_orth, std::abs(ip));
            }
        }
        worst_norm = std::max(worst_norm, std::abs(total - 1.0));
    }
    sol.max_orth_residual = worst_orth;
    sol.max_norm_residual = worst_norm;
    Descent checker(inst, cfg, T);
    sol.max_triangle_violation = checker.max_sampled_violation(sol.x, derive_seed(cfg.seed, {0x731u}), 8192);
    sol.converged = worst_orth <= cfg.constraint_tol && worst_norm <= cfg.constraint_tol &&
                    sol.max_triangle_violation <= cfg.constraint_tol;
    return sol;
}

NormalizedVectors::NormalizedVectors(const SDPSolution& sol) : sol_(&sol) {
    n2_.resize((size_t)sol.num_vertices * sol.labels);
    for (int v = 0; v < sol.num_vertices; ++v)
        for (int i = 0; i < sol.labels; ++i) n2_[(size_t)v * sol.labels + i] = sol.norm2(v, i);
}

double NormalizedVectors::inner(int u, int i, int v, int j) const {
    double su = norm2(u, i), sv = norm2(v, j);
    if (su <= 0 || sv <= 0) return 0.0;
    const double* a = sol_->vec(u, i);
    const double* b = sol_->vec(v, j);
    double ip = 0.0;
    for (int t = 0; t < sol_->rank; ++t) ip += a[t] * b[t];
    return ip / std::max(su, sv);
}

double NormalizedVectors::distance2(int u, int i, int v, int j) const {
    double nu = norm2(u, i) > 0 ? 1.0 : 0.0;
    double nv = norm2(v, j) > 0 ? 1.0 : 0.0;
    return nu + nv - 2.0 * inner(u, i, v, j);
}

std::vector<std::vector<double>> NormalizedVectors::materialize() const {
    // one block per distinct positive squared norm: the unit-function picture
    // f_u(tau) = u/||u||^2 on tau <= ||u||^2, discretized on norm breakpoints
    std::vector<double> levels;
    for (double s : n2_)
        if (s > 0) levels.push_back(s);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    const int T = sol_->rank;
    const int blocks = (int)levels.size();
    std::vector<std::vector<double>> out((size_t)sol_->num_vertices * sol_->labels,
                                         std::vector<double>((size_t)blocks * T, 0.0));
    for (int v = 0; v < sol_->num_vertices; ++v)
        for (int i = 0; i < sol_->labels; ++i) {
            double s = norm2(v, i);
            if (s <= 0) continue;
            auto& row = out[(size_t)v * sol_->labels + i];
            const double* p = sol_->vec(v, i);
            double lo = 0.0;
            for (int b = 0; b < blocks && levels[b] <= s + 1e-15; ++b) {
                double width = levels[b] - lo;
                lo = levels[b];
                double scale = std::sqrt(width) / s;
                for (int t = 0; t < T; ++t) row[(size_t)b * T + t] = scale * p[t];
            }
        }
    return out;
}

Assignment round_sdp(const UGInstance& inst, const SDPSolution& sol, const SolverConfig& cfg, uint64_t seed) {
    inst.validate();
    if (sol.num_vertices != inst.graph.num_vertices() || sol.labels != inst.labels)
        throw std::invalid_argument("solution does not match the instance");
    const int n = sol.num_vertices, L = sol.labels;
    NormalizedVectors norm(sol);

    const double omega = inst.graph.total_weight();
    Assignment best(n, 0);
    double best_value = -1.0;
    for (int retry = 0; retry < std::max(1, cfg.retries); ++retry) {
        Rng rng(derive_seed(seed, {0x2077du, (uint64_t)retry}));
        // initial vertex by vertex weight
        double rr = rng.next_real() * omega;
        int u0 = n - 1;
        double acc = 0.0;
        for (int v = 0; v < n; ++v) {
            acc += inst.graph.vertex_weight(v);
            if (rr < acc) {
                u0 = v;
                break;
            }
        }
        // initial label by squared norms
        double total = 0.0;
        for (int i = 0; i < L; ++i) total += norm.norm2(u0, i);
        int i0 = 0;
        if (total > 0) {
            double rl = rng.next_real() * total;
            double a2 = 0.0;
            for (int i = 0; i < L; ++i) {
                a2 += norm.norm2(u0, i);
                if (rl < a2) {
                    i0 = i;
                    break;
                }
                if (i + 1 == L) i0 = i;
            }
        }
        const double t = std::max(norm.norm2(u0, i0) * (1.0 - rng.next_real()), 1e-300);
        const double r = rng.next_real(cfg.R, 2.0 * cfg.R);

        Assignment a(n, 0);
        for (int v = 0; v < n; ++v) {
            int found = -1;
            int count = 0;
            for (int p = 0; p < L; ++p) {
                if (norm.norm2(v, p) < t) continue;
                if (norm.distance2(u0, i0, v, p) > r) continue;
                ++count;
                found = p;
                if (count > 1) break;
            }
            a[v] = (count == 1) ? found : 0;
        }
        double val = ug_value(inst, a);
        if (val > best_value) {
            best_value = val;
            best = std::move(a);
        }
    }
    return best;
}

ReducedInstance remove_assignment(const UGInstance& inst, const Assignment& a) {
    if (inst.labels < 2) throw std::invalid_argument("need at least two labels to remove one");
    if ((int)a.size() != inst.graph.num_vertices()) throw std::invalid_argument("assignment is not total");
    const int L = inst.labels;
    const int last = L - 1;
    auto phi = [&](int v, int x) {  // swap a[v] <-> last
        if (x == a[v]) return last;
        if (x == last) return a[v];
        return x;
    };
    ReducedInstance out;
    out.inst.labels = L - 1;
    out.inst.graph = inst.graph;
    const auto& edges = inst.graph.edges();
    out.inst.perms.reserve(edges.size());
    for (size_t k = 0; k < edges.size(); ++k) {
        const int u = edges[k].u, v = edges[k].v;
        std::vector<uint8_t> hat(L);
        for (int x = 0; x < L; ++x) hat[phi(u, x)] = (uint8_t)phi(v, inst.perms[k][x]);
        std::vector<uint8_t> reduced(hat.begin(), hat.begin() + last);
        if (hat[last] != last) {
            // splice: pi(l) = last, pi(last) = i  =>  pi'(l) = i
            int l = -1;
            for (int x = 0; x < last; ++x)
                if (hat[x] == last) {
                    l = x;
                    break;
                }
            reduced[l] = hat[last];
        }
        out.inst.perms.push_back(std::move(reduced));
    }
    out.inst.validate();
    out.new_to_old.resize(a.size());
    for (size_t v = 0; v < a.size(); ++v) {
        out.new_to_old[v].resize(last);
        for (int y = 0; y < last; ++y) out.new_to_old[v][y] = phi((int)v, y);
    }
    return out;
}

ListSolveResult list_solve_ug(const UGInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    ListSolveResult res;
    UGInstance cur = inst;
    cur.lists.clear();
    cur.radius_index.clear();
    const int n = inst.graph.num_vertices();
    std::vector<std::vector<int>> to_orig(n);
    for (int v = 0; v < n; ++v) {
        to_orig[v].resize(inst.labels);
        std::iota(to_orig[v].begin(), to_orig[v].end(), 0);
    }
    for (int round = 0; round < inst.labels; ++round) {
        ++res.rounds;
        Assignment a;
        double obj = 0.0;
        if (cur.labels == 1) {
            a.assign(n, 0);
        } else {
            SolverConfig rcfg = cfg;
            rcfg.seed = derive_seed(cfg.seed, {0x501eu, (uint64_t)round});
            SDPSolution sol = solve_ug_sdp(cur, rcfg);
            obj = sol.objective;
            a = round_sdp(cur, sol, cfg, derive_seed(cfg.seed, {0x2010du, (uint64_t)round}));
        }
        double val = ug_value(cur, a);
        if (val < cfg.value_floor) {
            res.stopped_on_floor = true;
            break;
        }
        Assignment orig(n);
        for (int v = 0; v < n; ++v) orig[v] = to_orig[v][a[v]];
        res.values.push_back(ug_value(inst, orig));
        res.sdp_objectives.push_back(obj);
        res.assignments.push_back(std::move(orig));
        if (cur.labels == 1) break;
        ReducedInstance red = remove_assignment(cur, a);
        for (int v = 0; v < n; ++v) {
            std::vector<int> composed(red.inst.labels);
            for (int y = 0; y < red.inst.labels; ++y) composed[y] = to_orig[v][red.new_to_old[v][y]];
            to_orig[v] = std::move(composed);
        }
        cur = std::move(red.inst);
    }
    return res;
}

BruteForceResult brute_force_ug(const UGInstance& inst, long long budget) {
    inst.validate();
    const int n = inst.graph.num_vertices();
    const int L = inst.labels;
    double count = std::pow((double)L, (double)n);
    if (count > (double)budget) throw std::length_error("brute force budget exceeded");
    Assignment a(n, 0);
    BruteForceResult best{a, ug_value(inst, a)};
    while (true) {
        // lexicographic odometer, rightmost digit fastest
        int pos = n - 1;
        while (pos >= 0 && a[pos] == L - 1) {
            a[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++a[pos];
        double v = ug_value(inst, a);
        if (v > best.value + 1e-15) best = {a, v};
    }
    return best;
}

double agreement_fraction(const Assignment& a, const Assignment& b, const WeightedGraph& graph) {
    if (a.size() != b.size() || (int)a.size() != graph.num_vertices())
        throw std::invalid_argument("assignments must be total");
    double acc = 0.0;
    for (int v = 0; v < graph.num_vertices(); ++v)
        if (a[v] == b[v]) acc += graph.vertex_measure(v);
    return acc;
}

}  // namespace dsamp
