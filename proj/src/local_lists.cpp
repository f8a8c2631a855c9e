#include "dsamp/local_lists.hpp"

#include <algorithm>
#include <cmath>

namespace dsamp {

double ListConfig::resolved_rho() const {
    if (rho > 0) return rho;
    return (epsilon0 / 2.0) * std::pow(10.0, -8.0 / epsilon);
}

int ListConfig::default_labels() const { return (int)std::ceil(8.0 / epsilon - 1e-12); }

void ListConfig::validate() const {
    // epsilon up to 2 is admitted so the threshold epsilon/2 can reach 1
    if (!(epsilon > 0 && epsilon <= 2)) throw std::invalid_argument("epsilon out of range");
    if (!(epsilon0 >= 0 && epsilon0 < 0.5)) throw std::invalid_argument("epsilon0 out of range");
    if (resolved_rho() < 0) throw std::invalid_argument("rho must be nonnegative");
    if (max_ladder < 0) throw std::invalid_argument("max_ladder must be nonnegative");
}

std::vector<ScoredEntry> initial_list(const DoubleSampler& ds, int tcopy, const ReceivedWord& w,
                                      const ListConfig& cfg) {
    cfg.validate();
    if (tcopy < 0 || tcopy >= ds.num_v2()) throw std::out_of_range("T is not a V2 copy");
    if ((int)w.f.size() != ds.num_v1()) throw std::invalid_argument("received word does not match the sampler");
    const int m2 = ds.m2();
    if ((1ll << m2) > cfg.enumeration_budget) throw std::length_error("m2 exceeds the enumeration budget");

    const auto& T = ds.set_v2(tcopy);
    const auto& inside = ds.contained_in(tcopy);
    // positions of each S inside T, plus the observed symbol
    std::vector<std::vector<int>> pos(inside.size());
    std::vector<Bits> obs(inside.size());
    for (size_t k = 0; k < inside.size(); ++k) {
        const auto& S = ds.set_v1(inside[k]);
        pos[k].reserve(S.size());
        for (int x : S) pos[k].push_back((int)(std::lower_bound(T.begin(), T.end(), x) - T.begin()));
        obs[k] = w.f[inside[k]];
    }

    const double threshold = cfg.epsilon / 2.0;
    std::vector<ScoredEntry> out;
    for (uint32_t word = 0; word < (1u << m2); ++word) {
        Bits sigma(word, m2);
        int matches = 0;
        for (size_t k = 0; k < inside.size(); ++k) matches += restrict_bits(sigma, pos[k]) == obs[k];
        double score = (double)matches / (double)inside.size();
        if (score >= threshold - 1e-12) out.push_back({sigma, score});
    }
    std::sort(out.begin(), out.end(), [](const ScoredEntry& a, const ScoredEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.sigma.word < b.sigma.word;
    });
    return out;
}

namespace {

std::vector<ScoredEntry> greedy_mis(const std::vector<ScoredEntry>& l, double r) {
    std::vector<ScoredEntry> out;
    for (const auto& e : l) {
        bool independent = true;
        for (const auto& chosen : out)
            if (dist(e.sigma, chosen.sigma) < r - 1e-12) {
                independent = false;
                break;
            }
        if (independent) out.push_back(e);
    }
    return out;
}

bool same_entries(const std::vector<ScoredEntry>& a, const std::vector<ScoredEntry>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].sigma != b[i].sigma) return false;
    return true;
}

}  // namespace

PruneResult prune(std::vector<ScoredEntry> l0, const ListConfig& cfg) {
    cfg.validate();
    const double rho = cfg.resolved_rho();
    if (l0.empty()) return {{}, rho, 0};
    double r = rho;
    int i = 0;
    std::vector<ScoredEntry> cur = std::move(l0);
    // each non-stable pass strictly shrinks the list, so this terminates in at
    // most |L_0| passes; max_ladder additionally caps the emitted rung
    while (true) {
        auto next = greedy_mis(cur, r);
        if (same_entries(next, cur)) return {std::move(cur), r, i};
        cur = std::move(next);
        if (cfg.max_ladder > 0 && i >= cfg.max_ladder) return {std::move(cur), r, i};
        r *= 10.0;
        ++i;
    }
}

LocalList local_list_decode(const DoubleSampler& ds, int tcopy, const ReceivedWord& w, const ListConfig& cfg) {
    auto pruned = prune(initial_list(ds, tcopy, w, cfg), cfg);
    LocalList out;
    out.tcopy = tcopy;
    out.T = ds.set_v2(tcopy);
    out.entries = std::move(pruned.entries);
    out.radius = pruned.radius;
    out.radius_index = pruned.radius_index;
    return out;
}

std::vector<LocalList> decode_all_lists(const DoubleSampler& ds, const ReceivedWord& w, const ListConfig& cfg) {
    std::vector<LocalList> out;
    out.reserve(ds.num_v2());
    for (int t = 0; t < ds.num_v2(); ++t) out.push_back(local_list_decode(ds, t, w, cfg));
    return out;
}

}  // namespace dsamp
