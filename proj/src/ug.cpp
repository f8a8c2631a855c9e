#include "dsamp/ug.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dsamp/rng.hpp"

namespace dsamp {

void UGInstance::validate() const {
    if (perms.size() != graph.edges().size()) throw std::logic_error("constraint/edge misalignment");
    std::vector<char> seen(labels);
    for (const auto& p : perms) {
        if ((int)p.size() != labels) throw std::logic_error("constraint arity mismatch");
        std::fill(seen.begin(), seen.end(), 0);
        for (uint8_t x : p) {
            if (x >= labels || seen[x]) throw std::logic_error("constraint is not a permutation");
            seen[x] = 1;
        }
    }
    if (!lists.empty()) {
        if ((int)lists.size() != graph.num_vertices()) throw std::logic_error("list/vertex misalignment");
        for (const auto& l : lists)
            if ((int)l.entries.size() != labels) throw std::logic_error("list not padded to the label count");
    }
}

RadiusGroups radius_partition(const std::vector<LocalList>& lists, const std::vector<double>& pi2) {
    if (lists.size() != pi2.size()) throw std::invalid_argument("lists/measure size mismatch");
    std::map<int, std::vector<int>> by_index;
    for (size_t t = 0; t < lists.size(); ++t) by_index[lists[t].radius_index].push_back((int)t);
    RadiusGroups out;
    for (auto& [idx, members] : by_index) {
        double mu = 0.0;
        for (int t : members) mu += pi2[t];
        out.indices.push_back(idx);
        out.members.push_back(std::move(members));
        out.measures.push_back(mu);
    }
    return out;
}

std::vector<LocalList> pad_lists(std::vector<LocalList> lists, int labels, int* padding_failures, int* truncated) {
    if (labels < 1) throw std::invalid_argument("label count must be positive");
    int failures = 0, trunc = 0;
    for (auto& l : lists) {
        if ((int)l.entries.size() > labels) {
            // entries are ordered by descending agreement; drop the tail
            l.entries.resize(labels);
            ++trunc;
        }
        const int m2 = (int)l.T.size();
        uint32_t next_word = 0;
        const uint32_t limit = 1u << m2;
        while ((int)l.entries.size() < labels) {
            bool found = false;
            for (; next_word < limit; ++next_word) {
                Bits cand(next_word, m2);
                bool ok = true;
                for (const auto& e : l.entries)
                    if (dist(cand, e.sigma) < l.radius - 1e-12) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    l.entries.push_back({cand, -1.0});
                    ++next_word;
                    found = true;
                    break;
                }
            }
            if (!found) {
                // no admissible dummy left; fall back to unused strings and flag
                ++failures;
                std::vector<char> used(limit, 0);
                for (const auto& e : l.entries) used[e.sigma.word] = 1;
                for (uint32_t w = 0; w < limit && (int)l.entries.size() < labels; ++w)
                    if (!used[w]) {
                        l.entries.push_back({Bits(w, m2), -1.0});
                        used[w] = 1;
                    }
                while ((int)l.entries.size() < labels) l.entries.push_back({Bits(0, m2), -1.0});
                break;
            }
        }
    }
    if (padding_failures) *padding_failures = failures;
    if (truncated) *truncated = trunc;
    return lists;
}

namespace {

// distribution of S given both endpoints: Pr[s] ~ pi1(s) / |up(s)|^2 over
// copies contained in both
int sample_shared_s(const DoubleSampler& ds, int t1, int t2, Rng& rng) {
    const auto& d1 = ds.contained_in(t1);
    const auto& d2 = ds.contained_in(t2);
    std::vector<int> common;
    std::set_intersection(d1.begin(), d1.end(), d2.begin(), d2.end(), std::back_inserter(common));
    if (common.empty()) throw std::logic_error("edge without a shared S");
    double total = 0.0;
    std::vector<double> wts(common.size());
    for (size_t i = 0; i < common.size(); ++i) {
        double up = (double)ds.containers_of(common[i]).size();
        wts[i] = ds.pi1()[common[i]] / (up * up);
        total += wts[i];
    }
    double r = rng.next_real() * total;
    double acc = 0.0;
    for (size_t i = 0; i < common.size(); ++i) {
        acc += wts[i];
        if (r < acc) return common[i];
    }
    return common.back();
}

}  // namespace

UGInstance build_constraint_graph(const DoubleSampler& ds, const std::vector<LocalList>& lists, int labels,
                                  uint64_t seed) {
    if ((int)lists.size() != ds.num_v2()) throw std::invalid_argument("need one list per V2 copy");
    UGInstance inst;
    inst.labels = labels;
    inst.lists = pad_lists(lists, labels, &inst.padding_failures, &inst.truncated_lists);
    inst.graph = ds.two_step_v2();
    inst.radius_index.resize(ds.num_v2());
    for (int t = 0; t < ds.num_v2(); ++t) inst.radius_index[t] = inst.lists[t].radius_index;

    inst.perms.reserve(inst.graph.edges().size());
    for (const auto& e : inst.graph.edges()) {
        // orientation convention: lower vertex index first
        const int t1 = e.u, t2 = e.v;
        Rng rng(derive_seed(seed, {0xED6Eu, (uint64_t)t1, (uint64_t)t2}));
        int scopy = sample_shared_s(ds, t1, t2, rng);
        inst.sampled_s.push_back(scopy);
        const auto& S = ds.set_v1(scopy);
        const auto& T1 = inst.lists[t1].T;
        const auto& T2 = inst.lists[t2].T;
        std::vector<int> pos1, pos2;
        for (int x : S) {
            pos1.push_back((int)(std::lower_bound(T1.begin(), T1.end(), x) - T1.begin()));
            pos2.push_back((int)(std::lower_bound(T2.begin(), T2.end(), x) - T2.begin()));
        }
        const double threshold = inst.lists[t1].radius / 2.0 + 1e-12;

        std::vector<uint8_t> perm(labels, 0xff);
        std::vector<char> matched(labels, 0);
        for (int i = 0; i < labels; ++i) {
            for (int j = 0; j < labels; ++j) {
                if (matched[j]) continue;
                if (dist_on(inst.lists[t1].entries[i].sigma, pos1, inst.lists[t2].entries[j].sigma, pos2) <=
                    threshold) {
                    perm[i] = (uint8_t)j;
                    matched[j] = 1;
                    break;
                }
            }
        }
        // ascending fill of the unmatched labels
        int j = 0;
        for (int i = 0; i < labels; ++i) {
            if (perm[i] != 0xff) continue;
            while (matched[j]) ++j;
            perm[i] = (uint8_t)j;
            matched[j] = 1;
        }
        inst.perms.push_back(std::move(perm));
    }
    inst.validate();
    return inst;
}

double ug_value(const UGInstance& inst, const Assignment& a) {
    if ((int)a.size() != inst.graph.num_vertices()) throw std::invalid_argument("assignment is not total");
    const auto& edges = inst.graph.edges();
    double sat = 0.0, tot = 0.0;
    for (size_t k = 0; k < edges.size(); ++k) {
        double mu = inst.graph.edge_measure(edges[k].u, edges[k].v);
        tot += mu;
        if (inst.perms[k][a[edges[k].u]] == a[edges[k].v]) sat += mu;
    }
    return tot > 0 ? sat / tot : 1.0;
}

UGInstance induced_instance(const UGInstance& inst, const std::vector<int>& keep) {
    UGInstance out;
    out.labels = inst.labels;
    out.graph = inst.graph.induced(keep);
    std::vector<int> pos(inst.graph.num_vertices(), -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = (int)i;
    // rebuild the constraint list in the induced graph's edge order
    std::map<std::pair<int, int>, const std::vector<uint8_t>*> by_pair;
    const auto& edges = inst.graph.edges();
    for (size_t k = 0; k < edges.size(); ++k)
        if (pos[edges[k].u] >= 0 && pos[edges[k].v] >= 0)
            by_pair[{pos[edges[k].u], pos[edges[k].v]}] = &inst.perms[k];
    for (const auto& e : out.graph.edges()) out.perms.push_back(*by_pair.at({e.u, e.v}));
    if (!inst.lists.empty()) {
        for (int v : keep) out.lists.push_back(inst.lists[v]);
        for (int v : keep) out.radius_index.push_back(inst.radius_index[v]);
    }
    out.padding_failures = inst.padding_failures;
    out.truncated_lists = inst.truncated_lists;
    out.validate();
    return out;
}

std::vector<double> correct_edge_fraction(const UGInstance& inst, const std::vector<uint8_t>& g,
                                          const RadiusGroups& groups) {
    if (inst.lists.empty()) throw std::invalid_argument("instance carries no lists");
    const int n = inst.graph.num_vertices();
    // g-closest index per vertex, ties to the smallest index
    std::vector<int> closest(n);
    std::vector<double> closest_dist(n);
    for (int t = 0; t < n; ++t) {
        Bits gt = restrict_to_set(g, inst.lists[t].T);
        int best = 0;
        double bd = 2.0;
        for (int j = 0; j < inst.labels; ++j) {
            double d = dist(inst.lists[t].entries[j].sigma, gt);
            if (d < bd - 1e-15) {
                bd = d;
                best = j;
            }
        }
        closest[t] = best;
        closest_dist[t] = bd;
    }
    std::vector<int> group_of(n, -1);
    for (size_t gi = 0; gi < groups.members.size(); ++gi)
        for (int v : groups.members[gi]) group_of[v] = (int)gi;

    std::vector<double> good(groups.members.size(), 0.0), tot(groups.members.size(), 0.0);
    const auto& edges = inst.graph.edges();
    for (size_t k = 0; k < edges.size(); ++k) {
        int u = edges[k].u, v = edges[k].v;
        if (group_of[u] < 0 || group_of[u] != group_of[v]) continue;
        double mu = inst.graph.edge_measure(u, v);
        int gi = group_of[u];
        tot[gi] += mu;
        bool ok = closest_dist[u] <= inst.lists[u].radius / 9.0 + 1e-12 &&
                  closest_dist[v] <= inst.lists[v].radius / 9.0 + 1e-12 &&
                  inst.perms[k][closest[u]] == closest[v];
        if (ok) good[gi] += mu;
    }
    std::vector<double> out(groups.members.size(), 1.0);
    for (size_t gi = 0; gi < out.size(); ++gi)
        if (tot[gi] > 0) out[gi] = good[gi] / tot[gi];
    return out;
}

}  // namespace dsamp
