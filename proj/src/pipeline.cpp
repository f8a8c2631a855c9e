#include "dsamp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dsamp/rng.hpp"

namespace dsamp {

void DecodeConfig::validate() const {
    if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("epsilon must lie in (0,1]");
    if (!(epsilon0 >= 0 && epsilon0 < 0.5)) throw std::invalid_argument("epsilon0 must lie in [0, 1/2)");
    if (t_rep < 1) throw std::invalid_argument("t_rep must be positive");
    if (labels < 0) throw std::invalid_argument("labels must be nonnegative");
    if (!(lambda_target > 0 && lambda_target <= 1)) throw std::invalid_argument("lambda_target out of range");
    solver.validate(std::max(2, resolved_labels()));
}

ListConfig DecodeConfig::list_config() const {
    ListConfig lc;
    lc.epsilon = epsilon;
    lc.epsilon0 = epsilon0;
    lc.rho = rho;
    return lc;
}

int DecodeConfig::resolved_labels() const {
    if (labels > 0) return labels;
    return std::max(2, (int)std::ceil(8.0 / epsilon - 1e-12));
}

double DecodeConfig::resolved_floor() const { return group_measure_floor >= 0 ? group_measure_floor : epsilon / 16.0; }

namespace {

// conditional (Pi_2 | Pi_0 = j) restricted to a vertex subset, as cumulative
// weights per ground element
struct ConditionalTables {
    std::vector<std::vector<int>> support;     // per j: V2 copies
    std::vector<std::vector<double>> weights;  // per j: matching weights
};

ConditionalTables build_conditionals(const DoubleSampler& ds, const std::vector<int>& subset) {
    ConditionalTables tab;
    tab.support.resize(ds.ground_size());
    tab.weights.resize(ds.ground_size());
    for (int t : subset) {
        // Pr[j | T] under the path distribution
        std::map<int, double> perj;
        const auto& inside = ds.contained_in(t);
        for (int s : inside)
            for (int x : ds.set_v1(s)) perj[x] += 1.0 / ((double)inside.size() * ds.m1());
        for (const auto& [j, p] : perj) {
            double w = ds.top_weights()[t] * p;
            if (w <= 0) continue;
            tab.support[j].push_back(t);
            tab.weights[j].push_back(w);
        }
    }
    return tab;
}

std::string word_to_string(const std::vector<uint8_t>& w) {
    std::string s(w.size(), '0');
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i]) s[i] = '1';
    return s;
}

struct PipelineState {
    DecodeReport report;
    // candidate words with provenance, in deterministic generation order
    std::vector<std::pair<std::vector<uint8_t>, WordReport>> candidates;
};

PipelineState run_stages(const DoubleSampler& ds, const ReceivedWord& w, const DecodeConfig& cfg) {
    cfg.validate();
    PipelineState st;
    DecodeReport& rep = st.report;
    rep.n = ds.ground_size();
    rep.m1 = ds.m1();
    rep.m2 = ds.m2();
    rep.v1_copies = ds.num_v1();
    rep.v2_copies = ds.num_v2();
    rep.labels = cfg.resolved_labels();
    rep.epsilon = cfg.epsilon;
    rep.epsilon0 = cfg.epsilon0;
    rep.rho = cfg.list_config().resolved_rho();
    rep.seed = cfg.seed;

    // step 1: local lists
    auto lists = decode_all_lists(ds, w, cfg.list_config());
    rep.min_list = ds.num_v2() ? (int)lists[0].entries.size() : 0;
    rep.max_list = 0;
    double total = 0.0;
    for (const auto& l : lists) {
        rep.min_list = std::min(rep.min_list, (int)l.entries.size());
        rep.max_list = std::max(rep.max_list, (int)l.entries.size());
        total += (double)l.entries.size();
    }
    rep.mean_list = total / std::max(1, ds.num_v2());

    // step 2: constraint graph on the two-step walk
    UGInstance inst = build_constraint_graph(ds, lists, rep.labels, derive_seed(cfg.seed, {0xC095u}));
    rep.padding_failures = inst.padding_failures;
    rep.truncated_lists = inst.truncated_lists;

    auto groups = radius_partition(lists, ds.top_weights());
    const double floor = cfg.resolved_floor();

    for (size_t gi = 0; gi < groups.members.size(); ++gi) {
        GroupReport gr;
        gr.radius_index = groups.indices[gi];
        gr.measure = groups.measures[gi];
        gr.entered = gr.measure >= floor;
        if (!gr.entered) {
            rep.groups.push_back(gr);
            continue;
        }
        bool any_entries = false;
        for (int t : groups.members[gi]) any_entries |= !lists[t].entries.empty();
        if (!any_entries) {
            // nothing to stitch in this group; dummies alone carry no signal
            gr.entered = false;
            rep.groups.push_back(gr);
            continue;
        }
        try {
            // step 3: expander extraction inside the group
            ExtractReport ext = extract_expander(inst.graph, groups.members[gi], cfg.lambda_target);
            gr.mu_A = ext.mu_A;
            gr.mu_B = ext.mu_B;
            gr.lambda_B = ext.lambda_final;
            gr.extract_iterations = ext.iterations;

            UGInstance sub = induced_instance(inst, ext.subset);

            // step 4a: list UG solving
            SolverConfig scfg = cfg.solver;
            scfg.seed = derive_seed(cfg.seed, {0x501Eu, (uint64_t)groups.indices[gi]});
            ListSolveResult ls = list_solve_ug(sub, scfg);
            gr.ug_rounds = ls.rounds;
            gr.sdp_objectives = ls.sdp_objectives;
            for (const auto& a : ls.assignments) gr.ug_values.push_back(ug_value(sub, a));

            // step 4b: word extraction, fresh T draws per coordinate and repetition
            ConditionalTables tab = build_conditionals(ds, ext.subset);
            std::vector<int> pos_of(ds.num_v2(), -1);
            for (size_t i = 0; i < ext.subset.size(); ++i) pos_of[ext.subset[i]] = (int)i;
            for (size_t ai = 0; ai < ls.assignments.size(); ++ai) {
                for (int rep_i = 0; rep_i < cfg.t_rep; ++rep_i) {
                    std::vector<uint8_t> word(ds.ground_size(), 0);
                    for (int j = 0; j < ds.ground_size(); ++j) {
                        const auto& sup = tab.support[j];
                        if (sup.empty()) {
                            ++rep.empty_support_bits;
                            continue;
                        }
                        Rng rng(derive_seed(cfg.seed, {0x90D0u, (uint64_t)groups.indices[gi], ai,
                                                       (uint64_t)rep_i, (uint64_t)j}));
                        const auto& wt = tab.weights[j];
                        double tot = 0.0;
                        for (double x : wt) tot += x;
                        double r = rng.next_real() * tot;
                        int pick = sup.back();
                        double acc = 0.0;
                        for (size_t k = 0; k < sup.size(); ++k) {
                            acc += wt[k];
                            if (r < acc) {
                                pick = sup[k];
                                break;
                            }
                        }
                        const LocalList& pl = inst.lists[pick];
                        int label = ls.assignments[ai][pos_of[pick]];
                        int jpos = (int)(std::lower_bound(pl.T.begin(), pl.T.end(), j) - pl.T.begin());
                        word[j] = (uint8_t)pl.entries[label].sigma.get(jpos);
                    }
                    WordReport wr;
                    wr.group = groups.indices[gi];
                    wr.assignment = (int)ai;
                    wr.repetition = rep_i;
                    wr.agreement = agreement(ds, w, word);
                    wr.word = word_to_string(word);
                    st.candidates.push_back({std::move(word), std::move(wr)});
                }
            }
        } catch (const std::exception& e) {
            rep.failures.push_back({"group " + std::to_string(groups.indices[gi]), e.what()});
        }
        rep.groups.push_back(gr);
    }
    return st;
}

template <class T>
void order_by_agreement(std::vector<std::pair<std::vector<uint8_t>, T>>& items) {
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second.agreement != b.second.agreement) return a.second.agreement > b.second.agreement;
        return a.first < b.first;
    });
}

}  // namespace

ApproxOutcome approx_list_decode(const DoubleSampler& ds, const ReceivedWord& w, const DecodeConfig& cfg) {
    PipelineState st = run_stages(ds, w, cfg);
    ApproxOutcome out;
    // dedup by word, keep the first report of each
    std::map<std::vector<uint8_t>, WordReport> dedup;
    for (auto& [word, wr] : st.candidates)
        if (!dedup.count(word)) dedup.emplace(word, wr);
    std::vector<std::pair<std::vector<uint8_t>, WordReport>> items(dedup.begin(), dedup.end());
    order_by_agreement(items);
    out.report = std::move(st.report);
    for (auto& [word, wr] : items) {
        out.report.words.push_back(wr);
        out.words.push_back(word);
    }
    return out;
}

DecodeOutcome list_decode(const DoubleSampler& ds, const BaseCode& code, const ReceivedWord& w,
                          const DecodeConfig& cfg) {
    if (code.n != ds.ground_size()) throw std::invalid_argument("code length does not match the sampler");
    PipelineState st = run_stages(ds, w, cfg);
    DecodeOutcome out;
    out.report = std::move(st.report);

    // deduplicate the raw words into the report as well
    std::map<std::vector<uint8_t>, WordReport> word_dedup;
    for (auto& [word, wr] : st.candidates)
        if (!word_dedup.count(word)) word_dedup.emplace(word, wr);
    std::vector<std::pair<std::vector<uint8_t>, WordReport>> word_items(word_dedup.begin(), word_dedup.end());
    order_by_agreement(word_items);
    for (auto& [word, wr] : word_items) out.report.words.push_back(wr);

    // base decoding of every candidate word
    std::map<std::vector<uint8_t>, std::vector<uint8_t>> found;  // codeword -> message
    for (const auto& [word, wr] : st.candidates) {
        try {
            auto msg = brute_force_unique_decode(code, word);
            if (!msg) {
                ++out.report.undecodable_words;
                continue;
            }
            found.emplace(code.encode(*msg), *msg);
        } catch (const DecodingAmbiguity&) {
            ++out.report.ambiguous_words;
        }
    }
    struct Tag {
        double agreement;
    };
    std::vector<std::pair<std::vector<uint8_t>, Tag>> cw;
    for (const auto& [codeword, msg] : found)
        cw.push_back({codeword, {agreement(ds, w, codeword)}});
    order_by_agreement(cw);
    const double threshold = cfg.epsilon - cfg.report_tol;
    for (auto& [codeword, tag] : cw) {
        bool meets = tag.agreement >= threshold;
        if (cfg.strict && !meets) continue;
        CodewordReport cr;
        cr.codeword = word_to_string(codeword);
        cr.message = word_to_string(found.at(codeword));
        cr.agreement = tag.agreement;
        cr.meets_threshold = meets;
        out.report.codewords.push_back(cr);
        out.codewords.push_back(codeword);
        out.messages.push_back(found.at(codeword));
    }
    return out;
}

}  // namespace dsamp
