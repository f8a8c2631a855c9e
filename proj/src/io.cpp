#include "dsamp/io.hpp"

#include <fstream>
#include <sstream>

namespace dsamp::io {

namespace {

double weight_entry(const ordered_json& v) {
    double w;
    if (v.is_string())
        w = std::stod(v.get<std::string>());
    else
        w = v.get<double>();
    if (w < 0) throw std::invalid_argument("negative edge weight rejected");
    return w;
}

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

WeightedGraph graph_from_json(const ordered_json& j) {
    if (!j.contains("vertices")) fail("graph file: missing \"vertices\"");
    WeightedGraph g(j.at("vertices").get<int>());
    for (const auto& e : j.value("edges", ordered_json::array())) {
        if (!e.is_array() || e.size() != 3) fail("graph file: edge entries are [u, v, weight]");
        g.add_edge(e[0].get<int>(), e[1].get<int>(), weight_entry(e[2]));
    }
    g.finalize();
    return g;
}

ordered_json graph_to_json(const WeightedGraph& g) {
    ordered_json j;
    j["vertices"] = g.num_vertices();
    auto edges = ordered_json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
    j["edges"] = std::move(edges);
    return j;
}

DoubleSampler sampler_from_json(const ordered_json& j) {
    for (const char* key : {"n", "m1", "m2", "V1", "V2"})
        if (!j.contains(key)) fail(std::string("sampler file: missing \"") + key + "\"");
    std::vector<std::vector<int>> v1 = j.at("V1").get<std::vector<std::vector<int>>>();
    std::vector<std::vector<int>> v2 = j.at("V2").get<std::vector<std::vector<int>>>();
    std::vector<Rational> w;
    if (j.contains("W")) {
        for (const auto& e : j.at("W")) w.push_back(Rational::parse(e.get<std::string>()));
    }
    return DoubleSampler(j.at("n").get<int>(), j.at("m1").get<int>(), j.at("m2").get<int>(), std::move(v1),
                         std::move(v2), std::move(w));
}

ordered_json sampler_to_json(const DoubleSampler& ds) {
    ordered_json j;
    j["n"] = ds.ground_size();
    j["m1"] = ds.m1();
    j["m2"] = ds.m2();
    auto v1 = ordered_json::array();
    for (int s = 0; s < ds.num_v1(); ++s) v1.push_back(ds.set_v1(s));
    j["V1"] = std::move(v1);
    auto v2 = ordered_json::array();
    for (int t = 0; t < ds.num_v2(); ++t) v2.push_back(ds.set_v2(t));
    j["V2"] = std::move(v2);
    auto w = ordered_json::array();
    for (const auto& r : ds.top_weights_exact()) w.push_back(r.str());
    j["W"] = std::move(w);
    return j;
}

std::vector<uint8_t> word_from_json(const ordered_json& j) {
    if (!j.contains("n") || !j.contains("g")) fail("word file: need {\"n\", \"g\"}");
    const std::string s = j.at("g").get<std::string>();
    if ((int)s.size() != j.at("n").get<int>()) fail("word file: g length differs from n");
    std::vector<uint8_t> g(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') fail("word file: g must be a 0/1 string");
        g[i] = s[i] == '1';
    }
    return g;
}

ordered_json word_to_json(const std::vector<uint8_t>& g) {
    std::string s(g.size(), '0');
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i]) s[i] = '1';
    ordered_json j;
    j["n"] = g.size();
    j["g"] = s;
    return j;
}

ReceivedWord received_from_json(const ordered_json& j, const DoubleSampler& ds) {
    if (!j.contains("f")) fail("received word file: missing \"f\"");
    const auto& arr = j.at("f");
    if ((int)arr.size() != ds.num_v1()) fail("received word file: entry count differs from |V1|");
    ReceivedWord w;
    for (int s = 0; s < ds.num_v1(); ++s) {
        const auto& entry = arr[s];
        std::vector<int> set = entry.at("S").get<std::vector<int>>();
        std::sort(set.begin(), set.end());
        if (set != ds.set_v1(s)) fail("received word file: entry " + std::to_string(s) + " does not match V1 order");
        Bits b = Bits::parse(entry.at("bits").get<std::string>());
        if (b.len != ds.m1()) fail("received word file: symbol length differs from m1");
        w.f.push_back(b);
    }
    return w;
}

ordered_json received_to_json(const DoubleSampler& ds, const ReceivedWord& w) {
    ordered_json j;
    auto arr = ordered_json::array();
    for (int s = 0; s < ds.num_v1(); ++s) {
        ordered_json e;
        e["S"] = ds.set_v1(s);
        e["bits"] = w.f[s].str();
        arr.push_back(std::move(e));
    }
    j["f"] = std::move(arr);
    return j;
}

ordered_json lists_to_json(const std::vector<LocalList>& lists) {
    auto arr = ordered_json::array();
    for (const auto& l : lists) {
        ordered_json e;
        e["T"] = l.T;
        e["r"] = l.radius;
        e["i"] = l.radius_index;
        auto entries = ordered_json::array();
        for (const auto& se : l.entries) entries.push_back(se.sigma.str());
        e["entries"] = std::move(entries);
        arr.push_back(std::move(e));
    }
    return arr;
}

ordered_json instance_to_json(const UGInstance& inst) {
    ordered_json j;
    j["l"] = inst.labels;
    auto edges = ordered_json::array();
    const auto& es = inst.graph.edges();
    for (size_t k = 0; k < es.size(); ++k) {
        ordered_json perm = ordered_json::array();
        for (uint8_t x : inst.perms[k]) perm.push_back((int)x);
        edges.push_back({es[k].u, es[k].v, es[k].w, std::move(perm)});
    }
    j["edges"] = std::move(edges);
    ordered_json groups = ordered_json::object();
    if (!inst.radius_index.empty()) {
        std::map<int, std::vector<int>> by_idx;
        for (size_t v = 0; v < inst.radius_index.size(); ++v) by_idx[inst.radius_index[v]].push_back((int)v);
        for (const auto& [idx, members] : by_idx) groups[std::to_string(idx)] = members;
    }
    j["groups"] = std::move(groups);
    return j;
}

UGInstance instance_from_json(const ordered_json& j) {
    UGInstance inst;
    inst.labels = j.at("l").get<int>();
    int n = 0;
    for (const auto& e : j.at("edges")) n = std::max({n, e[0].get<int>() + 1, e[1].get<int>() + 1});
    if (j.contains("groups"))
        for (const auto& [idx, members] : j.at("groups").items())
            for (const auto& v : members) n = std::max(n, v.get<int>() + 1);
    WeightedGraph g(n);
    for (const auto& e : j.at("edges")) g.add_edge(e[0].get<int>(), e[1].get<int>(), weight_entry(e[2]));
    g.finalize();
    inst.graph = g;
    // constraints arrive in file order; re-align with the canonical edge order
    std::map<std::pair<int, int>, std::vector<uint8_t>> by_pair;
    for (const auto& e : j.at("edges")) {
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u > v) fail("instance file: edges must be listed with u <= v");
        std::vector<uint8_t> p;
        for (const auto& x : e[3]) p.push_back((uint8_t)x.get<int>());
        by_pair[{u, v}] = std::move(p);
    }
    for (const auto& e : inst.graph.edges()) inst.perms.push_back(by_pair.at({e.u, e.v}));
    if (j.contains("groups") && !j.at("groups").empty()) {
        inst.radius_index.assign(n, 0);
        for (const auto& [idx, members] : j.at("groups").items())
            for (const auto& v : members) inst.radius_index[v.get<int>()] = std::stoi(idx);
    }
    inst.validate();
    return inst;
}

ordered_json solution_to_json(const ListSolveResult& res) {
    ordered_json j;
    j["assignments"] = res.assignments;
    j["values"] = res.values;
    j["sdp_objectives"] = res.sdp_objectives;
    j["rounds"] = res.rounds;
    j["stopped_on_floor"] = res.stopped_on_floor;
    return j;
}

SolverConfig solver_config_from_json(const ordered_json& j) {
    SolverConfig cfg;
    cfg.R = j.value("R", cfg.R);
    cfg.rank = j.value("rank", cfg.rank);
    cfg.epochs = j.value("epochs", cfg.epochs);
    cfg.pilot_epochs = j.value("pilot_epochs", cfg.pilot_epochs);
    cfg.random_restarts = j.value("random_restarts", cfg.random_restarts);
    cfg.propagation_restarts = j.value("propagation_restarts", cfg.propagation_restarts);
    cfg.lr = j.value("lr", cfg.lr);
    cfg.tri_sample = j.value("tri_sample", cfg.tri_sample);
    cfg.tri_cap = j.value("tri_cap", cfg.tri_cap);
    cfg.tri_penalty = j.value("tri_penalty", cfg.tri_penalty);
    cfg.stop_tol = j.value("stop_tol", cfg.stop_tol);
    cfg.constraint_tol = j.value("constraint_tol", cfg.constraint_tol);
    cfg.retries = j.value("retries", cfg.retries);
    cfg.value_floor = j.value("value_floor", cfg.value_floor);
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

DecodeConfig decode_config_from_json(const ordered_json& j) {
    DecodeConfig cfg;
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    cfg.epsilon0 = j.value("epsilon0", cfg.epsilon0);
    cfg.rho = j.value("rho", cfg.rho);
    cfg.group_measure_floor = j.value("group_measure_floor", cfg.group_measure_floor);
    cfg.labels = j.value("labels", cfg.labels);
    cfg.t_rep = j.value("t_rep", cfg.t_rep);
    cfg.lambda_target = j.value("lambda_target", cfg.lambda_target);
    cfg.strict = j.value("strict", cfg.strict);
    cfg.report_tol = j.value("report_tol", cfg.report_tol);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("solver")) cfg.solver = solver_config_from_json(j.at("solver"));
    cfg.validate();
    return cfg;
}

ordered_json decode_report_to_json(const DecodeReport& rep) {
    ordered_json j;
    j["n"] = rep.n;
    j["m1"] = rep.m1;
    j["m2"] = rep.m2;
    j["v1_copies"] = rep.v1_copies;
    j["v2_copies"] = rep.v2_copies;
    j["labels"] = rep.labels;
    j["epsilon"] = rep.epsilon;
    j["epsilon0"] = rep.epsilon0;
    j["rho"] = rep.rho;
    j["seed"] = rep.seed;
    j["lists"] = {{"min", rep.min_list}, {"max", rep.max_list}, {"mean", rep.mean_list},
                  {"padding_failures", rep.padding_failures}, {"truncated", rep.truncated_lists}};
    auto groups = ordered_json::array();
    for (const auto& g : rep.groups) {
        ordered_json e;
        e["radius_index"] = g.radius_index;
        e["measure"] = g.measure;
        e["entered"] = g.entered;
        if (g.entered) {
            e["mu_A"] = g.mu_A;
            e["mu_B"] = g.mu_B;
            e["lambda_B"] = g.lambda_B;
            e["extract_iterations"] = g.extract_iterations;
            e["ug_rounds"] = g.ug_rounds;
            e["ug_values"] = g.ug_values;
            e["sdp_objectives"] = g.sdp_objectives;
        }
        groups.push_back(std::move(e));
    }
    j["groups"] = std::move(groups);
    j["empty_support_bits"] = rep.empty_support_bits;
    j["undecodable_words"] = rep.undecodable_words;
    j["ambiguous_words"] = rep.ambiguous_words;
    auto words = ordered_json::array();
    for (const auto& w : rep.words) {
        ordered_json e;
        e["word"] = w.word;
        e["group"] = w.group;
        e["assignment"] = w.assignment;
        e["repetition"] = w.repetition;
        e["agreement"] = w.agreement;
        words.push_back(std::move(e));
    }
    j["words"] = std::move(words);
    auto codewords = ordered_json::array();
    for (const auto& c : rep.codewords) {
        ordered_json e;
        e["message"] = c.message;
        e["codeword"] = c.codeword;
        e["agreement"] = c.agreement;
        e["meets_threshold"] = c.meets_threshold;
        codewords.push_back(std::move(e));
    }
    j["codewords"] = std::move(codewords);
    auto failures = ordered_json::array();
    for (const auto& f : rep.failures) failures.push_back({{"stage", f.stage}, {"message", f.message}});
    j["failures"] = std::move(failures);
    return j;
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) fail("cannot write " + path);
    out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail("cannot write " + path);
    out << text;
}

BaseCode code_from_json(const ordered_json& j) {
    const std::string kind = j.value("kind", "random_linear");
    if (kind == "repetition") return repetition_code(j.at("n").get<int>(), j.value("epsilon0", 0.4));
    if (kind == "identity") return identity_code(j.at("n").get<int>());
    if (kind == "random_linear")
        return random_linear_code(j.at("n").get<int>(), j.at("k").get<int>(), j.value("epsilon0", 0.16),
                                  j.value("seed", (uint64_t)7), j.value("min_distance", 0));
    fail("unknown code kind: " + kind);
}

}  // namespace dsamp::io
