#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"

#include "dsamp/experiment.hpp"
#include "dsamp/io.hpp"
#include "dsamp/rng.hpp"
#include "dsamp/spectral.hpp"

using namespace dsamp;
using io::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitStageFailure = 3;

void emit(const ordered_json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::save_json_file(out_path, j);
}

DecodeConfig load_decode_config(const std::string& config_path, uint64_t seed, bool seed_set) {
    DecodeConfig cfg;
    if (!config_path.empty()) cfg = io::decode_config_from_json(io::load_json_file(config_path));
    if (seed_set) cfg.seed = seed;
    return cfg;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"list decoding of distance-amplified codes via double samplers"};
    app.require_subcommand(1);

    // every subcommand accepts --seed and --config; commands that are
    // deterministic or fully flag-driven simply have no use for them
    uint64_t global_seed = 1;
    std::string global_config;
    auto uniform_opts = [&](CLI::App* sc) {
        sc->add_option("--seed", global_seed, "master seed");
        sc->add_option("--config", global_config, "configuration file");
    };

    // build-sampler
    auto* sc_build = app.add_subcommand("build-sampler", "construct a complete-complex double sampler");
    int bn = 12, bm1 = 2, bm2 = 5;
    std::string b_out;
    sc_build->add_option("--n", bn, "ground set size")->required();
    sc_build->add_option("--m1", bm1, "V1 subset size")->required();
    sc_build->add_option("--m2", bm2, "V2 subset size")->required();
    sc_build->add_option("--out", b_out, "output file (stdout when omitted)");
    uniform_opts(sc_build);

    // encode
    auto* sc_encode = app.add_subcommand("encode", "encode a word over the sampler");
    std::string e_sampler, e_word, e_out;
    sc_encode->add_option("--sampler", e_sampler)->required();
    sc_encode->add_option("--word", e_word)->required();
    sc_encode->add_option("--out", e_out);
    uniform_opts(sc_encode);

    // corrupt
    auto* sc_corrupt = app.add_subcommand("corrupt", "apply the corruption channel to a received word");
    std::string c_sampler, c_received, c_mode = "adversarial", c_out;
    double c_eps = 0.6;
    uint64_t c_seed = 1;
    sc_corrupt->add_option("--sampler", c_sampler)->required();
    sc_corrupt->add_option("--received", c_received)->required();
    sc_corrupt->add_option("--epsilon", c_eps, "surviving agreement fraction")->required();
    sc_corrupt->add_option("--mode", c_mode, "adversarial | random");
    sc_corrupt->add_option("--seed", c_seed);
    sc_corrupt->add_option("--out", c_out);
    sc_corrupt->add_option("--config", global_config, "configuration file");

    // decode / approx-decode
    auto* sc_decode = app.add_subcommand("decode", "full list decoding");
    std::string d_sampler, d_code, d_received, d_config, d_out, d_report;
    uint64_t d_seed = 1;
    bool d_seed_set = false;
    sc_decode->add_option("--sampler", d_sampler)->required();
    sc_decode->add_option("--code", d_code)->required();
    sc_decode->add_option("--received", d_received)->required();
    sc_decode->add_option("--config", d_config, "DecodeConfig JSON");
    sc_decode->add_option("--seed", d_seed)->each([&](const std::string&) { d_seed_set = true; });
    sc_decode->add_option("--out", d_out, "codeword list output");
    sc_decode->add_option("--report", d_report, "diagnostics report output");

    auto* sc_approx = app.add_subcommand("approx-decode", "approximate list decoding (no base code)");
    std::string a_sampler, a_received, a_config, a_out, a_report;
    uint64_t a_seed = 1;
    bool a_seed_set = false;
    sc_approx->add_option("--sampler", a_sampler)->required();
    sc_approx->add_option("--received", a_received)->required();
    sc_approx->add_option("--config", a_config);
    sc_approx->add_option("--seed", a_seed)->each([&](const std::string&) { a_seed_set = true; });
    sc_approx->add_option("--out", a_out);
    sc_approx->add_option("--report", a_report);

    // solve-ug
    auto* sc_solve = app.add_subcommand("solve-ug", "solve a unique-games instance");
    std::string s_instance, s_config, s_out;
    bool s_list = false;
    uint64_t s_seed = 1;
    sc_solve->add_option("--instance", s_instance)->required();
    sc_solve->add_flag("--list", s_list, "peel and return a list of assignments");
    sc_solve->add_option("--config", s_config, "SolverConfig JSON");
    sc_solve->add_option("--seed", s_seed);
    sc_solve->add_option("--out", s_out);

    // extract-expander
    auto* sc_extract = app.add_subcommand("extract-expander", "extract an expanding subgraph");
    std::string x_graph, x_subset, x_out;
    double x_target = 0.99;
    sc_extract->add_option("--graph", x_graph)->required();
    sc_extract->add_option("--subset", x_subset, "comma-separated vertex ids (omit for all)");
    sc_extract->add_option("--lambda-target", x_target);
    sc_extract->add_option("--out", x_out);
    uniform_opts(sc_extract);

    // verify-sampler
    auto* sc_verify = app.add_subcommand("verify-sampler", "exact sampler verification on a function battery");
    std::string v_sampler, v_which = "21";
    double v_alpha = 0.3, v_delta = 0.3;
    int v_fns = 100;
    uint64_t v_seed = 1;
    std::string v_out;
    sc_verify->add_option("--sampler", v_sampler)->required();
    sc_verify->add_option("--which", v_which, "21 | 10 | local:<tcopy>");
    sc_verify->add_option("--alpha", v_alpha)->required();
    sc_verify->add_option("--delta", v_delta)->required();
    sc_verify->add_option("--fns", v_fns, "number of random indicator functions");
    sc_verify->add_option("--seed", v_seed);
    sc_verify->add_option("--out", v_out);
    sc_verify->add_option("--config", global_config, "configuration file");

    // experiment
    auto* sc_exp = app.add_subcommand("experiment", "seeded end-to-end experiment harness");
    std::string p_config, p_report, p_csv;
    sc_exp->add_option("--config", p_config)->required();
    sc_exp->add_option("--report", p_report, "report JSON path (stdout when omitted)");
    sc_exp->add_option("--csv", p_csv, "agreement/recovery CSV path");
    sc_exp->add_option("--seed", global_seed, "master seed");

    // bench
    auto* sc_bench = app.add_subcommand("bench", "timings for the main stages on a fixed fixture");
    int bench_n = 12, bench_m2 = 5;
    sc_bench->add_option("--n", bench_n);
    sc_bench->add_option("--m2", bench_m2);
    uniform_opts(sc_bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    if (sc_build->parsed()) {
        auto ds = complete_complex(bn, bm1, bm2);
        emit(io::sampler_to_json(ds), b_out);
        return 0;
    }
    if (sc_encode->parsed()) {
        auto ds = io::sampler_from_json(io::load_json_file(e_sampler));
        auto g = io::word_from_json(io::load_json_file(e_word));
        emit(io::received_to_json(ds, enc(ds, g)), e_out);
        return 0;
    }
    if (sc_corrupt->parsed()) {
        auto ds = io::sampler_from_json(io::load_json_file(c_sampler));
        auto w = io::received_from_json(io::load_json_file(c_received), ds);
        CorruptMode mode = c_mode == "random" ? CorruptMode::random_values : CorruptMode::adversarial_planted;
        emit(io::received_to_json(ds, corrupt(w, c_eps, mode, c_seed)), c_out);
        return 0;
    }
    if (sc_decode->parsed()) {
        auto ds = io::sampler_from_json(io::load_json_file(d_sampler));
        auto code = io::code_from_json(io::load_json_file(d_code));
        auto w = io::received_from_json(io::load_json_file(d_received), ds);
        DecodeConfig cfg = load_decode_config(d_config, d_seed, d_seed_set);
        DecodeOutcome out = list_decode(ds, code, w, cfg);
        ordered_json result;
        result["codewords"] = ordered_json::array();
        for (const auto& c : out.report.codewords)
            result["codewords"].push_back({{"message", c.message}, {"codeword", c.codeword},
                                           {"agreement", c.agreement}, {"meets_threshold", c.meets_threshold}});
        emit(result, d_out);
        if (!d_report.empty()) io::save_json_file(d_report, io::decode_report_to_json(out.report));
        return out.report.failures.empty() ? 0 : kExitStageFailure;
    }
    if (sc_approx->parsed()) {
        auto ds = io::sampler_from_json(io::load_json_file(a_sampler));
        auto w = io::received_from_json(io::load_json_file(a_received), ds);
        DecodeConfig cfg = load_decode_config(a_config, a_seed, a_seed_set);
        ApproxOutcome out = approx_list_decode(ds, w, cfg);
        ordered_json result;
        result["words"] = ordered_json::array();
        for (const auto& wr : out.report.words)
            result["words"].push_back({{"word", wr.word}, {"agreement", wr.agreement}});
        emit(result, a_out);
        if (!a_report.empty()) io::save_json_file(a_report, io::decode_report_to_json(out.report));
        return out.report.failures.empty() ? 0 : kExitStageFailure;
    }
    if (sc_solve->parsed()) {
        auto inst = io::instance_from_json(io::load_json_file(s_instance));
        SolverConfig cfg;
        if (!s_config.empty()) cfg = io::solver_config_from_json(io::load_json_file(s_config));
        cfg.seed = s_seed;
        if (s_list) {
            emit(io::solution_to_json(list_solve_ug(inst, cfg)), s_out);
        } else {
            SDPSolution sol = solve_ug_sdp(inst, cfg);
            Assignment a = round_sdp(inst, sol, cfg, derive_seed(cfg.seed, {0xABCDu}));
            ListSolveResult single;
            single.assignments = {a};
            single.values = {ug_value(inst, a)};
            single.sdp_objectives = {sol.objective};
            single.rounds = 1;
            emit(io::solution_to_json(single), s_out);
        }
        return 0;
    }
    if (sc_extract->parsed()) {
        auto g = io::graph_from_json(io::load_json_file(x_graph));
        std::vector<int> A;
        if (x_subset.empty()) {
            A.resize(g.num_vertices());
            std::iota(A.begin(), A.end(), 0);
        } else {
            std::stringstream ss(x_subset);
            std::string tok;
            while (std::getline(ss, tok, ',')) A.push_back(std::stoi(tok));
        }
        auto rep = extract_expander(g, A, x_target);
        ordered_json out;
        out["B"] = rep.subset;
        out["lambda"] = rep.lambda_final;
        out["mu_A"] = rep.mu_A;
        out["mu_B"] = rep.mu_B;
        out["iterations"] = rep.iterations;
        out["cut_bounds_ok"] = rep.cut_bounds_ok;
        emit(out, x_out);
        return 0;
    }
    if (sc_verify->parsed()) {
        auto ds = io::sampler_from_json(io::load_json_file(v_sampler));
        WeightedBipartiteGraph g;
        std::vector<double> W;
        if (v_which == "21") {
            g = ds.inclusion_21();
            W = ds.top_weights();
        } else if (v_which == "10") {
            g = ds.inclusion_10();
            W = ds.pi1();
        } else if (v_which.rfind("local:", 0) == 0) {
            g = local_graph(ds, std::stoi(v_which.substr(6)));
        } else {
            throw std::invalid_argument("--which must be 21, 10 or local:<tcopy>");
        }
        Rng rng(v_seed);
        std::vector<std::vector<double>> fns;
        for (int i = 0; i < v_fns; ++i) {
            std::vector<double> f(g.num_right());
            for (auto& x : f) x = rng.next_real() < 0.5 ? 1.0 : 0.0;
            fns.push_back(std::move(f));
        }
        auto rep = verify_sampler(g, W, {v_alpha, v_delta}, fns);
        ordered_json out;
        out["alpha"] = v_alpha;
        out["delta"] = v_delta;
        out["functions"] = v_fns;
        out["max_violation"] = rep.max_violation;
        out["pass"] = rep.pass;
        emit(out, v_out);
        return rep.pass ? 0 : kExitStageFailure;
    }
    if (sc_exp->parsed()) {
        auto config = io::load_json_file(p_config);
        if (sc_exp->count("--seed") > 0) config["decode"]["seed"] = global_seed;
        auto result = run_experiment(config);
        if (p_report.empty())
            std::cout << result.report.dump(2) << "\n";
        else
            io::save_json_file(p_report, result.report);
        if (!p_csv.empty()) io::save_text_file(p_csv, result.csv);
        return 0;
    }
    if (sc_bench->parsed()) {
        using clock = std::chrono::steady_clock;
        auto ms = [](clock::time_point a, clock::time_point b) {
            return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
        };
        auto t0 = clock::now();
        auto ds = complete_complex(bench_n, 2, bench_m2);
        auto t1 = clock::now();
        auto walk = ds.two_step_v2();
        auto t2 = clock::now();
        auto spec = second_eigenvalue(walk);
        auto t3 = clock::now();
        std::printf("complete_complex(%d,2,%d): %lld ms (|V1|=%d |V2|=%d)\n", bench_n, bench_m2,
                    (long long)ms(t0, t1), ds.num_v1(), ds.num_v2());
        std::printf("two_step_walk: %lld ms (%zu edges)\n", (long long)ms(t1, t2), walk.edges().size());
        std::printf("second_eigenvalue: %lld ms (lambda=%.6f, iters=%ld)\n", (long long)ms(t2, t3), spec.lambda,
                    spec.iterations);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::length_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStageFailure;
    }
}
