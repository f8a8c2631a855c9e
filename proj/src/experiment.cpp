#include "dsamp/experiment.hpp"

#include <cmath>
#include <sstream>

#include "dsamp/rng.hpp"

namespace dsamp {

using io::ordered_json;

namespace {

DoubleSampler sampler_from_config(const ordered_json& cfg) {
    if (!cfg.contains("sampler")) throw std::invalid_argument("experiment config: missing \"sampler\"");
    const auto& s = cfg.at("sampler");
    if (s.contains("file")) return io::sampler_from_json(io::load_json_file(s.at("file").get<std::string>()));
    return complete_complex(s.at("n").get<int>(), s.at("m1").get<int>(), s.at("m2").get<int>());
}

std::string bits_to_string(const std::vector<uint8_t>& v) {
    std::string s(v.size(), '0');
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i]) s[i] = '1';
    return s;
}

double word_dist(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return a.empty() ? 0.0 : (double)d / (double)a.size();
}

}  // namespace

ExperimentResult run_experiment(const ordered_json& config) {
    DoubleSampler ds = sampler_from_config(config);
    const std::string mode = config.value("mode", "decode");
    if (mode != "decode" && mode != "approx") throw std::invalid_argument("experiment config: mode must be decode or approx");

    BaseCode code;
    if (mode == "decode") {
        if (!config.contains("code")) throw std::invalid_argument("experiment config: missing \"code\"");
        code = io::code_from_json(config.at("code"));
        if (code.n != ds.ground_size())
            throw std::invalid_argument("experiment config: code length differs from the sampler ground set");
    }

    DecodeConfig dcfg;
    if (config.contains("decode")) dcfg = io::decode_config_from_json(config.at("decode"));
    dcfg.validate();

    const auto& channel = config.contains("channel") ? config.at("channel") : ordered_json::object();
    std::vector<double> levels = channel.value("agreements", std::vector<double>{1.0});
    const int trials = channel.value("trials", 1);
    const uint64_t channel_seed = channel.value("seed", (uint64_t)99);
    const uint64_t message_seed = config.value("message_seed", (uint64_t)5);
    const CorruptMode cmode =
        channel.value("mode", std::string("adversarial")) == std::string("random")
            ? CorruptMode::random_values
            : CorruptMode::adversarial_planted;
    const double approx_radius = config.value("approx_success_distance", dcfg.epsilon0);

    ordered_json report;
    report["config"] = config;
    auto level_arr = ordered_json::array();
    std::ostringstream csv;
    csv << "agreement,trials,recovered,rate\n";

    for (size_t li = 0; li < levels.size(); ++li) {
        const double level = levels[li];
        int recovered_count = 0;
        auto runs = ordered_json::array();
        for (int trial = 0; trial < trials; ++trial) {
            // plant
            Rng mrng(derive_seed(message_seed, {(uint64_t)li, (uint64_t)trial}));
            std::vector<uint8_t> planted;
            if (mode == "decode") {
                std::vector<uint8_t> msg(code.k);
                for (auto& b : msg) b = (uint8_t)(mrng.next_u64() & 1);
                planted = code.encode(msg);
            } else {
                planted.resize(ds.ground_size());
                for (auto& b : planted) b = (uint8_t)(mrng.next_u64() & 1);
            }
            ReceivedWord received = enc(ds, planted);
            if (level < 1.0)
                received = corrupt(received, level, cmode, derive_seed(channel_seed, {(uint64_t)li, (uint64_t)trial}));

            DecodeConfig run_cfg = dcfg;
            run_cfg.seed = derive_seed(dcfg.seed, {(uint64_t)li, (uint64_t)trial});

            ordered_json run;
            run["trial"] = trial;
            run["seed"] = run_cfg.seed;
            bool recovered = false;
            if (mode == "decode") {
                DecodeOutcome out = list_decode(ds, code, received, run_cfg);
                for (const auto& cw : out.codewords) recovered |= cw == planted;
                run["outputs"] = out.report.codewords.size();
                run["failures"] = out.report.failures.size();
                run["max_list"] = out.report.max_list;
            } else {
                ApproxOutcome out = approx_list_decode(ds, received, run_cfg);
                double best = 1.0;
                for (const auto& word : out.words) best = std::min(best, word_dist(word, planted));
                recovered = !out.words.empty() && best <= approx_radius + 1e-12;
                run["outputs"] = out.words.size();
                run["best_distance"] = out.words.empty() ? 1.0 : best;
                run["failures"] = out.report.failures.size();
            }
            run["recovered"] = recovered;
            run["planted"] = bits_to_string(planted);
            recovered_count += recovered;
            runs.push_back(std::move(run));
        }
        double rate = trials > 0 ? (double)recovered_count / trials : 0.0;
        ordered_json le;
        le["agreement"] = level;
        le["trials"] = trials;
        le["recovered"] = recovered_count;
        le["rate"] = rate;
        le["runs"] = std::move(runs);
        level_arr.push_back(std::move(le));
        csv << level << "," << trials << "," << recovered_count << "," << rate << "\n";
    }
    report["levels"] = std::move(level_arr);
    return {std::move(report), csv.str()};
}

}  // namespace dsamp
