#pragma once

#include <string>

#include "json.hpp"

#include "dsamp/pipeline.hpp"

namespace dsamp::io {

using ordered_json = nlohmann::ordered_json;

// graph file: {"vertices": N, "edges": [[u, v, w], ...]}, weights as doubles
// or decimal strings, negative weights rejected
WeightedGraph graph_from_json(const ordered_json& j);
ordered_json graph_to_json(const WeightedGraph& g);

// sampler file: {"n","m1","m2","V1","V2","W"}; W entries are rational strings,
// omitted W means uniform
DoubleSampler sampler_from_json(const ordered_json& j);
ordered_json sampler_to_json(const DoubleSampler& ds);

// message word: {"n": ..., "g": "0101..."}
std::vector<uint8_t> word_from_json(const ordered_json& j);
ordered_json word_to_json(const std::vector<uint8_t>& g);

// received word: {"f": [{"S": [...], "bits": "01"}, ...]}, order matches the
// sampler's V1 list including multiplicity
ReceivedWord received_from_json(const ordered_json& j, const DoubleSampler& ds);
ordered_json received_to_json(const DoubleSampler& ds, const ReceivedWord& w);

// local lists: [{"T": [...], "r": ..., "i": ..., "entries": [...]}, ...]
ordered_json lists_to_json(const std::vector<LocalList>& lists);

// instance: {"l": ..., "edges": [[u, v, w, [perm...]], ...], "groups": {"0": [ids]}}
ordered_json instance_to_json(const UGInstance& inst);
UGInstance instance_from_json(const ordered_json& j);

// solutions: {"assignments": [[labels...], ...], "values": [...]}
ordered_json solution_to_json(const ListSolveResult& res);

SolverConfig solver_config_from_json(const ordered_json& j);
DecodeConfig decode_config_from_json(const ordered_json& j);
ordered_json decode_report_to_json(const DecodeReport& rep);

ordered_json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const ordered_json& j);
void save_text_file(const std::string& path, const std::string& text);

// code file: {"kind": "repetition"|"identity"|"random_linear", "n", "k",
// "epsilon0", "seed", "min_distance"}
BaseCode code_from_json(const ordered_json& j);

}  // namespace dsamp::io
