#pragma once

#include <string>
#include <vector>

#include "dsamp/codes.hpp"
#include "dsamp/extract.hpp"
#include "dsamp/local_lists.hpp"
#include "dsamp/sampler.hpp"
#include "dsamp/ug.hpp"
#include "dsamp/ug_solver.hpp"

namespace dsamp {

struct DecodeConfig {
    double epsilon = 0.5;
    double epsilon0 = 0.16;
    double rho = 0.0;                   // 0 = (epsilon0/2) * 10^(-8/epsilon)
    double group_measure_floor = -1.0;  // < 0 = epsilon/16
    int labels = 0;                     // 0 = ceil(8/epsilon)
    int t_rep = 3;
    double lambda_target = 0.99;
    bool strict = false;       // enforce the agreement filter instead of reporting it
    double report_tol = 1e-9;  // slack on the agreement threshold
    uint64_t seed = 1;
    SolverConfig solver;

    void validate() const;
    ListConfig list_config() const;
    int resolved_labels() const;
    double resolved_floor() const;
};

struct GroupReport {
    int radius_index = 0;
    double measure = 0.0;
    bool entered = false;
    double mu_A = 0.0, mu_B = 0.0, lambda_B = 0.0;
    int extract_iterations = 0;
    int ug_rounds = 0;
    std::vector<double> ug_values;
    std::vector<double> sdp_objectives;
};

struct WordReport {
    std::string word;
    int group = 0, assignment = 0, repetition = 0;
    double agreement = 0.0;
};

struct CodewordReport {
    std::string message;
    std::string codeword;
    double agreement = 0.0;
    bool meets_threshold = false;
};

struct StageFailure {
    std::string stage;
    std::string message;
};

struct DecodeReport {
    int n = 0, m1 = 0, m2 = 0, v1_copies = 0, v2_copies = 0;
    int labels = 0;
    double epsilon = 0.0, epsilon0 = 0.0, rho = 0.0;
    uint64_t seed = 0;
    int min_list = 0, max_list = 0;
    double mean_list = 0.0;
    int padding_failures = 0, truncated_lists = 0;
    int empty_support_bits = 0;  // step-4 coordinates with no admissible T
    int undecodable_words = 0;   // words outside the unique-decoding radius
    int ambiguous_words = 0;     // unique-decoding ties
    std::vector<GroupReport> groups;
    std::vector<WordReport> words;          // deduplicated step-4 words
    std::vector<CodewordReport> codewords;  // decode mode only
    std::vector<StageFailure> failures;
};

struct DecodeOutcome {
    std::vector<std::vector<uint8_t>> codewords;  // deduped, agreement-descending
    std::vector<std::vector<uint8_t>> messages;   // aligned with codewords
    DecodeReport report;
};

struct ApproxOutcome {
    std::vector<std::vector<uint8_t>> words;  // deduped, agreement-descending
    DecodeReport report;
};

// Full decoding pass: local lists -> constraint graph -> per-group expander
// extraction -> list UG solving -> word extraction (t_rep repetitions per
// assignment) -> base unique decoding -> dedup and order by agreement.
DecodeOutcome list_decode(const DoubleSampler& ds, const BaseCode& code, const ReceivedWord& w,
                          const DecodeConfig& cfg);

// same pipeline without the base decoder; outputs the step-4 words
ApproxOutcome approx_list_decode(const DoubleSampler& ds, const ReceivedWord& w, const DecodeConfig& cfg);

}  // namespace dsamp
