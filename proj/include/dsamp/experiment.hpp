#pragma once

#include <string>

#include "dsamp/io.hpp"

namespace dsamp {

struct ExperimentResult {
    io::ordered_json report;
    std::string csv;  // agreement vs recovery rate
};

// Seeded end-to-end harness: plants a message per (level, trial), pushes it
// through the channel and the decoder, and aggregates recovery rates per
// agreement level. Deterministic: the same config yields a byte-identical
// report.
ExperimentResult run_experiment(const io::ordered_json& config);

}  // namespace dsamp
