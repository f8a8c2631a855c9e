#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dsamp/bits.hpp"
#include "dsamp/sampler.hpp"

namespace dsamp {

struct DecodingAmbiguity : std::runtime_error {
    DecodingAmbiguity() : std::runtime_error("two codewords tie within the unique-decoding radius") {}
};

// Binary linear code given by a k x n generator; unique decoding is exhaustive
// over the 2^k messages (k <= 20), which doubles as the desk-scale oracle.
struct BaseCode {
    int n = 0;
    int k = 0;
    double epsilon0 = 0.0;
    std::vector<std::vector<uint8_t>> generator;  // k rows of length n

    std::vector<uint8_t> encode(const std::vector<uint8_t>& msg) const;
    std::vector<std::vector<uint8_t>> all_codewords() const;
};

BaseCode repetition_code(int n, double epsilon0);
BaseCode identity_code(int n);  // C = {0,1}^n, epsilon0 = 0
// Deterministic seeded search for a full-rank generator with minimum distance
// >= min_distance (0 = only injectivity).
BaseCode random_linear_code(int n, int k, double epsilon0, uint64_t seed, int min_distance = 0);
int code_min_distance(const BaseCode& c);

// nearest codeword if within radius epsilon0*n; nullopt outside; throws
// DecodingAmbiguity when two codewords tie within the radius
std::optional<std::vector<uint8_t>> brute_force_unique_decode(const BaseCode& c, const std::vector<uint8_t>& w);

// One m1-bit symbol per V1 copy, bits in sorted order of the set's elements.
struct ReceivedWord {
    std::vector<Bits> f;

    bool operator==(const ReceivedWord& o) const { return f == o.f; }
};

ReceivedWord enc(const DoubleSampler& ds, const std::vector<uint8_t>& g);

enum class CorruptMode { random_values, adversarial_planted };

// Keeps exactly ceil(epsilon * |V1|) seeded-uniform survivor copies.
// adversarial_planted complements the corrupted copies (agreement exactly the
// survivor fraction); random_values replaces them with seeded uniform symbols.
ReceivedWord corrupt(const ReceivedWord& w, double epsilon, CorruptMode mode, uint64_t seed);

// Pr_{S ~ Pi_1}[f_S = g|_S], multiset weights
double agreement(const DoubleSampler& ds, const ReceivedWord& w, const std::vector<uint8_t>& g);

Bits restrict_to_set(const std::vector<uint8_t>& g, const std::vector<int>& set);

}  // namespace dsamp
