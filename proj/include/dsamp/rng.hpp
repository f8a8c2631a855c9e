#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace dsamp {

// Deterministic, platform-independent RNG. std:: distributions are avoided on
// purpose: their output is implementation-defined, and reports must be
// byte-identical for a given seed.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {
        // warm up so that small seeds do not produce correlated streams
        next_u64();
        next_u64();
    }

    uint64_t next_u64() {
        // splitmix64
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0
    uint64_t next_below(uint64_t n) {
        // multiply-shift; bias is < 2^-64 per draw, irrelevant here and
        // deterministic either way
        unsigned __int128 m = (unsigned __int128)next_u64() * n;
        return (uint64_t)(m >> 64);
    }

    // uniform double in [0, 1)
    double next_real() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform double in [a, b)
    double next_real(double a, double b) { return a + (b - a) * next_real(); }

    double next_gaussian() {
        // Box-Muller, always consumes two draws
        double u1 = next_real();
        double u2 = next_real();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = (size_t)next_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), sorted
    std::vector<size_t> sample_without_replacement(size_t n, size_t k);

  private:
    uint64_t state_;
};

// Stable seed derivation for independent substreams, e.g.
// derive_seed(master, {edge_id}) or derive_seed(master, {j, assignment, rep}).
uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> tags);

}  // namespace dsamp
