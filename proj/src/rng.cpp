#include "dsamp/rng.hpp"

#include <algorithm>

namespace dsamp {

std::vector<size_t> Rng::sample_without_replacement(size_t n, size_t k) {
    if (k > n) k = n;
    // Floyd's algorithm; result sorted for determinism of downstream loops
    std::vector<size_t> out;
    out.reserve(k);
    std::vector<char> taken(n, 0);
    for (size_t j = n - k; j < n; ++j) {
        size_t t = (size_t)next_below(j + 1);
        if (taken[t]) t = j;
        taken[t] = 1;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> tags) {
    uint64_t h = master ^ 0x9e3779b97f4a7c15ull;
    for (uint64_t t : tags) {
        h ^= t + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
    }
    return h;
}

}  // namespace dsamp
