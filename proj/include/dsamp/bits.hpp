#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsamp {

// Strings over {0,1}^m for m <= 25 (local views, list entries, per-copy
// symbols). Bit i holds the value at the i-th element of the owning set in
// sorted order.
struct Bits {
    uint32_t word = 0;
    int len = 0;

    Bits() = default;
    Bits(uint32_t w, int l) : word(w), len(l) {}

    int get(int i) const { return (word >> i) & 1u; }
    void set(int i, int v) {
        if (v)
            word |= (1u << i);
        else
            word &= ~(1u << i);
    }
    Bits complemented() const { return Bits(~word & mask(), len); }
    uint32_t mask() const { return len >= 32 ? 0xffffffffu : ((1u << len) - 1u); }

    friend bool operator==(const Bits& a, const Bits& b) { return a.len == b.len && a.word == b.word; }
    friend bool operator!=(const Bits& a, const Bits& b) { return !(a == b); }
    friend bool operator<(const Bits& a, const Bits& b) { return a.word < b.word; }

    std::string str() const {
        std::string s(len, '0');
        for (int i = 0; i < len; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }
    static Bits parse(const std::string& s) {
        if (s.size() > 25) throw std::invalid_argument("bit string too long");
        Bits b(0, (int)s.size());
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                b.set((int)i, 1);
            else if (s[i] != '0')
                throw std::invalid_argument("bit string must be over {0,1}");
        }
        return b;
    }
};

inline int hamming(const Bits& a, const Bits& b) { return std::popcount(a.word ^ b.word); }

// normalized distance |{i : a_i != b_i}| / len
inline double dist(const Bits& a, const Bits& b) {
    return a.len == 0 ? 0.0 : (double)hamming(a, b) / (double)a.len;
}

// Restriction of sigma (defined on positions 0..len-1) to the positions in
// `pos`; pos must be increasing.
inline Bits restrict_bits(const Bits& sigma, const std::vector<int>& pos) {
    Bits r(0, (int)pos.size());
    for (size_t i = 0; i < pos.size(); ++i) r.set((int)i, sigma.get(pos[i]));
    return r;
}

// distance between sigma and tau restricted to the given position lists
// (posa indexes into sigma, posb into tau, same length)
inline double dist_on(const Bits& sigma, const std::vector<int>& posa, const Bits& tau, const std::vector<int>& posb) {
    if (posa.empty()) return 0.0;
    int d = 0;
    for (size_t i = 0; i < posa.size(); ++i) d += sigma.get(posa[i]) != tau.get(posb[i]);
    return (double)d / (double)posa.size();
}

}  // namespace dsamp
