#include "dsamp/codes.hpp"

#include <algorithm>
#include <cmath>

#include "dsamp/rng.hpp"

namespace dsamp {

std::vector<uint8_t> BaseCode::encode(const std::vector<uint8_t>& msg) const {
    if ((int)msg.size() != k) throw std::invalid_argument("message length mismatch");
    std::vector<uint8_t> out(n, 0);
    for (int i = 0; i < k; ++i)
        if (msg[i])
            for (int j = 0; j < n; ++j) out[j] ^= generator[i][j];
    return out;
}

std::vector<std::vector<uint8_t>> BaseCode::all_codewords() const {
    if (k > 20) throw std::invalid_argument("codeword enumeration needs k <= 20");
    std::vector<std::vector<uint8_t>> out;
    out.reserve(1u << k);
    std::vector<uint8_t> msg(k, 0);
    for (uint32_t m = 0; m < (1u << k); ++m) {
        for (int i = 0; i < k; ++i) msg[i] = (m >> i) & 1;
        out.push_back(encode(msg));
    }
    return out;
}

BaseCode repetition_code(int n, double epsilon0) {
    BaseCode c;
    c.n = n;
    c.k = 1;
    c.epsilon0 = epsilon0;
    c.generator = {std::vector<uint8_t>(n, 1)};
    return c;
}

BaseCode identity_code(int n) {
    BaseCode c;
    c.n = n;
    c.k = n;
    c.epsilon0 = 0.0;
    c.generator.assign(n, std::vector<uint8_t>(n, 0));
    for (int i = 0; i < n; ++i) c.generator[i][i] = 1;
    return c;
}

namespace {

int rank_f2(std::vector<std::vector<uint8_t>> rows) {
    int rank = 0;
    const int n = rows.empty() ? 0 : (int)rows[0].size();
    for (int col = 0; col < n && rank < (int)rows.size(); ++col) {
        int pivot = -1;
        for (int r = rank; r < (int)rows.size(); ++r)
            if (rows[r][col]) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < (int)rows.size(); ++r)
            if (r != rank && rows[r][col])
                for (int j = 0; j < n; ++j) rows[r][j] ^= rows[rank][j];
        ++rank;
    }
    return rank;
}

}  // namespace

int code_min_distance(const BaseCode& c) {
    auto words = c.all_codewords();
    int best = c.n + 1;
    for (size_t i = 1; i < words.size(); ++i) {
        int wt = 0;
        for (int j = 0; j < c.n; ++j) wt += words[i][j];
        best = std::min(best, wt);
    }
    return best;  // linear code: min distance = min nonzero weight
}

BaseCode random_linear_code(int n, int k, double epsilon0, uint64_t seed, int min_distance) {
    if (k > 20 || k <= 0 || n <= 0 || k > n) throw std::invalid_argument("need 0 < k <= min(n, 20)");
    for (uint64_t attempt = 0;; ++attempt) {
        Rng rng(derive_seed(seed, {0xC0DEu, attempt}));
        BaseCode c;
        c.n = n;
        c.k = k;
        c.epsilon0 = epsilon0;
        c.generator.assign(k, std::vector<uint8_t>(n, 0));
        for (auto& row : c.generator)
            for (auto& b : row) b = (uint8_t)(rng.next_u64() & 1);
        if (rank_f2(c.generator) != k) continue;
        if (min_distance > 0 && code_min_distance(c) < min_distance) continue;
        return c;
    }
}

std::optional<std::vector<uint8_t>> brute_force_unique_decode(const BaseCode& c, const std::vector<uint8_t>& w) {
    if ((int)w.size() != c.n) throw std::invalid_argument("word length mismatch");
    if (c.k > 20) throw std::invalid_argument("unique decoding needs k <= 20");
    int best = c.n + 1;
    bool tie = false;
    std::vector<uint8_t> best_msg;
    std::vector<uint8_t> msg(c.k, 0);
    for (uint32_t m = 0; m < (1u << c.k); ++m) {
        for (int i = 0; i < c.k; ++i) msg[i] = (m >> i) & 1;
        auto cw = c.encode(msg);
        int d = 0;
        for (int j = 0; j < c.n; ++j) d += cw[j] != w[j];
        if (d < best) {
            best = d;
            best_msg = msg;
            tie = false;
        } else if (d == best) {
            tie = true;
        }
    }
    const double radius = c.epsilon0 * c.n + 1e-12;
    if ((double)best > radius) return std::nullopt;
    if (tie) throw DecodingAmbiguity();
    return best_msg;
}

Bits restrict_to_set(const std::vector<uint8_t>& g, const std::vector<int>& set) {
    Bits b(0, (int)set.size());
    for (size_t i = 0; i < set.size(); ++i) b.set((int)i, g[set[i]]);
    return b;
}

ReceivedWord enc(const DoubleSampler& ds, const std::vector<uint8_t>& g) {
    if ((int)g.size() != ds.ground_size()) throw std::invalid_argument("word length mismatch");
    ReceivedWord w;
    w.f.reserve(ds.num_v1());
    for (int s = 0; s < ds.num_v1(); ++s) w.f.push_back(restrict_to_set(g, ds.set_v1(s)));
    return w;
}

ReceivedWord corrupt(const ReceivedWord& w, double epsilon, CorruptMode mode, uint64_t seed) {
    if (!(epsilon > 0 && epsilon <= 1)) throw std::invalid_argument("epsilon must lie in (0, 1]");
    const size_t total = w.f.size();
    const size_t keep = (size_t)std::ceil(epsilon * (double)total - 1e-12);
    Rng rng(derive_seed(seed, {0xC0441Du}));
    auto survivors = rng.sample_without_replacement(total, keep);
    std::vector<char> is_survivor(total, 0);
    for (size_t i : survivors) is_survivor[i] = 1;
    ReceivedWord out = w;
    for (size_t i = 0; i < total; ++i) {
        if (is_survivor[i]) continue;
        if (mode == CorruptMode::adversarial_planted) {
            out.f[i] = w.f[i].complemented();
        } else {
            out.f[i] = Bits((uint32_t)rng.next_below(1ull << w.f[i].len), w.f[i].len);
        }
    }
    return out;
}

double agreement(const DoubleSampler& ds, const ReceivedWord& w, const std::vector<uint8_t>& g) {
    if ((int)w.f.size() != ds.num_v1()) throw std::invalid_argument("received word does not match the sampler");
    double acc = 0.0;
    for (int s = 0; s < ds.num_v1(); ++s)
        if (w.f[s] == restrict_to_set(g, ds.set_v1(s))) acc += ds.pi1()[s];
    return acc;
}

}  // namespace dsamp
