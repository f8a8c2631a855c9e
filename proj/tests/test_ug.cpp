#include "doctest.h"

#include <cmath>

#include "dsamp/rng.hpp"
#include "dsamp/ug.hpp"

using namespace dsamp;

namespace {

std::vector<uint8_t> planted_word(int n, uint64_t seed) {
    Rng rng(seed);
    std::vector<uint8_t> g(n);
    for (auto& b : g) b = (uint8_t)(rng.next_u64() & 1);
    return g;
}

// noiseless fixture on the complete complex
struct Fixture {
    DoubleSampler ds;
    std::vector<uint8_t> g;
    ReceivedWord w;
    std::vector<LocalList> lists;
    int labels;

    explicit Fixture(double epsilon = 1.0, double corrupt_to = 1.0, uint64_t seed = 31)
        : ds(complete_complex(10, 2, 4)), g(planted_word(10, seed)) {
        w = enc(ds, g);
        if (corrupt_to < 1.0) w = corrupt(w, corrupt_to, CorruptMode::adversarial_planted, seed + 1);
        ListConfig cfg;
        cfg.epsilon = epsilon;
        cfg.epsilon0 = 0.16;
        lists = decode_all_lists(ds, w, cfg);
        labels = 0;
        for (const auto& l : lists) labels = std::max(labels, (int)l.entries.size());
        labels = std::max(labels, 2);
    }
};

UGInstance random_instance(int n, int labels, uint64_t seed, double density = 0.8) {
    Rng rng(seed);
    UGInstance inst;
    inst.labels = labels;
    WeightedGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v)
            if (u == v ? rng.next_real() < 0.2 : rng.next_real() < density)
                g.add_edge(u, v, 0.2 + rng.next_real());
    g.finalize();
    if (g.total_weight() <= 0) return random_instance(n, labels, seed + 1, density);
    inst.graph = g;
    for (size_t k = 0; k < g.edges().size(); ++k) {
        std::vector<uint8_t> p(labels);
        std::iota(p.begin(), p.end(), 0);
        rng.shuffle(p);
        inst.perms.push_back(p);
    }
    return inst;
}

}  // namespace

TEST_CASE("radius partition") {
    Fixture fx;
    auto groups = radius_partition(fx.lists, fx.ds.top_weights());
    REQUIRE(groups.members.size() == 1);  // clean decode: every radius is rho
    CHECK(groups.measures[0] == doctest::Approx(1.0).epsilon(1e-9));
    double sum = 0.0;
    for (double m : groups.measures) sum += m;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pad_lists: dummies keep the separation requirement") {
    Fixture fx;
    int failures = -1, truncated = -1;
    auto padded = pad_lists(fx.lists, fx.labels, &failures, &truncated);
    CHECK(failures == 0);
    for (const auto& l : padded) {
        CHECK((int)l.entries.size() == fx.labels);
        for (size_t i = 0; i < l.entries.size(); ++i)
            for (size_t j = i + 1; j < l.entries.size(); ++j)
                if (l.entries[i].score < 0 || l.entries[j].score < 0)  // at least one dummy
                    CHECK(dist(l.entries[i].sigma, l.entries[j].sigma) >= l.radius - 1e-12);
    }

    // truncation: fewer labels than entries
    int tr = 0;
    auto shorter = pad_lists(fx.lists, 2, nullptr, &tr);
    CHECK(tr > 0);
    for (const auto& l : shorter) CHECK((int)l.entries.size() == 2);

    // impossible dummy: radius above the diameter flags the padding
    LocalList impossible;
    impossible.tcopy = 0;
    impossible.T = {0, 1, 2};
    impossible.entries = {{Bits::parse("000"), 1.0}};
    impossible.radius = 2.0;
    int fail2 = 0;
    auto flagged = pad_lists({impossible}, 3, &fail2, nullptr);
    CHECK(fail2 == 1);
    CHECK(flagged[0].entries.size() == 3);
}

TEST_CASE("constraint graph: noiseless correctness and determinism") {
    Fixture fx;
    auto inst = build_constraint_graph(fx.ds, fx.lists, fx.labels, 777);
    inst.validate();
    CHECK(inst.padding_failures == 0);

    // noiseless: the g-closest index is matched across every edge
    auto groups = radius_partition(fx.lists, fx.ds.top_weights());
    auto fractions = correct_edge_fraction(inst, fx.g, groups);
    REQUIRE(fractions.size() == 1);
    CHECK(fractions[0] == doctest::Approx(1.0).epsilon(1e-9));

    // the planted assignment (g-closest index per vertex) has value 1
    Assignment planted(fx.ds.num_v2());
    for (int t = 0; t < fx.ds.num_v2(); ++t) {
        Bits gt = restrict_to_set(fx.g, inst.lists[t].T);
        int best = 0;
        double bd = 2.0;
        for (int j = 0; j < inst.labels; ++j) {
            double d = dist(inst.lists[t].entries[j].sigma, gt);
            if (d < bd - 1e-15) {
                bd = d;
                best = j;
            }
        }
        planted[t] = best;
    }
    CHECK(ug_value(inst, planted) == doctest::Approx(1.0).epsilon(1e-9));

    // unrelated word scores near zero
    auto unrelated = correct_edge_fraction(inst, planted_word(10, 999), groups);
    CHECK(unrelated[0] <= 0.2);

    // determinism
    auto inst2 = build_constraint_graph(fx.ds, fx.lists, fx.labels, 777);
    CHECK(inst.perms == inst2.perms);
    auto inst3 = build_constraint_graph(fx.ds, fx.lists, fx.labels, 778);
    (void)inst3;  // different seed may differ; only construction must succeed
}

TEST_CASE("constraint graph: self-loop gives identity on the matched prefix") {
    Fixture fx;
    auto inst = build_constraint_graph(fx.ds, fx.lists, fx.labels, 4);
    const auto& edges = inst.graph.edges();
    for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].u != edges[k].v) continue;
        // identical lists on both sides: the scan matches i to i while real
        // entries are pairwise >= r apart on S or exactly equal
        const auto& l = inst.lists[edges[k].u];
        bool all_real_distinct = true;
        for (size_t i = 0; i < l.entries.size() && all_real_distinct; ++i)
            for (size_t j = i + 1; j < l.entries.size(); ++j)
                if (l.entries[i].sigma == l.entries[j].sigma) all_real_distinct = false;
        if (!all_real_distinct) continue;
        CHECK(inst.perms[k][0] == 0);  // top entry always matches itself first
    }
}

TEST_CASE("constraint graph: good edges imply correct constraints (hand fixture)") {
    // deterministic shared S = {1,2}
    DoubleSampler ds(4, 2, 3, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1, 2}, {1, 2, 3}}, {});
    std::vector<uint8_t> g = {0, 0, 0, 0};
    LocalList l1;
    l1.tcopy = 0;
    l1.T = {0, 1, 2};
    l1.entries = {{Bits::parse("000"), 1.0}, {Bits::parse("111"), 0.5}};
    l1.radius = 0.9;
    LocalList l2 = l1;
    l2.tcopy = 1;
    l2.T = {1, 2, 3};
    auto inst = build_constraint_graph(ds, {l1, l2}, 2, 12345);
    inst.validate();
    // both (S, T1), (S, T2) are good w.r.t. g: the closest entries are matched
    const auto& edges = inst.graph.edges();
    for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].u == 0 && edges[k].v == 1) {
            CHECK(inst.perms[k][0] == 0);
            CHECK(inst.perms[k][1] == 1);
        }
    }
}

TEST_CASE("constraint graph: no matches yields the canonical ascending fill") {
    DoubleSampler ds(4, 2, 3, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1, 2}, {1, 2, 3}}, {});
    LocalList l1;
    l1.tcopy = 0;
    l1.T = {0, 1, 2};
    l1.entries = {{Bits::parse("000"), 1.0}, {Bits::parse("001"), 0.5}};
    l1.radius = 0.05;
    LocalList l2;
    l2.tcopy = 1;
    l2.T = {1, 2, 3};
    l2.entries = {{Bits::parse("110"), 1.0}, {Bits::parse("101"), 0.5}};
    l2.radius = 0.05;
    // on S = {1,2}: T1 restrictions are 00 and 01, T2 restrictions are 11 and
    // 10; every cross distance exceeds r/2, so nothing matches
    auto inst = build_constraint_graph(ds, {l1, l2}, 2, 5);
    const auto& edges = inst.graph.edges();
    for (size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].u == 0 && edges[k].v == 1) {
            CHECK(inst.perms[k][0] == 0);  // canonical ascending fill
            CHECK(inst.perms[k][1] == 1);
        }
    }
}

TEST_CASE("ug_value: closed forms and enumeration oracle") {
    // identity constraints: any constant assignment satisfies everything
    auto inst = random_instance(6, 3, 50);
    for (auto& p : inst.perms) std::iota(p.begin(), p.end(), 0);
    CHECK(ug_value(inst, Assignment(6, 1)) == doctest::Approx(1.0));

    // single swap edge
    UGInstance swap2;
    swap2.labels = 2;
    WeightedGraph g2(2);
    g2.add_edge(0, 1, 1.0);
    g2.finalize();
    swap2.graph = g2;
    swap2.perms = {{1, 0}};
    CHECK(ug_value(swap2, {0, 0}) == doctest::Approx(0.0));
    CHECK(ug_value(swap2, {0, 1}) == doctest::Approx(1.0));

    // direct enumeration oracle on a random instance
    auto rnd = random_instance(5, 3, 51);
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        Assignment a(5);
        for (auto& x : a) x = (int)rng.next_below(3);
        double direct = 0.0, tot = 0.0;
        const auto& edges = rnd.graph.edges();
        for (size_t k = 0; k < edges.size(); ++k) {
            double mu = rnd.graph.edge_measure(edges[k].u, edges[k].v);
            tot += mu;
            if (rnd.perms[k][a[edges[k].u]] == a[edges[k].v]) direct += mu;
        }
        CHECK(ug_value(rnd, a) == doctest::Approx(direct / tot).epsilon(1e-12));
    }
}

TEST_CASE("orientation consistency: reverse direction uses the inverse") {
    auto inst = random_instance(6, 4, 77);
    Rng rng(8);
    Assignment a(6);
    for (auto& x : a) x = (int)rng.next_below(4);
    const auto& edges = inst.graph.edges();
    for (size_t k = 0; k < edges.size(); ++k) {
        const auto& p = inst.perms[k];
        std::vector<int> inv(4);
        for (int i = 0; i < 4; ++i) inv[p[i]] = i;
        bool fwd = p[a[edges[k].u]] == a[edges[k].v];
        bool bwd = inv[a[edges[k].v]] == a[edges[k].u];
        CHECK(fwd == bwd);
    }
}

TEST_CASE("induced instance keeps constraints aligned") {
    Fixture fx;
    auto inst = build_constraint_graph(fx.ds, fx.lists, fx.labels, 9);
    std::vector<int> keep;
    for (int t = 0; t < fx.ds.num_v2(); t += 3) keep.push_back(t);
    auto sub = induced_instance(inst, keep);
    sub.validate();
    const auto& sedges = sub.graph.edges();
    for (size_t k = 0; k < sedges.size(); ++k) {
        CHECK(sub.graph.edge_weight(sedges[k].u, sedges[k].v) ==
              doctest::Approx(inst.graph.edge_weight(keep[sedges[k].u], keep[sedges[k].v])));
    }
    // vacuous single-vertex group: fraction reports 1
    auto one = induced_instance(inst, {0});
    RadiusGroups g1;
    g1.indices = {0};
    g1.members = {{0}};
    g1.measures = {1.0};
    auto fr = correct_edge_fraction(one, fx.g, g1);
    if (one.graph.edges().empty()) CHECK(fr[0] == 1.0);
}
