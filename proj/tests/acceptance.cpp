// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "fibarc/augmented.hpp"
#include "fibarc/io.hpp"
#include "fibarc/oracle.hpp"
#include "fibarc/verify.hpp"
#include "fixtures.hpp"
#include "template_oracle.hpp"

using namespace fibarc;
using namespace testing_support;

namespace {

// Pinned parameters.
constexpr int kRandomPresentations = 56;
constexpr int kMaxTotal = 40;
constexpr int kMaxSide = 8;
constexpr std::size_t kLinesPerPresentation = 126;
constexpr int kInFaceLines = 25;
constexpr std::size_t kTouchedConstant = 10;
constexpr std::uint64_t kSeed = 0x5EED2026;

struct Instance {
    std::string name;
    Presentation p;
    AugmentedArrangement aug;
    std::vector<SampledLine> lines;
};

struct Verdict {
    bool ok = true;
    std::string detail;
    std::string first_failure;

    void fail(const std::string& why) {
        if (ok) first_failure = why;
        ok = false;
    }
};

std::vector<Instance> corpus() {
    std::mt19937_64 rng(kSeed);
    std::vector<Instance> out;
    std::vector<std::pair<std::string, Presentation>> ps = {{"e2", e2_presentation()}, {"free", free_presentation()}};
    for (int i = 0; i < kRandomPresentations; ++i) {
        const std::uint32_t prime = i % 2 ? 5 : 2;
        const int max_total = 10 + (i * 7) % (kMaxTotal - 9);
        const int side = 3 + i % (kMaxSide - 2);
        ps.push_back({"random" + std::to_string(i), random_presentation(rng, prime, max_total, side)});
    }
    for (auto& [name, p] : ps) {
        Instance inst{name, p, AugmentedArrangement::build(p), {}};
        inst.lines = sample_lines(inst.aug, rng, kLinesPerPresentation);
        out.push_back(std::move(inst));
    }
    return out;
}

std::string describe(const Instance& inst, const QueryLine& l) { return inst.name + " on " + l.to_string(); }

Verdict oracle_equivalence(const std::vector<Instance>& c) {
    Verdict v;
    std::map<LineKind, std::size_t> kinds;
    std::size_t total = 0, max_size = 0;
    for (const auto& inst : c) {
        max_size = std::max(max_size, inst.p.size());
        for (const auto& s : inst.lines) {
            ++kinds[s.kind];
            ++total;
            if (query_barcode(inst.aug, s.line) != oracle_barcode(inst.p, s.line)) v.fail(describe(inst, s.line));
        }
    }
    if (c.size() < 52) v.fail("corpus too small");
    for (int k = 0; k <= static_cast<int>(LineKind::Random); ++k) {
        if (kinds[static_cast<LineKind>(k)] == 0) v.fail(std::string("no lines of kind ") + to_string(static_cast<LineKind>(k)));
    }
    std::ostringstream d;
    d << c.size() << " presentations (max n0+n1 = " << max_size << "), " << total << " lines:";
    for (const auto& [k, n] : kinds) d << " " << to_string(k) << "=" << n;
    v.detail = d.str();
    return v;
}

Verdict dual_oracles(const std::vector<Instance>& c) {
    Verdict v;
    std::size_t total = 0;
    for (const auto& inst : c) {
        for (const auto& s : inst.lines) {
            ++total;
            if (oracle_barcode(inst.p, s.line) != barcode_from_ranks(inst.p, s.line)) v.fail(describe(inst, s.line));
        }
    }
    v.detail = std::to_string(total) + " lines";
    return v;
}

Verdict ru_invariants(const std::vector<Instance>& c) {
    Verdict v;
    std::size_t steps = 0;
    for (const auto& inst : c) {
        const auto& sup = inst.aug.support();
        TemplateOptions opt;
        opt.on_step = [&](const TemplateStep& st) {
            ++steps;
            if (!st.ru.verify(induced_matrix(sup, st.ru))) v.fail(inst.name + ": RU check at face " + std::to_string(st.face));
            if (!strongly_ordered(sup, st.lift, st.ru)) v.fail(inst.name + ": not strongly ordered at face " + std::to_string(st.face));
            if (read_template(sup, st.lift, st.ru) != template_from_scratch(sup, st.lift)) {
                v.fail(inst.name + ": template differs from scratch at face " + std::to_string(st.face));
            }
        };
        const auto res = compute_templates(sup, inst.aug.arrangement(), inst.aug.dual_graph(), inst.aug.walk(), opt);
        if (res.templates != inst.aug.templates()) v.fail(inst.name + ": templates not reproducible");
    }
    v.detail = std::to_string(steps) + " walk positions audited";
    return v;
}

Verdict partition_stability(const std::vector<Instance>& c) {
    Verdict v;
    std::mt19937_64 rng(kSeed + 4);
    std::size_t faces = 0;
    for (const auto& inst : c) {
        const Arrangement& arr = inst.aug.arrangement();
        const auto& pts = inst.aug.support().points;
        for (int f = 0; f < static_cast<int>(arr.num_faces()); ++f) {
            ++faces;
            std::optional<Partition> first;
            for (int k = 0; k < kInFaceLines; ++k) {
                const Grade p = random_point_in_face(arr, f, rng);
                if (!(arr.locate(p) == Cell{Cell::Kind::Face, f})) v.fail(inst.name + ": sample left face " + std::to_string(f));
                const auto part = partition_along_line(pts, line_dual_to(p));
                if (!first) {
                    first = part;
                } else if (part != *first) {
                    v.fail(inst.name + ": partition changes inside face " + std::to_string(f));
                }
            }
        }
    }
    v.detail = std::to_string(faces) + " faces x " + std::to_string(kInFaceLines) + " lines";
    return v;
}

Verdict size_bounds(const std::vector<Instance>& c) {
    Verdict v;
    double worst = 0;
    for (const auto& inst : c) {
        const Arrangement& arr = inst.aug.arrangement();
        const std::size_t kappa = grid_size(inst.aug.support().points).kappa();
        const std::size_t cells = 2 * kappa * kappa + 3 * kappa + 4;
        if (arr.num_lines() > kappa + 1) v.fail(inst.name + ": too many lines");
        if (arr.num_vertices() > cells || arr.num_edges() > cells || arr.num_faces() > cells) v.fail(inst.name + ": too many cells");
        if (inst.aug.total_template_pairs() > inst.p.size() * arr.num_faces()) v.fail(inst.name + ": too many template pairs");
        worst = std::max(worst, static_cast<double>(arr.num_faces()) / static_cast<double>(cells));
    }
    std::ostringstream d;
    d << "largest faces/(2k^2+3k+4) = " << worst;
    v.detail = d.str();
    return v;
}

Verdict query_cost(const std::vector<Instance>& c) {
    Verdict v;
    std::size_t queries = 0, worst_cmp = 0, worst_touch = 0;
    for (const auto& inst : c) {
        const Arrangement& arr = inst.aug.arrangement();
        const double bound = 2.0 * std::log2(static_cast<double>(arr.num_vertices()) + 2.0) + 8.0;
        for (const auto& s : inst.lines) {
            ++queries;
            QueryStats st;
            query_barcode(inst.aug, s.line, &st);
            worst_cmp = std::max(worst_cmp, st.comparisons);
            if (static_cast<double>(st.comparisons) > bound) v.fail(describe(inst, s.line) + ": too many comparisons");
            if (st.pairs_pushed != inst.aug.templates()[static_cast<std::size_t>(st.face)].size()) {
                v.fail(describe(inst, s.line) + ": pairs pushed differs from template size");
            }
        }
        const std::size_t rc = inst.p.size();
        const auto& stats = inst.aug.stats();
        worst_touch = std::max(worst_touch, stats.max_touched_per_transposition);
        if (stats.max_touched_per_transposition > kTouchedConstant * rc) v.fail(inst.name + ": vineyard update too expensive");
    }
    std::ostringstream d;
    d << queries << " queries, max comparisons " << worst_cmp << ", max touched per transposition " << worst_touch
      << " (c = " << kTouchedConstant << ")";
    v.detail = d.str();
    return v;
}

Verdict fixed_values(const std::vector<Instance>&) {
    Verdict v;
    const std::vector<Grade> xs = {g(2, 0), g(1, 1), g(0, 2)};
    if (!(join(std::span<const Grade>(xs)) == g(2, 2))) v.fail("join example");
    const auto aug = AugmentedArrangement::build(e2_presentation());
    const auto upper = QueryLine::with_slope(Rational(1), Rational(1));
    const auto lower = QueryLine::with_slope(Rational(1), Rational(-2));
    const Barcode a{{g(0, 1), std::nullopt}};
    const Barcode b{{g(2, 0), std::nullopt}};
    if (query_barcode(aug, upper) != a || oracle_barcode(aug.presentation(), upper) != a) v.fail("E2 on y = x + 1");
    if (query_barcode(aug, lower) != b || oracle_barcode(aug.presentation(), lower) != b) v.fail("E2 on y = x - 2");
    // the same answers after a save/load cycle
    const auto loaded = load_arrangement(save_arrangement(aug));
    if (query_barcode(loaded, upper) != a || query_barcode(loaded, lower) != b) v.fail("E2 after reload");
    v.detail = "join{(2,0),(1,1),(0,2)} = (2,2); E2: " + to_string(query_barcode(aug, upper)) + " and " + to_string(query_barcode(aug, lower));
    return v;
}

Verdict walk_validity(const std::vector<Instance>& c) {
    Verdict v;
    std::uint64_t walk_total = 0, mst_total = 0;
    for (const auto& inst : c) {
        const auto& g = inst.aug.dual_graph();
        const auto& w = inst.aug.walk();
        const int start = initial_face(inst.aug.support(), inst.aug.arrangement());
        for (const auto& msg : audit_walk(g, w, start)) v.fail(inst.name + ": " + msg);
        const auto tree = minimum_spanning_tree(g);
        std::vector<bool> in_tree(g.edges.size(), false);
        for (int e : tree) in_tree[static_cast<std::size_t>(e)] = true;
        std::uint64_t off_tree = 0;
        for (int s : w.steps) {
            if (!in_tree[static_cast<std::size_t>(s)]) off_tree += g.edges[static_cast<std::size_t>(s)].weight;
        }
        const std::uint64_t ww = walk_weight(g, w);
        const std::uint64_t tw = tree_weight(g, tree);
        if (ww > 2 * tw + off_tree) v.fail(inst.name + ": walk weight " + std::to_string(ww) + " > 2 x " + std::to_string(tw));
        walk_total += ww;
        mst_total += tw;
    }
    v.detail = "total walk weight " + std::to_string(walk_total) + ", total MST weight " + std::to_string(mst_total);
    return v;
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto c = corpus();
    std::printf("corpus built in %.2fs\n", std::chrono::duration<double>(clock::now() - t0).count());

    const std::pair<const char*, std::function<Verdict(const std::vector<Instance>&)>> criteria[] = {
        {"oracle equivalence", oracle_equivalence},
        {"dual-oracle agreement", dual_oracles},
        {"RU invariants along the walk", ru_invariants},
        {"partition stability", partition_stability},
        {"size bounds", size_bounds},
        {"query cost", query_cost},
        {"fixed-value checks", fixed_values},
        {"walk validity", walk_validity},
    };
    bool all = true;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = clock::now();
        Verdict v;
        try {
            v = check(c);
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(clock::now() - start).count();
        std::printf("%s criterion %d: %s -- %s (%.2fs)\n", v.ok ? "PASS" : "FAIL", index, name, v.detail.c_str(), secs);
        if (!v.ok) std::printf("     first failure: %s\n", v.first_failure.c_str());
        all = all && v.ok;
    }
    return all ? 0 : 1;
}
