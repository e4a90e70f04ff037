#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fibarc/templates.hpp"
#include "support.hpp"
#include "template_oracle.hpp"

using namespace fibarc;
using namespace testing_support;

namespace {

Presentation e2() {
    Presentation p;
    p.prime = 2;
    p.row_grades = {g(1, 0), g(0, 1)};
    p.col_grades = {g(1, 1)};
    p.columns = {{{0, {1}}, {1, {1}}}};
    return p;
}

Grade member(const LiftState& st, int s) { return st.points()[static_cast<std::size_t>(s)]; }

std::vector<std::vector<Grade>> level_grades(const LiftState& st) {
    std::vector<std::vector<Grade>> out;
    for (const auto& level : st.level_sets()) {
        out.emplace_back();
        for (int s : level) out.back().push_back(member(st, s));
    }
    return out;
}

struct Built {
    GradedSupport sup;
    Arrangement arr;
    DualGraph graph;
    Walk walk;
};

Built build_all(const Presentation& p) {
    Built b;
    b.sup = graded_support(p);
    b.arr = Arrangement::build(compute_anchors(b.sup.points));
    b.graph = weighted_dual_graph(b.sup, b.arr);
    b.walk = mst_walk(b.graph, initial_face(b.sup, b.arr));
    return b;
}

}  // namespace

TEST_CASE("graded support sorts rows and columns colexicographically") {
    Presentation p;
    p.prime = 3;
    p.row_grades = {g(0, 2), g(1, 0), g(0, 2)};
    p.col_grades = {g(2, 2), g(1, 1)};
    p.columns = {{{0, {1}}, {2, {2}}}, {{1, {1}}}};
    const auto s = graded_support(p);
    CHECK(s.points == std::vector<Grade>{g(1, 0), g(1, 1), g(0, 2), g(2, 2)});
    CHECK(s.sorted.row_grades == std::vector<Grade>{g(1, 0), g(0, 2), g(0, 2)});
    CHECK(s.sorted.col_grades == std::vector<Grade>{g(1, 1), g(2, 2)});
    CHECK(s.sorted.columns[0] == SparseVec{{0, {1}}});
    CHECK(s.sorted.columns[1] == SparseVec{{1, {1}}, {2, {2}}});
    CHECK(s.row_point == std::vector<int>{0, 2, 2});
    CHECK(s.col_point == std::vector<int>{1, 3});
    CHECK(s.row_count == std::vector<std::size_t>{1, 0, 2, 0});
    CHECK(s.col_count == std::vector<std::size_t>{0, 1, 0, 1});
    CHECK(s.index_of(g(2, 2)) == 3);
    CHECK(s.index_of(g(5, 5)) == -1);
}

TEST_CASE("partitions along lines of the two-generator example") {
    const auto s = graded_support(e2());
    // points in colex order: (1,0), (0,1), (1,1)
    REQUIRE(s.points == std::vector<Grade>{g(1, 0), g(0, 1), g(1, 1)});
    CHECK(partition_along_line(s.points, QueryLine::with_slope(Rational(1), Rational(1))) == Partition{{1}, {0, 2}});
    CHECK(partition_along_line(s.points, QueryLine::with_slope(Rational(1), Rational(-2))) == Partition{{0}, {1, 2}});
    CHECK(partition_along_line(s.points, QueryLine::with_slope(Rational(1), Rational(-1))) == Partition{{0}, {1, 2}});
    CHECK_THROWS_AS(partition_along_line(s.points, QueryLine::with_slope(Rational(0), Rational(0))), PreconditionError);
    CHECK_THROWS_AS(partition_along_line(s.points, QueryLine::vertical(Rational(0))), PreconditionError);
}

TEST_CASE("initial lift of the two-generator example") {
    const auto s = graded_support(e2());
    const auto st = LiftState::initial(s.points);
    CHECK(st.lift(0) == g(1, 0));
    CHECK(st.lift(1) == g(1, 1));
    CHECK(st.lift(2) == g(1, 1));
    CHECK(st.template_points() == std::vector<Grade>{g(1, 0), g(1, 1)});
    CHECK(st.level_sets() == Partition{{0}, {1, 2}});
}

TEST_CASE("induced presentation at the initial face") {
    const auto s = graded_support(e2());
    const auto lift = LiftState::initial(s.points);
    const auto ru = RUState::standard_reduce(s.sorted.matrix(), s.sorted.field());
    // rows: the generator at (1,0), then the one at (0,1) lifted to (1,1)
    CHECK(s.sorted.row_grades == std::vector<Grade>{g(1, 0), g(0, 1)});
    CHECK(lift.lift(s.row_point[0]) == g(1, 0));
    CHECK(lift.lift(s.row_point[1]) == g(1, 1));
    CHECK(lift.lift(s.col_point[0]) == g(1, 1));
    CHECK(strongly_ordered(s, lift, ru));
    CHECK(ru.verify(induced_matrix(s, ru)));
    CHECK(read_template(s, lift, ru) == BarcodeTemplate{{g(1, 0), std::nullopt}});
}

TEST_CASE("block swap of sizes two and three takes six transpositions") {
    // generators (0,2),(0,2) against (3,0),(3,0),(3,0); their join is the only anchor
    Presentation p;
    p.prime = 3;
    p.row_grades = {g(0, 2), g(0, 2), g(3, 0), g(3, 0), g(3, 0)};
    auto b = build_all(p);
    REQUIRE(b.arr.anchors().size() == 1);
    REQUIRE(b.graph.edges.size() == 1);
    CHECK(b.graph.edges[0].weight == 6);
    const auto res = compute_templates(b.sup, b.arr, b.graph, b.walk);
    CHECK(res.stats.transpositions == 6);
    CHECK(res.stats.generic == 1);
}

TEST_CASE("from_partition builds prefix joins") {
    const std::vector<Grade> pts = {g(1, 0), g(0, 1), g(1, 1)};
    const auto st = LiftState::from_partition(pts, {{1}, {0, 2}});
    CHECK(st.template_points() == std::vector<Grade>{g(0, 1), g(1, 1)});
    CHECK(st.position_of(0) == 1);
    CHECK_THROWS_AS(LiftState::from_partition(pts, {{1}, {}}), PreconditionError);
    CHECK_THROWS_AS(LiftState::from_partition(pts, {{1}, {0}}), PreconditionError);
}

TEST_CASE("generic, merge and split crossings") {
    const std::vector<Grade> pts = {g(0, 0), g(2, 1), g(0, 2)};
    auto anchors = compute_anchors(pts);
    REQUIRE(anchors.size() == 2);
    const Anchor low = anchors[0];   // (0,2), on the line x = 0
    const Anchor high = anchors[1];  // (2,2)
    REQUIRE(low.point == g(0, 2));
    REQUIRE(!low.generic);
    REQUIRE(high.point == g(2, 2));
    REQUIRE(high.generic);

    auto st = LiftState::initial(pts);
    CHECK(st.template_points() == std::vector<Grade>{g(0, 0), g(2, 1), g(2, 2)});
    CHECK_THROWS_AS((void)st.classify(low), InternalError);

    CHECK(st.classify(high) == Crossing::Generic);
    auto up = st.cross(high);
    CHECK(up.kind == Crossing::Generic);
    CHECK(up.j == 2);
    CHECK(up.lower == std::vector<int>{1});
    CHECK(up.upper == std::vector<int>{2});
    CHECK(level_grades(st) == std::vector<std::vector<Grade>>{{g(0, 0)}, {g(0, 2)}, {g(2, 1)}});
    CHECK(st.template_points() == std::vector<Grade>{g(0, 0), g(0, 2), g(2, 2)});

    CHECK(st.classify(low) == Crossing::Merge);
    st.cross(low);
    CHECK(level_grades(st) == std::vector<std::vector<Grade>>{{g(0, 0), g(0, 2)}, {g(2, 1)}});
    CHECK(st.template_points() == std::vector<Grade>{g(0, 2), g(2, 2)});
    CHECK(st.lift(0) == g(0, 2));

    CHECK(st.classify(low) == Crossing::Split);
    st.cross(low);
    CHECK(level_grades(st) == std::vector<std::vector<Grade>>{{g(0, 0)}, {g(0, 2)}, {g(2, 1)}});
    CHECK(st.template_points() == std::vector<Grade>{g(0, 0), g(0, 2), g(2, 2)});

    // Crossing back over the generic line restores the initial state.
    st.cross(high);
    CHECK(level_grades(st) == std::vector<std::vector<Grade>>{{g(0, 0)}, {g(2, 1)}, {g(0, 2)}});
    CHECK(st.template_points() == std::vector<Grade>{g(0, 0), g(2, 1), g(2, 2)});
}

TEST_CASE("templates of the two-generator example") {
    auto b = build_all(e2());
    REQUIRE(b.arr.num_faces() == 2);
    REQUIRE(b.graph.edges.size() == 1);
    CHECK(b.graph.edges[0].weight == 1);
    const int top = b.arr.top_face();
    CHECK(b.walk.faces == std::vector<int>{top, 1 - top});
    for (auto strategy : {UpdateStrategy::Vineyard, UpdateStrategy::Global}) {
        TemplateOptions opt;
        opt.strategy = strategy;
        const auto res = compute_templates(b.sup, b.arr, b.graph, b.walk, opt);
        CHECK(res.templates[static_cast<std::size_t>(top)] == BarcodeTemplate{{g(1, 0), std::nullopt}});
        CHECK(res.templates[static_cast<std::size_t>(1 - top)] == BarcodeTemplate{{g(0, 1), std::nullopt}});
        CHECK(res.stats.crossings == 1);
        CHECK(res.stats.generic == 1);
        CHECK(res.stats.transpositions == 1);
    }
}

TEST_CASE("empty support has one face with an empty template") {
    Presentation p;
    p.prime = 5;
    auto b = build_all(p);
    CHECK(b.arr.num_faces() == 1);
    const auto res = compute_templates(b.sup, b.arr, b.graph, b.walk);
    REQUIRE(res.templates.size() == 1);
    CHECK(res.templates[0].empty());
}

TEST_CASE("random presentations: per-face audit of the walk") {
    std::mt19937_64 rng(20261014);
    const std::uint32_t primes[] = {2, 3, 7, 65521};
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_presentation(rng, primes[trial % 4], 5 + trial / 4, 4 + trial % 3);
        auto b = build_all(p);
        CAPTURE(trial);
        const std::size_t rc = p.size();
        std::vector<bool> seen(b.arr.num_faces(), false);
        std::size_t steps = 0;

        TemplateOptions opt;
        opt.on_step = [&](const TemplateStep& st) {
            ++steps;
            const int f = st.face;
            const Face& face = b.arr.faces()[static_cast<std::size_t>(f)];
            CHECK(st.ru.verify(induced_matrix(b.sup, st.ru)));
            CHECK(strongly_ordered(b.sup, st.lift, st.ru));
            CHECK(st.lift.normalized() == partition_along_line(b.sup.points, line_dual_to(face.rep)));
            const auto expected = template_from_scratch(b.sup, st.lift);
            CHECK(read_template(b.sup, st.lift, st.ru) == expected);
            seen[static_cast<std::size_t>(f)] = true;
        };
        const auto vine = compute_templates(b.sup, b.arr, b.graph, b.walk, opt);
        CHECK(steps == b.walk.faces.size());
        CHECK(std::all_of(seen.begin(), seen.end(), [](bool v) { return v; }));
        CHECK(vine.stats.crossings == b.walk.steps.size());
        CHECK(vine.stats.generic + vine.stats.merges + vine.stats.splits == vine.stats.crossings);
        CHECK(vine.stats.transpositions == walk_weight(b.graph, b.walk));
        CHECK(vine.stats.max_touched_per_transposition <= 10 * rc);

        TemplateOptions global;
        global.strategy = UpdateStrategy::Global;
        const auto glob = compute_templates(b.sup, b.arr, b.graph, b.walk, global);
        CHECK(glob.templates == vine.templates);
        CHECK(glob.stats.transpositions == vine.stats.transpositions);
    }
}

TEST_CASE("walk must start at the initial face") {
    auto b = build_all(e2());
    Walk w = b.walk;
    std::reverse(w.faces.begin(), w.faces.end());
    CHECK_THROWS_AS(compute_templates(b.sup, b.arr, b.graph, w), PreconditionError);
}
