#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fibarc/augmented.hpp"
#include "fibarc/oracle.hpp"
#include "fibarc/verify.hpp"
#include "fixtures.hpp"
#include "printers.hpp"

using namespace fibarc;
using namespace testing_support;

namespace {

QueryLine line(long q, long r) { return QueryLine::with_slope(Rational(q), Rational(r)); }

// Template of a given face pushed onto a line, with empty intervals removed.
Barcode pushed(const AugmentedArrangement& aug, int face, const QueryLine& l) {
    Barcode out;
    for (const TemplatePair& t : aug.templates()[static_cast<std::size_t>(face)]) {
        ExtGrade a = push(l, t.birth);
        ExtGrade b = t.death ? push(l, *t.death) : kInfinity;
        if (ext_lex_less(a, b)) out.push_back({*a, b});
    }
    canonicalize(out);
    return out;
}

double locate_bound(const Arrangement& arr) {
    return 2.0 * std::log2(static_cast<double>(arr.num_vertices()) + 2.0) + 8.0;
}

}  // namespace

TEST_CASE("two-generator example end to end") {
    const auto aug = AugmentedArrangement::build(e2_presentation());
    CHECK(aug.arrangement().num_faces() == 2);
    CHECK(aug.arrangement().anchors().size() == 1);
    CHECK(aug.templates().size() == 2);

    CHECK(query_barcode(aug, line(1, 1)) == Barcode{{g(0, 1), std::nullopt}});
    CHECK(query_barcode(aug, line(1, -2)) == Barcode{{g(2, 0), std::nullopt}});

    const int top = aug.arrangement().top_face();
    CHECK(select_face(aug, line(1, -2)) == top);
    CHECK(select_face(aug, line(1, 1)) == 1 - top);
    CHECK(select_face(aug, QueryLine::vertical(Rational(5))) == top);

    // y = x is dual to a point on the anchor line; both cofaces agree
    const auto on = line(1, 0);
    CHECK(pushed(aug, 0, on) == pushed(aug, 1, on));
    CHECK(query_barcode(aug, on) == oracle_barcode(aug.presentation(), on));

    CHECK(query_barcode(aug, line(0, -1)).empty());
    CHECK_THROWS_AS(line(-1, 0), DomainError);
}

TEST_CASE("free module has a single face") {
    const auto aug = AugmentedArrangement::build(free_presentation());
    CHECK(aug.arrangement().num_faces() == 1);
    REQUIRE(aug.templates().size() == 1);
    CHECK(aug.templates()[0].size() == 3);
    for (const auto& t : aug.templates()[0]) CHECK(!t.death);
    for (long r = -3; r <= 3; ++r) {
        CHECK(query_barcode(aug, line(1, r)) == oracle_barcode(aug.presentation(), line(1, r)));
    }
}

TEST_CASE("invalid presentations are rejected") {
    auto p = e2_presentation();
    p.col_grades[0] = g(0, 0);
    CHECK_THROWS_AS(AugmentedArrangement::build(p), PreconditionError);
}

TEST_CASE("query statistics") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const auto aug = AugmentedArrangement::build(random_presentation(rng, 2, 18, 6));
        for (const auto& s : sample_lines(aug, rng, 70)) {
            QueryStats st;
            const auto b = query_barcode(aug, s.line, &st);
            CHECK(st.face >= 0);
            CHECK(st.pairs_pushed == aug.templates()[static_cast<std::size_t>(st.face)].size());
            CHECK(static_cast<double>(st.comparisons) <= locate_bound(aug.arrangement()));
            if (s.kind == LineKind::InFace || s.kind == LineKind::Random) {
                // a generic positive-slope line loses no template pair
                if (aug.arrangement().locate(dual_point(s.line)).kind == Cell::Kind::Face) CHECK(b.size() == st.pairs_pushed);
            }
            const QueryStats again = query_stats(aug, s.line);
            CHECK(again.face == st.face);
            CHECK(again.comparisons == st.comparisons);
        }
    }
}

TEST_CASE("queries agree with the oracle on random presentations") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_presentation(rng, trial % 2 ? 5 : 2, 24, 4 + trial % 5);
        const auto aug = AugmentedArrangement::build(p);
        CAPTURE(trial);
        for (const auto& s : sample_lines(aug, rng, 70)) {
            CAPTURE(s.line.to_string());
            CAPTURE(to_string(s.kind));
            const auto b = query_barcode(aug, s.line);
            CHECK(b == oracle_barcode(p, s.line));
            for (const Interval& i : b) {
                CHECK(s.line.contains(i.birth));
                if (i.death) {
                    CHECK(s.line.contains(*i.death));
                    CHECK(LexLess{}(i.birth, *i.death));
                }
            }
        }
    }
}

TEST_CASE("every coface of a skeleton point gives the same answer") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto aug = AugmentedArrangement::build(random_presentation(rng, 3, 20, 5));
        const Arrangement& arr = aug.arrangement();
        for (const auto& s : sample_lines(aug, rng, 70)) {
            if (s.line.is_vertical() || s.line.is_horizontal()) continue;
            const Cell c = arr.locate(dual_point(s.line));
            if (c.kind == Cell::Kind::Face) continue;
            const auto faces = arr.cofaces(c);
            REQUIRE(faces.size() >= 2);
            const auto expected = query_barcode(aug, s.line);
            for (int f : faces) CHECK(pushed(aug, f, s.line) == expected);
        }
    }
}

TEST_CASE("partitions are constant on faces") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const auto aug = AugmentedArrangement::build(random_presentation(rng, 2, 16, 5));
        const auto& pts = aug.support().points;
        const Arrangement& arr = aug.arrangement();
        for (int f = 0; f < static_cast<int>(arr.num_faces()); ++f) {
            const auto expected = partition_along_line(pts, line_dual_to(arr.faces()[static_cast<std::size_t>(f)].rep));
            for (int k = 0; k < 25; ++k) {
                const Grade p = random_point_in_face(arr, f, rng);
                CHECK(arr.locate(p) == Cell{Cell::Kind::Face, f});
                CHECK(partition_along_line(pts, line_dual_to(p)) == expected);
            }
        }
    }
}

TEST_CASE("push of a join is the largest push") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Grade> xs;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) xs.push_back({random_rational(rng, 4), random_rational(rng, 4)});
        Rational q = random_rational(rng, 3);
        if (q.sign() <= 0) q = -q + Rational(1, 3);
        const auto l = QueryLine::with_slope(q, random_rational(rng, 4));
        Grade best = *push(l, xs[0]);
        for (const Grade& x : xs) {
            const Grade p = *push(l, x);
            if (LexLess{}(best, p)) best = p;
        }
        CHECK(*push(l, join(std::span<const Grade>(xs))) == best);
    }
}

TEST_CASE("lift order changes exactly at generic crossings") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto aug = AugmentedArrangement::build(random_presentation(rng, 2, 14, 5));
        const Arrangement& arr = aug.arrangement();
        const auto& pts = aug.support().points;
        for (const DualEdge& e : aug.dual_graph().edges) {
            auto state = [&](int f) {
                return LiftState::from_partition(pts, partition_along_line(pts, line_dual_to(arr.faces()[static_cast<std::size_t>(f)].rep)));
            };
            const auto a = state(e.a);
            const auto b = state(e.b);
            const Anchor& alpha = arr.anchors()[static_cast<std::size_t>(e.line)];
            for (int s = 0; s < static_cast<int>(pts.size()); ++s) {
                for (int t = 0; t < static_cast<int>(pts.size()); ++t) {
                    if (s == t) continue;
                    const bool before = a.position_of(s) < a.position_of(t);
                    const bool after = b.position_of(s) > b.position_of(t);
                    const bool swapped = before && after;
                    const bool expected = alpha.generic && weakly_incomparable(pts[static_cast<std::size_t>(s)], pts[static_cast<std::size_t>(t)]) &&
                                          join(pts[static_cast<std::size_t>(s)], pts[static_cast<std::size_t>(t)]) == alpha.point;
                    if (swapped) CHECK(expected);
                }
            }
        }
    }
}

TEST_CASE("push is continuous in the line") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const Grade a{random_rational(rng, 5), random_rational(rng, 5)};
        Rational q = random_rational(rng, 3);
        if (q.sign() <= 0) q = -q + Rational(1, 2);
        const Rational r = random_rational(rng, 5);
        const Grade base = *push(QueryLine::with_slope(q, r), a);
        Rational previous(-1);
        for (long k : {10L, 1000L, 100000L}) {
            const Rational eps(1, k);
            const Grade near = *push(QueryLine::with_slope(q + eps, r - eps), a);
            Rational d = max(near.x - base.x, base.x - near.x) + max(near.y - base.y, base.y - near.y);
            if (previous.sign() >= 0) CHECK(d <= previous);
            previous = d;
        }
        CHECK(previous <= Rational(1, 100));
    }
}
