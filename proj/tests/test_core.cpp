#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "fibarc/grade.hpp"
#include "fibarc/presentation.hpp"

using namespace fibarc;

namespace {

Grade g(long x, long y) { return {Rational(x), Rational(y)}; }

Presentation e2() {
    Presentation p;
    p.row_grades = {g(1, 0), g(0, 1)};
    p.col_grades = {g(1, 1)};
    p.columns = {{{0, {1}}, {1, {1}}}};
    return p;
}

}  // namespace

TEST_CASE("rational parsing is exact") {
    CHECK(Rational::parse("0.5") == Rational(1, 2));
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse("3/6") == Rational(1, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse(".5") == Rational(1, 2));
    CHECK(Rational::parse("+2") == Rational(2));
    Rational r;
    CHECK_FALSE(Rational::try_parse("", r));
    CHECK_FALSE(Rational::try_parse("1/0", r));
    CHECK_FALSE(Rational::try_parse("abc", r));
    CHECK_FALSE(Rational::try_parse("1.2.3", r));
    CHECK_FALSE(Rational::try_parse("-", r));
    CHECK_FALSE(Rational::try_parse("1e5", r));
    CHECK_THROWS_AS(Rational::parse("x"), PreconditionError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), PreconditionError);
}

TEST_CASE("rational printing round-trips") {
    CHECK(Rational(1, 2).to_string() == "0.5");
    CHECK(Rational(-1, 8).to_string() == "-0.125");
    CHECK(Rational(1, 3).to_string() == "1/3");
    CHECK(Rational(-7, 6).to_string() == "-7/6");
    CHECK(Rational(-3).to_string() == "-3");
    CHECK(Rational(21, 20).to_string() == "1.05");
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        long num = static_cast<long>(rng() % 2001) - 1000;
        long den = static_cast<long>(rng() % 400) + 1;
        Rational q(num, den);
        CHECK(Rational::parse(q.to_string()) == q);
    }
}

TEST_CASE("rational ordering") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(max(Rational(2), Rational(3)) == Rational(3));
    CHECK(min(Rational(2), Rational(3)) == Rational(2));
    CHECK(Rational(2, 4).hash() == Rational(1, 2).hash());
}

TEST_CASE("join") {
    std::vector<Grade> three = {g(2, 0), g(1, 1), g(0, 2)};
    CHECK(join(three) == g(2, 2));
    std::vector<Grade> one = {g(3, 7)};
    CHECK(join(one) == g(3, 7));
    std::vector<Grade> two = {g(1, 0), g(0, 1)};
    CHECK(join(two) == g(1, 1));
    CHECK_THROWS_AS(join(std::span<const Grade>{}), PreconditionError);
}

TEST_CASE("join is a semilattice operation") {
    std::mt19937 rng(11);
    auto random_set = [&](std::size_t n) {
        std::vector<Grade> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(g(static_cast<long>(rng() % 10), static_cast<long>(rng() % 10)));
        return out;
    };
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_set(1 + rng() % 5);
        auto y = random_set(1 + rng() % 5);
        std::vector<Grade> both = x;
        both.insert(both.end(), y.begin(), y.end());
        CHECK(join(both) == join(join(x), join(y)));
        CHECK(join(join(x), join(y)) == join(join(y), join(x)));
        CHECK(join(join(x), join(x)) == join(x));
        for (const Grade& p : x) CHECK(p.leq(join(x)));
    }
}

TEST_CASE("weak incomparability") {
    CHECK(weakly_incomparable(g(1, 0), g(0, 1)));
    CHECK(weakly_incomparable(g(1, 0), g(1, 1)));
    CHECK_FALSE(weakly_incomparable(g(0, 0), g(1, 1)));
    CHECK_THROWS_AS(weakly_incomparable(g(1, 1), g(1, 1)), PreconditionError);
    std::mt19937 rng(5);
    for (int i = 0; i < 500; ++i) {
        Grade a = g(static_cast<long>(rng() % 4), static_cast<long>(rng() % 4));
        Grade b = g(static_cast<long>(rng() % 4), static_cast<long>(rng() % 4));
        if (a == b) continue;
        CHECK(weakly_incomparable(a, b) == weakly_incomparable(b, a));
    }
}

TEST_CASE("colex sort") {
    std::vector<Grade> a = {g(1, 0), g(0, 1), g(1, 1)};
    CHECK(colex_sort(a) == std::vector<std::size_t>{0, 1, 2});
    std::vector<Grade> b = {g(0, 2), g(2, 0)};
    CHECK(colex_sort(b) == std::vector<std::size_t>{1, 0});
    std::vector<Grade> ties = {g(1, 1), g(0, 0), g(1, 1), g(0, 0)};
    CHECK(colex_sort(ties) == std::vector<std::size_t>{1, 3, 0, 2});

    std::mt19937 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Grade> pts;
        for (int i = 0; i < 12; ++i) pts.push_back(g(static_cast<long>(rng() % 4), static_cast<long>(rng() % 4)));
        auto order = colex_sort(pts);
        std::vector<Grade> sorted;
        for (auto i : order) sorted.push_back(pts[i]);
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            CHECK_FALSE(ColexLess{}(sorted[i], sorted[i - 1]));
            if (sorted[i] == sorted[i - 1]) CHECK(order[i - 1] < order[i]);
        }
        auto again = colex_sort(sorted);
        for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i] == i);
    }
}

TEST_CASE("field axioms hold exhaustively for small primes") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        PrimeField f(p);
        for (std::uint32_t a = 0; a < p; ++a) {
            FieldElem x{a};
            CHECK(f.add(x, f.neg(x)).is_zero());
            if (a != 0) CHECK(f.mul(x, f.inv(x)) == FieldElem{1});
            for (std::uint32_t b = 0; b < p; ++b) {
                FieldElem y{b};
                CHECK(f.add(x, y) == f.add(y, x));
                CHECK(f.mul(x, y) == f.mul(y, x));
                for (std::uint32_t c = 0; c < p; ++c) {
                    FieldElem z{c};
                    CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
                    CHECK(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
                    CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
                }
            }
        }
    }
    CHECK_THROWS_AS(PrimeField(4), PreconditionError);
    CHECK_THROWS_AS(PrimeField(65537), PreconditionError);
    CHECK_NOTHROW(PrimeField(65521));
    CHECK(PrimeField(65521).mul({65520}, {65520}) == FieldElem{1});
    CHECK(PrimeField(7).from_int(-1) == FieldElem{6});
}

TEST_CASE("sparse vector arithmetic") {
    PrimeField f(5);
    SparseVec a = {{0, {1}}, {2, {3}}};
    SparseVec b = {{1, {4}}, {2, {1}}};
    add_scaled(a, b, {2}, f);
    CHECK(a == SparseVec{{0, {1}}, {1, {3}}});
    CHECK(entry_at(a, 1) == FieldElem{3});
    CHECK(entry_at(a, 2).is_zero());
    CHECK(add_scaled(a, b, {0}, f) == 0);
}

TEST_CASE("presentation validation") {
    CHECK(validate_presentation(e2()).empty());

    Presentation bad = e2();
    bad.row_grades[0] = g(2, 0);
    auto v = validate_presentation(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::Homogeneity);
    CHECK(v[0].row == 0);
    CHECK(v[0].col == 0);

    Presentation dup = e2();
    dup.columns[0] = {{0, {1}}, {0, {1}}};
    v = validate_presentation(dup);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::Structure);

    Presentation zero = e2();
    zero.columns[0][1].coef = {0};
    v = validate_presentation(zero);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::Structure);

    Presentation range = e2();
    range.columns[0].push_back({2, {1}});
    v = validate_presentation(range);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::Structure);

    Presentation field = e2();
    field.prime = 4;
    v = validate_presentation(field);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::Field);
}

TEST_CASE("minimality hints") {
    CHECK(minimality_warnings(e2()).empty());
    Presentation p = e2();
    p.col_grades.push_back(g(3, 3));
    p.columns.push_back({});
    CHECK(minimality_warnings(p).size() == 1);
    Presentation q;
    q.row_grades = {g(1, 1)};
    q.col_grades = {g(1, 1)};
    q.columns = {{{0, {1}}}};
    CHECK(minimality_warnings(q).size() == 1);
}

TEST_CASE("support and grid") {
    auto s = support_grades(e2());
    CHECK(s == std::vector<Grade>{g(1, 0), g(0, 1), g(1, 1)});
    auto grid = grid_size(s);
    CHECK(grid.kx == 2);
    CHECK(grid.ky == 2);
    CHECK(grid.kappa() == 4);
}
