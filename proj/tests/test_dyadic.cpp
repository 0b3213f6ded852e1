#include <doctest.h>

#include <random>

#include "sosk49/dyadic.hpp"

using namespace sosk49;

namespace {

CubicOrder k49() { return CubicOrder::make(1, -2, -1); }

Element elem(const CubicOrder& o, long a, long b, long c) {
    return Element(o, Int(a), Int(b), Int(c));
}

std::mt19937 rng(0xd7ad1c);

Element random_element(const CubicOrder& o, long width = 100) {
    std::uniform_int_distribution<long> d(-width, width);
    return elem(o, d(rng), d(rng), d(rng));
}

}  // namespace

TEST_CASE("inertness detection") {
    CHECK(assert_inert(k49()));                         // x^3+x^2+1 mod 2
    CHECK(!assert_inert(CubicOrder::make(0, -4, -1)));  // x^3+1 mod 2 has root 1
    CHECK(DyadicRing(k49(), 1).size() == 8);            // residue field F_8
    CHECK(DyadicRing(k49(), 2).size() == 64);
    CHECK(DyadicRing(k49(), 3).size() == 512);
}

TEST_CASE("residue arithmetic is the projection of order arithmetic") {
    CubicOrder o = k49();
    DyadicRing ring(o, 3);
    for (int i = 0; i < 300; ++i) {
        Element x = random_element(o), y = random_element(o);
        CHECK(ring.mul(ring.reduce(x), ring.reduce(y)) == ring.reduce(x * y));
        CHECK(ring.add(ring.reduce(x), ring.reduce(y)) == ring.reduce(x + y));
        CHECK(ring.negate(ring.reduce(x)) == ring.reduce(-x));
    }
}

TEST_CASE("dyadic valuation") {
    CubicOrder o = k49();
    CHECK(v2(elem(o, 7, 0, 0)) == 0);
    CHECK(v2(elem(o, 2, 2, 0)) == 1);
    CHECK(v2(elem(o, 4, 8, 12)) == 2);
    CHECK(v2(elem(o, 0, 0, 0)) == std::nullopt);
    CHECK(v2(elem(o, 8, 0, 2)) == 1);
    CubicOrder split = CubicOrder::make(0, -4, -1);
    CHECK_THROWS_AS(v2(elem(split, 2, 0, 0)), NotInert);
}

TEST_CASE("local squares") {
    CubicOrder o = k49();
    Element rho = elem(o, 0, 1, 0);
    CHECK(is_square_local(elem(o, -7, 0, 0)));  // -7 = 1 mod 8
    CHECK(!is_square_local(elem(o, 2, 0, 0)));  // odd valuation
    CHECK(is_square_local(rho * rho));
    CHECK(is_square_local(elem(o, 0, 0, 0)));
    CHECK(is_square_local(elem(o, 4, 0, 0)));
    CHECK(!is_square_local(elem(o, 8, 0, 0)));

    for (int i = 0; i < 1000; ++i) {
        Element x = random_element(o);
        if (x.is_zero()) continue;
        CHECK(is_square_local(x * x));
        CHECK(!is_square_local(x * x * Int(2)));
    }
}

TEST_CASE("local squareness is invariant under multiplication by squares") {
    CubicOrder o = k49();
    for (int i = 0; i < 300; ++i) {
        Element a = random_element(o);
        Element b = random_element(o, 40);
        if (b.is_zero()) continue;
        CHECK(is_square_local(a) == is_square_local(a * b * b));
    }
}

TEST_CASE("minus squares and the ternary criterion") {
    CubicOrder o = k49();
    Element omega = elem(o, 1, 1, 1);
    CHECK(is_minus_square_local(elem(o, 7, 0, 0)));
    CHECK(!is_minus_square_local(elem(o, 2, 0, 0)));
    CHECK(is_minus_square_local(omega));

    CHECK(!represents_I3_local(elem(o, 7, 0, 0)));
    CHECK(represents_I3_local(elem(o, 2, 0, 0)));
    CHECK(!represents_I3_local(elem(o, -1, 0, 0)));
    CHECK_THROWS_AS(represents_I3_local(elem(o, 0, 0, 0)), PreconditionViolated);
}

TEST_CASE("ternary criterion is invariant under scaling by 4") {
    CubicOrder o = k49();
    for (int i = 0; i < 300; ++i) {
        Element x = random_element(o);
        if (x.is_zero()) continue;
        CHECK(represents_I3_local(x) == represents_I3_local(x * Int(4)));
    }
}

TEST_CASE("mod-8 square criterion is stable at mod-32 precision") {
    CubicOrder o = k49();
    DyadicRing r32(o, 5), r8(o, 3);
    auto sq32 = squares_mod_table(o, 5);
    auto sq8 = squares_mod_table(o, 3);
    size_t units = 0;
    for (size_t i = 0; i < r32.size(); ++i) {
        DyadicResidue u = r32.unpack(i);
        if (!r32.is_unit_residue(u)) continue;
        ++units;
        DyadicResidue u8{{u.v[0] & 7, u.v[1] & 7, u.v[2] & 7}};
        CHECK((*sq32)[r32.pack(u)] == (*sq8)[r8.pack(u8)]);
    }
    CHECK(units == 32768 - 4096);
}

TEST_CASE("residue scans behind the lemmas are clean") {
    CubicOrder o = k49();

    ScanReport r3 = residue_scan_lemmas(o, 3);
    REQUIRE(r3.checks.size() == 1);
    CHECK(r3.checks[0].tuples_scanned == 448ull * 448ull);
    CHECK(r3.checks[0].counterexamples.empty());

    ScanReport r2 = residue_scan_lemmas(o, 2);
    REQUIRE(r2.checks.size() == 2);
    CHECK(r2.checks[0].tuples_scanned == 56ull * 64ull * 64ull);
    CHECK(r2.checks[0].counterexamples.empty());
    CHECK(r2.checks[1].tuples_scanned == 64ull * 64ull);
    CHECK(r2.checks[1].counterexamples.empty());
    CHECK(r2.clean());

    CHECK_THROWS_AS(residue_scan_lemmas(o, 4), PreconditionViolated);
    CHECK_THROWS_AS(residue_scan_lemmas(CubicOrder::make(0, -4, -1), 2), NotInert);
}
