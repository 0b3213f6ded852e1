#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sosk49/lattice.hpp"

using namespace sosk49;

namespace {

CubicOrder k49() { return CubicOrder::make(1, -2, -1); }

std::vector<std::array<Int, 3>> enumerate3(const PosDefForm& f, const Rat& bound) {
    std::vector<std::array<Int, 3>> pts;
    f.enumerate(bound, [&](const std::vector<Int>& v) {
        pts.push_back({v[0], v[1], v[2]});
        return true;
    });
    return pts;
}

std::mt19937 rng(0xfeed);

PosDefForm random_form(bool half_integers) {
    std::uniform_int_distribution<long> small(-4, 4);
    if (!half_integers) {
        // A^T A + I is positive definite
        long a[3][3];
        for (auto& row : a)
            for (long& x : row) x = small(rng);
        std::vector<std::vector<Rat>> g(3, std::vector<Rat>(3, Rat(0)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                long s = 0;
                for (int k = 0; k < 3; ++k) s += a[k][i] * a[k][j];
                g[size_t(i)][size_t(j)] = Rat(s + (i == j ? 1 : 0));
            }
        return PosDefForm(g);
    }
    // strictly diagonally dominant symmetric with half-integer off-diagonals
    std::uniform_int_distribution<long> halves(-2, 2);  // value/2 in {-1,..,1}
    std::uniform_int_distribution<long> diag(6, 16);
    Rat o01(halves(rng), 2), o02(halves(rng), 2), o12(halves(rng), 2);
    o01.canonicalize();
    o02.canonicalize();
    o12.canonicalize();
    std::vector<std::vector<Rat>> g = {{Rat(diag(rng)), o01, o02},
                                       {o01, Rat(diag(rng)), o12},
                                       {o02, o12, Rat(diag(rng))}};
    return PosDefForm(g);
}

}  // namespace

TEST_CASE("positive definiteness is enforced") {
    std::vector<std::vector<Rat>> indef = {{Rat(1), Rat(0), Rat(0)},
                                           {Rat(0), Rat(-1), Rat(0)},
                                           {Rat(0), Rat(0), Rat(1)}};
    CHECK_THROWS_AS((PosDefForm(indef)), NotPositiveDefinite);
    std::vector<std::vector<Rat>> asym = {{Rat(2), Rat(1), Rat(0)},
                                          {Rat(0), Rat(2), Rat(0)},
                                          {Rat(0), Rat(0), Rat(2)}};
    CHECK_THROWS_AS((PosDefForm(asym)), NotPositiveDefinite);
    PosDefForm ok = trace_square_form(k49());
    for (const Rat& d : ok.pivots()) CHECK(d > 0);
}

TEST_CASE("trace square form evaluates Tr(x^2)") {
    CubicOrder o = k49();
    PosDefForm f = trace_square_form(o);
    CHECK(f.eval({Int(1), Int(0), Int(0)}) == 3);
    CHECK(f.eval({Int(0), Int(1), Int(0)}) == 5);
    CHECK(f.eval({Int(0), Int(0), Int(0)}) == 0);
    // against order arithmetic on a few vectors
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c) {
                Element x(o, Int(a), Int(b), Int(c));
                CHECK(f.eval({Int(a), Int(b), Int(c)}) == Rat(trace(x * x)));
            }
}

TEST_CASE("enumeration basics and pinned order") {
    CubicOrder o = k49();
    PosDefForm f = trace_square_form(o);

    auto zero_only = enumerate3(f, Rat(0));
    REQUIRE(zero_only.size() == 1);
    CHECK(zero_only[0] == std::array<Int, 3>{Int(0), Int(0), Int(0)});

    CHECK(enumerate3(f, Rat(-1)).empty());

    // bound 3 contains 0 and +-(1,0,0)
    auto b3 = enumerate3(f, Rat(3));
    std::set<std::array<Int, 3>, bool (*)(const std::array<Int, 3>&, const std::array<Int, 3>&)>
        s3(b3.begin(), b3.end(), [](const std::array<Int, 3>& x, const std::array<Int, 3>& y) {
            return lex_less(x, y);
        });
    CHECK(s3.count({Int(1), Int(0), Int(0)}) == 1);
    CHECK(s3.count({Int(-1), Int(0), Int(0)}) == 1);
    CHECK(s3.count({Int(0), Int(0), Int(0)}) == 1);
    CHECK(b3.size() == 3);

    // emission order is part of the contract (last coordinate outermost)
    auto b5 = enumerate3(f, Rat(5));
    std::vector<std::array<Int, 3>> expected = {
        {Int(1), Int(-1), Int(-1)}, {Int(2), Int(0), Int(-1)}, {Int(0), Int(-1), Int(0)},
        {Int(-1), Int(0), Int(0)},  {Int(0), Int(0), Int(0)},  {Int(1), Int(0), Int(0)},
        {Int(0), Int(1), Int(0)},   {Int(-2), Int(0), Int(1)}, {Int(-1), Int(1), Int(1)}};
    CHECK(b5 == expected);
}

TEST_CASE("enumeration equals box scan on the trace form") {
    CubicOrder o = k49();
    PosDefForm f = trace_square_form(o);
    for (long bound : {3L, 21L, 50L}) {
        auto got = testing::sorted(enumerate3(f, Rat(bound)));
        auto want = testing::sorted(testing::box_scan_points(f.gram(), Rat(bound)));
        CHECK(got == want);
    }
}

TEST_CASE("enumeration equals box scan on 200 random forms") {
    std::uniform_int_distribution<long> bounds(0, 50);
    for (int i = 0; i < 200; ++i) {
        PosDefForm f = random_form(i % 2 == 1);
        Rat bound(bounds(rng));
        auto got = testing::sorted(enumerate3(f, bound));
        auto want = testing::sorted(testing::box_scan_points(f.gram(), bound));
        REQUIRE(got == want);
    }
}

TEST_CASE("central symmetry, no duplicates, odd count") {
    for (int i = 0; i < 20; ++i) {
        PosDefForm f = random_form(i % 2 == 1);
        auto pts = enumerate3(f, Rat(40));
        CHECK(pts.size() % 2 == 1);
        auto sorted_pts = testing::sorted(pts);
        CHECK(std::adjacent_find(sorted_pts.begin(), sorted_pts.end()) == sorted_pts.end());
        std::set<std::array<Int, 3>, bool (*)(const std::array<Int, 3>&, const std::array<Int, 3>&)>
            s(sorted_pts.begin(), sorted_pts.end(),
              [](const std::array<Int, 3>& x, const std::array<Int, 3>& y) {
                  return lex_less(x, y);
              });
        for (const auto& p : pts) CHECK(s.count({-p[0], -p[1], -p[2]}) == 1);
    }
}

TEST_CASE("slices merge to the sequential point set") {
    CubicOrder o = k49();
    PosDefForm f = trace_square_form(o);
    Rat bound(100);
    auto full = enumerate3(f, bound);

    auto range = f.outer_range(bound);
    REQUIRE(range.has_value());
    Int lo = range->first, hi = range->second;
    std::vector<std::array<Int, 3>> merged;
    Int width = fdiv(hi - lo, 4) + 1;
    for (Int start = lo; start <= hi; start += width) {
        Int stop = std::min(Int(start + width - 1), hi);
        f.enumerate_slice(bound, start, stop, [&](const std::vector<Int>& v) {
            merged.push_back({v[0], v[1], v[2]});
            return true;
        });
    }
    CHECK(testing::sorted(merged) == testing::sorted(full));
    CHECK(merged.size() == full.size());
}

TEST_CASE("form of a 1-variable square is the trace Gram") {
    CubicOrder o = k49();
    PosDefForm direct = trace_square_form(o);
    PosDefForm via = form_of_quadratic(OrderQuadraticForm::sum_of_squares(o, 1));
    CHECK(via.gram() == direct.gram());
}

TEST_CASE("five-variable diagonal form has the block structure") {
    CubicOrder o = k49();
    auto q = OrderQuadraticForm::diagonal_five(o);
    PosDefForm f = form_of_quadratic(q);
    REQUIRE(f.dim() == 15);
    // four trace-Gram blocks on the diagonal
    for (size_t blk = 0; blk < 4; ++blk)
        for (size_t s = 0; s < 3; ++s)
            for (size_t t = 0; t < 3; ++t)
                CHECK(f.gram()[3 * blk + s][3 * blk + t] ==
                      Rat(o.trace_gram()[s][t]));
    // fifth block is Tr(omega theta^s theta^t)
    Element omega(o, Int(1), Int(1), Int(1));
    std::array<Element, 3> basis = {Element(o, Int(1), Int(0), Int(0)),
                                    Element(o, Int(0), Int(1), Int(0)),
                                    Element(o, Int(0), Int(0), Int(1))};
    for (size_t s = 0; s < 3; ++s)
        for (size_t t = 0; t < 3; ++t)
            CHECK(f.gram()[12 + s][12 + t] == Rat(trace(omega * basis[s] * basis[t])));
    // off-diagonal blocks vanish for a diagonal form
    CHECK(f.gram()[0][12] == 0);
    CHECK(f.gram()[3][7] == 0);
}

TEST_CASE("Kala-Yatsyna form is positive definite and matches its evaluation") {
    CubicOrder o = k49();
    auto q = OrderQuadraticForm::kala_yatsyna(o);
    PosDefForm f = form_of_quadratic(q);  // construction validates pivots
    REQUIRE(f.dim() == 12);
    // stacked-coordinate evaluation equals Tr(Q(elements))
    std::uniform_int_distribution<long> small(-3, 3);
    for (int it = 0; it < 100; ++it) {
        std::vector<Int> v(12);
        for (auto& x : v) x = small(rng);
        auto xs = q.elements_of(v);
        CHECK(f.eval(v) == Rat(trace(q.eval(xs))));
    }
    // cross blocks carry half-integers: Tr(theta^0 theta^0) = 3 halves to 3/2
    CHECK(f.gram()[0][9] == Rat(3, 2));
}

TEST_CASE("stacked evaluation matches for the diagonal five form too") {
    CubicOrder o = k49();
    auto q = OrderQuadraticForm::diagonal_five(o);
    PosDefForm f = form_of_quadratic(q);
    std::uniform_int_distribution<long> small(-2, 2);
    for (int it = 0; it < 50; ++it) {
        std::vector<Int> v(15);
        for (auto& x : v) x = small(rng);
        auto xs = q.elements_of(v);
        CHECK(f.eval(v) == Rat(trace(q.eval(xs))));
    }
}
