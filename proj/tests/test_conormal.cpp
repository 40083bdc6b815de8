#include "doctest.h"

#include <numeric>

#include "legn/conormal.hpp"

using namespace legn;

namespace {

BranchParam make_branch(int k, std::map<int, Rat> y, int trunc)
{
    return BranchParam(k, UniSeries::from_terms(y, trunc));
}

TruncSeries3 mono(WeightSystem ws, Monomial m, Rat c, int bound)
{
    return TruncSeries3::monomial(ws, m, c, bound);
}

} // namespace

TEST_CASE("conormal lift")
{
    auto L = conormal(make_branch(4, {{11, 1}}, 132));
    CHECK(L.p().terms() == std::map<int, Rat>{{7, Rat(11, 4)}});
    CHECK(L.p().bound() == 128);
    CHECK(conormal(make_branch(2, {{3, 1}}, 20)).p().terms() == std::map<int, Rat>{{1, Rat(3, 2)}});
    auto L2 = conormal(make_branch(4, {{11, 1}, {13, 1}}, 60));
    CHECK(L2.p().terms() == std::map<int, Rat>{{7, Rat(11, 4)}, {9, Rat(13, 4)}});
}

TEST_CASE("valuation")
{
    WeightSystem ws(4, 11);
    auto L = conormal(make_branch(4, {{11, 1}}, 132));
    CHECK(valuation(L, mono(ws, {1, 0, 0}, 1, 132)) == Valuation{4, false});
    auto f = mono(ws, {0, 1, 0}, 11, 132) - mono(ws, {1, 0, 1}, 4, 132);
    CHECK(valuation(L, f) == Valuation{88, true});
    CHECK(valuation(L, mono(ws, {6, 2, 0}, 1, 132)) == Valuation{46, false});

    // w(x^i y^j p^l) = ki + nj + (n-k)l on the undeformed conormal.
    for (int l = 0; 7 * l <= 87; ++l)
        for (int j = 0; 11 * j + 7 * l <= 87; ++j)
            for (int i = 0; ws.weight(i, j, l) <= 87; ++i)
                CHECK(valuation(L, mono(ws, {i, j, l}, 1, 132)).value == ws.weight(i, j, l));
}

TEST_CASE("multiplicity and tangent cones")
{
    for (int k = 2; k <= 6; ++k)
        for (int n = k + 1; n <= 15; ++n) {
            if (std::gcd(k, n) != 1)
                continue;
            auto L = conormal(make_branch(k, {{n, 1}}, 3 * k * n));
            CHECK(multiplicity_legendrian(L) == std::min(k, n - k));
            CHECK(multiplicity_projection(L) == k);
            CHECK(multiplicity_projection(L) >= multiplicity_legendrian(L));
            CHECK((multiplicity_projection(L) == multiplicity_legendrian(L)) == in_strong_generic_position(L));
        }
    CHECK(tangent_cone_class(make_branch(4, {{11, 1}}, 40)).kind == TangentConeClass::XAxis);
    CHECK(tangent_cone_class(make_branch(3, {{4, 1}}, 40)).kind == TangentConeClass::PAxis);
    CHECK(!in_strong_generic_position(conormal(make_branch(3, {{4, 1}}, 40))));
    auto t = tangent_cone_class(make_branch(1, {{2, 3}}, 10));
    CHECK(t.kind == TangentConeClass::TiltedLine);
    CHECK(t.slope == 6);
    CHECK(in_strong_generic_position(conormal(make_branch(1, {{2, 3}}, 10))));
    CHECK(multiplicity_legendrian(conormal(make_branch(2, {{5, 1}}, 30))) == 2);
    CHECK(multiplicity_legendrian(conormal(make_branch(3, {{4, 1}}, 30))) == 1);
}

TEST_CASE("smooth surface test")
{
    WeightSystem ws(4, 11);
    auto w = smooth_surface_test(conormal(make_branch(4, {{11, 1}}, 132)));
    REQUIRE(w);
    CHECK(w->terms() == std::map<Monomial, Rat>{{{0, 1, 0}, 11}, {{1, 0, 1}, -4}});

    TruncSeries3 f1(ws, 132);
    f1.add_term({0, 4, 0}, 1);
    f1.add_term({11, 0, 0}, -1);
    f1.add_term({6, 2, 0}, 1);
    CHECK(!smooth_surface_test(conormal(parametrize_equation(f1, 132))));

    auto w25 = smooth_surface_test(conormal(make_branch(2, {{5, 1}}, 30)));
    REQUIRE(w25);
    CHECK(w25->terms() == std::map<Monomial, Rat>{{{0, 1, 0}, 5}, {{1, 0, 1}, -2}});
}
