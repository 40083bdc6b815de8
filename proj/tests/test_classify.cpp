#include "doctest.h"

#include <random>

#include "legn/classify.hpp"

using namespace legn;

namespace {

constexpr int kTrunc = 132;

BranchParam g_branch(const Rat& t2, const Rat& t6)
{
    VersalCoords c{basis(4, 11, Flavor::C), {}};
    c.set({6, 2}, t2);
    c.set({7, 2}, t6);
    return parametrize_equation(versal_function(c, kTrunc + 44), kTrunc);
}

} // namespace

TEST_CASE("scaling action")
{
    const DeformBasis C = basis(4, 11, Flavor::C);
    const auto w = scaling_weights(C);
    CHECK(w.d.at({6, 2}) == 2);
    CHECK(w.d.at({7, 2}) == 6);
    VersalCoords c{C, {{{6, 2}, 1}, {{7, 2}, 1}}};
    CHECK(scaling_action(c, 1) == c);
    const auto s = scaling_action(c, 2);
    CHECK(s.get({6, 2}) == 4);
    CHECK(s.get({7, 2}) == 64);
    CHECK(scaling_action(s, frac(1, 2)) == c);
    CHECK(scaling_identity_holds(C));
    CHECK(scaling_identity_holds(basis(5, 13, Flavor::B)));
}

TEST_CASE("classify_4_11 patterns")
{
    const DeformBasis C = basis(4, 11, Flavor::C);
    using L = NormalFormId::Label;
    CHECK(classify_4_11(VersalCoords{C, {}}).label == L::F0);
    CHECK(classify_4_11(VersalCoords{C, {{{6, 2}, 1}, {{7, 2}, frac(1, 3)}}}).label == L::F1);
    CHECK(classify_4_11(VersalCoords{C, {{{7, 2}, 7}}}).label == L::F2);
    std::mt19937 rng(3);
    for (int q = 0; q < 20; ++q) {
        VersalCoords c{C, {}};
        c.set({6, 2}, frac(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4)));
        c.set({7, 2}, frac(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4)));
        const Rat tau = frac(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 5));
        CHECK(classify_4_11(c).label == classify_4_11(scaling_action(c, tau)).label);
    }
    CHECK(classify(VersalCoords{basis(5, 13, Flavor::C), {{{6, 2}, 8}}}).complete == false);
}

TEST_CASE("classification pipeline and evidence")
{
    using L = NormalFormId::Label;
    const auto id0 = classify(microlocal_reduce(g_branch(0, 0)).coords);
    const auto id1 = classify(microlocal_reduce(g_branch(1, 0)).coords);
    const auto id2 = classify(microlocal_reduce(g_branch(0, 1)).coords);
    CHECK(id0.label == L::F0);
    CHECK(id1.label == L::F1);
    CHECK(id2.label == L::F2);
    CHECK(classify(microlocal_reduce(g_branch(2, 5)).coords).label == L::F1);

    const ConormalParam L0 = conormal(g_branch(0, 0));
    const ConormalParam L1 = conormal(g_branch(1, 0));
    const ConormalParam L2 = conormal(g_branch(0, 1));
    const Evidence e01 = distinguish(id0, id1, L0, L1);
    CHECK(!e01.equal);
    REQUIRE(e01.witness_a.has_value());
    CHECK(!e01.witness_b.has_value());
    CHECK(e01.witness_a->coeff({0, 1, 0}) == 11);
    CHECK(e01.witness_a->coeff({1, 0, 1}) == -4);
    CHECK(!distinguish(id1, id2, L1, L2).equal);
    CHECK(distinguish(id0, id0, L0, L0).equal);
}

TEST_CASE("rigidity against the explicit list")
{
    CHECK(rigidity_check(3, 7));
    CHECK(rigidity_check(2, 9));
    CHECK(!rigidity_check(4, 11));
    CHECK_THROWS_AS(rigidity_check(4, 7), Error);
    for (int k = 2; k <= 6; ++k)
        for (int n = 2 * k + 1; n <= 21; ++n)
            if (std::gcd(k, n) == 1)
                CHECK(rigidity_check(k, n) == in_rigid_list(k, n));
}

TEST_CASE("explicit G identity")
{
    const auto ex = g_identity_4_11(frac(1, 3));
    REQUIRE(ex.ok);
    const WeightSystem ws(4, 11);
    TruncSeries3 u = TruncSeries3::constant(ws, 1, ex.unit.bound());
    u.add_term({1, 0, 0}, Rat(-22) * frac(1, 3));
    CHECK(ex.unit.agrees_with(u));
    CHECK(ex.residual_weight >= 52);
}
