#include "doctest.h"

#include <random>

#include "legn/contact.hpp"

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

// Random polynomial whose terms all raise the weight of the variable they perturb.
TruncSeries3 random_poly(std::mt19937& rng, WeightSystem ws, int min_weight, int max_weight, int bound, bool p_free,
                         int count)
{
    std::vector<Monomial> pool;
    for (int l = 0; ws.wp() * l <= max_weight; ++l)
        for (int j = 0; ws.weight(0, j, l) <= max_weight; ++j)
            for (int i = 0; ws.weight(i, j, l) <= max_weight; ++i)
                if (ws.weight(i, j, l) > min_weight && (!p_free || l == 0))
                    pool.push_back({i, j, l});
    TruncSeries3 f(ws, bound);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < count && !pool.empty(); ++t)
        f.add_term(pool[rng() % pool.size()], frac(c(rng), 1 + static_cast<long>(rng() % 3)));
    return f;
}

TruncSeries3 cauchy_residual(const TruncSeries3& alpha, const TruncSeries3& beta)
{
    const WeightSystem& ws = alpha.weights();
    const int big = beta.bound() + 4 * ws.n();
    TruncSeries3 a(ws, big);
    for (const auto& [m, c] : alpha.terms())
        a.add_term(m, c);
    const auto p = TruncSeries3::variable(ws, Var::P, big);
    const auto U = TruncSeries3::constant(ws, 1, big) + partial(a, Var::X) + p * partial(a, Var::Y);
    return U * partial(beta, Var::P) - partial(a, Var::P) * (p + partial(beta, Var::X) + p * partial(beta, Var::Y));
}

} // namespace

TEST_CASE("cauchy solver")
{
    WeightSystem ws(4, 11);
    const int N = 132;
    CHECK(solve_cauchy(TruncSeries3(ws, N), TruncSeries3(ws, N)).is_zero());

    std::mt19937 rng(42);
    for (int t = 0; t < 5; ++t) {
        auto alpha = random_poly(rng, ws, 4, 44, N, false, 4);
        auto beta = solve_cauchy(alpha, TruncSeries3(ws, N));
        CHECK(beta.bound() == N);
        auto r = cauchy_residual(alpha, beta);
        CHECK(r.vanishes());
        CHECK(r.bound() >= N - ws.wp());
        CHECK(beta.p_slice(1).is_zero());
        CHECK(beta.p_slice(0).is_zero());
    }
    CHECK_THROWS_AS(solve_cauchy(mono(ws, {1, 0, 0}, 1, N), TruncSeries3(ws, N)), Error);
    CHECK_THROWS_AS(solve_cauchy(TruncSeries3(ws, N), mono(ws, {0, 1, 0}, 1, N)), Error);
}

TEST_CASE("gamma and certificates")
{
    WeightSystem ws(4, 11);
    const int N = 60;
    CHECK(solve_gamma(TruncSeries3(ws, N), TruncSeries3(ws, N)).is_zero());
    auto g = solve_gamma(TruncSeries3(ws, N), mono(ws, {2, 0, 0}, 5, N));
    CHECK(g.terms() == std::map<Monomial, Rat>{{{1, 0, 0}, 10}});

    auto id = ContactTx::identity(ws, N);
    CHECK(verify_contact(id).terms() == std::map<Monomial, Rat>{{{0, 0, 0}, 1}});
    auto sc = ContactTx::scaling(ws, 2, 3, N);
    CHECK(verify_contact(sc).terms() == std::map<Monomial, Rat>{{{0, 0, 0}, 3}});

    auto tx = make_jtype(mono(ws, {0, 1, 2}, Rat(2, 3), N), TruncSeries3(ws, N));
    CHECK(tx.kind() == ContactTx::Kind::JType);
    auto u = verify_contact(tx);
    CHECK(u.constant_term() == 1);
    CHECK_THROWS_AS(ContactTx::jtype(TruncSeries3(ws, N), mono(ws, {2, 0, 0}, 1, N), TruncSeries3(ws, N)), Error);
}

TEST_CASE("apply, compose, invert")
{
    WeightSystem ws(4, 11);
    const int N = 132;
    auto L = conormal(make_branch(4, {{11, 1}}, N));
    CHECK(apply_to_conormal(ContactTx::identity(ws, N), L) == L);

    auto Ls = apply_to_conormal(ContactTx::scaling(ws, 1, 5, N), L);
    CHECK(Ls.branch().coeffs() == std::map<int, Rat>{{11, 5}});

    std::mt19937 rng(9);
    auto alpha = random_poly(rng, ws, 4, 30, N, false, 3);
    auto beta0 = random_poly(rng, ws, 11, 30, N, true, 3);
    auto tx = make_jtype(alpha, beta0);
    auto L1 = apply_to_conormal(tx, L);
    CHECK(L1.trunc() >= N - 1);
    CHECK(puiseux_invariants(L1.branch()).pairs == std::vector<std::pair<int, int>>{{11, 4}});

    auto sc = ContactTx::scaling(ws, 16, 3, N);
    auto c = compose(sc, tx);
    CHECK(c.kind() == ContactTx::Kind::Composite);
    auto lhs = apply_to_conormal(c, L);
    auto rhs = apply_to_conormal(sc, apply_to_conormal(tx, L));
    CHECK(lhs.y().agrees_with(rhs.y()));

    auto c2 = compose(tx, sc);
    auto lhs2 = apply_to_conormal(c2, L);
    auto rhs2 = apply_to_conormal(tx, apply_to_conormal(sc, L));
    CHECK(lhs2.y().agrees_with(rhs2.y()));

    // Inversion is a fixed-point iteration; keep it at a moderate truncation.
    const int M = 60;
    auto Lm = conormal(make_branch(4, {{11, 1}}, M));
    auto txm = make_jtype(alpha.truncated(M), beta0.truncated(M));
    auto inv = invert(txm);
    CHECK(verify_contact(inv).constant_term() != 0);
    auto back = apply_to_conormal(inv, apply_to_conormal(txm, Lm));
    CHECK(back.y().agrees_with(Lm.y()));
    CHECK(back.y().bound() == M);
    auto c2m = compose(txm, ContactTx::scaling(ws, 16, 3, M));
    auto round = apply_to_conormal(compose(txm, invert(c2m)), apply_to_conormal(c2m, Lm));
    CHECK(round.y().agrees_with(apply_to_conormal(txm, Lm).y()));

    auto ss = compose(ContactTx::scaling(ws, 2, 3, N), ContactTx::scaling(ws, 5, 7, N));
    CHECK(ss.lambda() == 10);
    CHECK(ss.mu() == 21);
}
