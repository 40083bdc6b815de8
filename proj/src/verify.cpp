#include "legn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>

#include "legn/classify.hpp"

namespace legn {

namespace {

using Checks = std::vector<CheckLine>;

void check(Checks& out, std::string name, const std::function<bool(std::string&)>& body)
{
    CheckLine line{std::move(name), false, {}};
    try {
        line.ok = body(line.detail);
    } catch (const std::exception& e) {
        line.ok = false;
        line.detail = e.what();
    }
    out.push_back(std::move(line));
}

UniSeries random_uni(std::mt19937& rng, int order, int bound)
{
    UniSeries f(bound);
    for (int r = order; r <= bound; ++r)
        if (rng() % 2)
            f.set_coeff(r, frac(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 5)));
    return f;
}

TruncSeries3 random_tri(std::mt19937& rng, const WeightSystem& ws, int min_w, int max_w, int bound, bool p_free)
{
    TruncSeries3 f(ws, bound);
    for (int q = 0; q < 4; ++q) {
        const int i = static_cast<int>(rng() % 5), j = static_cast<int>(rng() % 3);
        const int l = p_free ? 0 : static_cast<int>(rng() % 3);
        const int w = ws.weight(i, j, l);
        if (w > min_w && w <= max_w)
            f.add_term({i, j, l}, frac(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3)));
    }
    return f;
}

BranchParam g_branch(const std::vector<std::pair<Pair, Rat>>& extra, int k, int n, int trunc)
{
    VersalCoords c{basis(k, n, Flavor::B), {}};
    for (const auto& [p, v] : extra)
        c.t[p] = v;
    return parametrize_equation(versal_function(c, trunc + k * n), trunc);
}

Checks suite_series()
{
    Checks out;
    std::mt19937 rng(11);
    check(out, "ring laws on random series", [&](std::string&) {
        for (int t = 0; t < 10; ++t) {
            const UniSeries a = random_uni(rng, 0, 20), b = random_uni(rng, 1, 20), c = random_uni(rng, 0, 20);
            if (!((a * b) * c).agrees_with(a * (b * c)) || !(a * (b + c)).agrees_with(a * b + a * c))
                return false;
        }
        return true;
    });
    check(out, "unit inverse and roots", [&](std::string&) {
        for (int t = 0; t < 10; ++t) {
            UniSeries u = random_uni(rng, 1, 25);
            u.set_coeff(0, 1);
            const UniSeries one = UniSeries::monomial(0, 1, 25);
            if (!(u * (one / u)).agrees_with(one))
                return false;
            if (!power(root(u, 3), 3, 25).agrees_with(u))
                return false;
        }
        return true;
    });
    check(out, "compositional inverse", [&](std::string&) {
        UniSeries f = random_uni(rng, 2, 20);
        f.set_coeff(1, 2);
        const UniSeries g = compositional_inverse(f);
        return compose(f, g).agrees_with(UniSeries::monomial(1, 1, 20));
    });
    return out;
}

Checks suite_branch(int trunc)
{
    Checks out;
    check(out, "conductor (k-1)(n-1), k <= 6, n <= 15", [&](std::string& d) {
        for (int k = 2; k <= 6; ++k)
            for (int n = k + 1; n <= 15; ++n)
                if (std::gcd(k, n) == 1 && semigroup_conductor({k, n}) != (k - 1) * (n - 1)) {
                    d = std::to_string(k) + "," + std::to_string(n);
                    return false;
                }
        return true;
    });
    check(out, "implicitize(parametrize(f1)) = f1", [&](std::string&) {
        const BranchParam b = g_branch({{{6, 2}, 1}}, 4, 11, trunc);
        const TruncSeries3 F = implicitize(b, 44);
        TruncSeries3 f1(WeightSystem(4, 11), F.bound());
        f1.add_term({0, 4, 0}, 1);
        f1.add_term({11, 0, 0}, -1);
        f1.add_term({6, 2, 0}, 1);
        return F.agrees_with(f1);
    });
    check(out, "Puiseux pairs of y^4 = x^11", [&](std::string&) {
        return puiseux_invariants(g_branch({}, 4, 11, 60)).pairs == std::vector<std::pair<int, int>>{{11, 4}};
    });
    return out;
}

Checks suite_conormal(int trunc)
{
    Checks out;
    check(out, "mult L = min(k, n-k), k <= 6, n <= 15", [&](std::string& d) {
        for (int k = 2; k <= 6; ++k)
            for (int n = k + 1; n <= 15; ++n) {
                if (std::gcd(k, n) != 1)
                    continue;
                const ConormalParam L = conormal(BranchParam(k, UniSeries::monomial(n, 1, 3 * k * n)));
                if (multiplicity_legendrian(L) != std::min(k, n - k) ||
                    (multiplicity_legendrian(L) == multiplicity_projection(L)) != in_strong_generic_position(L)) {
                    d = std::to_string(k) + "," + std::to_string(n);
                    return false;
                }
            }
        return true;
    });
    check(out, "11y - 4xp contains the conormal of y^4 = x^11", [&](std::string&) {
        const auto w = smooth_surface_test(conormal(g_branch({}, 4, 11, trunc)));
        return w && w->coeff({0, 1, 0}) == 11 && w->coeff({1, 0, 1}) == -4;
    });
    check(out, "no smooth surface through the conormal of f1", [&](std::string&) {
        return !smooth_surface_test(conormal(g_branch({{{6, 2}, 1}}, 4, 11, trunc))).has_value();
    });
    return out;
}

Checks suite_contact()
{
    Checks out;
    const WeightSystem ws(4, 11);
    const int N = 60;
    std::mt19937 rng(5);
    check(out, "pullback certificates of random J-type maps", [&](std::string&) {
        for (int t = 0; t < 8; ++t) {
            const ContactTx tx = make_jtype(random_tri(rng, ws, 4, 30, N, false), random_tri(rng, ws, 11, 30, N, true));
            if (verify_contact(tx).constant_term() == 0)
                return false;
        }
        return true;
    });
    check(out, "Puiseux pairs survive J-type maps", [&](std::string&) {
        const ConormalParam L = conormal(g_branch({{{6, 2}, 1}}, 4, 11, N));
        for (int t = 0; t < 5; ++t) {
            const ContactTx tx = make_jtype(random_tri(rng, ws, 4, 30, N, false), random_tri(rng, ws, 11, 30, N, true));
            if (puiseux_invariants(apply_to_conormal(tx, L).branch()).pairs != puiseux_invariants(L.branch()).pairs)
                return false;
        }
        return true;
    });
    check(out, "compose and invert", [&](std::string&) {
        const ContactTx a = make_jtype(random_tri(rng, ws, 4, 30, N, false), TruncSeries3(ws, N));
        const ContactTx b = ContactTx::scaling(ws, 16, 3, N); // x scale must be a k-th power over Q
        const ConormalParam L = conormal(g_branch({}, 4, 11, N));
        const ContactTx ab = compose(a, b);
        const bool comp = apply_to_conormal(ab, L).y().agrees_with(apply_to_conormal(a, apply_to_conormal(b, L)).y());
        const bool inv = apply_to_conormal(invert(ab), apply_to_conormal(ab, L)).y().truncated(40).agrees_with(L.y());
        return comp && inv;
    });
    return out;
}

Checks suite_cleaning()
{
    Checks out;
    for (const auto& [k, n] : {std::pair{2, 5}, {3, 7}, {4, 11}}) {
        check(out, "cleaning certificates (" + std::to_string(k) + "," + std::to_string(n) + ")", [&](std::string& d) {
            int count = 0;
            for (int i = 0; i <= 2 * n; ++i)
                for (int j = 0; j <= 2 * k; ++j)
                    for (int l = 0; l <= 2 * k; ++l) {
                        const int w = k * i + n * j + (n - k) * l;
                        if (w <= k * n || w > 2 * k * n)
                            continue;
                        const CleanResult c = clean_monomial(i, j, l, k, n); // certifies internally
                        if (k * c.a + n * c.b != w)
                            return false;
                        ++count;
                    }
            d = std::to_string(count) + " monomials";
            return true;
        });
    }
    return out;
}

Checks suite_versal(int trunc)
{
    Checks out;
    check(out, "B(4,11) and C(4,11)", [&](std::string&) {
        return basis(4, 11, Flavor::B).pairs == std::vector<Pair>{{6, 2}, {9, 1}, {7, 2}, {8, 2}, {9, 2}} &&
               basis(4, 11, Flavor::C).pairs == std::vector<Pair>{{6, 2}, {7, 2}};
    });
    check(out, "f1 is its own equisingular normal form", [&](std::string&) {
        return equisingular_reduce(g_branch({{{6, 2}, 1}}, 4, 11, trunc)).coords.t == std::map<Pair, Rat>{{{6, 2}, 1}};
    });
    check(out, "x^9 y: microlocal reduction with transport certificate", [&](std::string& d) {
        const BranchParam b = g_branch({{{9, 1}, 1}}, 4, 11, trunc);
        const ReductionResult r = microlocal_reduce(b);
        const TransportCertificate c = certify_transport(b, r);
        d = "matched below order " + std::to_string(c.matched_order);
        return r.coords.supported_in(basis(4, 11, Flavor::C)) && c.replay_matches && c.normal_form_matches;
    });
    return out;
}

Checks suite_classify(int trunc)
{
    Checks out;
    check(out, "f0, f1, f2 -> F0, F1, F2", [&](std::string&) {
        using L = NormalFormId::Label;
        return classify(microlocal_reduce(g_branch({}, 4, 11, trunc)).coords).label == L::F0 &&
               classify(microlocal_reduce(g_branch({{{6, 2}, 1}}, 4, 11, trunc)).coords).label == L::F1 &&
               classify(microlocal_reduce(g_branch({{{7, 2}, 1}}, 4, 11, trunc)).coords).label == L::F2;
    });
    check(out, "scaling identity for G", [&](std::string&) { return scaling_identity_holds(basis(4, 11, Flavor::C)); });
    check(out, "rigidity matches the explicit list", [&](std::string&) {
        for (int k = 2; k <= 6; ++k)
            for (int n = 2 * k + 1; n <= 21; ++n)
                if (std::gcd(k, n) == 1 && rigidity_check(k, n) != in_rigid_list(k, n))
                    return false;
        return true;
    });
    check(out, "G(x - 2t x^2, y - 11/2 t x y, 1, t) = (1 - 22 t x + e)(f1 + d)", [&](std::string& d) {
        const GIdentity ex = g_identity_4_11(frac(1, 3));
        d = "residual weight " + std::to_string(ex.residual_weight);
        return ex.ok;
    });
    return out;
}

} // namespace

bool SuiteReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.ok; });
}

std::vector<std::string> suite_names()
{
    return {"series", "branch", "conormal", "contact", "cleaning", "versal", "classify"};
}

SuiteReport run_suite(const std::string& name, int trunc)
{
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = name;
    if (name == "series")
        rep.checks = suite_series();
    else if (name == "branch")
        rep.checks = suite_branch(trunc);
    else if (name == "conormal")
        rep.checks = suite_conormal(trunc);
    else if (name == "contact")
        rep.checks = suite_contact();
    else if (name == "cleaning")
        rep.checks = suite_cleaning();
    else if (name == "versal")
        rep.checks = suite_versal(trunc);
    else if (name == "classify")
        rep.checks = suite_classify(trunc);
    else
        throw Error(ErrorCode::ParseError, "unknown suite " + name);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace legn
