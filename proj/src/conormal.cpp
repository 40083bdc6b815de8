#include "legn/conormal.hpp"

#include <algorithm>

#include "legn/linalg.hpp"

namespace legn {

namespace {

UniSeries lift_p(const BranchParam& b)
{
    // x' = k s^(k-1), so y'/x' is y' shifted down by k - 1 and divided by k.
    return b.y().derivative().shifted(-(b.k() - 1)) * Rat(1, b.k());
}

} // namespace

ConormalParam::ConormalParam(BranchParam b) : branch_(std::move(b)), p_(lift_p(branch_)) {}

ConormalParam conormal(const BranchParam& b)
{
    return ConormalParam(b);
}

std::string to_string(const Valuation& v)
{
    return v.at_least ? ">=" + std::to_string(v.value) : std::to_string(v.value);
}

int default_guard(const ConormalParam& L)
{
    return L.k() * L.n();
}

Valuation valuation(const ConormalParam& L, const TruncSeries3& f, Rat& leading, std::optional<int> guard)
{
    const UniSeries r = substitute(f, L.x(), L.y(), L.p());
    const int limit = std::min(r.bound() + 1, L.trunc() - guard.value_or(default_guard(L)));
    for (int m = 0; m < limit; ++m)
        if (r.coeff(m) != 0) {
            leading = r.coeff(m);
            return {m, false};
        }
    leading = 0;
    return {std::max(limit, 0), true};
}

Valuation valuation(const ConormalParam& L, const TruncSeries3& f, std::optional<int> guard)
{
    Rat lead;
    return valuation(L, f, lead, guard);
}

int multiplicity_legendrian(const ConormalParam& L)
{
    return std::min({L.x().order(), L.y().order(), L.p().order()});
}

int multiplicity_projection(const ConormalParam& L)
{
    return std::min(L.x().order(), L.y().order());
}

std::string to_string(const TangentConeClass& c)
{
    switch (c.kind) {
    case TangentConeClass::PAxis: return "PAxis";
    case TangentConeClass::TiltedLine: return "TiltedLine(slope " + format_rat(c.slope) + ")";
    case TangentConeClass::XAxis: return "XAxis";
    }
    return "?";
}

TangentConeClass tangent_cone_class(const BranchParam& b)
{
    // delta = n / k compared with 2.
    if (b.n() < 2 * b.k())
        return {TangentConeClass::PAxis, 0};
    if (b.n() > 2 * b.k())
        return {TangentConeClass::XAxis, 0};
    return {TangentConeClass::TiltedLine, 2 * b.a(b.n())};
}

bool in_strong_generic_position(const ConormalParam& L)
{
    return tangent_cone_class(L.branch()).kind != TangentConeClass::PAxis;
}

std::optional<TruncSeries3> smooth_surface_test(const ConormalParam& L, std::optional<int> max_weight)
{
    const WeightSystem ws = L.branch().weights();
    const int wmax = max_weight.value_or(L.trunc() / 2);
    const int window = L.trunc() - default_guard(L);
    const std::vector<Monomial> linear{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    std::vector<std::pair<int, Monomial>> nonlinear;
    for (int l = 0; ws.wp() * l <= wmax; ++l)
        for (int j = 0; ws.weight(0, j, l) <= wmax; ++j)
            for (int i = 0; ws.weight(i, j, l) <= wmax; ++i)
                if (i + j + l >= 2)
                    nonlinear.emplace_back(ws.weight(i, j, l), Monomial{i, j, l});
    std::sort(nonlinear.begin(), nonlinear.end());
    std::vector<Monomial> cols;
    for (const auto& [w, m] : nonlinear)
        cols.push_back(m);
    cols.insert(cols.end(), linear.begin(), linear.end());

    const int N = L.trunc();
    std::vector<UniSeries> ypow{UniSeries::monomial(0, 1, N)}, ppow{UniSeries::monomial(0, 1, N)};
    RatMatrix mat(static_cast<std::size_t>(std::max(window, 0)), std::vector<Rat>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Monomial& m = cols[c];
        while (static_cast<int>(ypow.size()) <= m.j)
            ypow.push_back(mul(ypow.back(), L.y(), N));
        while (static_cast<int>(ppow.size()) <= m.l)
            ppow.push_back(mul(ppow.back(), L.p(), N));
        const UniSeries v = mul(mul(ypow[static_cast<std::size_t>(m.j)], ppow[static_cast<std::size_t>(m.l)], N),
                                power(L.x(), m.i, N), N);
        if (v.bound() + 1 < window)
            throw Error(ErrorCode::TruncationTooSmall, "monomial " + to_string(m) + " not known on the window");
        for (int r = 0; r < window; ++r)
            mat[static_cast<std::size_t>(r)][c] = v.coeff(r);
    }

    const std::size_t first_linear = cols.size() - linear.size();
    for (const auto& v : nullspace(std::move(mat), static_cast<int>(cols.size()))) {
        bool has_linear = false;
        for (std::size_t c = first_linear; c < cols.size(); ++c)
            has_linear = has_linear || v[c] != 0;
        if (!has_linear)
            continue;
        // Put the linear part first so the sign normalization looks at it.
        std::vector<Rat> ordered(v.begin() + static_cast<long>(first_linear), v.end());
        ordered.insert(ordered.end(), v.begin(), v.begin() + static_cast<long>(first_linear));
        ordered = primitive_integer(std::move(ordered));
        TruncSeries3 f(ws, wmax);
        for (std::size_t c = 0; c < linear.size(); ++c)
            f.add_term(linear[c], ordered[c]);
        for (std::size_t c = 0; c < first_linear; ++c)
            f.add_term(cols[c], ordered[linear.size() + c]);
        return f;
    }
    return std::nullopt;
}

} // namespace legn
