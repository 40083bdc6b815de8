#include "legn/contact.hpp"

#include <algorithm>
#include <limits>

namespace legn {

namespace {

TruncSeries3 var(const WeightSystem& ws, Var v, int bound)
{
    return TruncSeries3::variable(ws, v, bound);
}

TruncSeries3 one(const WeightSystem& ws, int bound)
{
    return TruncSeries3::constant(ws, 1, bound);
}

// Same terms, larger bound: for inputs known to be polynomials.
TruncSeries3 as_exact(const TruncSeries3& f, int bound)
{
    TruncSeries3 g(f.weights(), bound);
    for (const auto& [m, c] : f.terms())
        g.add_term(m, c);
    return g;
}

// f(lambda x, mu y, mu p / lambda) * factor
TruncSeries3 rescale(const TruncSeries3& f, const Rat& lambda, const Rat& mu, const Rat& factor)
{
    TruncSeries3 g(f.weights(), f.bound());
    const Rat pfac = mu / lambda;
    for (const auto& [m, c] : f.terms())
        g.add_term(m, c * pow(lambda, m.i) * pow(mu, m.j) * pow(pfac, m.l) * factor);
    return g;
}

bool same_series(const TruncSeries3& a, const TruncSeries3& b)
{
    return a.bound() == b.bound() && a.terms() == b.terms();
}

} // namespace

std::string to_string(ContactTx::Kind k)
{
    switch (k) {
    case ContactTx::Kind::Identity: return "identity";
    case ContactTx::Kind::Scaling: return "scaling";
    case ContactTx::Kind::JType: return "jtype";
    case ContactTx::Kind::Composite: return "composite";
    }
    return "?";
}

void check_group_j(const TruncSeries3& alpha, const TruncSeries3& beta, const TruncSeries3& gamma)
{
    auto fail = [](const std::string& what) { throw Error(ErrorCode::NotInGroupJ, what); };
    if (alpha.constant_term() != 0 || beta.constant_term() != 0 || gamma.constant_term() != 0)
        fail("components must vanish at the origin");
    if (alpha.coeff({1, 0, 0}) != 0)
        fail("d alpha / dx does not vanish at the origin");
    if (beta.coeff({0, 1, 0}) != 0)
        fail("d beta / dy does not vanish at the origin");
    if (gamma.coeff({0, 0, 1}) != 0)
        fail("d gamma / dp does not vanish at the origin");
}

ContactResidual pullback_form(const TruncSeries3& alpha, const TruncSeries3& beta, const TruncSeries3& gamma)
{
    const WeightSystem& ws = alpha.weights();
    const int top = std::max({alpha.bound(), beta.bound(), gamma.bound()}) + ws.n();
    const TruncSeries3 P = var(ws, Var::P, top) + gamma;
    ContactResidual r{partial(beta, Var::X) - P * (one(ws, top) + partial(alpha, Var::X)),
                      one(ws, top) + partial(beta, Var::Y) - P * partial(alpha, Var::Y),
                      partial(beta, Var::P) - P * partial(alpha, Var::P)};
    return r;
}

namespace {

TruncSeries3 jpart_certificate(const TruncSeries3& alpha, const TruncSeries3& beta, const TruncSeries3& gamma)
{
    const auto r = pullback_form(alpha, beta, gamma);
    if (!r.C.vanishes())
        throw Error(ErrorCode::NotContact, "dp coefficient of the pullback is " + r.C.to_string());
    const TruncSeries3 ap = r.A + var(alpha.weights(), Var::P, r.B.bound() + alpha.weights().wp()) * r.B;
    if (!ap.vanishes())
        throw Error(ErrorCode::NotContact, "dx coefficient is not -p times the dy coefficient: " + ap.to_string());
    if (r.B.constant_term() == 0)
        throw Error(ErrorCode::NotContact, "pullback factor is not a unit");
    return r.B;
}

} // namespace

ContactTx::ContactTx(Rat lambda, Rat mu, TruncSeries3 alpha, TruncSeries3 beta, TruncSeries3 gamma)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), alpha_(std::move(alpha)), beta_(std::move(beta)),
      gamma_(std::move(gamma)), cert_(alpha_.weights(), 0), bound_(0)
{
    if (lambda_ == 0 || mu_ == 0)
        throw Error(ErrorCode::NotInvertible, "scaling factors must be nonzero");
    if (!(alpha_.weights() == beta_.weights()) || !(alpha_.weights() == gamma_.weights()))
        throw Error(ErrorCode::WeightMismatch, "components use different weight systems");
    check_group_j(alpha_, beta_, gamma_);
    bound_ = std::min({alpha_.bound(), beta_.bound(), gamma_.bound() + weights().k()});
    cert_ = jpart_certificate(alpha_, beta_, gamma_) * mu_;
}

ContactTx ContactTx::identity(WeightSystem ws, int bound)
{
    return ContactTx(1, 1, TruncSeries3(ws, bound), TruncSeries3(ws, bound), TruncSeries3(ws, bound - ws.k()));
}

ContactTx ContactTx::scaling(WeightSystem ws, const Rat& lambda, const Rat& mu, int bound)
{
    return ContactTx(lambda, mu, TruncSeries3(ws, bound), TruncSeries3(ws, bound), TruncSeries3(ws, bound - ws.k()));
}

ContactTx ContactTx::jtype(TruncSeries3 alpha, TruncSeries3 beta, TruncSeries3 gamma)
{
    return ContactTx(1, 1, std::move(alpha), std::move(beta), std::move(gamma));
}

ContactTx::Kind ContactTx::kind() const
{
    const bool scaled = lambda_ != 1 || mu_ != 1;
    const bool j = has_jpart();
    if (scaled && j)
        return Kind::Composite;
    if (scaled)
        return Kind::Scaling;
    return j ? Kind::JType : Kind::Identity;
}

TruncSeries3 verify_contact(const ContactTx& tx)
{
    return jpart_certificate(tx.alpha(), tx.beta(), tx.gamma()) * tx.mu();
}

TruncSeries3 solve_cauchy(const TruncSeries3& alpha, const TruncSeries3& beta0)
{
    const WeightSystem& ws = alpha.weights();
    if (!(beta0.weights() == ws))
        throw Error(ErrorCode::WeightMismatch, "alpha and beta0 use different weight systems");
    if (alpha.constant_term() != 0 || alpha.coeff({1, 0, 0}) != 0)
        throw Error(ErrorCode::NotInGroupJ, "alpha and d alpha / dx must vanish at the origin");
    if (!beta0.is_p_free())
        throw Error(ErrorCode::NotInGroupJ, "beta0 must not depend on p");
    if (beta0.constant_term() != 0 || beta0.coeff({0, 1, 0}) != 0)
        throw Error(ErrorCode::NotInGroupJ, "beta0 and d beta0 / dy must vanish at the origin");
    for (const auto& [m, c] : alpha.terms())
        if (alpha.weight(m) <= ws.k())
            throw Error(ErrorCode::HypothesisViolated,
                        "alpha term " + to_string(m) + " has weight <= w(x); the recursion needs n > 2k");

    const int N = alpha.bound();
    const int wp = ws.wp();
    const int big = N + 4 * ws.n();
    const int lmax = N / wp;
    std::vector<TruncSeries3> A; // p-slices of alpha, exact
    for (int l = 0; l <= lmax + 1; ++l)
        A.push_back(as_exact(alpha.p_slice(l), big));
    auto slice = [&A, &ws, big](int l) { return l < static_cast<int>(A.size()) ? A[static_cast<std::size_t>(l)] : TruncSeries3(ws, big); };

    // U = 1 + a_x + p a_y by p-slices.
    std::vector<TruncSeries3> U;
    for (int l = 0; l <= lmax; ++l) {
        TruncSeries3 u = as_exact(partial(slice(l), Var::X), big);
        if (l > 0)
            u += as_exact(partial(slice(l - 1), Var::Y), big);
        if (l == 0)
            u += one(ws, big);
        U.push_back(std::move(u));
    }

    std::vector<TruncSeries3> beta{beta0.truncated(N)};
    for (int m = 0; m + 1 <= lmax; ++m) {
        const int target = N - (m + 1) * wp;
        // [p^m] of a_p p is m A_m.
        TruncSeries3 rhs = slice(m) * Rat(m);
        for (int i = 0; i <= m; ++i) {
            const TruncSeries3 ap = slice(i + 1) * Rat(i + 1);
            if (ap.is_zero())
                continue;
            rhs += ap * partial(beta[static_cast<std::size_t>(m - i)], Var::X);
            if (m - 1 - i >= 0)
                rhs += ap * partial(beta[static_cast<std::size_t>(m - 1 - i)], Var::Y);
        }
        for (int i = 1; i <= m; ++i)
            if (!U[static_cast<std::size_t>(i)].is_zero())
                rhs -= U[static_cast<std::size_t>(i)] * beta[static_cast<std::size_t>(m - i + 1)] * Rat(m - i + 1);
        TruncSeries3 next = (rhs / U[0]) * Rat(1, m + 1);
        if (next.bound() < target)
            throw Error(ErrorCode::TruncationTooSmall, "Cauchy recursion lost precision at p^" + std::to_string(m + 1));
        beta.push_back(next.truncated(target));
    }

    TruncSeries3 out(ws, N);
    for (std::size_t l = 0; l < beta.size(); ++l)
        for (const auto& [m, c] : beta[l].terms())
            out.add_term({m.i, m.j, static_cast<int>(l)}, c);
    return out;
}

TruncSeries3 solve_gamma(const TruncSeries3& alpha, const TruncSeries3& beta)
{
    const WeightSystem& ws = alpha.weights();
    const int top = std::max(alpha.bound(), beta.bound()) + ws.n();
    const TruncSeries3 p = var(ws, Var::P, top);
    const TruncSeries3 ax = partial(alpha, Var::X);
    const TruncSeries3 ay = partial(alpha, Var::Y);
    const TruncSeries3 U = one(ws, top) + ax + p * ay;
    if (U.constant_term() == 0)
        throw Error(ErrorCode::DegenerateJacobian, "1 + a_x + p a_y is not a unit");
    const TruncSeries3 num = partial(beta, Var::X) + p * partial(beta, Var::Y) - p * (ax + p * ay);
    return num / U;
}

ContactTx make_jtype(const TruncSeries3& alpha, const TruncSeries3& beta0)
{
    TruncSeries3 beta = solve_cauchy(alpha, beta0);
    TruncSeries3 gamma = solve_gamma(alpha, beta);
    return ContactTx::jtype(alpha, std::move(beta), std::move(gamma));
}

ContactTx lift_plane_change(const TruncSeries3& a, const TruncSeries3& b)
{
    if (!a.is_p_free() || !b.is_p_free())
        throw Error(ErrorCode::NotInGroupJ, "plane change must not depend on p");
    TruncSeries3 gamma = solve_gamma(a, b);
    return ContactTx::jtype(a, b, std::move(gamma));
}

ConormalParam apply_to_conormal(const ContactTx& tx, const ConormalParam& L)
{
    if (!(tx.weights() == L.branch().weights()))
        throw Error(ErrorCode::WeightMismatch, "transformation and curve use different weights");
    UniSeries X = L.x();
    UniSeries Y = L.y();
    UniSeries P = L.p();
    if (tx.has_jpart()) {
        X += substitute(tx.alpha(), L.x(), L.y(), L.p());
        Y += substitute(tx.beta(), L.x(), L.y(), L.p());
        P += substitute(tx.gamma(), L.x(), L.y(), L.p());
    }
    X *= tx.lambda();
    Y *= tx.mu();
    P *= tx.mu() / tx.lambda();

    auto nb = normalize_param(X, Y, L.k());
    ConormalParam image(std::move(nb.branch));
    const UniSeries moved_p = compose(P, nb.old_param);
    if (!moved_p.agrees_with(image.p()))
        throw Error(ErrorCode::NotLegendrianImage, "transported p differs from y'/x' of the image");
    return image;
}

namespace {

struct JPart {
    TruncSeries3 a, b, g;
};

// S^{-1} J S for S = (lambda x, mu y, mu p / lambda).
JPart conjugate(const JPart& j, const Rat& lambda, const Rat& mu)
{
    return {rescale(j.a, lambda, mu, 1 / lambda), rescale(j.b, lambda, mu, 1 / mu), rescale(j.g, lambda, mu, lambda / mu)};
}

// (id + h1) o (id + h2)
JPart compose_j(const JPart& h1, const JPart& h2)
{
    const WeightSystem& ws = h1.a.weights();
    const bool z1 = h1.a.is_zero() && h1.b.is_zero() && h1.g.is_zero();
    const bool z2 = h2.a.is_zero() && h2.b.is_zero() && h2.g.is_zero();
    if (z1 || z2) {
        const JPart& keep = z1 ? h2 : h1;
        const int ba = std::min(h1.a.bound(), h2.a.bound());
        const int bb = std::min(h1.b.bound(), h2.b.bound());
        const int bg = std::min(h1.g.bound(), h2.g.bound());
        return {keep.a.truncated(ba), keep.b.truncated(bb), keep.g.truncated(bg)};
    }
    const int top = std::max({h2.a.bound(), h2.b.bound(), h2.g.bound()}) + ws.n();
    const TruncSeries3 X = var(ws, Var::X, top) + h2.a;
    const TruncSeries3 Y = var(ws, Var::Y, top) + h2.b;
    const TruncSeries3 P = var(ws, Var::P, top) + h2.g;
    return {h2.a + substitute(h1.a, X, Y, P), h2.b + substitute(h1.b, X, Y, P), h2.g + substitute(h1.g, X, Y, P)};
}

JPart invert_j(const JPart& h)
{
    const WeightSystem& ws = h.a.weights();
    // Each pass of h' = -h o (id + h') fixes delta more weight units, so the early
    // passes run at reduced precision.
    int delta = std::numeric_limits<int>::max();
    auto gain = [&delta](const TruncSeries3& f, int w0) {
        for (const auto& [m, c] : f.terms())
            delta = std::min(delta, f.weight(m) - w0);
    };
    gain(h.a, ws.wx());
    gain(h.b, ws.wy());
    gain(h.g, ws.wp());
    if (delta == std::numeric_limits<int>::max())
        return h;
    if (delta <= 0)
        throw Error(ErrorCode::NotInvertible, "inversion needs weight-raising components");

    // inv is treated as a polynomial; pass t only keeps weights it has fixed.
    JPart inv{-h.a, -h.b, -h.g};
    const int limit = 2 * std::max({h.a.bound(), h.b.bound(), h.g.bound()}) + 8;
    for (int it = 0; it < limit; ++it) {
        const int reach = (it + 2) * delta;
        const int ba = std::min(h.a.bound(), ws.wx() + reach);
        const int bb = std::min(h.b.bound(), ws.wy() + reach);
        const int bg = std::min(h.g.bound(), ws.wp() + reach);
        const bool full = ba == h.a.bound() && bb == h.b.bound() && bg == h.g.bound();
        const int top = std::max({ba, bb, bg}) + ws.n();
        const TruncSeries3 X = var(ws, Var::X, top) + as_exact(inv.a.truncated(ba), top);
        const TruncSeries3 Y = var(ws, Var::Y, top) + as_exact(inv.b.truncated(bb), top);
        const TruncSeries3 P = var(ws, Var::P, top) + as_exact(inv.g.truncated(bg), top);
        JPart next{-substitute(h.a.truncated(ba), X, Y, P).truncated(ba), -substitute(h.b.truncated(bb), X, Y, P).truncated(bb),
                   -substitute(h.g.truncated(bg), X, Y, P).truncated(bg)};
        if (full && same_series(next.a, inv.a) && same_series(next.b, inv.b) && same_series(next.g, inv.g))
            return next;
        inv = std::move(next);
    }
    throw Error(ErrorCode::NotInvertible, "fixed-point inversion did not stabilize");
}

} // namespace

ContactTx compose(const ContactTx& a, const ContactTx& b)
{
    if (!(a.weights() == b.weights()))
        throw Error(ErrorCode::WeightMismatch, "transformations use different weight systems");
    // S_a J_a S_b J_b = (S_a S_b) (S_b^{-1} J_a S_b) J_b
    const JPart ja = conjugate({a.alpha_, a.beta_, a.gamma_}, b.lambda_, b.mu_);
    const JPart j = compose_j(ja, {b.alpha_, b.beta_, b.gamma_});
    return ContactTx(a.lambda_ * b.lambda_, a.mu_ * b.mu_, j.a, j.b, j.g);
}

ContactTx invert(const ContactTx& tx)
{
    // (S J)^{-1} = S^{-1} (S J^{-1} S^{-1})
    const JPart ji = invert_j({tx.alpha_, tx.beta_, tx.gamma_});
    const Rat li = 1 / tx.lambda_;
    const Rat mi = 1 / tx.mu_;
    const JPart j = conjugate(ji, li, mi);
    return ContactTx(li, mi, j.a, j.b, j.g);
}

} // namespace legn
