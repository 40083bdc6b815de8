#include "legn/versal.hpp"

#include <algorithm>
#include <numeric>

namespace legn {

namespace {

void check_pair(int k, int n)
{
    if (!(n > k && k > 1) || std::gcd(k, n) != 1)
        throw Error(ErrorCode::HypothesisViolated,
                    "need n > k > 1 with gcd(k, n) = 1, got (" + std::to_string(k) + ", " + std::to_string(n) + ")");
}

std::string pair_str(const Pair& p)
{
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

void check_single_pair(const BranchParam& b)
{
    if (!b.has_weights())
        throw Error(ErrorCode::NotSemiQuasiHomogeneous, "branch is not of type (k, n) with gcd(k, n) = 1");
    const auto inv = puiseux_invariants(b);
    if (inv.pairs.size() != 1)
        throw Error(ErrorCode::NotSemiQuasiHomogeneous,
                    "branch has " + std::to_string(inv.pairs.size()) + " Puiseux pairs");
}

TruncSeries3 xy_monomial(const WeightSystem& ws, int a, int b, const Rat& c, int bound)
{
    return TruncSeries3::monomial(ws, {a, b, 0}, c, bound);
}

} // namespace

std::string to_string(Flavor f)
{
    return f == Flavor::B ? "B" : "C";
}

bool DeformBasis::contains(const Pair& ij) const
{
    return std::find(pairs.begin(), pairs.end(), ij) != pairs.end();
}

int DeformBasis::max_weight() const
{
    return pairs.empty() ? 0 : weight(pairs.back());
}

int determinacy_bound(int k, int n)
{
    return k * (n - 2) + n * (k - 2);
}

DeformBasis basis(int k, int n, Flavor flavor)
{
    check_pair(k, n);
    if (flavor == Flavor::C && n <= 2 * k)
        throw Error(ErrorCode::HypothesisViolated, "basis C needs n > 2k");
    DeformBasis out;
    out.k = k;
    out.n = n;
    out.flavor = flavor;
    for (int i = 0; i <= n - 2; ++i)
        for (int j = 0; j <= k - 2; ++j) {
            if (k * i + n * j <= k * n)
                continue;
            if (flavor == Flavor::C && i + j > n - 2)
                continue;
            out.pairs.emplace_back(i, j);
        }
    std::sort(out.pairs.begin(), out.pairs.end(),
              [&](const Pair& a, const Pair& b) { return out.weight(a) < out.weight(b); });
    for (std::size_t q = 1; q < out.pairs.size(); ++q)
        if (out.weight(out.pairs[q - 1]) == out.weight(out.pairs[q]))
            throw Error(ErrorCode::ReductionFailed, "weight tie in basis");
    return out;
}

Rat VersalCoords::get(const Pair& ij) const
{
    auto it = t.find(ij);
    return it == t.end() ? Rat(0) : it->second;
}

void VersalCoords::set(const Pair& ij, const Rat& c)
{
    if (c == 0)
        t.erase(ij);
    else
        t[ij] = c;
}

bool VersalCoords::supported_in(const DeformBasis& b) const
{
    return std::all_of(t.begin(), t.end(), [&](const auto& e) { return b.contains(e.first); });
}

TruncSeries3 versal_function(const VersalCoords& c, int bound)
{
    const WeightSystem ws(c.basis.k, c.basis.n);
    TruncSeries3 F(ws, bound);
    F.add_term({0, c.basis.k, 0}, 1);
    F.add_term({c.basis.n, 0, 0}, -1);
    for (const auto& [ij, v] : c.t)
        F.add_term({ij.first, ij.second, 0}, v);
    return F;
}

CleanResult clean_monomial(int i, int j, int l, int k, int n)
{
    check_pair(k, n);
    if (i < 0 || j < 0 || l < 0)
        throw Error(ErrorCode::BelowConductorRegion, "negative exponent");
    const int w = k * i + n * j + (n - k) * l;
    const Monomial orig{i, j, l};
    while (l > 0) {
        if (l >= k) {
            l -= k;
            i += n - k;
        } else if (i > 0) {
            --i;
            ++j;
            --l;
        } else {
            // y^j p^l = (n/k)^l y^(j+l-k) x^(n-l); j + l >= k holds whenever w > kn
            if (j + l < k)
                throw Error(ErrorCode::BelowConductorRegion, to_string(orig) + " has no p-free rewrite");
            i = n - l;
            j = j + l - k;
            l = 0;
        }
    }
    while (j >= k) {
        j -= k;
        i += n;
    }
    CleanResult r{i, j, pow(frac(n, k), orig.l)};

    // certificate on the reference conormal of y^k = x^n
    const int trunc = w + k * n + 1;
    const ConormalParam L = conormal(BranchParam(k, UniSeries::monomial(n, 1, trunc)));
    const WeightSystem ws(k, n);
    TruncSeries3 diff = TruncSeries3::monomial(ws, orig, 1, trunc);
    diff.add_term({r.a, r.b, 0}, -r.coefficient);
    const Valuation v = valuation(L, diff);
    if (k * r.a + n * r.b != w || !(v.at_least || v.value > w))
        throw Error(ErrorCode::ReductionFailed, "cleaning certificate failed for " + to_string(orig));
    return r;
}

TruncSeries3 reduce_to_xy(const TruncSeries3& u, const ConormalParam& L)
{
    const WeightSystem ws = L.branch().weights();
    const int k = ws.k();
    const int n = ws.n();
    const int c = puiseux_invariants(L.branch()).conductor;
    TruncSeries3 v(ws, u.bound());
    TruncSeries3 cur = u;
    Rat lead;
    Valuation val = valuation(L, cur, lead);
    if (!val.at_least && val.value < c)
        throw Error(ErrorCode::BelowConductor,
                    "valuation " + std::to_string(val.value) + " below the conductor " + std::to_string(c));
    const Rat an = L.branch().a(n);
    int last = -1;
    while (!val.at_least) {
        if (val.value <= last)
            throw Error(ErrorCode::ReductionFailed, "formal reduction did not raise the valuation");
        last = val.value;
        const auto rep = semigroup_rep(k, n, val.value);
        if (!rep)
            throw Error(ErrorCode::BelowConductor, "order " + std::to_string(val.value) + " is a semigroup gap");
        const auto [a, b] = *rep;
        if (k * a + n * b > u.bound())
            throw Error(ErrorCode::TruncationTooSmall, "reduction needs a monomial above the bound of u");
        const Rat xi = lead / pow(an, b);
        v.add_term({a, b, 0}, xi);
        cur.add_term({a, b, 0}, -xi);
        val = valuation(L, cur, lead);
    }
    return v;
}

JacobianSplit jacobian_divide(const TruncSeries3& g, int k, int n)
{
    const WeightSystem& ws = g.weights();
    JacobianSplit out{TruncSeries3(ws, g.bound() - k * (n - 1)), TruncSeries3(ws, g.bound() - n * (k - 1)),
                      TruncSeries3(ws, g.bound())};
    for (const auto& [m, c] : g.terms()) {
        if (m.l != 0)
            throw Error(ErrorCode::NotInGroupJ, "jacobian_divide expects a p-free series");
        if (m.i >= n - 1)
            out.A.add_term({m.i - (n - 1), m.j, 0}, c / n);
        else if (m.j >= k - 1)
            out.Bq.add_term({m.i, m.j - (k - 1), 0}, c / k);
        else
            out.R.add_term(m, c);
    }
    return out;
}

std::string to_string(ReductionStep::Kind k)
{
    switch (k) {
    case ReductionStep::Kind::Absorb: return "absorb";
    case ReductionStep::Kind::PlaneChange: return "plane_change";
    case ReductionStep::Kind::Contact: return "contact";
    case ReductionStep::Kind::Scaling: return "scaling";
    }
    return "?";
}

std::vector<ContactTx> ReductionLog::transforms() const
{
    std::vector<ContactTx> out;
    for (const auto& s : steps)
        if (s.tx)
            out.push_back(*s.tx);
    return out;
}

namespace {

// One equisingular pass on an already transported conormal; appends to log.
ReductionResult reduce_pass(ConormalParam L, const ReduceOptions& opt, int phase, ReductionLog log)
{
    const WeightSystem ws = L.branch().weights();
    const int k = ws.k();
    const int n = ws.n();
    const int kn = k * n;
    const int N = L.trunc();
    const int D = opt.determinacy.value_or(determinacy_bound(k, n));
    const std::optional<int> guard = opt.mode == ReduceMode::Eliminate ? std::optional<int>(0) : std::nullopt;

    VersalCoords coords{basis(k, n, Flavor::B), {}};

    const Rat an = L.branch().a(n);
    if (an != 1) {
        ContactTx tx = ContactTx::scaling(ws, 1, 1 / an, N);
        L = apply_to_conormal(tx, L);
        ReductionStep st;
        st.kind = ReductionStep::Kind::Scaling;
        st.phase = phase;
        st.weight = kn;
        st.monomial = {0, k};
        st.coefficient = an;
        st.tx = std::move(tx);
        log.steps.push_back(std::move(st));
    }

    int last = kn;
    int vanishing = 0;
    for (;;) {
        const TruncSeries3 F = versal_function(coords, N);
        Rat lead;
        const Valuation v = valuation(L, F, lead, guard);
        if (v.at_least) {
            vanishing = v.value;
            break;
        }
        const int m = v.value;
        if (m <= kn)
            throw Error(ErrorCode::NotEquisingular,
                        "defect of weight " + std::to_string(m) + " <= kn = " + std::to_string(kn));
        if (opt.mode == ReduceMode::Discard && m > D) {
            vanishing = m;
            break;
        }
        if (m <= last)
            throw Error(ErrorCode::ReductionFailed, "defect weight did not increase at " + std::to_string(m));
        last = m;
        const auto rep = semigroup_rep(k, n, m);
        if (!rep)
            throw Error(ErrorCode::ReductionFailed, "no monomial of weight " + std::to_string(m));
        const auto [a, b] = *rep;
        const Rat d = lead; // a_n = 1 here

        ReductionStep st;
        st.phase = phase;
        st.weight = m;
        st.monomial = {a, b};
        st.coefficient = d;
        if (a <= n - 2 && b <= k - 2) {
            st.kind = ReductionStep::Kind::Absorb;
            coords.set({a, b}, coords.get({a, b}) - d);
        } else {
            // F_x a + F_y b cancels the defect to first order
            const JacobianSplit split = jacobian_divide(xy_monomial(ws, a, b, -d, N + kn), k, n); // exact monomial
            ContactTx tx = lift_plane_change((-split.A).truncated(N), split.Bq.truncated(N));
            L = apply_to_conormal(tx, L);
            st.kind = ReductionStep::Kind::PlaneChange;
            st.tx = std::move(tx);
        }
        st.coords_after = coords.t;
        log.steps.push_back(std::move(st));
    }
    return {std::move(coords), std::move(log), std::move(L), vanishing};
}

int next_phase(const ReductionLog& log)
{
    return log.steps.empty() ? 0 : log.steps.back().phase + 1;
}

} // namespace

ReductionResult equisingular_reduce(const BranchParam& b, const ReduceOptions& opt)
{
    check_single_pair(b);
    return reduce_pass(conormal(b), opt, 0, {});
}

namespace {

BranchParam branch_of_equation(const TruncSeries3& F, int trunc)
{
    const WeightSystem& ws = F.weights();
    const int kn = ws.k() * ws.n();
    for (const auto& [m, c] : F.terms())
        if (F.weight(m) < kn)
            throw Error(ErrorCode::NotEquisingular, "term " + to_string(m) + " of weight " +
                                                        std::to_string(F.weight(m)) + " <= kn = " + std::to_string(kn));
    return parametrize_equation(F, trunc);
}

} // namespace

ReductionResult equisingular_reduce(const TruncSeries3& F, int trunc, const ReduceOptions& opt)
{
    return equisingular_reduce(branch_of_equation(F, trunc), opt);
}

ReductionResult microlocal_reduce(const TruncSeries3& F, int trunc)
{
    return microlocal_reduce(branch_of_equation(F, trunc));
}

ReductionResult microlocal_reduce(const BranchParam& b)
{
    check_single_pair(b);
    const WeightSystem ws = b.weights();
    const int k = ws.k();
    const int n = ws.n();
    const DeformBasis C = basis(k, n, Flavor::C);
    const DeformBasis B = basis(k, n, Flavor::B);

    ReductionResult r = reduce_pass(conormal(b), {}, 0, {});
    const int N = r.curve.trunc();

    for (const Pair& ab : B.pairs) {
        if (C.contains(ab))
            continue;
        const Rat t = r.coords.get(ab);
        if (t == 0)
            continue;
        const auto [a, bb] = ab;
        const int v = B.weight(ab);
        const int e = a + bb - (n - 1);
        const int f = n - 1 - a;

        VersalCoords rest = r.coords;
        rest.set(ab, 0);
        const TruncSeries3 Frest = versal_function(rest, N);
        const TruncSeries3 shape = TruncSeries3::monomial(ws, {0, e, f}, 1, N);
        const TruncSeries3 zero(ws, N);

        // weight-v coefficient of the remaining defect on the transported curve
        auto defect_at = [&](const ConormalParam& L) {
            const UniSeries q = substitute(Frest, L.x(), L.y(), L.p());
            if (q.order() < v)
                throw Error(ErrorCode::ReductionFailed,
                            "contact step disturbed weights below " + std::to_string(v));
            return q.coeff(v);
        };
        const Rat c0 = defect_at(r.curve);
        const Rat c1 = defect_at(apply_to_conormal(make_jtype(shape, zero), r.curve));
        const Rat c2 = defect_at(apply_to_conormal(make_jtype(shape * Rat(2), zero), r.curve));
        const Rat kappa = c1 - c0;
        if (kappa == 0 || c2 != c0 + 2 * kappa)
            throw Error(ErrorCode::ReductionFailed, "degenerate linear condition for " + pair_str(ab));
        const Rat lambda = -c0 / kappa;
        // first-order coefficient of the forward map is -n (n/k)^f / (n - a)
        const Rat closed = -t * (n - a) * pow(frac(k, n), f) / n;
        if (lambda != closed)
            throw Error(ErrorCode::ReductionFailed,
                        "lambda " + format_rat(lambda) + " differs from the closed form " + format_rat(closed));

        ContactTx tx = make_jtype(shape * lambda, zero);
        ConormalParam moved = apply_to_conormal(tx, r.curve);

        ReductionStep st;
        st.kind = ReductionStep::Kind::Contact;
        st.phase = next_phase(r.log);
        st.weight = v;
        st.monomial = ab;
        st.coefficient = t;
        st.lambda = lambda;
        st.lambda_closed_form = closed;
        st.tx = std::move(tx);
        st.coords_after = rest.t;
        r.log.steps.push_back(std::move(st));

        const VersalCoords before = r.coords;
        const int phase = next_phase(r.log);
        r = reduce_pass(std::move(moved), {}, phase, std::move(r.log));
        for (const Pair& q : B.pairs) {
            if (B.weight(q) < v && r.coords.get(q) != before.get(q))
                throw Error(ErrorCode::ReductionFailed, "coordinate " + pair_str(q) + " changed below weight " +
                                                            std::to_string(v));
        }
        if (r.coords.get(ab) != 0)
            throw Error(ErrorCode::ReductionFailed, "coordinate " + pair_str(ab) + " survived its contact step");
    }
    if (!r.coords.supported_in(C))
        throw Error(ErrorCode::ReductionFailed, "coordinates outside C remain");

    // exact normal form: kill the tail too, so the final curve is the branch of G
    const VersalCoords kept = r.coords;
    r = reduce_pass(std::move(r.curve), {ReduceMode::Eliminate, {}}, next_phase(r.log), std::move(r.log));
    if (!(r.coords == kept))
        throw Error(ErrorCode::ReductionFailed, "eliminate pass changed the coordinates");
    r.coords.basis = C;
    return r;
}

TransportCertificate certify_transport(const BranchParam& input, const ReductionResult& r)
{
    TransportCertificate cert;
    ConormalParam L = conormal(input);
    for (const ContactTx& tx : r.log.transforms())
        L = apply_to_conormal(tx, L);
    cert.replay_matches = L.y().agrees_with(r.curve.y()) && L.trunc() == r.curve.trunc();

    const int k = input.k();
    const int n = input.n();
    const int slack = n * (k - 1);
    VersalCoords c = r.coords;
    const BranchParam target = parametrize_equation(versal_function(c, r.curve.trunc() + slack), r.curve.trunc());
    cert.matched_order = std::min(r.vanishing_order - slack, target.trunc() + 1);
    cert.normal_form_matches = cert.matched_order > n;
    for (int o = 0; o < cert.matched_order && o <= r.curve.trunc(); ++o)
        if (target.y().coeff(o) != r.curve.y().coeff(o))
            cert.normal_form_matches = false;
    return cert;
}

} // namespace legn
