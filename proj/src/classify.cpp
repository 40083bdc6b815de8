#include "legn/classify.hpp"

#include <numeric>
#include <vector>

namespace legn {

ScalingWeights scaling_weights(const DeformBasis& b)
{
    ScalingWeights w;
    for (const Pair& p : b.pairs)
        w.d[p] = b.excess(p);
    return w;
}

VersalCoords scaling_action(const VersalCoords& c, const Rat& tau)
{
    if (tau == 0)
        throw Error(ErrorCode::HypothesisViolated, "scaling by zero");
    VersalCoords out{c.basis, {}};
    for (const auto& [p, v] : c.t)
        out.set(p, v * pow(tau, c.basis.excess(p)));
    return out;
}

bool scaling_identity_holds(const DeformBasis& b)
{
    // exponent vector: x, y, lambda, then one slot per t_ij
    using Poly = std::map<std::vector<int>, Rat>;
    const std::size_t m = b.pairs.size();
    auto term = [&](int i, int j, int lam, std::optional<std::size_t> slot, int tdeg) {
        std::vector<int> e(3 + m, 0);
        e[0] = i;
        e[1] = j;
        e[2] = lam;
        if (slot)
            e[3 + *slot] = tdeg;
        return e;
    };
    Poly lhs;
    Poly rhs;
    const int k = b.k;
    const int n = b.n;
    const int kn = k * n;
    auto add = [](Poly& p, std::vector<int> e, const Rat& c) {
        p[e] += c;
        if (p[e] == 0)
            p.erase(e);
    };
    // lhs: substitute x -> lambda^k x, y -> lambda^n y
    add(lhs, term(0, k, n * k, {}, 0), 1);
    add(lhs, term(n, 0, k * n, {}, 0), -1);
    for (std::size_t q = 0; q < m; ++q) {
        const auto [i, j] = b.pairs[q];
        add(lhs, term(i, j, k * i + n * j, q, 1), 1);
    }
    // rhs: lambda^kn times F with t -> lambda^d t
    add(rhs, term(0, k, kn, {}, 0), 1);
    add(rhs, term(n, 0, kn, {}, 0), -1);
    for (std::size_t q = 0; q < m; ++q) {
        const auto [i, j] = b.pairs[q];
        add(rhs, term(i, j, kn + b.excess(b.pairs[q]), q, 1), 1);
    }
    return lhs == rhs;
}

std::string to_string(NormalFormId::Label l)
{
    switch (l) {
    case NormalFormId::Label::F0: return "F0";
    case NormalFormId::Label::F1: return "F1";
    case NormalFormId::Label::F2: return "F2";
    case NormalFormId::Label::General: return "General";
    }
    return "?";
}

std::string to_string(const NormalFormId& id)
{
    std::string s = to_string(id.label) + " {";
    bool first = true;
    for (const auto& [p, v] : id.coords.t) {
        s += (first ? "" : ", ") + std::string("(") + std::to_string(p.first) + "," + std::to_string(p.second) +
             "): " + format_rat(v);
        first = false;
    }
    return s + "}" + (id.complete ? "" : " (incomplete)");
}

NormalFormId classify_4_11(const VersalCoords& c)
{
    if (c.basis.k != 4 || c.basis.n != 11)
        throw Error(ErrorCode::HypothesisViolated, "classify_4_11 needs type (4, 11)");
    const DeformBasis C = basis(4, 11, Flavor::C);
    if (!c.supported_in(C))
        throw Error(ErrorCode::HypothesisViolated, "coordinates are not over C(4, 11)");
    const Rat t2 = c.get({6, 2});
    const Rat t6 = c.get({7, 2});
    NormalFormId id;
    id.complete = true;
    id.coords = VersalCoords{C, {}};
    if (t2 != 0) {
        // t6 is removable once t2 is normalized
        id.label = NormalFormId::Label::F1;
        id.coords.set({6, 2}, 1);
    } else if (t6 != 0) {
        id.label = NormalFormId::Label::F2;
        id.coords.set({7, 2}, 1);
    } else {
        id.label = NormalFormId::Label::F0;
    }
    return id;
}

NormalFormId classify(const VersalCoords& c)
{
    if (c.basis.k == 4 && c.basis.n == 11)
        return classify_4_11(c);
    NormalFormId id;
    id.label = NormalFormId::Label::General;
    id.complete = false;
    id.coords = c;
    if (c.t.empty())
        return id;
    // make the lowest nonzero coordinate +-1 when a rational root exists
    for (const Pair& p : c.basis.pairs) {
        const Rat v = c.get(p);
        if (v == 0)
            continue;
        const int d = c.basis.excess(p);
        Rat tau;
        if (rational_root(1 / abs(v), d, tau))
            id.coords = scaling_action(c, tau);
        break;
    }
    return id;
}

Evidence distinguish(const NormalFormId& a, const NormalFormId& b, const ConormalParam& La, const ConormalParam& Lb)
{
    Evidence ev;
    using L = NormalFormId::Label;
    if (a == b) {
        ev.equal = true;
        ev.reason = "same normal form " + to_string(a.label);
        return ev;
    }
    if (a.label == L::F0 || b.label == L::F0) {
        ev.witness_a = smooth_surface_test(La);
        ev.witness_b = smooth_surface_test(Lb);
        const bool wa = ev.witness_a.has_value();
        const bool wb = ev.witness_b.has_value();
        if (wa != wb) {
            ev.reason = std::string("curve ") + (wa ? "a" : "b") +
                        " lies on a smooth surface, the other has none inside the window";
            return ev;
        }
        ev.reason = "smooth-surface test does not separate the curves";
        return ev;
    }
    ev.reason = "distinct normal-form coordinates: " + to_string(a) + " vs " + to_string(b);
    if (!a.complete || !b.complete)
        ev.reason += " (classification not known to be complete)";
    return ev;
}

bool rigidity_check(int k, int n)
{
    if (!(n > 2 * k) || std::gcd(k, n) != 1)
        throw Error(ErrorCode::HypothesisViolated, "rigidity needs n > 2k and gcd(k, n) = 1");
    return basis(k, n, Flavor::C).pairs.empty();
}

bool in_rigid_list(int k, int n)
{
    if (k == 2)
        return n % 2 == 1 && n >= 3;
    return k == 3 && (n == 7 || n == 8);
}

GIdentity g_identity_4_11(const Rat& t)
{
    const WeightSystem ws(4, 11);
    const int bound = 200;
    TruncSeries3 X = TruncSeries3::variable(ws, Var::X, bound);
    X.add_term({2, 0, 0}, -2 * t);
    TruncSeries3 Y = TruncSeries3::variable(ws, Var::Y, bound);
    Y.add_term({1, 1, 0}, -frac(11, 2) * t);

    TruncSeries3 G(ws, bound);
    G.add_term({0, 4, 0}, 1);
    G.add_term({11, 0, 0}, -1);
    G.add_term({6, 2, 0}, 1);
    G.add_term({7, 2, 0}, t);
    TruncSeries3 f1(ws, bound);
    f1.add_term({0, 4, 0}, 1);
    f1.add_term({11, 0, 0}, -1);
    f1.add_term({6, 2, 0}, 1);

    GIdentity out{substitute(G, X, Y, TruncSeries3::variable(ws, Var::P, bound)), TruncSeries3(ws, bound), 0,
                        false};
    // quotient degree by degree: the weight 44 + d part must be divisible by y^4 - x^11
    for (int d = 0; d < 8; ++d) {
        const TruncSeries3 rest = out.P - out.unit * f1;
        TruncSeries3 part(ws, bound);
        for (const auto& [m, c] : rest.terms()) {
            if (rest.weight(m) < 44 + d)
                return out; // a lower part survived: not of the claimed shape
            if (rest.weight(m) == 44 + d)
                part.add_term(m, c);
        }
        // exact division of a weighted-homogeneous polynomial by y^4 - x^11, eliminating y^4
        while (!part.is_zero()) {
            Monomial lead = part.terms().begin()->first;
            for (const auto& [m, c] : part.terms())
                if (m.j > lead.j)
                    lead = m;
            const Rat c = part.coeff(lead);
            if (lead.j < 4)
                return out; // remainder: not divisible
            const Monomial q{lead.i, lead.j - 4, 0};
            out.unit.add_term(q, c);
            part.add_term(lead, -c);
            part.add_term({q.i + 11, q.j, 0}, c);
        }
    }
    const TruncSeries3 residual = out.P - out.unit * f1;
    out.residual_weight = residual.order();
    out.ok = out.residual_weight >= 52;
    return out;
}

} // namespace legn
