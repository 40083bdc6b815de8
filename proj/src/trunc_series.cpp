#include <algorithm>
#include <numeric>
#include <sstream>

#include "legn/series.hpp"

namespace legn {

WeightSystem::WeightSystem(int k, int n) : k_(k), n_(n)
{
    if (!(n > k && k > 1))
        throw Error(ErrorCode::HypothesisViolated,
                    "weights need n > k > 1, got (k, n) = (" + std::to_string(k) + ", " + std::to_string(n) + ")");
    if (std::gcd(k, n) != 1)
        throw Error(ErrorCode::HypothesisViolated,
                    "weights need gcd(k, n) = 1, got (" + std::to_string(k) + ", " + std::to_string(n) + ")");
}

std::string to_string(const Monomial& m)
{
    std::string out;
    auto put = [&out](const char* v, int e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += "*";
        out += v;
        if (e > 1)
            out += "^" + std::to_string(e);
    };
    put("x", m.i);
    put("y", m.j);
    put("p", m.l);
    return out.empty() ? "1" : out;
}

TruncSeries3::TruncSeries3(WeightSystem ws, int bound) : ws_(ws), bound_(std::max(bound, -1)) {}

TruncSeries3 TruncSeries3::monomial(WeightSystem ws, Monomial m, const Rat& c, int bound)
{
    TruncSeries3 f(ws, bound);
    f.add_term(m, c);
    return f;
}

TruncSeries3 TruncSeries3::constant(WeightSystem ws, const Rat& c, int bound)
{
    return monomial(ws, {0, 0, 0}, c, bound);
}

TruncSeries3 TruncSeries3::variable(WeightSystem ws, Var v, int bound)
{
    switch (v) {
    case Var::X: return monomial(ws, {1, 0, 0}, 1, bound);
    case Var::Y: return monomial(ws, {0, 1, 0}, 1, bound);
    case Var::P: return monomial(ws, {0, 0, 1}, 1, bound);
    }
    return TruncSeries3(ws, bound);
}

Rat TruncSeries3::coeff(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

int TruncSeries3::order() const
{
    int best = bound_ + 1;
    for (const auto& [m, c] : terms_)
        best = std::min(best, weight(m));
    return best;
}

bool TruncSeries3::is_p_free() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.l == 0; });
}

TruncSeries3 TruncSeries3::truncated(int new_bound) const
{
    TruncSeries3 f(ws_, std::min(new_bound, bound_));
    for (const auto& [m, c] : terms_)
        if (weight(m) <= f.bound_)
            f.terms_.emplace(m, c);
    return f;
}

TruncSeries3 TruncSeries3::p_slice(int l) const
{
    TruncSeries3 f(ws_, bound_ - l * ws_.wp());
    for (const auto& [m, c] : terms_)
        if (m.l == l)
            f.terms_.emplace(Monomial{m.i, m.j, 0}, c);
    return f;
}

int TruncSeries3::max_p_degree() const
{
    int best = -1;
    for (const auto& [m, c] : terms_)
        best = std::max(best, m.l);
    return best;
}

void TruncSeries3::add_term(const Monomial& m, const Rat& c)
{
    if (m.i < 0 || m.j < 0 || m.l < 0)
        throw Error(ErrorCode::NotLocal, "negative exponent in " + legn::to_string(m));
    if (c == 0 || weight(m) > bound_)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void TruncSeries3::check_compatible(const TruncSeries3& o) const
{
    if (!(ws_ == o.ws_))
        throw Error(ErrorCode::WeightMismatch, "series use different weight systems");
}

TruncSeries3 TruncSeries3::operator-() const
{
    TruncSeries3 f(*this);
    for (auto& [m, c] : f.terms_)
        c = -c;
    return f;
}

TruncSeries3& TruncSeries3::operator+=(const TruncSeries3& o)
{
    check_compatible(o);
    if (o.bound_ < bound_)
        *this = truncated(o.bound_);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

TruncSeries3& TruncSeries3::operator-=(const TruncSeries3& o)
{
    check_compatible(o);
    if (o.bound_ < bound_)
        *this = truncated(o.bound_);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

TruncSeries3& TruncSeries3::operator*=(const Rat& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

namespace {

struct WeightedTerm {
    int w;
    Monomial m;
    const Rat* c;
};

std::vector<WeightedTerm> by_weight(const TruncSeries3& f)
{
    std::vector<WeightedTerm> v;
    v.reserve(f.size());
    for (const auto& [m, c] : f.terms())
        v.push_back({f.weight(m), m, &c});
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.w < b.w; });
    return v;
}

} // namespace

TruncSeries3 mul(const TruncSeries3& a, const TruncSeries3& b, int cap)
{
    if (!(a.weights() == b.weights()))
        throw Error(ErrorCode::WeightMismatch, "series use different weight systems");
    const WeightSystem& ws = a.weights();
    const int bound = std::min({a.bound() + b.order(), b.bound() + a.order(), cap});
    TruncSeries3 r(ws, bound);
    if (a.is_zero() || b.is_zero() || bound < 0)
        return r;

    const auto va = by_weight(a);
    const auto vb = by_weight(b);

    // Dense accumulator over the box of monomials of weight <= bound.
    const int imax = bound / ws.wx();
    const int jmax = bound / ws.wy();
    const int lmax = bound / ws.wp();
    const std::size_t di = static_cast<std::size_t>(imax + 1);
    const std::size_t dj = static_cast<std::size_t>(jmax + 1);
    std::vector<Rat> acc(di * dj * static_cast<std::size_t>(lmax + 1));
    std::vector<char> used(acc.size(), 0);
    Rat t;
    for (const auto& ta : va) {
        if (ta.w + vb.front().w > bound)
            break;
        for (const auto& tb : vb) {
            if (ta.w + tb.w > bound)
                break;
            const Monomial m = ta.m * tb.m;
            const std::size_t idx = static_cast<std::size_t>(m.i) +
                                    di * (static_cast<std::size_t>(m.j) + dj * static_cast<std::size_t>(m.l));
            mpq_mul(t.get_mpq_t(), ta.c->get_mpq_t(), tb.c->get_mpq_t());
            mpq_add(acc[idx].get_mpq_t(), acc[idx].get_mpq_t(), t.get_mpq_t());
            used[idx] = 1;
        }
    }
    for (int l = 0; l <= lmax; ++l)
        for (int j = 0; j <= jmax; ++j)
            for (int i = 0; i <= imax; ++i) {
                const std::size_t idx = static_cast<std::size_t>(i) +
                                        di * (static_cast<std::size_t>(j) + dj * static_cast<std::size_t>(l));
                if (used[idx] && acc[idx] != 0)
                    r.add_term({i, j, l}, acc[idx]);
            }
    return r;
}

TruncSeries3 operator*(const TruncSeries3& a, const TruncSeries3& b)
{
    return mul(a, b, std::max(a.bound(), b.bound()));
}

TruncSeries3 operator/(const TruncSeries3& a, const TruncSeries3& b)
{
    if (!(a.weights() == b.weights()))
        throw Error(ErrorCode::WeightMismatch, "series use different weight systems");
    const Rat b0 = b.constant_term();
    if (b0 == 0)
        throw Error(ErrorCode::NonUnitDivisor, "divisor has no constant term");
    const int bound = std::min(a.bound(), b.bound() + a.order());
    const Rat inv0 = 1 / b0;

    std::vector<WeightedTerm> tail;
    for (const auto& t : by_weight(b))
        if (t.w > 0)
            tail.push_back(t);

    // Graded long division: the quotient's weight-w part only needs lower weights.
    using Key = std::pair<int, Monomial>;
    std::map<Key, Rat> rem;
    for (const auto& [m, c] : a.terms())
        if (a.weight(m) <= bound)
            rem.emplace(Key{a.weight(m), m}, c);
    TruncSeries3 q(a.weights(), bound);
    while (!rem.empty()) {
        auto node = rem.extract(rem.begin());
        const auto [w, m] = node.key();
        if (node.mapped() == 0)
            continue;
        const Rat qm = node.mapped() * inv0;
        q.add_term(m, qm);
        for (const auto& t : tail) {
            if (w + t.w > bound)
                break;
            Rat& slot = rem[Key{w + t.w, m * t.m}];
            slot -= qm * *t.c;
        }
    }
    return q;
}

TruncSeries3 power(const TruncSeries3& a, int e, int cap)
{
    if (e < 0)
        throw Error(ErrorCode::NonUnitDivisor, "negative power");
    TruncSeries3 result = TruncSeries3::constant(a.weights(), 1, cap);
    TruncSeries3 base = a;
    while (e > 0) {
        if (e & 1)
            result = mul(result, base, cap);
        e >>= 1;
        if (e > 0)
            base = mul(base, base, cap);
    }
    return result;
}

TruncSeries3 partial(const TruncSeries3& f, Var v)
{
    const WeightSystem& ws = f.weights();
    const int dw = v == Var::X ? ws.wx() : v == Var::Y ? ws.wy() : ws.wp();
    TruncSeries3 d(ws, f.bound() - dw);
    for (const auto& [m, c] : f.terms()) {
        Monomial dm = m;
        int e = 0;
        switch (v) {
        case Var::X: e = dm.i--; break;
        case Var::Y: e = dm.j--; break;
        case Var::P: e = dm.l--; break;
        }
        if (e > 0)
            d.add_term(dm, c * e);
    }
    return d;
}

bool TruncSeries3::agrees_with(const TruncSeries3& o) const
{
    if (!(ws_ == o.ws_))
        return false;
    const int b = std::min(bound_, o.bound_);
    return truncated(b).terms_ == o.truncated(b).terms_;
}

std::string TruncSeries3::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& t : by_weight(*this)) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << format_rat(*t.c) << ")";
        if (t.w > 0)
            os << "*" << legn::to_string(t.m);
    }
    if (first)
        os << "0";
    os << " + O(w>" << bound_ << ")";
    return os.str();
}

namespace {

// Lowest order reachable by a monomial of weight > bound, given the orders of the substituted series.
template <class Order>
int truncation_floor(const WeightSystem& ws, int bound, Order ox, Order oy, Order op)
{
    const int wmax = std::max({ws.wx(), ws.wy(), ws.wp()});
    long best = -1;
    for (int l = 0; ws.wp() * l <= bound + wmax; ++l)
        for (int j = 0; ws.wy() * j + ws.wp() * l <= bound + wmax; ++j)
            for (int i = 0; ws.weight(i, j, l) <= bound + wmax; ++i) {
                if (ws.weight(i, j, l) <= bound)
                    continue;
                const long o = static_cast<long>(ox) * i + static_cast<long>(oy) * j + static_cast<long>(op) * l;
                if (best < 0 || o < best)
                    best = o;
            }
    return static_cast<int>(std::min<long>(best, 1L << 28));
}

} // namespace

namespace {

// f = sum_l P^l sum_j Y^j sum_i c X^i, nested so that the number of full products is
// the number of distinct (j, l) plus distinct l, not the number of terms.
template <class S, class Konst>
S nested_substitute(const TruncSeries3& f, const S& X, const S& Y, const S& P, int cap, Konst konst)
{
    std::map<int, std::map<int, std::vector<std::pair<int, const Rat*>>>> by_l;
    for (const auto& [m, c] : f.terms())
        by_l[m.l][m.j].emplace_back(m.i, &c);

    std::vector<S> xpow{konst(1, cap)}, ypow{konst(1, cap)}, ppow{konst(1, cap)};
    auto get = [cap](std::vector<S>& cache, const S& base, int e) -> const S& {
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(cache.size() == 1 ? base : mul(cache.back(), base, cap));
        return cache[static_cast<std::size_t>(e)];
    };

    S result = konst(0, cap);
    for (const auto& [l, by_j] : by_l) {
        S T = konst(0, cap);
        for (const auto& [j, list] : by_j) {
            S lin = konst(0, cap);
            for (const auto& [i, c] : list)
                lin += i == 0 ? konst(*c, cap) : get(xpow, X, i) * *c;
            T += j == 0 ? lin : mul(get(ypow, Y, j), lin, cap);
        }
        result += l == 0 ? T : mul(get(ppow, P, l), T, cap);
    }
    return result;
}

} // namespace

UniSeries substitute(const TruncSeries3& f, const UniSeries& sx, const UniSeries& sy, const UniSeries& sp)
{
    const int ox = sx.order();
    const int oy = sy.order();
    const int op = sp.order();
    if (ox < 1 || oy < 1 || op < 1)
        throw Error(ErrorCode::NotLocal, "substituted series must vanish at s = 0");
    const int cap = std::max({sx.bound(), sy.bound(), sp.bound()});
    const int floor_f = truncation_floor(f.weights(), f.bound(), ox, oy, op) - 1;
    UniSeries r = nested_substitute(f, sx, sy, sp, cap, [](const Rat& c, int b) { return UniSeries::monomial(0, c, b); });
    return r.truncated(floor_f);
}

TruncSeries3 substitute(const TruncSeries3& f, const TruncSeries3& X, const TruncSeries3& Y, const TruncSeries3& P)
{
    if (X.constant_term() != 0 || Y.constant_term() != 0 || P.constant_term() != 0)
        throw Error(ErrorCode::NotLocal, "substituted series must lie in (x, y, p)");
    const WeightSystem ws = X.weights();
    const int cap = std::max({X.bound(), Y.bound(), P.bound()});
    const int floor_f = truncation_floor(f.weights(), f.bound(), X.order(), Y.order(), P.order()) - 1;
    TruncSeries3 r = nested_substitute(f, X, Y, P, cap, [&ws](const Rat& c, int b) { return TruncSeries3::constant(ws, c, b); });
    return r.truncated(floor_f);
}

} // namespace legn
