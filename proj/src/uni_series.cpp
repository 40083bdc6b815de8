#include <algorithm>
#include <sstream>

#include "legn/series.hpp"

namespace legn {

namespace {

const Rat& zero_rat()
{
    static const Rat z(0);
    return z;
}

} // namespace

UniSeries::UniSeries(int bound) : c_(static_cast<std::size_t>(std::max(bound, -1) + 1)) {}

UniSeries UniSeries::monomial(int r, const Rat& c, int bound)
{
    UniSeries u(bound);
    if (r <= bound)
        u.set_coeff(r, c);
    return u;
}

UniSeries UniSeries::from_terms(const std::map<int, Rat>& terms, int bound)
{
    UniSeries u(bound);
    for (const auto& [r, c] : terms)
        if (r <= bound)
            u.set_coeff(r, c);
    return u;
}

const Rat& UniSeries::coeff(int r) const
{
    if (r < 0 || r > bound())
        return zero_rat();
    return c_[static_cast<std::size_t>(r)];
}

void UniSeries::set_coeff(int r, const Rat& c)
{
    if (r < 0)
        throw Error(ErrorCode::NotLocal, "negative exponent " + std::to_string(r));
    if (r > bound())
        return;
    c_[static_cast<std::size_t>(r)] = c;
}

int UniSeries::order() const
{
    for (std::size_t r = 0; r < c_.size(); ++r)
        if (c_[r] != 0)
            return static_cast<int>(r);
    return bound() + 1;
}

std::map<int, Rat> UniSeries::terms() const
{
    std::map<int, Rat> out;
    for (std::size_t r = 0; r < c_.size(); ++r)
        if (c_[r] != 0)
            out.emplace(static_cast<int>(r), c_[r]);
    return out;
}

UniSeries UniSeries::truncated(int new_bound) const
{
    UniSeries u(std::min(new_bound, bound()));
    for (int r = 0; r <= u.bound(); ++r)
        u.c_[static_cast<std::size_t>(r)] = c_[static_cast<std::size_t>(r)];
    return u;
}

UniSeries UniSeries::derivative() const
{
    UniSeries d(bound() - 1);
    for (int r = 1; r <= bound(); ++r)
        if (c_[static_cast<std::size_t>(r)] != 0)
            d.c_[static_cast<std::size_t>(r - 1)] = c_[static_cast<std::size_t>(r)] * r;
    return d;
}

UniSeries UniSeries::shifted(int d) const
{
    if (d < 0 && order() < -d)
        throw Error(ErrorCode::NonUnitDivisor, "cannot divide by s^" + std::to_string(-d));
    UniSeries u(bound() + d);
    for (int r = std::max(0, -d); r <= bound(); ++r)
        u.c_[static_cast<std::size_t>(r + d)] = c_[static_cast<std::size_t>(r)];
    return u;
}

UniSeries UniSeries::operator-() const
{
    UniSeries u(*this);
    for (auto& c : u.c_)
        c = -c;
    return u;
}

UniSeries& UniSeries::operator+=(const UniSeries& o)
{
    if (o.bound() < bound())
        c_.resize(o.c_.size());
    for (std::size_t r = 0; r < c_.size(); ++r)
        c_[r] += o.c_[r];
    return *this;
}

UniSeries& UniSeries::operator-=(const UniSeries& o)
{
    if (o.bound() < bound())
        c_.resize(o.c_.size());
    for (std::size_t r = 0; r < c_.size(); ++r)
        c_[r] -= o.c_[r];
    return *this;
}

UniSeries& UniSeries::operator*=(const Rat& c)
{
    for (auto& x : c_)
        x *= c;
    return *this;
}

UniSeries mul(const UniSeries& a, const UniSeries& b, int cap)
{
    const int oa = a.order();
    const int ob = b.order();
    const int bound = std::min({a.bound() + ob, b.bound() + oa, cap});
    UniSeries r(bound);
    Rat t;
    for (int i = oa; i <= std::min(a.bound(), bound - ob); ++i) {
        const Rat& ai = a.c_[static_cast<std::size_t>(i)];
        if (ai == 0)
            continue;
        const int jmax = std::min(b.bound(), bound - i);
        for (int j = ob; j <= jmax; ++j) {
            const Rat& bj = b.c_[static_cast<std::size_t>(j)];
            if (bj == 0)
                continue;
            mpq_mul(t.get_mpq_t(), ai.get_mpq_t(), bj.get_mpq_t());
            Rat& acc = r.c_[static_cast<std::size_t>(i + j)];
            mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
        }
    }
    return r;
}

UniSeries operator*(const UniSeries& a, const UniSeries& b)
{
    return mul(a, b, std::max(a.bound(), b.bound()));
}

UniSeries divide(const UniSeries& a, const UniSeries& b)
{
    const int ob = b.order();
    if (ob > b.bound())
        throw Error(ErrorCode::NonUnitDivisor, "division by a series vanishing to its bound");
    if (a.order() < ob)
        throw Error(ErrorCode::NonUnitDivisor, "dividend order below divisor order");
    const UniSeries num = a.shifted(-ob);
    const UniSeries den = b.shifted(-ob);
    const int bound = std::min(num.bound(), den.bound() + num.order());
    UniSeries q(bound);
    const Rat inv0 = 1 / den.coeff(0);
    Rat t;
    for (int r = num.order(); r <= bound; ++r) {
        Rat acc = num.c_[static_cast<std::size_t>(r)];
        for (int i = 1; i <= std::min(r, den.bound()); ++i) {
            const Rat& di = den.c_[static_cast<std::size_t>(i)];
            const Rat& qr = q.c_[static_cast<std::size_t>(r - i)];
            if (di == 0 || qr == 0)
                continue;
            mpq_mul(t.get_mpq_t(), di.get_mpq_t(), qr.get_mpq_t());
            mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
        }
        if (acc != 0)
            q.c_[static_cast<std::size_t>(r)] = acc * inv0;
    }
    return q;
}

UniSeries operator/(const UniSeries& a, const UniSeries& b)
{
    return divide(a, b);
}

UniSeries power(const UniSeries& a, int e, int cap)
{
    if (e < 0)
        throw Error(ErrorCode::NonUnitDivisor, "negative power");
    UniSeries result = UniSeries::monomial(0, 1, cap);
    UniSeries base = a;
    while (e > 0) {
        if (e & 1)
            result = mul(result, base, cap);
        e >>= 1;
        if (e > 0)
            base = mul(base, base, cap);
    }
    return result;
}

UniSeries rational_power(const UniSeries& u, const Rat& exponent)
{
    if (u.bound() < 0 || u.coeff(0) != 1)
        throw Error(ErrorCode::RootOfNonUnit, "constant term must be 1");
    const int bound = u.bound();
    UniSeries h(bound);
    h.set_coeff(0, 1);
    // h = u^e  <=>  u h' = e u' h, read off coefficient by coefficient.
    for (int m = 1; m <= bound; ++m) {
        Rat acc = 0;
        for (int i = 1; i <= m; ++i) {
            const Rat& ui = u.coeff(i);
            if (ui == 0 || h.coeff(m - i) == 0)
                continue;
            acc += (exponent * i - (m - i)) * ui * h.coeff(m - i);
        }
        if (acc != 0)
            h.set_coeff(m, acc / m);
    }
    return h;
}

UniSeries root(const UniSeries& u, int k)
{
    if (k <= 0)
        throw Error(ErrorCode::RootOfNonUnit, "root index must be positive");
    return rational_power(u, Rat(1, k));
}

UniSeries compositional_inverse(const UniSeries& f)
{
    if (f.bound() < 1 || f.coeff(0) != 0 || f.coeff(1) == 0)
        throw Error(ErrorCode::NotInvertibleOrder, "series must have order exactly 1");
    const int bound = f.bound();
    // Lagrange inversion: [s^m] g = (1/m) [z^(m-1)] (z / f(z))^m.
    const UniSeries phi = divide(UniSeries::monomial(0, 1, bound - 1), f.shifted(-1));
    UniSeries g(bound);
    UniSeries pw = phi;
    for (int m = 1; m <= bound; ++m) {
        if (m > 1)
            pw = mul(pw, phi, bound - 1);
        const Rat& c = pw.coeff(m - 1);
        if (c != 0)
            g.set_coeff(m, c / m);
    }
    return g;
}

UniSeries compose(const UniSeries& f, const UniSeries& g)
{
    const int og = g.order();
    if (og < 1)
        throw Error(ErrorCode::NotLocal, "inner series must vanish at 0");
    const int of = f.order();
    int bound = std::min((f.bound() + 1) * og - 1, g.bound() + std::max(of - 1, 0) * og);
    UniSeries result(bound);
    UniSeries pw = UniSeries::monomial(0, 1, bound);
    for (int r = 0; r <= f.bound(); ++r) {
        if (r * og > bound)
            break;
        if (r > 0)
            pw = mul(pw, g, bound);
        const Rat& fr = f.coeff(r);
        if (fr != 0)
            result += pw * fr;
    }
    return result;
}

bool UniSeries::agrees_with(const UniSeries& o) const
{
    const int b = std::min(bound(), o.bound());
    for (int r = 0; r <= b; ++r)
        if (coeff(r) != o.coeff(r))
            return false;
    return true;
}

std::string UniSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [r, c] : terms()) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << format_rat(c) << ")";
        if (r > 0)
            os << "*s^" << r;
    }
    if (first)
        os << "0";
    os << " + O(s^" << bound() + 1 << ")";
    return os.str();
}

} // namespace legn
