#include "legn/branch.hpp"

#include <algorithm>
#include <numeric>

namespace legn {

BranchParam::BranchParam(int k, UniSeries y) : k_(k), n_(y.order()), x_(UniSeries::monomial(k, 1, y.bound())), y_(std::move(y))
{
    if (k < 1)
        throw Error(ErrorCode::BadOrder, "multiplicity must be positive");
    if (n_ > y_.bound())
        throw Error(ErrorCode::TruncationTooSmall, "y vanishes to its truncation order");
    if (n_ <= k_)
        throw Error(ErrorCode::TiltedTangentCone,
                    "tangent cone is not {y = 0}: ord y = " + std::to_string(n_) + " <= k = " + std::to_string(k_));
}

bool BranchParam::has_weights() const
{
    return k_ > 1 && n_ > k_ && std::gcd(k_, n_) == 1;
}

BranchParam BranchParam::truncated(int trunc) const
{
    return BranchParam(k_, y_.truncated(trunc));
}

NormalizedBranch normalize_param(const UniSeries& xs, const UniSeries& ys, std::optional<int> expected_k)
{
    const int k = xs.order();
    if (k > xs.bound())
        throw Error(ErrorCode::BadOrder, "x vanishes to its truncation order");
    if (expected_k && *expected_k != k)
        throw Error(ErrorCode::BadOrder,
                    "x has order " + std::to_string(k) + ", expected " + std::to_string(*expected_k));
    if (ys.order() < 1)
        throw Error(ErrorCode::NotLocal, "y must vanish at s = 0");
    const Rat& lead = xs.coeff(k);
    Rat r;
    if (!rational_root(lead, k, r))
        throw Error(ErrorCode::BadOrder, "leading x coefficient " + format_rat(lead) + " has no rational root of order " +
                                             std::to_string(k));
    // tau = r s (x / (lead s^k))^(1/k), so that x = tau^k.
    UniSeries unit = xs.shifted(-k) * (1 / lead);
    UniSeries tau = (root(unit, k) * r).shifted(1);
    UniSeries s_of_tau = compositional_inverse(tau);
    UniSeries y = compose(ys, s_of_tau);
    return {BranchParam(k, std::move(y)), std::move(s_of_tau)};
}

bool in_semigroup(const std::vector<int>& gens, int value)
{
    if (value < 0)
        return false;
    std::vector<char> reach(static_cast<std::size_t>(value) + 1, 0);
    reach[0] = 1;
    for (int v = 1; v <= value; ++v)
        for (int g : gens)
            if (g <= v && reach[static_cast<std::size_t>(v - g)]) {
                reach[static_cast<std::size_t>(v)] = 1;
                break;
            }
    return reach[static_cast<std::size_t>(value)] != 0;
}

int semigroup_conductor(const std::vector<int>& gens)
{
    int g = 0;
    int big = 0;
    for (int v : gens) {
        g = std::gcd(g, v);
        big = std::max(big, v);
    }
    if (g != 1)
        throw Error(ErrorCode::NotPrimitive, "semigroup generators are not coprime");
    const int smallest = *std::min_element(gens.begin(), gens.end());
    if (smallest == 1)
        return 0;
    // Every residue class mod the smallest generator is hit below smallest * big.
    const int limit = smallest * big + smallest;
    std::vector<char> reach(static_cast<std::size_t>(limit) + 1, 0);
    reach[0] = 1;
    int last_gap = -1;
    for (int v = 1; v <= limit; ++v) {
        for (int gen : gens)
            if (gen <= v && reach[static_cast<std::size_t>(v - gen)]) {
                reach[static_cast<std::size_t>(v)] = 1;
                break;
            }
        if (!reach[static_cast<std::size_t>(v)])
            last_gap = v;
    }
    return last_gap + 1;
}

PuiseuxInvariants puiseux_invariants(const BranchParam& b)
{
    const int k = b.k();
    PuiseuxInvariants inv;
    inv.multiplicity = k;
    inv.characteristic_exponents.push_back(k);
    const auto support = b.coeffs();

    std::vector<int> e{k};
    while (e.back() > 1) {
        const int cur = e.back();
        auto it = std::find_if(support.begin(), support.end(), [cur](const auto& t) { return t.first % cur != 0; });
        if (it == support.end())
            throw Error(ErrorCode::NotPrimitive, "exponents share the factor " + std::to_string(cur) +
                                                     " up to order " + std::to_string(b.trunc()));
        inv.characteristic_exponents.push_back(it->first);
        e.push_back(std::gcd(cur, it->first));
    }

    const std::size_t g = inv.characteristic_exponents.size() - 1;
    for (std::size_t i = 1; i <= g; ++i) {
        const int beta = inv.characteristic_exponents[i];
        inv.pairs.emplace_back(beta / e[i], k / e[i]);
    }

    // Conditions on the coefficients that characterize these pairs.
    for (std::size_t i = 1; i <= g; ++i) {
        const int beta = inv.characteristic_exponents[i];
        if (b.a(beta) == 0)
            throw Error(ErrorCode::NotPrimitive, "characteristic coefficient vanishes");
        for (const auto& [r, c] : support)
            if (r % e[i - 1] != 0 && r < beta)
                throw Error(ErrorCode::NotPrimitive, "support violates the characteristic ordering");
    }

    inv.semigroup_generators.push_back(k);
    if (g >= 1)
        inv.semigroup_generators.push_back(inv.characteristic_exponents[1]);
    for (std::size_t i = 1; i < g; ++i) {
        const int prev = inv.semigroup_generators.back();
        inv.semigroup_generators.push_back(e[i - 1] / e[i] * prev + inv.characteristic_exponents[i + 1] -
                                           inv.characteristic_exponents[i]);
    }
    inv.conductor = semigroup_conductor(inv.semigroup_generators);
    return inv;
}

std::optional<std::pair<int, int>> semigroup_rep(int k, int n, int m)
{
    for (int b = 0; b < k; ++b) {
        const int rest = m - n * b;
        if (rest < 0)
            break;
        if (rest % k == 0)
            return std::make_pair(rest / k, b);
    }
    return std::nullopt;
}

TruncSeries3 implicitize(const BranchParam& b, int guard)
{
    const WeightSystem ws = b.weights();
    const int k = ws.k();
    const int n = ws.n();
    const int window = b.trunc() - guard;
    if (window < k * n)
        throw Error(ErrorCode::TruncationTooSmall, "window " + std::to_string(window) + " below weight k n");
    std::vector<UniSeries> ypow{UniSeries::monomial(0, 1, b.trunc())};
    for (int j = 1; j <= k; ++j)
        ypow.push_back(mul(ypow.back(), b.y(), b.trunc()));

    TruncSeries3 F = TruncSeries3::monomial(ws, {0, k, 0}, 1, window);
    UniSeries residual = ypow[static_cast<std::size_t>(k)];
    for (int m = residual.order(); m <= window; ++m) {
        const Rat rm = residual.coeff(m);
        if (rm == 0)
            continue;
        const auto rep = semigroup_rep(k, n, m);
        if (!rep)
            throw Error(ErrorCode::TruncationTooSmall, "residual at order " + std::to_string(m) +
                                                           " cannot be matched by a monomial x^a y^b with b < k");
        const auto [ea, eb] = *rep;
        const Rat xi = rm / pow(b.a(n), eb);
        F.add_term({ea, eb, 0}, -xi);
        residual -= ypow[static_cast<std::size_t>(eb)].shifted(k * ea) * xi;
    }
    return F;
}

BranchParam parametrize_equation(const TruncSeries3& F, int trunc)
{
    if (!F.is_p_free())
        throw Error(ErrorCode::NotSemiQuasiHomogeneous, "equation depends on p");
    const WeightSystem& ws = F.weights();
    const int k = ws.k();
    const int n = ws.n();
    const int kn = k * n;
    for (const auto& [m, c] : F.terms())
        if (F.weight(m) < kn)
            throw Error(ErrorCode::NotSemiQuasiHomogeneous,
                        "term " + to_string(m) + " has weight " + std::to_string(F.weight(m)) + " < " + std::to_string(kn));
    const Rat cy = F.coeff({0, k, 0});
    const Rat cx = F.coeff({n, 0, 0});
    if (cy == 0 || cx == 0)
        throw Error(ErrorCode::NotSemiQuasiHomogeneous, "weighted initial form is not y^k - c x^n");
    Rat lead;
    if (!rational_root(-cx / cy, k, lead))
        throw Error(ErrorCode::NotSemiQuasiHomogeneous, "initial form has no rational branch");

    const int slack = n * (k - 1);
    const int work = std::min(trunc + slack, F.bound());
    if (work - slack < n)
        throw Error(ErrorCode::TruncationTooSmall, "equation truncation too small for a parametrization");

    const TruncSeries3 Fy = partial(F, Var::Y);
    const UniSeries xs = UniSeries::monomial(k, 1, work);
    const UniSeries ps = UniSeries::monomial(n - k, 1, work); // placeholder; F is p-free
    UniSeries y = UniSeries::monomial(n, lead, work);

    // Newton: the error order e - n doubles each step because F_y has order n (k - 1) on the branch.
    int last_order = -1;
    for (int iter = 0; iter < 64; ++iter) {
        const UniSeries q = substitute(F, xs, y, ps);
        const int oq = q.order();
        if (oq > q.bound())
            return BranchParam(k, y.truncated(std::min(trunc, q.bound() - slack)));
        if (oq <= last_order)
            throw Error(ErrorCode::NotSemiQuasiHomogeneous, "Newton iteration stalled at order " + std::to_string(oq));
        last_order = oq;
        const UniSeries qy = substitute(Fy, xs, y, ps);
        if (qy.order() != slack)
            throw Error(ErrorCode::NotSemiQuasiHomogeneous, "F_y has unexpected order on the branch");
        UniSeries delta = divide(q, qy);
        UniSeries next = UniSeries::from_terms(y.terms(), work);
        for (const auto& [r, c] : delta.terms())
            next.set_coeff(r, next.coeff(r) - c);
        y = std::move(next);
    }
    throw Error(ErrorCode::NotSemiQuasiHomogeneous, "Newton iteration did not converge");
}

bool same_topological_type(const BranchParam& a, const BranchParam& b)
{
    return puiseux_invariants(a).pairs == puiseux_invariants(b).pairs;
}

} // namespace legn
