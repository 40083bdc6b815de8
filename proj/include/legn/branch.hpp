#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "legn/series.hpp"

namespace legn {

// Irreducible plane branch x = s^k, y = sum_{r >= n} a_r s^r with a_n != 0 and n > k.
// The y-series is known up to trunc(); x is exact.
class BranchParam {
public:
    BranchParam(int k, UniSeries y);

    int k() const noexcept { return k_; }
    /// Order of y; the first characteristic exponent when gcd(k, n) = 1.
    int n() const noexcept { return n_; }
    int trunc() const noexcept { return y_.bound(); }
    const UniSeries& x() const noexcept { return x_; }
    const UniSeries& y() const noexcept { return y_; }
    const Rat& a(int r) const { return y_.coeff(r); }
    std::map<int, Rat> coeffs() const { return y_.terms(); }

    bool has_weights() const;
    /// (k, n) as a weight system; throws HypothesisViolated unless n > k > 1 and gcd(k, n) = 1.
    WeightSystem weights() const { return WeightSystem(k_, n_); }

    BranchParam truncated(int trunc) const;

    friend bool operator==(const BranchParam&, const BranchParam&) = default;

private:
    int k_;
    int n_;
    UniSeries x_;
    UniSeries y_;
};

struct PuiseuxInvariants {
    int multiplicity = 0;
    std::vector<int> characteristic_exponents; // beta_0 = k, beta_1, ..., beta_g
    std::vector<std::pair<int, int>> pairs;     // (n_i, k_i) with n_i / k_i = beta_i / k
    std::vector<int> semigroup_generators;
    int conductor = 0;
};

struct NormalizedBranch {
    BranchParam branch;
    UniSeries old_param; // s as a series in the new parameter
};

/// Reparametrizes (xs, ys) so that x is exactly tau^k.
NormalizedBranch normalize_param(const UniSeries& xs, const UniSeries& ys, std::optional<int> expected_k = {});

PuiseuxInvariants puiseux_invariants(const BranchParam& b);

/// Brute-force conductor of the numerical semigroup generated by gens (gcd must be 1).
int semigroup_conductor(const std::vector<int>& gens);
bool in_semigroup(const std::vector<int>& gens, int value);

/// Monic-in-y equation of degree k vanishing on the branch up to the reliable window.
TruncSeries3 implicitize(const BranchParam& b, int guard);

/// Branch of a semi-quasi-homogeneous equation y^k - x^n + (higher weight), found by Newton iteration.
BranchParam parametrize_equation(const TruncSeries3& F, int trunc);

bool same_topological_type(const BranchParam& a, const BranchParam& b);

/// Unique (a, b) with k a + n b = m and 0 <= b < k, if a >= 0.
std::optional<std::pair<int, int>> semigroup_rep(int k, int n, int m);

} // namespace legn
