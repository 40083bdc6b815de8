#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "legn/error.hpp"
#include "legn/rational.hpp"

namespace legn {

// Quasi-homogeneous weights: w(x) = k, w(y) = n, w(p) = n - k.
class WeightSystem {
public:
    WeightSystem(int k, int n);

    int k() const noexcept { return k_; }
    int n() const noexcept { return n_; }
    int wx() const noexcept { return k_; }
    int wy() const noexcept { return n_; }
    int wp() const noexcept { return n_ - k_; }
    int weight(int i, int j, int l) const noexcept { return k_ * i + n_ * j + (n_ - k_) * l; }

    friend bool operator==(const WeightSystem&, const WeightSystem&) = default;

private:
    int k_;
    int n_;
};

enum class Var { X, Y, P };

struct Monomial {
    int i = 0; // power of x
    int j = 0; // power of y
    int l = 0; // power of p

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    Monomial operator*(const Monomial& o) const { return {i + o.i, j + o.j, l + o.l}; }
};

std::string to_string(const Monomial& m);

// Univariate series in s, known exactly for every order r <= bound().
// Orders above the bound are unknown, not zero.
class UniSeries {
public:
    UniSeries() : UniSeries(0) {}
    explicit UniSeries(int bound);

    static UniSeries monomial(int r, const Rat& c, int bound);
    static UniSeries from_terms(const std::map<int, Rat>& terms, int bound);

    int bound() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const Rat& coeff(int r) const;
    void set_coeff(int r, const Rat& c);

    /// First nonzero order; bound() + 1 when the series vanishes to its bound.
    int order() const;
    bool is_zero() const { return order() > bound(); }
    std::map<int, Rat> terms() const;

    UniSeries truncated(int new_bound) const;
    UniSeries derivative() const;
    /// Multiplies by s^d; d < 0 requires order() >= -d.
    UniSeries shifted(int d) const;

    UniSeries operator-() const;
    UniSeries& operator+=(const UniSeries& o);
    UniSeries& operator-=(const UniSeries& o);
    UniSeries& operator*=(const Rat& c);

    friend UniSeries operator+(UniSeries a, const UniSeries& b) { return a += b; }
    friend UniSeries operator-(UniSeries a, const UniSeries& b) { return a -= b; }
    friend UniSeries operator*(UniSeries a, const Rat& c) { return a *= c; }
    friend UniSeries operator*(const Rat& c, UniSeries a) { return a *= c; }
    friend UniSeries operator*(const UniSeries& a, const UniSeries& b);
    friend UniSeries operator/(const UniSeries& a, const UniSeries& b);

    /// Equal coefficients up to the smaller bound.
    bool agrees_with(const UniSeries& o) const;
    friend bool operator==(const UniSeries&, const UniSeries&) = default;

    std::string to_string() const;

private:
    friend UniSeries mul(const UniSeries& a, const UniSeries& b, int cap);
    friend UniSeries divide(const UniSeries& a, const UniSeries& b);

    std::vector<Rat> c_;
};

// Product with bound min(Na + ord b, Nb + ord a, cap).
UniSeries mul(const UniSeries& a, const UniSeries& b, int cap);
// a / b for ord a >= ord b; the common power of s is cancelled first.
UniSeries divide(const UniSeries& a, const UniSeries& b);
UniSeries power(const UniSeries& a, int e, int cap);
// (1 + v)^(num/den) for a series with constant term 1.
UniSeries rational_power(const UniSeries& u, const Rat& exponent);
// k-th root of a series with constant term 1.
UniSeries root(const UniSeries& u, int k);
// g with g(f(s)) = s, for f of order exactly 1.
UniSeries compositional_inverse(const UniSeries& f);
// f(g(s)) for g of positive order.
UniSeries compose(const UniSeries& f, const UniSeries& g);

// Weight-truncated series in x, y, p: every monomial of weight <= bound() is known.
class TruncSeries3 {
public:
    TruncSeries3(WeightSystem ws, int bound);

    static TruncSeries3 monomial(WeightSystem ws, Monomial m, const Rat& c, int bound);
    static TruncSeries3 constant(WeightSystem ws, const Rat& c, int bound);
    static TruncSeries3 variable(WeightSystem ws, Var v, int bound);

    const WeightSystem& weights() const noexcept { return ws_; }
    int bound() const noexcept { return bound_; }
    const std::map<Monomial, Rat>& terms() const noexcept { return terms_; }
    Rat coeff(const Monomial& m) const;
    int weight(const Monomial& m) const { return ws_.weight(m.i, m.j, m.l); }

    /// Lowest weight of a stored term; bound() + 1 for the zero series.
    int order() const;
    bool is_zero() const { return terms_.empty(); }
    bool is_p_free() const;
    Rat constant_term() const { return coeff({0, 0, 0}); }
    std::size_t size() const { return terms_.size(); }

    TruncSeries3 truncated(int new_bound) const;
    /// Coefficient of p^l as a p-free series; its bound is bound() - l * w(p).
    TruncSeries3 p_slice(int l) const;
    int max_p_degree() const;

    void add_term(const Monomial& m, const Rat& c);

    TruncSeries3 operator-() const;
    TruncSeries3& operator+=(const TruncSeries3& o);
    TruncSeries3& operator-=(const TruncSeries3& o);
    TruncSeries3& operator*=(const Rat& c);

    friend TruncSeries3 operator+(TruncSeries3 a, const TruncSeries3& b) { return a += b; }
    friend TruncSeries3 operator-(TruncSeries3 a, const TruncSeries3& b) { return a -= b; }
    friend TruncSeries3 operator*(TruncSeries3 a, const Rat& c) { return a *= c; }
    friend TruncSeries3 operator*(const Rat& c, TruncSeries3 a) { return a *= c; }
    friend TruncSeries3 operator*(const TruncSeries3& a, const TruncSeries3& b);
    friend TruncSeries3 operator/(const TruncSeries3& a, const TruncSeries3& b);

    friend bool operator==(const TruncSeries3&, const TruncSeries3&) = default;
    /// Equal coefficients on every monomial of weight <= min of the bounds.
    bool agrees_with(const TruncSeries3& o) const;
    /// True when every known coefficient vanishes.
    bool vanishes() const { return terms_.empty(); }

    std::string to_string() const;

private:
    void check_compatible(const TruncSeries3& o) const;

    WeightSystem ws_;
    int bound_;
    std::map<Monomial, Rat> terms_;
};

TruncSeries3 mul(const TruncSeries3& a, const TruncSeries3& b, int cap);
TruncSeries3 power(const TruncSeries3& a, int e, int cap);
TruncSeries3 partial(const TruncSeries3& f, Var v);

/// f(sx, sy, sp) for series of positive order; bound follows the inputs' truncations.
UniSeries substitute(const TruncSeries3& f, const UniSeries& sx, const UniSeries& sy, const UniSeries& sp);
/// f(X, Y, P) for trivariate series without constant terms.
TruncSeries3 substitute(const TruncSeries3& f, const TruncSeries3& X, const TruncSeries3& Y, const TruncSeries3& P);

} // namespace legn
