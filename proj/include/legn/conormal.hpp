#pragma once

#include <optional>
#include <string>

#include "legn/branch.hpp"

namespace legn {

// Legendrian lift s -> (s^k, y(s), p(s)) with p = y'/x'.
class ConormalParam {
public:
    explicit ConormalParam(BranchParam b);

    const BranchParam& branch() const noexcept { return branch_; }
    const UniSeries& x() const noexcept { return branch_.x(); }
    const UniSeries& y() const noexcept { return branch_.y(); }
    const UniSeries& p() const noexcept { return p_; }
    int k() const noexcept { return branch_.k(); }
    int n() const noexcept { return branch_.n(); }
    int trunc() const noexcept { return branch_.trunc(); }

    friend bool operator==(const ConormalParam&, const ConormalParam&) = default;

private:
    BranchParam branch_;
    UniSeries p_;
};

ConormalParam conormal(const BranchParam& b);

// Order of vanishing of f along the conormal. at_least = true means no nonzero
// coefficient below value was seen inside the reliable window.
struct Valuation {
    int value = 0;
    bool at_least = false;

    bool infinite() const noexcept { return at_least; }
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

std::string to_string(const Valuation& v);

/// Default guard kn; the reliable window is orders < trunc - guard.
int default_guard(const ConormalParam& L);

Valuation valuation(const ConormalParam& L, const TruncSeries3& f, std::optional<int> guard = {});
/// Same, also returning the leading coefficient (zero when at_least).
Valuation valuation(const ConormalParam& L, const TruncSeries3& f, Rat& leading, std::optional<int> guard = {});

int multiplicity_legendrian(const ConormalParam& L);
int multiplicity_projection(const ConormalParam& L);

struct TangentConeClass {
    enum Kind { PAxis, TiltedLine, XAxis };
    Kind kind = XAxis;
    Rat slope; // only for TiltedLine: the cone is {y = p - slope x = 0}

    friend bool operator==(const TangentConeClass&, const TangentConeClass&) = default;
};

std::string to_string(const TangentConeClass& c);

TangentConeClass tangent_cone_class(const BranchParam& b);
bool in_strong_generic_position(const ConormalParam& L);

/// Linear-plus-higher f with f|L = 0 inside the window, searched among monomials of
/// weight <= max_weight (default trunc / 2). Semidecision: nullopt only means none found.
std::optional<TruncSeries3> smooth_surface_test(const ConormalParam& L, std::optional<int> max_weight = {});

} // namespace legn
