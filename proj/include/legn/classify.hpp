#pragma once

#include <map>
#include <optional>
#include <string>

#include "legn/versal.hpp"

namespace legn {

/// d_ij = ki + nj - kn for every pair of the basis.
struct ScalingWeights {
    std::map<Pair, int> d;
};

ScalingWeights scaling_weights(const DeformBasis& b);

/// t_ij -> tau^d_ij t_ij, the action of (tau^k x, tau^n y, tau^(n-k) p).
VersalCoords scaling_action(const VersalCoords& c, const Rat& tau);

/// Checks F(lambda^k x, lambda^n y, t) = lambda^kn F(x, y, lambda^d t) with lambda,
/// x, y and every t_ij as independent indeterminates.
bool scaling_identity_holds(const DeformBasis& b);

struct NormalFormId {
    enum class Label { F0, F1, F2, General };
    Label label = Label::General;
    VersalCoords coords;   // scaling-normalized where a rational tau allows it
    bool complete = false; // only the (4, 11) procedure is a complete classification

    friend bool operator==(const NormalFormId& a, const NormalFormId& b)
    {
        return a.label == b.label && a.coords == b.coords;
    }
};

std::string to_string(NormalFormId::Label l);
std::string to_string(const NormalFormId& id);

/// Zero pattern of (t_(6,2), t_(7,2)): (0,0) F0, t2 != 0 F1, otherwise F2.
NormalFormId classify_4_11(const VersalCoords& c);

/// (4, 11) goes to classify_4_11; other types return scaling-normalized coords, complete = false.
NormalFormId classify(const VersalCoords& c);

struct Evidence {
    bool equal = false;
    std::string reason;
    std::optional<TruncSeries3> witness_a; // smooth surface containing curve a
    std::optional<TruncSeries3> witness_b;
};

Evidence distinguish(const NormalFormId& a, const NormalFormId& b, const ConormalParam& La, const ConormalParam& Lb);

/// True iff C(k, n) is empty; needs n > 2k and gcd(k, n) = 1.
bool rigidity_check(int k, int n);

/// The explicit list: y^2 - x^(2m+1), y^3 - x^7, y^3 - x^8.
bool in_rigid_list(int k, int n);

/// Weighted division of P = G(x - 2t x^2, y - 11/2 t x y, 1, t) by y^4 - x^11 + x^6 y^2
/// through quotient weight 7.
struct GIdentity {
    TruncSeries3 P;
    TruncSeries3 unit; // quotient, expected 1 - 22 t x
    int residual_weight = 0; // lowest weight of P - unit * f1
    bool ok = false;
};

GIdentity g_identity_4_11(const Rat& t);

} // namespace legn
