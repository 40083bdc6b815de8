#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "legn/contact.hpp"

namespace legn {

using Pair = std::pair<int, int>; // (i, j) for x^i y^j

enum class Flavor { B, C };

std::string to_string(Flavor f);

struct DeformBasis {
    int k = 0;
    int n = 0;
    Flavor flavor = Flavor::B;
    std::vector<Pair> pairs; // strictly ascending in weight

    int weight(const Pair& ij) const { return k * ij.first + n * ij.second; }
    /// Weight excess d = ki + nj - kn.
    int excess(const Pair& ij) const { return weight(ij) - k * n; }
    bool contains(const Pair& ij) const;
    int max_weight() const;
};

/// B = {ki + nj > kn, i <= n-2, j <= k-2}; C = {(i, j) in B : i + j <= n-2}, the latter needs n > 2k.
DeformBasis basis(int k, int n, Flavor flavor);

/// k(n-2) + n(k-2): the largest weight in B.
int determinacy_bound(int k, int n);

struct VersalCoords {
    DeformBasis basis;
    std::map<Pair, Rat> t; // only nonzero entries

    Rat get(const Pair& ij) const;
    void set(const Pair& ij, const Rat& c);
    bool supported_in(const DeformBasis& b) const;
    friend bool operator==(const VersalCoords& a, const VersalCoords& b) { return a.t == b.t; }
};

/// y^k - x^n + sum t_ij x^i y^j with the given weight bound.
TruncSeries3 versal_function(const VersalCoords& c, int bound);

struct CleanResult {
    int a = 0;
    int b = 0;
    Rat coefficient; // x^i y^j p^l = coefficient * x^a y^b mod I_L
};

/// Rewrites x^i y^j p^l by xp = (n/k) y, p^k = (n/k)^k x^(n-k), y^k = x^n.
/// BelowConductorRegion when y^j p^l with j + l < k is reached (only possible for weight <= kn).
CleanResult clean_monomial(int i, int j, int l, int k, int n);

/// p-free v with u - v vanishing on L inside the window.
TruncSeries3 reduce_to_xy(const TruncSeries3& u, const ConormalParam& L);

struct JacobianSplit {
    TruncSeries3 A, Bq, R;
};

/// g = A n x^(n-1) + Bq k y^(k-1) + R with R on the rectangle i <= n-2, j <= k-2.
JacobianSplit jacobian_divide(const TruncSeries3& g, int k, int n);

struct ReductionStep {
    enum class Kind { Absorb, PlaneChange, Contact, Scaling };
    Kind kind = Kind::Absorb;
    int phase = 0;   // weights strictly increase inside one phase
    int weight = 0;  // weight of the defect handled
    Pair monomial{}; // (a, b) with ka + nb = weight
    Rat coefficient; // size of the defect
    std::optional<ContactTx> tx;
    Rat lambda;              // Contact steps: solved value
    Rat lambda_closed_form;  // Contact steps: closed form it is checked against
    std::map<Pair, Rat> coords_after;
};

std::string to_string(ReductionStep::Kind k);

struct ReductionLog {
    std::vector<ReductionStep> steps;
    /// Transformations in application order.
    std::vector<ContactTx> transforms() const;
};

enum class ReduceMode {
    Discard,   // stop above the determinacy bound
    Eliminate, // keep killing defects up to the truncation window
};

struct ReduceOptions {
    ReduceMode mode = ReduceMode::Discard;
    std::optional<int> determinacy; // default k(n-2) + n(k-2)
};

struct ReductionResult {
    VersalCoords coords;
    ReductionLog log;
    ConormalParam curve;    // the input transported through the log
    int vanishing_order = 0; // F(., ., coords) vanishes on curve below this s-order
};

ReductionResult equisingular_reduce(const BranchParam& b, const ReduceOptions& opt = {});
ReductionResult microlocal_reduce(const BranchParam& b);
/// Equation inputs: a term of weight < kn is a defect below kn (NotEquisingular).
ReductionResult equisingular_reduce(const TruncSeries3& F, int trunc, const ReduceOptions& opt = {});
ReductionResult microlocal_reduce(const TruncSeries3& F, int trunc);

struct TransportCertificate {
    bool replay_matches = false;      // replaying the log reproduces the final curve
    bool normal_form_matches = false; // and it agrees with the branch of the normal form
    int matched_order = 0;            // y coefficients compared below this order
};

/// Replays the log on the input conormal and compares with the normal form's branch.
TransportCertificate certify_transport(const BranchParam& input, const ReductionResult& r);

} // namespace legn
