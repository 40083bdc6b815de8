#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "legn/classify.hpp"

namespace legn {

// Curve description file:
// {"kind": "equation"|"parametrization", "k", "n", "terms": [{"i","j","c"}], "coeffs": [{"r","c"}], "trunc"}
struct CurveFile {
    enum class Kind { Equation, Parametrization };
    Kind kind = Kind::Equation;
    int k = 0;
    int n = 0;
    std::map<Pair, Rat> terms; // equation y^k - x^n + ... written out in full
    std::map<int, Rat> coeffs; // y(s) for parametrizations
    int trunc = 0;

    friend bool operator==(const CurveFile&, const CurveFile&) = default;
};

CurveFile parse_curve(const std::string& text);
CurveFile read_curve(const std::string& path);
std::string write_curve(const CurveFile& c, bool decimal = false);

/// Equation of a curve file as a weight-truncated series with headroom for parametrizing.
TruncSeries3 curve_equation(const CurveFile& c, int trunc);
CurveFile curve_from_branch(const BranchParam& b);
CurveFile curve_from_equation(const TruncSeries3& F, int trunc);

struct ReportStep {
    ReductionStep::Kind kind = ReductionStep::Kind::Absorb;
    int phase = 0;
    int weight = 0;
    Pair monomial{};
    Rat coefficient;
    // Scaling: (lambda, mu); PlaneChange: (alpha, beta); Contact: (alpha, beta0 = 0) and lambda
    Rat scale_lambda = 1;
    Rat scale_mu = 1;
    std::optional<TruncSeries3> alpha;
    std::optional<TruncSeries3> beta;
    Rat lambda;
    Rat lambda_closed_form;
    std::map<Pair, Rat> coords_after;

    friend bool operator==(const ReportStep&, const ReportStep&) = default;
};

struct ReductionReport {
    CurveFile input;
    Flavor flavor = Flavor::B;
    int k = 0;
    int n = 0;
    std::map<Pair, Rat> coords;
    std::vector<ReportStep> log;
    int trunc = 0;
    int determinacy_bound = 0;
    std::optional<TransportCertificate> certificate;

    friend bool operator==(const ReductionReport& a, const ReductionReport& b)
    {
        return a.input == b.input && a.flavor == b.flavor && a.coords == b.coords && a.log == b.log &&
               a.trunc == b.trunc && a.determinacy_bound == b.determinacy_bound;
    }
};

ReductionReport make_report(const CurveFile& input, const ReductionResult& r, Flavor flavor,
                            std::optional<TransportCertificate> cert = {});
ReductionReport parse_report(const std::string& text);
std::string write_report(const ReductionReport& r, bool decimal = false);

/// Rebuilds the transformation of a logged step (none for absorb steps).
std::optional<ContactTx> rebuild_transform(const ReportStep& s, WeightSystem ws, int bound);

} // namespace legn
