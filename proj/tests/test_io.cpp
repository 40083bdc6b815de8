#include "doctest.h"

#include "legn/io.hpp"

using namespace legn;

TEST_CASE("curve files")
{
    const std::string f1 = R"({"kind":"equation","k":4,"n":11,
        "terms":[{"i":0,"j":4,"c":"1/1"},{"i":11,"j":0,"c":"-1/1"},{"i":6,"j":2,"c":"1/1"}],"trunc":132})";
    const CurveFile c = parse_curve(f1);
    CHECK(c.kind == CurveFile::Kind::Equation);
    CHECK(c.terms.at({6, 2}) == 1);
    CHECK(parse_curve(write_curve(c)) == c);

    const BranchParam b = parametrize_equation(curve_equation(c, 132), 132);
    const CurveFile pc = curve_from_branch(b);
    CHECK(parse_curve(write_curve(pc)) == pc);
    CHECK(pc.coeffs.at(11) == 1);

    CHECK_THROWS_AS(parse_curve("{"), Error);
    CHECK_THROWS_AS(parse_curve(R"({"kind":"blob","k":4,"n":11})"), Error);
    CHECK_THROWS_AS(parse_curve(R"({"kind":"equation","k":4,"n":11,"terms":[{"i":0,"j":4,"c":"1/0"}]})"), Error);
    CHECK_THROWS_AS(parse_curve(R"({"kind":"parametrization","k":4,"n":11,"trunc":20})"), Error);
}

TEST_CASE("reduction reports round-trip and replay")
{
    const std::string text = R"({"kind":"equation","k":4,"n":11,
        "terms":[{"i":0,"j":4,"c":"1/1"},{"i":11,"j":0,"c":"-1/1"},{"i":9,"j":1,"c":"1/1"}],"trunc":132})";
    const CurveFile c = parse_curve(text);
    const BranchParam b = parametrize_equation(curve_equation(c, 132), 132);
    const ReductionResult r = microlocal_reduce(b);
    const ReductionReport rep = make_report(c, r, Flavor::C, certify_transport(b, r));
    const std::string out = write_report(rep);
    const ReductionReport back = parse_report(out);
    CHECK(back == rep);
    CHECK(write_report(back) == out);
    REQUIRE(back.certificate.has_value());
    CHECK(back.certificate->replay_matches);

    // the report alone suffices to replay the transport
    ConormalParam L = conormal(b);
    for (const auto& s : back.log)
        if (auto tx = rebuild_transform(s, WeightSystem(4, 11), back.trunc))
            L = apply_to_conormal(*tx, L);
    CHECK(L.y().agrees_with(r.curve.y()));
}
