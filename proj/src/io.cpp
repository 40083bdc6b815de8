#include "legn/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace legn {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw Error(ErrorCode::ParseError, what);
}

template <class T>
T field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        bad(std::string("field \"") + key + "\": " + e.what());
    }
}

Rat rat_field(const json& j, const char* key)
{
    return parse_rat(field<std::string>(j, key));
}

json rat_json(const Rat& q, bool decimal)
{
    if (decimal)
        return format_decimal(q);
    return format_rat(q);
}

json pair_map_json(const std::map<Pair, Rat>& m, bool decimal)
{
    json a = json::array();
    for (const auto& [p, c] : m)
        a.push_back({{"i", p.first}, {"j", p.second}, {"c", rat_json(c, decimal)}});
    return a;
}

std::map<Pair, Rat> pair_map(const json& a)
{
    if (!a.is_array())
        bad("expected an array of {i, j, c}");
    std::map<Pair, Rat> out;
    for (const auto& t : a) {
        const Pair p{field<int>(t, "i"), field<int>(t, "j")};
        if (p.first < 0 || p.second < 0)
            bad("negative exponent");
        out[p] += rat_field(t, "c");
        if (out[p] == 0)
            out.erase(p);
    }
    return out;
}

json series_json(const TruncSeries3& f, bool decimal)
{
    json a = json::array();
    for (const auto& [m, c] : f.terms())
        a.push_back({{"i", m.i}, {"j", m.j}, {"l", m.l}, {"c", rat_json(c, decimal)}});
    return {{"bound", f.bound()}, {"terms", a}};
}

TruncSeries3 series_from(const json& j, WeightSystem ws)
{
    TruncSeries3 f(ws, field<int>(j, "bound"));
    for (const auto& t : field<json>(j, "terms"))
        f.add_term({field<int>(t, "i"), field<int>(t, "j"), field<int>(t, "l")}, rat_field(t, "c"));
    return f;
}

json curve_json(const CurveFile& c, bool decimal)
{
    json j;
    j["kind"] = c.kind == CurveFile::Kind::Equation ? "equation" : "parametrization";
    j["k"] = c.k;
    j["n"] = c.n;
    j["terms"] = pair_map_json(c.terms, decimal);
    json co = json::array();
    for (const auto& [r, v] : c.coeffs)
        co.push_back({{"r", r}, {"c", rat_json(v, decimal)}});
    j["coeffs"] = co;
    j["trunc"] = c.trunc;
    return j;
}

CurveFile curve_from_json(const json& j)
{
    CurveFile c;
    const auto kind = field<std::string>(j, "kind");
    if (kind == "equation")
        c.kind = CurveFile::Kind::Equation;
    else if (kind == "parametrization")
        c.kind = CurveFile::Kind::Parametrization;
    else
        bad("kind must be \"equation\" or \"parametrization\"");
    c.k = field<int>(j, "k");
    c.n = field<int>(j, "n");
    c.trunc = j.contains("trunc") ? field<int>(j, "trunc") : 0;
    if (j.contains("terms"))
        c.terms = pair_map(j.at("terms"));
    if (j.contains("coeffs")) {
        if (!j.at("coeffs").is_array())
            bad("coeffs must be an array");
        for (const auto& t : j.at("coeffs")) {
            const int r = field<int>(t, "r");
            if (r < 0)
                bad("negative order in coeffs");
            c.coeffs[r] += rat_field(t, "c");
            if (c.coeffs[r] == 0)
                c.coeffs.erase(r);
        }
    }
    if (c.k < 1 || c.n < 1)
        bad("k and n must be positive");
    if (c.kind == CurveFile::Kind::Parametrization && c.coeffs.empty())
        bad("parametrization without coeffs");
    if (c.kind == CurveFile::Kind::Equation && c.terms.empty())
        bad("equation without terms");
    return c;
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(e.what());
    }
}

const char* kind_name(ReductionStep::Kind k)
{
    switch (k) {
    case ReductionStep::Kind::Absorb: return "absorb";
    case ReductionStep::Kind::PlaneChange: return "plane_change";
    case ReductionStep::Kind::Contact: return "contact";
    case ReductionStep::Kind::Scaling: return "scaling";
    }
    return "?";
}

ReductionStep::Kind kind_from(const std::string& s)
{
    if (s == "absorb")
        return ReductionStep::Kind::Absorb;
    if (s == "plane_change")
        return ReductionStep::Kind::PlaneChange;
    if (s == "contact")
        return ReductionStep::Kind::Contact;
    if (s == "scaling")
        return ReductionStep::Kind::Scaling;
    bad("unknown step kind " + s);
}

} // namespace

CurveFile parse_curve(const std::string& text)
{
    return curve_from_json(parse_json(text));
}

CurveFile read_curve(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        bad("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_curve(ss.str());
}

std::string write_curve(const CurveFile& c, bool decimal)
{
    return curve_json(c, decimal).dump(2);
}

TruncSeries3 curve_equation(const CurveFile& c, int trunc)
{
    if (c.kind != CurveFile::Kind::Equation)
        bad("curve file is not an equation");
    const WeightSystem ws(c.k, c.n);
    TruncSeries3 F(ws, trunc + c.k * c.n);
    for (const auto& [p, v] : c.terms)
        F.add_term({p.first, p.second, 0}, v);
    return F;
}

CurveFile curve_from_branch(const BranchParam& b)
{
    CurveFile c;
    c.kind = CurveFile::Kind::Parametrization;
    c.k = b.k();
    c.n = b.n();
    c.coeffs = b.coeffs();
    c.trunc = b.trunc();
    return c;
}

CurveFile curve_from_equation(const TruncSeries3& F, int trunc)
{
    CurveFile c;
    c.kind = CurveFile::Kind::Equation;
    c.k = F.weights().k();
    c.n = F.weights().n();
    for (const auto& [m, v] : F.terms()) {
        if (m.l != 0)
            bad("equation depends on p");
        c.terms[{m.i, m.j}] = v;
    }
    c.trunc = trunc;
    return c;
}

ReductionReport make_report(const CurveFile& input, const ReductionResult& r, Flavor flavor,
                            std::optional<TransportCertificate> cert)
{
    ReductionReport rep;
    rep.input = input;
    rep.flavor = flavor;
    rep.k = r.coords.basis.k;
    rep.n = r.coords.basis.n;
    rep.coords = r.coords.t;
    rep.trunc = r.curve.trunc();
    rep.determinacy_bound = determinacy_bound(rep.k, rep.n);
    rep.certificate = cert;
    for (const auto& s : r.log.steps) {
        ReportStep st;
        st.kind = s.kind;
        st.phase = s.phase;
        st.weight = s.weight;
        st.monomial = s.monomial;
        st.coefficient = s.coefficient;
        st.coords_after = s.coords_after;
        st.lambda = s.lambda;
        st.lambda_closed_form = s.lambda_closed_form;
        if (s.tx) {
            if (s.kind == ReductionStep::Kind::Scaling) {
                st.scale_lambda = s.tx->lambda();
                st.scale_mu = s.tx->mu();
            } else if (s.kind == ReductionStep::Kind::PlaneChange) {
                st.alpha = s.tx->alpha();
                st.beta = s.tx->beta();
            } else {
                st.alpha = s.tx->alpha();
                st.beta = TruncSeries3(s.tx->weights(), s.tx->alpha().bound());
            }
        }
        rep.log.push_back(std::move(st));
    }
    return rep;
}

std::string write_report(const ReductionReport& r, bool decimal)
{
    json j;
    j["input"] = curve_json(r.input, decimal);
    j["basis"] = to_string(r.flavor);
    j["k"] = r.k;
    j["n"] = r.n;
    j["coords"] = pair_map_json(r.coords, decimal);
    json log = json::array();
    for (const auto& s : r.log) {
        json e;
        e["kind"] = kind_name(s.kind);
        e["phase"] = s.phase;
        e["weight"] = s.weight;
        e["i"] = s.monomial.first;
        e["j"] = s.monomial.second;
        e["coefficient"] = rat_json(s.coefficient, decimal);
        if (s.kind == ReductionStep::Kind::Scaling) {
            e["lambda"] = rat_json(s.scale_lambda, decimal);
            e["mu"] = rat_json(s.scale_mu, decimal);
        }
        if (s.alpha)
            e["alpha"] = series_json(*s.alpha, decimal);
        if (s.beta)
            e[s.kind == ReductionStep::Kind::Contact ? "beta0" : "beta"] = series_json(*s.beta, decimal);
        if (s.kind == ReductionStep::Kind::Contact) {
            e["lambda"] = rat_json(s.lambda, decimal);
            e["lambda_closed_form"] = rat_json(s.lambda_closed_form, decimal);
        }
        e["coords_after"] = pair_map_json(s.coords_after, decimal);
        log.push_back(e);
    }
    j["log"] = log;
    j["trunc"] = r.trunc;
    j["determinacy_bound"] = r.determinacy_bound;
    if (r.certificate)
        j["certificate"] = {{"replay_matches", r.certificate->replay_matches},
                            {"normal_form_matches", r.certificate->normal_form_matches},
                            {"matched_order", r.certificate->matched_order}};
    return j.dump(2);
}

ReductionReport parse_report(const std::string& text)
{
    const json j = parse_json(text);
    ReductionReport r;
    r.input = curve_from_json(field<json>(j, "input"));
    const auto b = field<std::string>(j, "basis");
    if (b != "B" && b != "C")
        bad("basis must be \"B\" or \"C\"");
    r.flavor = b == "B" ? Flavor::B : Flavor::C;
    r.k = field<int>(j, "k");
    r.n = field<int>(j, "n");
    r.coords = pair_map(field<json>(j, "coords"));
    r.trunc = field<int>(j, "trunc");
    r.determinacy_bound = field<int>(j, "determinacy_bound");
    const WeightSystem ws(r.k, r.n);
    for (const auto& e : field<json>(j, "log")) {
        ReportStep s;
        s.kind = kind_from(field<std::string>(e, "kind"));
        s.phase = field<int>(e, "phase");
        s.weight = field<int>(e, "weight");
        s.monomial = {field<int>(e, "i"), field<int>(e, "j")};
        s.coefficient = rat_field(e, "coefficient");
        if (s.kind == ReductionStep::Kind::Scaling) {
            s.scale_lambda = rat_field(e, "lambda");
            s.scale_mu = rat_field(e, "mu");
        }
        if (e.contains("alpha"))
            s.alpha = series_from(e.at("alpha"), ws);
        if (e.contains("beta"))
            s.beta = series_from(e.at("beta"), ws);
        if (e.contains("beta0"))
            s.beta = series_from(e.at("beta0"), ws);
        if (s.kind == ReductionStep::Kind::Contact) {
            s.lambda = rat_field(e, "lambda");
            s.lambda_closed_form = rat_field(e, "lambda_closed_form");
        }
        s.coords_after = pair_map(field<json>(e, "coords_after"));
        r.log.push_back(std::move(s));
    }
    if (j.contains("certificate")) {
        const json& c = j.at("certificate");
        r.certificate = TransportCertificate{field<bool>(c, "replay_matches"), field<bool>(c, "normal_form_matches"),
                                             field<int>(c, "matched_order")};
    }
    return r;
}

std::optional<ContactTx> rebuild_transform(const ReportStep& s, WeightSystem ws, int bound)
{
    switch (s.kind) {
    case ReductionStep::Kind::Absorb: return std::nullopt;
    case ReductionStep::Kind::Scaling: return ContactTx::scaling(ws, s.scale_lambda, s.scale_mu, bound);
    case ReductionStep::Kind::PlaneChange:
        if (!s.alpha || !s.beta)
            bad("plane change without alpha/beta");
        return lift_plane_change(*s.alpha, *s.beta);
    case ReductionStep::Kind::Contact:
        if (!s.alpha || !s.beta)
            bad("contact step without alpha/beta0");
        return make_jtype(*s.alpha, *s.beta);
    }
    return std::nullopt;
}

} // namespace legn
