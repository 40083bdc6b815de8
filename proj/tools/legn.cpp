#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "legn/io.hpp"
#include "legn/verify.hpp"

using namespace legn;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, Usage = 1, NonEquisingular = 2, Failed = 3 };

struct RunConfig {
    std::optional<int> trunc;
    bool decimal = false;
    std::string output;
    int verbosity = 0;
};

int resolve_trunc(const RunConfig& cfg, int file_trunc, int k, int n)
{
    if (cfg.trunc)
        return *cfg.trunc;
    if (const char* env = std::getenv("LEGN_TRUNC")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "LEGN_TRUNC is not an integer");
        }
    }
    return file_trunc > 0 ? file_trunc : 3 * k * n;
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.output.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(cfg.output);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write " + cfg.output);
    out << text << "\n";
}

std::string num(const RunConfig& cfg, const Rat& q)
{
    return cfg.decimal ? format_decimal(q) : format_rat(q);
}

BranchParam load_branch(const CurveFile& c, int trunc)
{
    if (c.kind == CurveFile::Kind::Parametrization)
        return BranchParam(c.k, UniSeries::from_terms(c.coeffs, trunc));
    return parametrize_equation(curve_equation(c, trunc), trunc);
}

// "i,j,l,c" -> term
void add_terms(TruncSeries3& f, const std::vector<std::string>& specs, bool p_free)
{
    for (const auto& s : specs) {
        std::stringstream ss(s);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ss, part, ','))
            parts.push_back(part);
        if (parts.size() != 4)
            throw Error(ErrorCode::ParseError, "term \"" + s + "\" is not i,j,l,c");
        Monomial m;
        try {
            m = {std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2])};
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad exponent in \"" + s + "\"");
        }
        if (p_free && m.l != 0)
            throw Error(ErrorCode::ParseError, "term \"" + s + "\" must not contain p");
        f.add_term(m, parse_rat(parts[3]));
    }
}

json uni_json(const RunConfig& cfg, const UniSeries& u)
{
    json a = json::array();
    for (const auto& [r, c] : u.terms())
        a.push_back({{"r", r}, {"c", num(cfg, c)}});
    return {{"bound", u.bound()}, {"coeffs", a}};
}

void require_reduction_trunc(int trunc, int k, int n)
{
    if (trunc < 2 * k * n)
        throw Error(ErrorCode::TruncationTooSmall, "reductions need trunc >= 2kn = " + std::to_string(2 * k * n) +
                                                       ", got " + std::to_string(trunc));
}

int exit_for(const Error& e)
{
    switch (e.code()) {
    case ErrorCode::NotEquisingular: return NonEquisingular;
    case ErrorCode::ReductionFailed: return Failed;
    default: return Usage;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"legn: microlocal normal forms of plane branches y^k = x^n + ..."};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    std::optional<int> trunc_opt;
    app.add_option("--trunc", trunc_opt, "truncation order N_s = N_w (default: LEGN_TRUNC, the file, then 3kn)");
    app.add_flag("--decimal", cfg.decimal, "print rationals as decimals (display only)");
    app.add_flag("-v,--verbose", cfg.verbosity, "more output");

    int k = 0, n = 0;
    std::string flavor = "B";
    auto* c_basis = app.add_subcommand("basis", "list the deformation basis B or C");
    c_basis->add_option("--k", k)->required();
    c_basis->add_option("--n", n)->required();
    c_basis->add_option("--flavor", flavor)->check(CLI::IsMember({"B", "C"}));

    std::string input;
    auto* c_param = app.add_subcommand("parametrize", "parametrize an equation file");
    c_param->add_option("input", input)->required()->check(CLI::ExistingFile);
    c_param->add_option("-o,--output", cfg.output);

    auto* c_conormal = app.add_subcommand("conormal", "conormal lift and its invariants");
    c_conormal->add_option("input", input)->required()->check(CLI::ExistingFile);
    c_conormal->add_option("-o,--output", cfg.output);

    std::vector<std::string> f_terms;
    auto* c_val = app.add_subcommand("valuation", "valuation of f(x, y, p) along the conormal");
    c_val->add_option("input", input)->required()->check(CLI::ExistingFile);
    c_val->add_option("--term", f_terms, "term i,j,l,c of f (repeatable)")->required();

    std::vector<std::string> alpha_terms, beta_terms;
    bool plane = false;
    std::string lambda_s = "1", mu_s = "1";
    auto* c_tx = app.add_subcommand("transform", "apply a contact transformation S o J to the conormal");
    c_tx->add_option("input", input)->required()->check(CLI::ExistingFile);
    c_tx->add_option("--alpha", alpha_terms, "term i,j,l,c of alpha (repeatable)");
    c_tx->add_option("--beta", beta_terms, "term of beta0, or of beta with --plane (p-free)");
    c_tx->add_flag("--plane", plane, "alpha, beta are a plane change (x + alpha, y + beta)");
    c_tx->add_option("--lambda", lambda_s, "scaling of x");
    c_tx->add_option("--mu", mu_s, "scaling of y");
    c_tx->add_option("-o,--output", cfg.output);

    bool microlocal = false, certify = false;
    auto* c_reduce = app.add_subcommand("reduce", "reduce to the versal normal form and write a report");
    c_reduce->add_option("input", input)->required()->check(CLI::ExistingFile);
    c_reduce->add_flag("--microlocal", microlocal, "reduce over C by contact transformations");
    c_reduce->add_flag("--certify", certify, "replay the log and match the normal form's branch");
    c_reduce->add_option("-o,--output", cfg.output);

    auto* c_classify = app.add_subcommand("classify", "normal form id of a curve");
    c_classify->add_option("input", input)->required()->check(CLI::ExistingFile);

    std::string suite = "all";
    auto* c_verify = app.add_subcommand("verify", "run the self-verification suites");
    c_verify->add_option("--suite", suite)->check(CLI::IsMember({"series", "branch", "conormal", "contact", "cleaning",
                                                                  "versal", "classify", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }
    cfg.trunc = trunc_opt;

    try {
        if (*c_basis) {
            const DeformBasis b = basis(k, n, flavor == "C" ? Flavor::C : Flavor::B);
            std::cout << "basis " << flavor << "(" << k << "," << n << "): " << b.pairs.size() << " pairs\n";
            std::cout << "(i,j)\tweight\td\n";
            for (const auto& p : b.pairs)
                std::cout << "(" << p.first << "," << p.second << ")\t" << b.weight(p) << "\t" << b.excess(p) << "\n";
            if (b.pairs.empty() && flavor == "C")
                std::cout << "rigid\n";
            return Ok;
        }
        if (*c_verify) {
            const int N = cfg.trunc.value_or(std::getenv("LEGN_TRUNC") ? std::atoi(std::getenv("LEGN_TRUNC")) : 132);
            std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
            int failed = 0, total = 0;
            for (const auto& s : names) {
                const SuiteReport rep = run_suite(s, N);
                for (const auto& c : rep.checks) {
                    ++total;
                    failed += c.ok ? 0 : 1;
                    std::cout << (c.ok ? "PASS " : "FAIL ") << s << ": " << c.name;
                    if (!c.detail.empty())
                        std::cout << " [" << c.detail << "]";
                    std::cout << "\n";
                }
                if (cfg.verbosity)
                    std::cout << "  " << s << " took " << rep.seconds << " s\n";
            }
            std::cout << (total - failed) << "/" << total << " checks passed\n";
            return failed == 0 ? Ok : Failed;
        }

        const CurveFile curve = read_curve(input);
        const int N = resolve_trunc(cfg, curve.trunc, curve.k, curve.n);

        if (*c_param) {
            emit(cfg, write_curve(curve_from_branch(load_branch(curve, N)), cfg.decimal));
            return Ok;
        }
        if (*c_conormal) {
            const BranchParam b = load_branch(curve, N);
            const ConormalParam L = conormal(b);
            json j;
            j["x"] = uni_json(cfg, L.x());
            j["y"] = uni_json(cfg, L.y());
            j["p"] = uni_json(cfg, L.p());
            j["multiplicity_legendrian"] = multiplicity_legendrian(L);
            j["multiplicity_projection"] = multiplicity_projection(L);
            j["tangent_cone"] = to_string(tangent_cone_class(b));
            j["strong_generic_position"] = in_strong_generic_position(L);
            const auto inv = puiseux_invariants(b);
            j["puiseux_pairs"] = inv.pairs;
            j["conductor"] = inv.conductor;
            if (b.has_weights()) {
                const auto w = smooth_surface_test(L);
                j["smooth_surface"] = w ? json(w->to_string()) : json(nullptr);
            }
            emit(cfg, j.dump(2));
            return Ok;
        }
        if (*c_val) {
            const ConormalParam L = conormal(load_branch(curve, N));
            TruncSeries3 f(WeightSystem(curve.k, curve.n), N);
            add_terms(f, f_terms, false);
            Rat lead;
            const Valuation v = valuation(L, f, lead);
            std::cout << to_string(v);
            if (!v.at_least)
                std::cout << " leading " << num(cfg, lead);
            std::cout << "\n";
            return Ok;
        }
        if (*c_tx) {
            const WeightSystem ws(curve.k, curve.n);
            const ConormalParam L = conormal(load_branch(curve, N));
            TruncSeries3 a(ws, N), b(ws, N);
            add_terms(a, alpha_terms, plane);
            add_terms(b, beta_terms, true);
            ContactTx tx = ContactTx::scaling(ws, parse_rat(lambda_s), parse_rat(mu_s), N);
            if (!alpha_terms.empty() || !beta_terms.empty())
                tx = compose(tx, plane ? lift_plane_change(a, b) : make_jtype(a, b));
            const TruncSeries3 u = verify_contact(tx);
            const ConormalParam image = apply_to_conormal(tx, L);
            std::cerr << "contact certificate ok, unit constant " << num(cfg, u.constant_term()) << "\n";
            emit(cfg, write_curve(curve_from_branch(image.branch()), cfg.decimal));
            return Ok;
        }
        if (*c_reduce || *c_classify) {
            require_reduction_trunc(N, curve.k, curve.n);
            const bool ml = microlocal || *c_classify;
            ReductionResult r = curve.kind == CurveFile::Kind::Equation
                                    ? (ml ? microlocal_reduce(curve_equation(curve, N), N)
                                          : equisingular_reduce(curve_equation(curve, N), N))
                                    : (ml ? microlocal_reduce(load_branch(curve, N)) : equisingular_reduce(load_branch(curve, N)));
            if (*c_classify) {
                const NormalFormId id = classify(r.coords);
                std::cout << to_string(id) << "\n";
                return Ok;
            }
            std::optional<TransportCertificate> cert;
            if (certify)
                cert = certify_transport(load_branch(curve, N), r);
            emit(cfg, write_report(make_report(curve, r, ml ? Flavor::C : Flavor::B, cert), cfg.decimal));
            if (cert && !(cert->replay_matches && cert->normal_form_matches))
                return Failed;
            return Ok;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    }
    return Usage;
}
