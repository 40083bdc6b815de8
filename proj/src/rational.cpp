#include "legn/rational.hpp"

#include <cctype>
#include <sstream>

#include "legn/error.hpp"

namespace legn {

std::string_view error_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonUnitDivisor: return "NonUnitDivisor";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::NotLocal: return "NotLocal";
    case ErrorCode::RootOfNonUnit: return "RootOfNonUnit";
    case ErrorCode::NotInvertibleOrder: return "NotInvertibleOrder";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::NotSemiQuasiHomogeneous: return "NotSemiQuasiHomogeneous";
    case ErrorCode::TiltedTangentCone: return "TiltedTangentCone";
    case ErrorCode::NotInGroupJ: return "NotInGroupJ";
    case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorCode::NotContact: return "NotContact";
    case ErrorCode::NotLegendrianImage: return "NotLegendrianImage";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::BelowConductorRegion: return "BelowConductorRegion";
    case ErrorCode::BelowConductor: return "BelowConductor";
    case ErrorCode::NotEquisingular: return "NotEquisingular";
    case ErrorCode::ReductionFailed: return "ReductionFailed";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

bool is_integer_text(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

Int parse_int(std::string_view s)
{
    if (!is_integer_text(s))
        throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
    if (s[0] == '+')
        s.remove_prefix(1);
    return Int(std::string(s));
}

} // namespace

Rat parse_rat(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    auto slash = text.find('/');
    Int num = parse_int(text.substr(0, slash));
    Int den = 1;
    if (slash != std::string_view::npos)
        den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::string format_rat(const Rat& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_decimal(const Rat& q, int digits)
{
    mpf_class f(q, 256);
    std::ostringstream os;
    os.precision(digits);
    os << f;
    return os.str();
}

Rat pow(const Rat& base, int exponent)
{
    if (exponent < 0) {
        if (base == 0)
            throw Error(ErrorCode::NonUnitDivisor, "negative power of zero");
        Rat inv = 1 / base;
        return pow(inv, -exponent);
    }
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(exponent));
    return Rat(num, den); // already canonical
}

bool rational_root(const Rat& q, int k, Rat& out)
{
    if (k <= 0)
        return false;
    if (q < 0 && k % 2 == 0)
        return false;
    Int num = abs(q.get_num());
    Int rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(k)) == 0)
        return false;
    if (mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(k)) == 0)
        return false;
    out = Rat(q < 0 ? Int(-rn) : rn, rd);
    return true;
}

} // namespace legn
