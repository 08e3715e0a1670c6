#include "cotv/rational.hpp"

#include "cotv/error.hpp"

#include <charconv>
#include <string>

namespace cotv {

std::string to_string(const Rational& r)
{
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole)
{
    std::int64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(whole) + "'");
    return value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_int(text.substr(0, slash), text);
        auto den = parse_int(text.substr(slash + 1), text);
        if (den == 0)
            throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto int_part = text.substr(0, dot);
        auto frac_part = text.substr(dot + 1);
        if (frac_part.empty() || frac_part.size() > 15)
            throw Error(ErrorCode::ParseError, "unsupported decimal '" + std::string(text) + "'");
        bool negative = !int_part.empty() && int_part.front() == '-';
        std::int64_t whole = int_part.empty() || int_part == "-" ? 0 : parse_int(int_part, text);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i)
            scale *= 10;
        std::int64_t frac = parse_int(frac_part, text);
        if (frac < 0)
            throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
        Rational magnitude = Rational(negative ? -whole : whole) + Rational(frac, scale);
        return negative ? -magnitude : magnitude;
    }
    return Rational(parse_int(text, text));
}

const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::UnknownInstance: return "UnknownInstance";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::EmptyVersionSpace: return "EmptyVersionSpace";
    case ErrorCode::InvalidCosts: return "InvalidCosts";
    case ErrorCode::FailTokenRequired: return "FailTokenRequired";
    case ErrorCode::FailTokenInvalid: return "FailTokenInvalid";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::TreeNotShattered: return "TreeNotShattered";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::LearnerNotSound: return "LearnerNotSound";
    case ErrorCode::NoHypothesisQualified: return "NoHypothesisQualified";
    case ErrorCode::OracleUnavailable: return "OracleUnavailable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

} // namespace cotv
