#include "loopmod/rational.hpp"

#include "loopmod/errors.hpp"

#include <numeric>

namespace loopmod {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Config: return "ConfigurationError";
    case ErrorKind::Input: return "InputError";
    case ErrorKind::TrivialModule: return "TrivialModule";
    case ErrorKind::NoPeriodWithinBound: return "NoPeriodWithinBound";
    case ErrorKind::InfiniteIndex: return "InfiniteIndex";
    case ErrorKind::SupportNotSubgroup: return "SupportNotSubgroup";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::ImageMismatch: return "ImageMismatch";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::CapExceeded: return "CapExceeded";
    }
    return "Error";
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) fail(ErrorKind::Input, "zero denominator");
    Rational q(Integer(std::to_string(num)), Integer(std::to_string(den)));
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) fail(ErrorKind::Input, "bad rational '" + text + "'");
    if (q.get_den() == 0) fail(ErrorKind::Input, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational pow(const Rational& q, long exponent) {
    if (exponent == 0) return Rational(1);
    if (q == 0) {
        if (exponent < 0) fail(ErrorKind::Input, "zero to a negative power");
        return Rational(0);
    }
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    Rational r = exponent < 0 ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
}

std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) fail(ErrorKind::Input, "integer out of 64-bit range: " + z.get_str());
    return z.get_si();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return std::lcm(a, b);
}

std::int64_t mod64(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace loopmod
