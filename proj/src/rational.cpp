#include "hlie/rational.hpp"

#include "hlie/errors.hpp"

#include <cctype>

namespace hlie {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
        throw UsageError("malformed rational '" + std::string(text) + "'");
    if (num.front() == '+') num.remove_prefix(1);
    boost::multiprecision::mpz_int n(std::string{num});
    boost::multiprecision::mpz_int d(std::string{den});
    if (d == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    // Division canonicalizes; the string constructor of gmp_rational does not.
    Rational r(n);
    r /= Rational(d);
    return r;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Vector basis_vector(Index n, Index i) {
    Vector v = Vector::Zero(n);
    v(i) = 1;
    return v;
}

Matrix matrix_power(const Matrix& m, int exponent) {
    if (m.rows() != m.cols()) throw UsageError("matrix_power: matrix is not square");
    if (exponent < 0) throw UsageError("matrix_power: negative exponent");
    Matrix result = Matrix::Identity(m.rows(), m.cols());
    for (int k = 0; k < exponent; ++k) result = result * m;
    return result;
}

} // namespace hlie
