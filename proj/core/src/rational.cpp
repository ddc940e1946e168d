#include "ipr/rational.hpp"

#include <cctype>
#include <ostream>

namespace ipr {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational::Rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = (s[0] == '-');
        s.erase(0, 1);
    }
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("bad rational: '" + text + "'");
    mpz_class d(den);
    if (d == 0) throw ParseError("bad rational (zero denominator): '" + text + "'");
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    if (neg) q = -q;
    return Rational(std::move(q));
}

long long Rational::to_int64() const {
    if (!is_integer()) throw std::invalid_argument("Rational::to_int64: not an integer: " + str());
    mpz_class n = q_.get_num();
    if (!n.fits_slong_p()) throw std::overflow_error("Rational::to_int64: out of range: " + str());
    return static_cast<long long>(n.get_si());
}

std::string Rational::str() const {
    return q_.get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace ipr
