#include "odekit/rational.hpp"

#include <cctype>

namespace odekit {

Rational::Rational(const BigInt &num, const BigInt &den) {
    if (den == 0) throw Error("division by zero");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
        throw Error("malformed rational '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    return Rational(BigInt(n), BigInt(std::string(den)));
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("division by zero");
    return Rational(den(), num());
}

Rational Rational::pow(unsigned e) const {
    mpq_class r(1);
    mpz_pow_ui(r.get_num_mpz_t(), value_.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), value_.get_den_mpz_t(), e);
    return Rational(r);
}

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero()) throw Error("division by zero");
    value_ /= o.value_;
    return *this;
}

std::string Rational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigInt gcd(const BigInt &a, const BigInt &b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt lcm(const BigInt &a, const BigInt &b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace odekit
