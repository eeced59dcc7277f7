#include "kfano/rational.hpp"

#include <cctype>

namespace kfano {

Rational Rational::parse(const std::string& text) {
    if (text.empty()) fail("bad-rational", "empty rational literal");
    auto check_integer = [&](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!check_integer(num) || !check_integer(den))
        fail("bad-rational", "cannot parse rational '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) fail("zero-denominator", "rational with zero denominator: '" + text + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    std::string s = q_.get_num().get_str();
    if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

std::size_t Rational::hash() const {
    // Canonical form makes limb-based hashing well defined.
    auto hash_mpz = [](const mpz_class& z) {
        std::size_t h = z < 0 ? 0x9e3779b97f4a7c15ULL : 0;
        mpz_srcptr p = z.get_mpz_t();
        for (int i = 0; i < std::abs(p->_mp_size); ++i)
            h = h * 1099511628211ULL + static_cast<std::size_t>(p->_mp_d[i]);
        return h;
    };
    std::size_t h = hash_mpz(q_.get_num());
    h ^= hash_mpz(q_.get_den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

Rational pow(const Rational& base, unsigned exp) {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), base.raw().get_num_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.raw().get_den_mpz_t(), exp);
    return Rational(r);
}

bool rational_sqrt(const Rational& value, Rational& root) {
    if (value.sign() < 0) return false;
    const mpz_class num = value.numerator();
    const mpz_class den = value.denominator();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rational(mpq_class(rn, rd));
    return true;
}

} // namespace kfano
