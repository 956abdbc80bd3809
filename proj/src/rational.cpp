#include "coherent/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace coherent {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (sgn(o.v_) == 0) throw std::invalid_argument("rational division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view token) {
    const std::string bad = "not a rational token: '" + std::string(token) + "'";
    if (token.empty()) throw std::invalid_argument(bad);

    bool negative = false;
    if (token.front() == '+' || token.front() == '-') {
        negative = token.front() == '-';
        token.remove_prefix(1);
    }

    Rational out;
    if (auto slash = token.find('/'); slash != std::string_view::npos) {
        std::string_view num = token.substr(0, slash);
        std::string_view den = token.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument(bad);
        mpq_class v{mpz_class{std::string(num), 10}, mpz_class{std::string(den), 10}};
        if (sgn(v.get_den()) == 0) throw std::invalid_argument(bad);
        v.canonicalize();
        out.v_ = v;
    } else {
        std::string digits;
        std::size_t frac_len = 0;
        if (auto dot = token.find('.'); dot != std::string_view::npos) {
            std::string_view whole = token.substr(0, dot);
            std::string_view frac = token.substr(dot + 1);
            if (whole.empty() && frac.empty()) throw std::invalid_argument(bad);
            if (!whole.empty() && !all_digits(whole)) throw std::invalid_argument(bad);
            if (!frac.empty() && !all_digits(frac)) throw std::invalid_argument(bad);
            digits = std::string(whole) + std::string(frac);
            frac_len = frac.size();
        } else {
            if (!all_digits(token)) throw std::invalid_argument(bad);
            digits = std::string(token);
        }
        if (digits.empty()) throw std::invalid_argument(bad);
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        mpq_class v{mpz_class{digits, 10}, den};
        v.canonicalize();
        out.v_ = v;
    }
    if (negative) out.v_ = -out.v_;
    return out;
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace coherent
