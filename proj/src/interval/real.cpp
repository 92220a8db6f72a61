#include "cert/real.hpp"

#include <cctype>
#include <stdexcept>

namespace cert {

mpq_class Real::to_rational() const {
    if (!mpfr_number_p(v_)) throw std::domain_error("non-finite endpoint");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::string Real::to_decimal() const { return exact_decimal(to_rational()); }

std::string exact_decimal(const mpq_class& q) {
    mpz_class den = q.get_den();
    // count factors 2 and 5; anything else means no terminating expansion
    unsigned long twos = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class rest = den >> twos;
    unsigned long fives = 0;
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) throw std::domain_error("rational has no terminating decimal expansion");
    unsigned long digits = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled = q.get_num() * scale / den;  // exact
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string s = scaled.get_str();
    if (digits > 0) {
        if (s.size() <= digits) s = std::string(digits - s.size() + 1, '0') + s;
        s.insert(s.size() - digits, ".");
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (neg && s != "0") s = "-" + s;
    return s;
}

mpq_class parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q(parse_rational(s.substr(0, slash)) / parse_rational(s.substr(slash + 1)));
        q.canonicalize();
        return q;
    }
    size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string mant;
    long frac_digits = 0;
    bool seen_dot = false, any_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant += c;
            any_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw std::invalid_argument("malformed number: " + raw);
    long exp10 = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("malformed number: " + raw);
        std::string e = s.substr(i + 1);
        if (e.empty()) throw std::invalid_argument("malformed exponent: " + raw);
        size_t used = 0;
        exp10 = std::stol(e, &used);
        if (used != e.size()) throw std::invalid_argument("malformed exponent: " + raw);
    }
    exp10 -= frac_digits;
    mpz_class num(mant, 10);
    if (neg) num = -num;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 >= 0 ? mpq_class(num * p) : mpq_class(num, p);
    q.canonicalize();
    return q;
}

}  // namespace cert
