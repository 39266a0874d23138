#include "polymotion/scalar.hpp"

#include <stdexcept>

namespace polymotion {

Scalar parse_scalar(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = text.find('/');
    std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
    auto digits_ok = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) return false;
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!digits_ok(num) || !digits_ok(den))
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    if (sgn(q.get_den()) == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::string scalar_to_string(const Scalar& value) {
    // Direct two-argument construction (e.g. Scalar(4, 8)) does not reduce;
    // emit lowest terms regardless.
    Scalar reduced = value;
    reduced.canonicalize();
    return reduced.get_str();
}

int sign(const Scalar& value) {
    return sgn(value);
}

double scalar_to_double(const Scalar& value) {
    return value.get_d();
}

namespace {

/* floor(sqrt(p/q)) scaled: returns floor(sqrt(value) * 2^shift) as an
 * integer, exactly. */
mpz_class floor_sqrt_scaled(const Scalar& value, unsigned shift) {
    mpz_class num = value.get_num() << (2 * shift);
    // floor(sqrt(num/den)) = floor(sqrt(num*den)/den) = floor(sqrt(num*den))/den in integers
    mpz_class prod = num * value.get_den();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), root.get_mpz_t(), value.get_den().get_mpz_t());
    return out;
}

}  // namespace

Scalar sqrt_lower_bound(const Scalar& value) {
    if (sign(value) < 0) throw std::invalid_argument("sqrt of negative value");
    if (sign(value) == 0) return Scalar(0);
    unsigned shift = 8;
    for (;;) {
        mpz_class scaled = floor_sqrt_scaled(value, shift);
        if (scaled >= 128) {  // relative error <= 1/scaled < 1%
            Scalar out(scaled, mpz_class(1) << shift);
            out.canonicalize();
            return out;
        }
        shift += 8;
    }
}

Scalar sqrt_upper_bound(const Scalar& value) {
    if (sign(value) < 0) throw std::invalid_argument("sqrt of negative value");
    if (sign(value) == 0) return Scalar(0);
    unsigned shift = 8;
    for (;;) {
        mpz_class scaled = floor_sqrt_scaled(value, shift) + 1;
        if (scaled >= 129) {
            Scalar out(scaled, mpz_class(1) << shift);
            out.canonicalize();
            return out;
        }
        shift += 8;
    }
}

mpz_class ceil_sqrt(const Scalar& value) {
    if (sign(value) < 0) throw std::invalid_argument("ceil_sqrt of negative value");
    if (sign(value) == 0) return 0;
    // smallest k with k^2 * den >= num
    mpz_class num = value.get_num(), den = value.get_den();
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());  // ceil(num/den)
    mpz_class k;
    mpz_sqrt(k.get_mpz_t(), q.get_mpz_t());
    while (k * k * den < num) ++k;
    while (k > 0 && (k - 1) * (k - 1) * den >= num) --k;
    return k;
}

}  // namespace polymotion
