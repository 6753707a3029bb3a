#include "smoothset/rational.hpp"

#include <cctype>

#include "smoothset/errors.hpp"

namespace smoothset {

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw ParameterError("empty rational literal");
    std::size_t slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!digits_ok(num, true) || (slash != std::string_view::npos && !digits_ok(den, false)))
        throw ParameterError("malformed rational literal '" + std::string(text) + "'");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    Rational q;
    if (slash == std::string_view::npos) {
        q = Rational(Integer(n));
    } else {
        Integer d{std::string(den)};
        if (d == 0) throw ParameterError("zero denominator in '" + std::string(text) + "'");
        q = Rational(Integer(n), d);
        q.canonicalize();
    }
    return q;
}

Rational factorial(unsigned n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

}  // namespace smoothset
