#include "jtwist/rational.hpp"

namespace jtwist {

Rational parseRational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::string text(s);
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw std::invalid_argument("malformed rational literal: " + text);
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in rational literal: " + text);
    q.canonicalize();
    return q;
}

std::string toString(const Rational& r) { return r.get_str(); }

GaussianRational GaussianRational::inverse() const {
    if (isZero()) throw std::domain_error("division by zero GaussianRational");
    Rational n = re * re + im * im;
    return {re / n, -im / n};
}

std::string GaussianRational::str() const {
    if (isZero()) return "0";
    std::string out;
    if (sgn(re) != 0) out += toString(re);
    if (sgn(im) != 0) {
        if (im == 1) {
            out += out.empty() ? "i" : "+i";
        } else if (im == -1) {
            out += "-i";
        } else {
            std::string imStr = toString(im);
            if (!out.empty() && sgn(im) > 0) out += "+";
            out += imStr + "i";
        }
    }
    return out;
}

}  // namespace jtwist
