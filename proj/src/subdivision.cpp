#include "smoothset/subdivision.hpp"

#include <sstream>

#include "smoothset/errors.hpp"

namespace smoothset {

AffineChain::AffineChain(AffineSimplex s, Rational c) { add(s, c); }

int AffineChain::dimension() const { return terms_.empty() ? -1 : terms_.begin()->first.dimension(); }

void AffineChain::add(const AffineSimplex& s, const Rational& c) {
    if (c == 0) return;
    if (!terms_.empty() && s.dimension() != dimension())
        throw ParameterError("affine chain terms must share one dimension");
    auto [it, fresh] = terms_.emplace(s, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

AffineChain& AffineChain::operator+=(const AffineChain& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
}

AffineChain& AffineChain::operator-=(const AffineChain& o) {
    for (const auto& [s, c] : o.terms_) add(s, -c);
    return *this;
}

AffineChain& AffineChain::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [s, v] : terms_) v *= c;
    return *this;
}

Point barycenter(const AffineSimplex& s) {
    if (s.vertices.empty()) throw ParameterError("barycenter of an empty simplex");
    Point b(s.vertices[0].size());
    for (const auto& v : s.vertices) {
        if (v.size() != b.size()) throw ParameterError("vertices live in different ambient dimensions");
        for (std::size_t k = 0; k < b.size(); ++k) b[k] += v[k];
    }
    const Rational n(static_cast<long>(s.vertices.size()));
    for (auto& x : b) x /= n;
    return b;
}

Rational diameter_squared(const AffineSimplex& s) {
    Rational best = 0;
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < s.vertices.size(); ++j) {
            Rational d = 0;
            for (std::size_t k = 0; k < s.vertices[i].size(); ++k) {
                Rational e = s.vertices[i][k] - s.vertices[j][k];
                d += e * e;
            }
            if (d > best) best = d;
        }
    return best;
}

AffineChain boundary(const AffineChain& c) {
    AffineChain out;
    if (c.dimension() <= 0) return out;
    for (const auto& [s, coef] : c.terms())
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            AffineSimplex f;
            for (std::size_t j = 0; j < s.vertices.size(); ++j)
                if (j != i) f.vertices.push_back(s.vertices[j]);
            out.add(f, i % 2 == 0 ? coef : Rational(-coef));
        }
    return out;
}

AffineChain cone(const Point& b, const AffineChain& c) {
    AffineChain out;
    for (const auto& [s, coef] : c.terms()) {
        AffineSimplex t;
        t.vertices.reserve(s.vertices.size() + 1);
        t.vertices.push_back(b);
        t.vertices.insert(t.vertices.end(), s.vertices.begin(), s.vertices.end());
        out.add(t, coef);
    }
    return out;
}

Rational augmentation(const AffineChain& c) {
    Rational sum = 0;
    for (const auto& [s, coef] : c.terms()) sum += coef;
    return sum;
}

namespace {

AffineChain subdivide_simplex(const AffineSimplex& s) {
    if (s.dimension() == 0) return AffineChain(s);
    return cone(barycenter(s), subdivide(boundary(AffineChain(s))));
}

AffineChain homotopy_simplex(const AffineSimplex& s) {
    if (s.dimension() == 0) return {};
    AffineChain inner(s);
    inner += homotopy(boundary(inner));
    return Rational(-1) * cone(barycenter(s), inner);
}

}  // namespace

AffineChain subdivide(const AffineChain& c) {
    AffineChain out;
    for (const auto& [s, coef] : c.terms()) out += coef * subdivide_simplex(s);
    return out;
}

AffineChain subdivide(const AffineChain& c, int times) {
    if (times < 0) throw ParameterError("iteration count must be nonnegative");
    AffineChain out = c;
    for (int i = 0; i < times; ++i) out = subdivide(out);
    return out;
}

AffineChain homotopy(const AffineChain& c) {
    AffineChain out;
    for (const auto& [s, coef] : c.terms()) out += coef * homotopy_simplex(s);
    return out;
}

Rational iterated_diameter(const AffineSimplex& s, int m) {
    if (m < 0) throw ParameterError("iteration count must be nonnegative");
    std::vector<AffineSimplex> pieces{s};
    for (int i = 0; i < m; ++i) {
        std::vector<AffineSimplex> next;
        for (const auto& p : pieces) {
            const AffineChain sub = subdivide_simplex(p);
            for (const auto& [t, coef] : sub.terms()) next.push_back(t);
        }
        pieces = std::move(next);
    }
    Rational best = 0;
    for (const auto& p : pieces) best = std::max(best, diameter_squared(p));
    return best;
}

Rational diameter_bound(const AffineSimplex& s, int m) {
    const long n = s.dimension();
    Rational ratio(n, n + 1);
    ratio.canonicalize();
    Rational bound = diameter_squared(s);
    for (int i = 0; i < 2 * m; ++i) bound *= ratio;
    return bound;
}

std::string to_text(const AffineChain& c) {
    std::ostringstream out;
    for (const auto& [s, coef] : c.terms()) {
        out << to_string(coef) << " :";
        for (const auto& v : s.vertices) {
            out << " (";
            for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << to_string(v[k]);
            out << ")";
        }
        out << "\n";
    }
    return out.str();
}

AffineChain parse_affine_chain(const std::string& text) {
    AffineChain c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
            continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'coefficient : vertices'", lineno);
        Rational coef;
        try {
            std::string head = line.substr(0, colon);
            head.erase(0, head.find_first_not_of(" \t"));
            head.erase(head.find_last_not_of(" \t") + 1);
            coef = parse_rational(head);
        } catch (const ParameterError& e) {
            throw ParseError(e.what(), lineno);
        }
        AffineSimplex s;
        std::size_t pos = colon + 1;
        while ((pos = line.find('(', pos)) != std::string::npos) {
            const auto close = line.find(')', pos);
            if (close == std::string::npos) throw ParseError("unterminated vertex", lineno);
            Point p;
            std::istringstream coords(line.substr(pos + 1, close - pos - 1));
            std::string tok;
            while (std::getline(coords, tok, ',')) {
                tok.erase(0, tok.find_first_not_of(" \t"));
                tok.erase(tok.find_last_not_of(" \t") + 1);
                try {
                    p.push_back(parse_rational(tok));
                } catch (const ParameterError& e) {
                    throw ParseError(e.what(), lineno);
                }
            }
            s.vertices.push_back(std::move(p));
            pos = close + 1;
        }
        if (s.vertices.empty()) throw ParseError("simplex without vertices", lineno);
        try {
            c.add(s, coef);
        } catch (const ParameterError& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return c;
}

}  // namespace smoothset
