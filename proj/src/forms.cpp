#include "smoothset/forms.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "smoothset/errors.hpp"

namespace smoothset {

// ---- polynomials ------------------------------------------------------------

Polynomial Polynomial::constant(int variables, const Rational& c) {
    Polynomial p(variables);
    p.add_term(Exponent(variables, 0), c);
    return p;
}

Polynomial Polynomial::coordinate(int variables, int i) {
    if (i < 0 || i > variables) throw ParameterError("coordinate index out of range");
    if (i == 0) {
        Polynomial p = constant(variables, 1);
        for (int k = 1; k <= variables; ++k) p -= coordinate(variables, k);
        return p;
    }
    Exponent e(variables, 0);
    e[i - 1] = 1;
    return monomial(variables, e);
}

Polynomial Polynomial::monomial(int variables, const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != variables) throw ParameterError("exponent length differs from variable count");
    Polynomial p(variables);
    p.add_term(e, c);
    return p;
}

int Polynomial::total_degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (unsigned a : e) d += static_cast<int>(a);
        best = std::max(best, d);
    }
    return best;
}

Rational Polynomial::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (vars_ != o.vars_ && !o.is_zero()) {
        if (!is_zero()) throw ParameterError("polynomials in different variable counts");
        vars_ = o.vars_;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_) throw ParameterError("polynomials in different variable counts");
    Polynomial out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e(ea);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial Polynomial::derivative(int i) const {
    if (i < 1 || i > vars_) throw ParameterError("derivative index out of range");
    Polynomial out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i - 1] == 0) continue;
        Exponent f(e);
        --f[i - 1];
        out.add_term(f, c * static_cast<unsigned long>(e[i - 1]));
    }
    return out;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial out = constant(vars_, 1);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (static_cast<int>(images.size()) != vars_) throw ParameterError("substitution needs one image per variable");
    const int target = images.empty() ? 0 : images[0].variables();
    Polynomial out(target);
    std::vector<std::vector<Polynomial>> powers(images.size());
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(constant(target, 1));
            while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
            if (e[i]) term = term * pw[e[i]];
        }
        out += term;
    }
    return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& t) const {
    if (static_cast<int>(t.size()) != vars_) throw ParameterError("evaluation point has the wrong length");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) term *= t[i];
        sum += term;
    }
    return sum;
}

double Polynomial::evaluate(const std::vector<double>& t) const {
    if (static_cast<int>(t.size()) != vars_) throw ParameterError("evaluation point has the wrong length");
    double sum = 0;
    for (const auto& [e, c] : terms_) {
        double term = c.get_d();
        for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(t[i], static_cast<double>(e[i]));
        sum += term;
    }
    return sum;
}

std::vector<Exponent> monomials(int variables, int max_degree) {
    std::vector<Exponent> out;
    Exponent e(variables, 0);
    std::function<void(int, int)> go = [&](int i, int left) {
        if (i == variables) {
            out.push_back(e);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            e[i] = static_cast<unsigned>(a);
            go(i + 1, left - a);
        }
        e[i] = 0;
    };
    if (max_degree >= 0) go(0, max_degree);
    return out;
}

// ---- forms ------------------------------------------------------------------

std::vector<int> mask_indices(IndexMask m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1u) out.push_back(i + 1);
    return out;
}

std::vector<IndexMask> masks_of_degree(int dim, int degree) {
    std::vector<IndexMask> out;
    if (degree < 0 || degree > dim) return out;
    for (IndexMask m = 0; m < (IndexMask{1} << dim); ++m)
        if (std::popcount(m) == degree) out.push_back(m);
    return out;
}

PolyForm PolyForm::function(int n, Polynomial f) {
    PolyForm w(n, 0);
    if (f.is_zero()) return w;
    if (f.variables() != n) throw ParameterError("function lives on a different simplex");
    w.terms.emplace(0, std::move(f));
    return w;
}

PolyForm PolyForm::differential(int n, int i) {
    if (i < 0 || i > n) throw ParameterError("differential index out of range");
    PolyForm w(n, 1);
    if (i == 0) {
        for (int k = 1; k <= n; ++k) w.add(IndexMask{1} << (k - 1), Polynomial::constant(n, -1));
    } else {
        w.add(IndexMask{1} << (i - 1), Polynomial::constant(n, 1));
    }
    return w;
}

Polynomial PolyForm::coefficient(IndexMask m) const {
    auto it = terms.find(m);
    return it == terms.end() ? Polynomial(dim) : it->second;
}

void PolyForm::add(IndexMask m, const Polynomial& f) {
    if (f.is_zero()) return;
    if (std::popcount(m) != degree) throw ParameterError("term degree differs from form degree");
    auto [it, fresh] = terms.emplace(m, f);
    if (fresh) return;
    it->second += f;
    if (it->second.is_zero()) terms.erase(it);
}

int PolyForm::polynomial_degree() const {
    int best = -1;
    for (const auto& [m, f] : terms) best = std::max(best, f.total_degree());
    return best;
}

namespace {

void check_same_shape(const PolyForm& a, const PolyForm& b) {
    if (a.dim != b.dim || a.degree != b.degree) throw ParameterError("forms of different shape");
}

}  // namespace

PolyForm operator+(const PolyForm& a, const PolyForm& b) {
    check_same_shape(a, b);
    PolyForm out = a;
    for (const auto& [m, f] : b.terms) out.add(m, f);
    return out;
}

PolyForm operator-(const PolyForm& a, const PolyForm& b) { return a + Rational(-1) * b; }

PolyForm operator*(const Rational& c, const PolyForm& a) {
    PolyForm out(a.dim, a.degree);
    for (const auto& [m, f] : a.terms) out.add(m, c * f);
    return out;
}

PolyForm operator*(const Polynomial& f, const PolyForm& a) {
    PolyForm out(a.dim, a.degree);
    for (const auto& [m, g] : a.terms) out.add(m, f * g);
    return out;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (a.dim != b.dim) throw ParameterError("wedge of forms on different simplices");
    PolyForm out(a.dim, a.degree + b.degree);
    for (const auto& [ma, fa] : a.terms)
        for (const auto& [mb, fb] : b.terms) {
            if (ma & mb) continue;
            int swaps = 0;
            for (int j : mask_indices(mb)) swaps += std::popcount(ma >> j);
            Polynomial f = fa * fb;
            if (swaps % 2) f *= Rational(-1);
            out.add(ma | mb, f);
        }
    return out;
}

PolyForm exterior_d(const PolyForm& w) {
    PolyForm out(w.dim, w.degree + 1);
    for (const auto& [m, f] : w.terms)
        for (int j = 1; j <= w.dim; ++j) {
            const IndexMask bit = IndexMask{1} << (j - 1);
            if (m & bit) continue;
            Polynomial g = f.derivative(j);
            if (std::popcount(m & (bit - 1)) % 2) g *= Rational(-1);
            out.add(m | bit, g);
        }
    return out;
}

PolyForm canonicalize(int dim, int degree, const std::vector<RawTerm>& terms) {
    PolyForm out(dim, degree);
    for (const auto& t : terms) {
        if (static_cast<int>(t.exponents.size()) != dim + 1)
            throw ParameterError("raw term needs one exponent per barycentric coordinate");
        if (static_cast<int>(t.differentials.size()) != degree) throw ParameterError("raw term has the wrong degree");
        Polynomial f = Polynomial::constant(dim, t.coefficient);
        for (int i = 0; i <= dim; ++i)
            if (t.exponents[i]) f = f * Polynomial::coordinate(dim, i).pow(t.exponents[i]);
        PolyForm w = PolyForm::function(dim, f);
        for (int i : t.differentials) w = wedge(w, PolyForm::differential(dim, i));
        if (degree > dim) continue;
        out = out + w;
    }
    return out;
}

void check_barycentric(const RationalMatrix& m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational sum = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (m(i, j) < 0) throw ParameterError("barycentric substitution has a negative weight");
            sum += m(i, j);
        }
        if (sum != 1) throw ParameterError("barycentric substitution column does not sum to 1");
    }
}

PolyForm pullback(const PolyForm& w, const RationalMatrix& m) {
    if (static_cast<int>(m.rows()) != w.dim + 1) throw ParameterError("substitution does not match the form's simplex");
    if (m.cols() == 0) throw ParameterError("substitution has no source vertices");
    check_barycentric(m);
    const int src = static_cast<int>(m.cols()) - 1;
    std::vector<Polynomial> images;
    std::vector<PolyForm> dts;
    for (int i = 1; i <= w.dim; ++i) {
        Polynomial p = Polynomial::constant(src, m(i, 0));
        PolyForm dt(src, 1);
        for (int j = 1; j <= src; ++j) {
            const Rational slope = m(i, j) - m(i, 0);
            if (slope == 0) continue;
            p += Polynomial::monomial(src, [&] {
                Exponent e(src, 0);
                e[j - 1] = 1;
                return e;
            }(), slope);
            dt.add(IndexMask{1} << (j - 1), Polynomial::constant(src, slope));
        }
        images.push_back(std::move(p));
        dts.push_back(std::move(dt));
    }
    PolyForm out(src, w.degree);
    for (const auto& [mask, f] : w.terms) {
        PolyForm term = PolyForm::function(src, w.dim == 0 ? Polynomial::constant(src, f.coefficient({})) : f.substitute(images));
        for (int i : mask_indices(mask)) term = wedge(term, dts[i - 1]);
        out = out + term;
    }
    return out;
}

RationalMatrix vertex_map_matrix(int n, const std::vector<int>& f) {
    RationalMatrix m(n + 1, f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] < 0 || f[k] > n) throw ParameterError("vertex map leaves the target simplex");
        m(f[k], k) = 1;
    }
    return m;
}

RationalMatrix face_matrix(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw ParameterError("face index out of range");
    std::vector<int> f;
    for (int k = 0; k < n; ++k) f.push_back(k < i ? k : k + 1);
    return vertex_map_matrix(n, f);
}

RationalMatrix degeneracy_matrix(int n, int j) {
    if (j < 0 || j > n) throw ParameterError("degeneracy index out of range");
    std::vector<int> f;
    for (int k = 0; k <= n + 1; ++k) f.push_back(k <= j ? k : k - 1);
    return vertex_map_matrix(n, f);
}

PolyForm pullback_face(const PolyForm& w, int i) { return pullback(w, face_matrix(w.dim, i)); }

Rational integrate(const PolyForm& w) {
    if (w.degree != w.dim) throw ParameterError("only top-degree forms integrate over the simplex");
    Rational sum = 0;
    for (const auto& [mask, f] : w.terms)
        for (const auto& [e, c] : f.terms()) {
            Rational num = 1;
            unsigned total = static_cast<unsigned>(w.dim);
            for (unsigned a : e) {
                num *= factorial(a);
                total += a;
            }
            sum += c * num / factorial(total);
        }
    sum.canonicalize();
    return sum;
}

std::string to_text(const PolyForm& w) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [mask, f] : w.terms)
        for (const auto& [e, c] : f.terms()) {
            out << (first ? "" : " ") << "(" << to_string(c) << ";";
            for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : " ") << e[i];
            out << ";";
            auto idx = mask_indices(mask);
            for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : " ") << idx[i];
            out << ")";
            first = false;
        }
    return out.str();
}

namespace {

std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r\n"));
    s.erase(s.find_last_not_of(" \t\r\n") + 1);
    return s;
}

std::vector<long> parse_list(const std::string& s) {
    std::vector<long> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw ParameterError("not an integer: '" + tok + "'");
        }
        if (used != tok.size() || v < 0) throw ParameterError("not a nonnegative integer: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

PolyForm parse_form(int dim, int degree, const std::string& text) {
    std::vector<RawTerm> raw;
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string::npos) {
        const auto close = text.find(')', pos);
        if (close == std::string::npos) throw ParameterError("unterminated form term");
        std::string body = text.substr(pos + 1, close - pos - 1);
        std::vector<std::string> parts;
        std::istringstream in(body);
        std::string part;
        while (std::getline(in, part, ';')) parts.push_back(part);
        while (parts.size() < 3) parts.emplace_back();
        if (parts.size() != 3) throw ParameterError("form term needs 'coefficient; exponents; indices'");
        RawTerm t;
        t.coefficient = parse_rational(trim(parts[0]));
        auto ex = parse_list(parts[1]);
        if (static_cast<int>(ex.size()) != dim) throw ParameterError("form term needs one exponent per chart coordinate");
        t.exponents.push_back(0);
        for (long a : ex) t.exponents.push_back(static_cast<unsigned>(a));
        for (long i : parse_list(parts[2])) {
            if (i > dim) throw ParameterError("differential index out of range");
            t.differentials.push_back(static_cast<int>(i));
        }
        if (static_cast<int>(t.differentials.size()) != degree) throw ParameterError("form term has the wrong degree");
        raw.push_back(std::move(t));
        pos = close + 1;
    }
    if (trim(text).size() && raw.empty() && trim(text) != "0") throw ParameterError("no form terms found");
    return canonicalize(dim, degree, raw);
}

// ---- form fields ------------------------------------------------------------

FormField::FormField(std::shared_ptr<const SimplicialSet> x, int degree) : x_(std::move(x)), degree_(degree) {
    if (degree < 0) throw ParameterError("form degree must be nonnegative");
    for (int n = 0; n <= x_->cap(); ++n) {
        nondeg_.push_back(x_->nondegenerate(n));
        forms_.emplace_back(nondeg_[n].size(), PolyForm(n, degree));
    }
}

std::optional<std::size_t> FormField::position(int n, SimplexId s) const {
    auto it = std::lower_bound(nondeg_[n].begin(), nondeg_[n].end(), s);
    if (it == nondeg_[n].end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - nondeg_[n].begin());
}

PolyForm FormField::on(int n, SimplexId s) const {
    auto d = x_->decompose(n, s);
    const PolyForm& base = forms_[d.dim][*position(d.dim, d.base)];
    if (d.dim == n) return base;
    return pullback(base, vertex_map_matrix(d.dim, d.surjection));
}

void FormField::set(int n, SimplexId s, PolyForm w) {
    auto pos = position(n, s);
    if (!pos) throw ParameterError("forms are assigned to nondegenerate simplices only");
    set_nondegenerate(n, *pos, std::move(w));
}

void FormField::set_nondegenerate(int n, std::size_t position, PolyForm w) {
    if (w.dim != n || w.degree != degree_) throw ParameterError("form does not fit the simplex or degree");
    forms_[n][position] = std::move(w);
}

std::optional<std::string> compatibility_failure(const FormField& w) {
    const auto& x = w.space();
    for (int n = 1; n <= x.cap(); ++n)
        for (std::size_t k = 0; k < w.count(n); ++k) {
            const SimplexId s = w.basis(n)[k];
            for (int i = 0; i <= n; ++i)
                if (!(pullback_face(w.on_nondegenerate(n, k), i) == w.on(n - 1, x.face(n, i, s))))
                    return "simplex '" + x.name(n, s) + "', face " + std::to_string(i);
        }
    return std::nullopt;
}

namespace {

template <class F>
FormField simplexwise(const FormField& shape, int degree, F op) {
    FormField out(shape.space_ptr(), degree);
    for (int n = 0; n <= shape.space().cap(); ++n)
        for (std::size_t k = 0; k < shape.count(n); ++k) out.set_nondegenerate(n, k, op(n, k));
    return out;
}

}  // namespace

FormField exterior_d(const FormField& w) {
    return simplexwise(w, w.degree() + 1, [&](int n, std::size_t k) { return exterior_d(w.on_nondegenerate(n, k)); });
}

FormField wedge(const FormField& a, const FormField& b) {
    if (&a.space() != &b.space() && !(a.space() == b.space())) throw ParameterError("wedge of fields on different spaces");
    return simplexwise(a, a.degree() + b.degree(), [&](int n, std::size_t k) {
        return wedge(a.on_nondegenerate(n, k), b.on_nondegenerate(n, k));
    });
}

FormField operator+(const FormField& a, const FormField& b) {
    if (a.degree() != b.degree()) throw ParameterError("sum of fields of different degree");
    return simplexwise(a, a.degree(), [&](int n, std::size_t k) { return a.on_nondegenerate(n, k) + b.on_nondegenerate(n, k); });
}

FormField operator*(const Rational& c, const FormField& a) {
    return simplexwise(a, a.degree(), [&](int n, std::size_t k) { return c * a.on_nondegenerate(n, k); });
}

Cochain derham_map(const FormField& w) {
    if (auto bad = compatibility_failure(w)) throw IncompatibilityError("form field is not face compatible", *bad);
    const int p = w.degree();
    if (p > w.space().cap()) return {};
    Cochain c(w.count(p));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = integrate(w.on_nondegenerate(p, k));
    return c;
}

FormField whitney(std::shared_ptr<const SimplicialSet> x, int p, const Cochain& c) {
    FormField out(x, p);
    if (p > x->cap()) return out;
    if (c.size() != out.count(p)) throw ParameterError("cochain length does not match the nondegenerate simplices");
    const Rational scale = factorial(static_cast<unsigned>(p));
    for (int n = p; n <= x->cap(); ++n)
        for (std::size_t k = 0; k < out.count(n); ++k) {
            const SimplexId s = out.basis(n)[k];
            std::vector<RawTerm> raw;
            std::vector<int> face(p + 1);
            std::function<void(int, int)> go = [&](int slot, int from) {
                if (slot == p + 1) {
                    auto pos = out.position(p, x->restrict_to(n, s, face));
                    if (!pos || c[*pos] == 0) return;
                    for (int i = 0; i <= p; ++i) {
                        RawTerm t;
                        t.coefficient = (i % 2 ? -1 : 1) * scale * c[*pos];
                        t.exponents.assign(n + 1, 0);
                        t.exponents[face[i]] = 1;
                        for (int j = 0; j <= p; ++j)
                            if (j != i) t.differentials.push_back(face[j]);
                        raw.push_back(std::move(t));
                    }
                    return;
                }
                for (int v = from; v <= n; ++v) {
                    face[slot] = v;
                    go(slot + 1, v + 1);
                }
            };
            go(0, 0);
            out.set_nondegenerate(n, k, canonicalize(n, p, raw));
        }
    return out;
}

// ---- truncated de Rham cohomology -------------------------------------------

namespace {

struct Slot {
    int n;
    std::size_t position;
    IndexMask mask;
    Exponent exponent;
};

// Coordinates of p-form fields of total degree ≤ D (coefficient degree plus p) in the
// monomial basis. d preserves this filtration and so does the radial contraction, so a
// single simplex stays acyclic at every D.
class FieldSpace {
public:
    FieldSpace(std::shared_ptr<const SimplicialSet> x, int p, int max_degree) : x_(std::move(x)), p_(p) {
        FormField shape(x_, p);
        for (int n = 0; n <= x_->cap(); ++n) {
            const auto monos = monomials(n, max_degree - p);
            for (std::size_t k = 0; k < shape.count(n); ++k)
                for (IndexMask m : masks_of_degree(n, p))
                    for (const auto& e : monos) {
                        index_[{n, k, m, e}] = slots_.size();
                        slots_.push_back({n, k, m, e});
                    }
        }
    }

    std::size_t size() const { return slots_.size(); }

    FormField field(const RationalVector& v) const {
        FormField f(x_, p_);
        std::vector<std::vector<PolyForm>> forms;
        for (int n = 0; n <= x_->cap(); ++n) forms.emplace_back(f.count(n), PolyForm(n, p_));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            const auto& s = slots_[i];
            forms[s.n][s.position].add(s.mask, Polynomial::monomial(s.n, s.exponent, v[i]));
        }
        for (int n = 0; n <= x_->cap(); ++n)
            for (std::size_t k = 0; k < forms[n].size(); ++k) f.set_nondegenerate(n, k, std::move(forms[n][k]));
        return f;
    }

    RationalVector vector(const FormField& f) const {
        RationalVector v(slots_.size());
        for (int n = 0; n <= x_->cap(); ++n)
            for (std::size_t k = 0; k < f.count(n); ++k)
                for (const auto& [m, poly] : f.on_nondegenerate(n, k).terms)
                    for (const auto& [e, c] : poly.terms()) {
                        auto it = index_.find({n, k, m, e});
                        if (it == index_.end()) throw StructuralError("form leaves the truncated space");
                        v[it->second] = c;
                    }
        return v;
    }

    // Compatibility constraints as a matrix on slot coordinates.
    RationalMatrix constraints() const {
        std::map<std::tuple<int, std::size_t, int, IndexMask, Exponent>, std::size_t> rows;
        std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(slots_.size());
        const FormField shape(x_, p_);
        for (std::size_t col = 0; col < slots_.size(); ++col) {
            RationalVector unit(slots_.size());
            unit[col] = 1;
            const FormField f = field(unit);
            const auto& s = slots_[col];
            // the slot only enters residuals of its own simplex and of simplices having it in a face
            for (int n = std::max(1, s.n); n <= x_->cap(); ++n)
                for (std::size_t k = 0; k < shape.count(n); ++k) {
                    const SimplexId sigma = shape.basis(n)[k];
                    for (int i = 0; i <= n; ++i) {
                        if (n != s.n || k != s.position) {
                            auto d = x_->decompose(n - 1, x_->face(n, i, sigma));
                            if (d.dim != s.n || shape.basis(d.dim)[s.position] != d.base) continue;
                        }
                        PolyForm r = pullback_face(f.on_nondegenerate(n, k), i) - f.on(n - 1, x_->face(n, i, sigma));
                        for (const auto& [m, poly] : r.terms)
                            for (const auto& [e, c] : poly.terms()) {
                                auto key = std::make_tuple(n, k, i, m, e);
                                auto [it, fresh] = rows.emplace(key, rows.size());
                                columns[col].emplace_back(it->second, c);
                            }
                    }
                }
        }
        RationalMatrix out(rows.size(), slots_.size());
        for (std::size_t col = 0; col < columns.size(); ++col)
            for (const auto& [row, c] : columns[col]) out(row, col) += c;
        return out;
    }

private:
    std::shared_ptr<const SimplicialSet> x_;
    int p_;
    std::vector<Slot> slots_;
    std::map<std::tuple<int, std::size_t, IndexMask, Exponent>, std::size_t> index_;
};

struct TruncatedComplex {
    std::vector<FieldSpace> spaces;
    std::vector<RationalMatrix> compatible;  // rows: basis of compatible fields, degree p
    std::vector<RationalMatrix> derivative;  // rows: d of each basis field, in degree p+1 coordinates
    std::vector<std::size_t> dimensions;
};

TruncatedComplex truncated_complex(std::shared_ptr<const SimplicialSet> x, int top, int max_degree) {
    TruncatedComplex t;
    for (int p = 0; p <= top + 1; ++p) t.spaces.emplace_back(x, p, max_degree);
    for (int p = 0; p <= top + 1; ++p) t.compatible.push_back(kernel_basis(t.spaces[p].constraints()));
    for (int p = 0; p <= top; ++p) {
        RationalMatrix d(0, t.spaces[p + 1].size());
        for (std::size_t i = 0; i < t.compatible[p].rows(); ++i)
            d.append_row(t.spaces[p + 1].vector(exterior_d(t.spaces[p].field(t.compatible[p].row(i)))));
        t.derivative.push_back(std::move(d));
    }
    for (int p = 0; p <= top; ++p) {
        const std::size_t in = p == 0 ? 0 : rank(t.derivative[p - 1]);
        t.dimensions.push_back(t.compatible[p].rows() - rank(t.derivative[p]) - in);
    }
    return t;
}

}  // namespace

std::vector<std::size_t> DeRhamCohomology::dimensions() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees) out.push_back(d.dimension);
    return out;
}

DeRhamCohomology derham_cohomology(std::shared_ptr<const SimplicialSet> x, int max_poly_degree) {
    if (max_poly_degree < 1) throw ParameterError("polynomial degree cap must be at least 1");
    if (auto v = validate(*x); !v.empty()) throw StructuralError("input violates the simplicial identities");
    CochainComplex cc(*x);
    const int top = cc.top_degree();
    TruncatedComplex t = truncated_complex(x, top, max_poly_degree);
    TruncatedComplex next = truncated_complex(x, top, max_poly_degree + 1);

    DeRhamCohomology out;
    out.polynomial_degree = max_poly_degree;
    out.stabilized = t.dimensions == next.dimensions;
    for (int p = 0; p <= top; ++p) {
        DeRhamDegree deg;
        deg.forms = t.compatible[p].rows();
        deg.dimension = t.dimensions[p];
        deg.simplicial = cc.dimension(p);
        // closed fields, then a complement of the exact ones
        RationalMatrix lambdas = kernel_basis(t.derivative[p].transpose());
        RationalMatrix exact(0, t.spaces[p].size());
        if (p > 0) exact = t.derivative[p - 1];
        RowEchelon exact_echelon = row_reduce(exact);
        RationalMatrix reduced(0, t.spaces[p].size());
        for (std::size_t i = 0; i < lambdas.rows(); ++i) {
            RationalVector z(t.spaces[p].size());
            for (std::size_t k = 0; k < lambdas.cols(); ++k) {
                if (lambdas(i, k) == 0) continue;
                for (std::size_t j = 0; j < z.size(); ++j) z[j] += lambdas(i, k) * t.compatible[p](k, j);
            }
            reduce_against(z, exact_echelon);
            if (!is_zero(z)) reduced.append_row(z);
        }
        RationalMatrix reps = row_reduce(reduced).reduced;
        if (reps.rows() != deg.dimension) throw StructuralError("de Rham class count disagrees with the rank count");
        deg.comparison = RationalMatrix(deg.simplicial, reps.rows());
        for (std::size_t j = 0; j < reps.rows(); ++j) {
            RationalVector coords = cc.coordinates(p, derham_map(t.spaces[p].field(reps.row(j))));
            for (std::size_t i = 0; i < coords.size(); ++i) deg.comparison(i, j) = coords[i];
        }
        deg.isomorphism = deg.dimension == deg.simplicial && rank(deg.comparison) == deg.dimension;
        out.degrees.push_back(std::move(deg));
    }
    return out;
}

}  // namespace smoothset
