#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smoothset/homology.hpp"
#include "smoothset/linalg.hpp"
#include "smoothset/rational.hpp"
#include "smoothset/simplicial.hpp"

namespace smoothset {

using Exponent = std::vector<unsigned>;

/// Polynomial with rational coefficients in the chart coordinates t1..tn.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int variables) : vars_(variables) {}
    static Polynomial constant(int variables, const Rational& c);
    /// The coordinate t_i, 1 ≤ i ≤ n; t_0 is 1 - t_1 - ... - t_n.
    static Polynomial coordinate(int variables, int i);
    static Polynomial monomial(int variables, const Exponent& e, const Rational& c = 1);

    int variables() const { return vars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;  // -1 for zero
    Rational coefficient(const Exponent& e) const;

    void add_term(const Exponent& e, const Rational& c);
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    Polynomial derivative(int i) const;  // ∂/∂t_i, 1 ≤ i ≤ n
    Polynomial pow(unsigned k) const;
    /// Substitutes t_i ↦ images[i-1]; all images share one variable count.
    Polynomial substitute(const std::vector<Polynomial>& images) const;
    Rational evaluate(const std::vector<Rational>& t) const;
    double evaluate(const std::vector<double>& t) const;

private:
    int vars_ = 0;
    std::map<Exponent, Rational> terms_;
};

/// All exponent vectors in n variables with total degree ≤ d, in a fixed order.
std::vector<Exponent> monomials(int variables, int max_degree);

/// Bit i-1 set means dt_i is present.
using IndexMask = std::uint32_t;
std::vector<int> mask_indices(IndexMask m);
std::vector<IndexMask> masks_of_degree(int dim, int degree);

/// Polynomial differential form on Δⁿ in the chart t1..tn (t0 and dt0 eliminated).
struct PolyForm {
    int dim = 0;
    int degree = 0;
    std::map<IndexMask, Polynomial> terms;

    PolyForm() = default;
    PolyForm(int n, int p) : dim(n), degree(p) {}
    static PolyForm function(int n, Polynomial f);
    /// dt_i with 0 ≤ i ≤ n.
    static PolyForm differential(int n, int i);

    bool is_zero() const { return terms.empty(); }
    Polynomial coefficient(IndexMask m) const;
    void add(IndexMask m, const Polynomial& f);
    int polynomial_degree() const;
    friend bool operator==(const PolyForm&, const PolyForm&) = default;
};

PolyForm operator+(const PolyForm& a, const PolyForm& b);
PolyForm operator-(const PolyForm& a, const PolyForm& b);
PolyForm operator*(const Rational& c, const PolyForm& a);
PolyForm operator*(const Polynomial& f, const PolyForm& a);

/// Term over all barycentric coordinates: c · t0^a0 ··· tn^an · dt_{i1} ∧ ... (any order, repeats allowed).
struct RawTerm {
    Rational coefficient;
    std::vector<unsigned> exponents;  // length n+1, index 0 is t0
    std::vector<int> differentials;   // indices in 0..n
};

PolyForm canonicalize(int dim, int degree, const std::vector<RawTerm>& terms);

PolyForm exterior_d(const PolyForm& w);
PolyForm wedge(const PolyForm& a, const PolyForm& b);

/// Affine map Δᵐ → Δⁿ in barycentric coordinates: target t_i = Σ_j M(i,j) s_j. M has n+1
/// rows and m+1 columns; columns must sum to 1 and entries must be nonnegative.
void check_barycentric(const RationalMatrix& m);
PolyForm pullback(const PolyForm& w, const RationalMatrix& m);
/// Matrix of the simplicial operator sending vertex k of Δᵐ to vertex f[k] of Δⁿ.
RationalMatrix vertex_map_matrix(int n, const std::vector<int>& f);
RationalMatrix face_matrix(int n, int i);        // d^i : Δ^{n-1} → Δ^n
RationalMatrix degeneracy_matrix(int n, int j);  // s^j : Δ^{n+1} → Δ^n
PolyForm pullback_face(const PolyForm& w, int i);

/// Exact integral of a top-degree form over Δⁿ with the (t1..tn) orientation.
Rational integrate(const PolyForm& w);

/// Terms "(c; a1,...,an; i1,...,ip)" separated by whitespace.
std::string to_text(const PolyForm& w);
PolyForm parse_form(int dim, int degree, const std::string& text);

// ---- form fields ------------------------------------------------------------

/// A p-form on every nondegenerate simplex of X (indexed like X.nondegenerate(n));
/// forms on degenerate simplices are pulled back along their surjection.
class FormField {
public:
    FormField(std::shared_ptr<const SimplicialSet> x, int degree);

    const SimplicialSet& space() const { return *x_; }
    std::shared_ptr<const SimplicialSet> space_ptr() const { return x_; }
    int degree() const { return degree_; }
    /// Form on the simplex (n, s); pulled back when s is degenerate.
    PolyForm on(int n, SimplexId s) const;
    const PolyForm& on_nondegenerate(int n, std::size_t position) const { return forms_[n][position]; }
    void set(int n, SimplexId s, PolyForm w);
    void set_nondegenerate(int n, std::size_t position, PolyForm w);
    std::size_t count(int n) const { return forms_[n].size(); }
    const std::vector<SimplexId>& basis(int n) const { return nondeg_[n]; }
    std::optional<std::size_t> position(int n, SimplexId s) const;
    friend bool operator==(const FormField& a, const FormField& b) { return a.degree_ == b.degree_ && a.forms_ == b.forms_; }

private:
    std::shared_ptr<const SimplicialSet> x_;
    int degree_;
    std::vector<std::vector<SimplexId>> nondeg_;
    std::vector<std::vector<PolyForm>> forms_;
};

/// First face incompatibility as "simplex, face index", if any.
std::optional<std::string> compatibility_failure(const FormField& w);
FormField exterior_d(const FormField& w);
FormField wedge(const FormField& a, const FormField& b);
FormField operator+(const FormField& a, const FormField& b);
FormField operator*(const Rational& c, const FormField& a);

/// Integrates over each nondegenerate p-simplex; throws IncompatibilityError for
/// incompatible fields.
Cochain derham_map(const FormField& w);
/// Whitney forms: the right inverse of derham_map on cochains.
FormField whitney(std::shared_ptr<const SimplicialSet> x, int degree, const Cochain& c);

struct DeRhamDegree {
    std::size_t forms = 0;       // dimension of compatible p-form fields
    std::size_t dimension = 0;   // de Rham cohomology
    std::size_t simplicial = 0;  // rational simplicial cohomology
    RationalMatrix comparison;   // induced map in canonical bases (simplicial × de Rham)
    bool isomorphism = false;
};

struct DeRhamCohomology {
    int polynomial_degree = 0;
    std::vector<DeRhamDegree> degrees;
    /// Dimensions agree with the computation at polynomial_degree + 1.
    bool stabilized = false;

    std::vector<std::size_t> dimensions() const;
};

/// Cohomology of compatible polynomial p-forms with coefficient degree ≤ D - p, computed
/// exactly, with the comparison map to simplicial cohomology.
DeRhamCohomology derham_cohomology(std::shared_ptr<const SimplicialSet> x, int max_poly_degree);

}  // namespace smoothset
