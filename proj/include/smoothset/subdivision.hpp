#pragma once

#include <map>
#include <string>
#include <vector>

#include "smoothset/rational.hpp"

namespace smoothset {

using Point = std::vector<Rational>;

/// Ordered affine simplex; vertices may coincide.
struct AffineSimplex {
    std::vector<Point> vertices;

    int dimension() const { return static_cast<int>(vertices.size()) - 1; }
    auto operator<=>(const AffineSimplex&) const = default;
};

/// Rational combination of affine simplices of one dimension. Zero terms are never stored.
class AffineChain {
public:
    AffineChain() = default;
    explicit AffineChain(AffineSimplex s, Rational c = 1);

    const std::map<AffineSimplex, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    /// Dimension of the terms; -1 for the zero chain.
    int dimension() const;

    void add(const AffineSimplex& s, const Rational& c);
    AffineChain& operator+=(const AffineChain& o);
    AffineChain& operator-=(const AffineChain& o);
    AffineChain& operator*=(const Rational& c);
    friend AffineChain operator+(AffineChain a, const AffineChain& b) { return a += b; }
    friend AffineChain operator-(AffineChain a, const AffineChain& b) { return a -= b; }
    friend AffineChain operator*(const Rational& c, AffineChain a) { return a *= c; }
    friend bool operator==(const AffineChain&, const AffineChain&) = default;

private:
    std::map<AffineSimplex, Rational> terms_;
};

Point barycenter(const AffineSimplex& s);
Rational diameter_squared(const AffineSimplex& s);

AffineChain boundary(const AffineChain& c);
/// Cone from apex b, with b prepended as vertex 0.
AffineChain cone(const Point& b, const AffineChain& c);
/// Sum of coefficients; meaningful in dimension 0.
Rational augmentation(const AffineChain& c);

/// Barycentric subdivision S(σ) = cone_{b(σ)}(S ∂σ), identity on points.
AffineChain subdivide(const AffineChain& c);
AffineChain subdivide(const AffineChain& c, int times);
/// Chain homotopy with ∂T + T∂ = S − id: T(σ) = −cone_{b(σ)}(σ + T ∂σ), zero on points.
AffineChain homotopy(const AffineChain& c);

/// Largest squared vertex distance over the simplices of S^m(σ).
Rational iterated_diameter(const AffineSimplex& s, int m);
/// The guaranteed bound (n/(n+1))^{2m} · diam²(σ).
Rational diameter_bound(const AffineSimplex& s, int m);

/// One term per line: "coefficient : (x,y,..) (x,y,..) ...".
std::string to_text(const AffineChain& c);
AffineChain parse_affine_chain(const std::string& text);

}  // namespace smoothset
