#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smoothset/forms.hpp"

namespace smoothset {

/// Matrix Lie algebra with a rational basis; the bracket is the commutator.
struct MatrixLieAlgebra {
    std::string name;
    int size = 1;
    bool traceless = false;
    std::vector<RationalMatrix> basis;

    static MatrixLieAlgebra abelian();
    static MatrixLieAlgebra sl2();
    static MatrixLieAlgebra gl(int n);
};

RationalMatrix bracket(const RationalMatrix& a, const RationalMatrix& b);
/// Antisymmetry and Jacobi failures on basis triples.
std::vector<std::string> lie_algebra_failures(const MatrixLieAlgebra& g);

/// Square matrix of p-forms on Δⁿ.
struct LieValuedForm {
    int size = 1;
    int dim = 0;
    int degree = 0;
    std::vector<PolyForm> entries;  // row-major

    LieValuedForm() = default;
    LieValuedForm(int size, int dim, int degree);
    /// matrix · w for a constant matrix.
    static LieValuedForm constant(const RationalMatrix& m, const PolyForm& w);

    PolyForm& at(int i, int j) { return entries[i * size + j]; }
    const PolyForm& at(int i, int j) const { return entries[i * size + j]; }
    bool is_zero() const;
    friend bool operator==(const LieValuedForm&, const LieValuedForm&) = default;
};

LieValuedForm operator+(const LieValuedForm& a, const LieValuedForm& b);
LieValuedForm operator-(const LieValuedForm& a, const LieValuedForm& b);
LieValuedForm exterior_d(const LieValuedForm& a);
/// (A ∧ B)_ij = Σ_k A_ik ∧ B_kj.
LieValuedForm wedge(const LieValuedForm& a, const LieValuedForm& b);
LieValuedForm pullback(const LieValuedForm& a, const RationalMatrix& m);
LieValuedForm pullback_face(const LieValuedForm& a, int i);
PolyForm trace(const LieValuedForm& a);
bool in_algebra(const MatrixLieAlgebra& g, const LieValuedForm& a);

LieValuedForm curvature(const LieValuedForm& connection);
/// dF - (F∧A - A∧F); zero for every connection.
LieValuedForm bianchi_defect(const LieValuedForm& connection);
/// tr(F^k), the zero form of degree 2k when 2k exceeds the dimension.
PolyForm chern_weil_form(const LieValuedForm& curvature, int k);

// ---- extension across faces ---------------------------------------------------

/// Restriction to the coordinate hyperplane t_i = 0 (1 ≤ i ≤ n), kept as a form in all n
/// chart coordinates: t_i is set to 0 and terms with dt_i are dropped.
PolyForm restrict_to_hyperplane(const PolyForm& w, int i);

struct FaceExtension {
    PolyForm form;
    int steps = 0;  // one per face datum
};

/// Given data on some of the hyperplanes t_i = 0 (data[i-1], i = 1..n) that agree on
/// pairwise intersections, builds a form restricting to each datum: faces are processed
/// from the last, each extended constantly in its own coordinate and subtracted from the
/// rest. Throws IncompatibilityError naming the disagreeing faces.
FaceExtension face_extend(int dim, int degree, const std::vector<std::optional<PolyForm>>& data);

/// Connection forms ω_i on the faces d_i Δⁿ (i ≠ k; faces[k] is ignored) that agree on
/// intersections, filled to a connection on Δⁿ restricting to every ω_i.
LieValuedForm horn_connection_fill(int n, int k, const std::vector<LieValuedForm>& faces);
/// First pair of faces (i, j) whose data disagree on the common face.
std::optional<std::pair<int, int>> horn_incompatibility(int n, int k, const std::vector<LieValuedForm>& faces);

// ---- abelian Chern numbers ----------------------------------------------------

/// Triangle of a closed oriented surface; vertices in increasing label order and the
/// connection in units of the formal unit τ = 2π.
struct U1Triangle {
    std::array<int, 3> vertices{};
    int orientation = 1;
    PolyForm connection{2, 1};
};

/// Gauge transition across a shared edge: A_to = A_from + d(potential) on the edge
/// (chart coordinate = weight of the edge's second vertex). `winding` is the integer
/// part of the logarithm of the circle-valued transition.
struct U1Transition {
    std::array<int, 2> edge{};
    int from = 0;
    int to = 0;
    Polynomial potential{1};
    long winding = 0;
};

struct U1BundleData {
    std::vector<U1Triangle> triangles;
    std::vector<U1Transition> transitions;
};

struct U1ChernResult {
    Rational degree;         // Σ_σ orientation(σ) ∫ dA_σ, in units of τ
    Rational winding_total;  // Σ over vertices of the transition jumps
    std::vector<std::pair<int, Rational>> vertex_windings;
    bool integral = false;
};

/// Throws StructuralError for a surface that is not closed and consistently oriented,
/// and IncompatibilityError for a transition that does not relate its two connections.
U1ChernResult u1_chern_number(const U1BundleData& b);
U1BundleData reverse_orientation(const U1BundleData& b);
U1BundleData disjoint_union(const U1BundleData& a, const U1BundleData& b);
/// Trivial data on the boundary of the 3-simplex.
U1BundleData trivial_u1_bundle();
/// Degree-one data on the boundary of the 3-simplex: a single unit winding around vertex 3.
U1BundleData unit_u1_bundle();

// ---- extra degeneracy on connection forms (numeric) --------------------------

/// e⁴·exp(-(1/2 - t0)^-2) for t0 < 1/2 and exactly 0 otherwise.
double bump_factor(double t0);
/// Chart components (along dt_1..dt_n) of a matrix form at a barycentric point; entry r*r
/// row-major per component.
std::vector<std::vector<double>> evaluate(const LieValuedForm& w, const std::vector<double>& barycentric);
/// s₋₁(w) on Δⁿ⁺¹ at a barycentric point: bump · f*(w) with f(t) = (t1, …, t_{n+1})/(1 - t0).
/// Throws DomainError at t0 = 1.
std::vector<std::vector<double>> extra_degeneracy_s(const LieValuedForm& w, const std::vector<double>& barycentric);
/// Largest deviation of d0∘s₋₁(w) from w over random sample points.
double face_zero_defect(const LieValuedForm& w, int samples, std::uint64_t seed);

}  // namespace smoothset
