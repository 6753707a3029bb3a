#include "smoothset/connections.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "smoothset/errors.hpp"

namespace smoothset {

namespace {

RationalMatrix unit_matrix(int n, int i, int j) {
    RationalMatrix m(n, n);
    m(i, j) = 1;
    return m;
}

RationalMatrix difference(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

RationalVector flatten(const RationalMatrix& m) {
    RationalVector v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

void require_same_shape(const LieValuedForm& a, const LieValuedForm& b) {
    if (a.size != b.size || a.dim != b.dim) throw ParameterError("matrix forms of different shapes");
}

/// Embeds a form on the face s_m = 0 of Δⁿ into the chart of Δⁿ, renaming coordinates.
PolyForm lift_from_hyperplane(const PolyForm& w, int m, int n) {
    auto target = [m](int l) { return l < m ? l : l + 1; };
    PolyForm out(n, w.degree);
    for (const auto& [mask, f] : w.terms) {
        IndexMask lifted = 0;
        for (int l : mask_indices(mask)) lifted |= IndexMask{1} << (target(l) - 1);
        Polynomial g(n);
        for (const auto& [e, c] : f.terms()) {
            Exponent x(n, 0);
            for (std::size_t l = 0; l < e.size(); ++l) x[target(static_cast<int>(l) + 1) - 1] = e[l];
            g.add_term(x, c);
        }
        out.add(lifted, g);
    }
    return out;
}

}  // namespace

// ---- Lie algebras -------------------------------------------------------------

MatrixLieAlgebra MatrixLieAlgebra::abelian() { return {"u1", 1, false, {unit_matrix(1, 0, 0)}}; }

MatrixLieAlgebra MatrixLieAlgebra::sl2() {
    RationalMatrix h(2, 2);
    h(0, 0) = 1;
    h(1, 1) = -1;
    return {"sl2", 2, true, {unit_matrix(2, 0, 1), unit_matrix(2, 1, 0), h}};
}

MatrixLieAlgebra MatrixLieAlgebra::gl(int n) {
    if (n < 1) throw ParameterError("gl(n) needs n >= 1");
    MatrixLieAlgebra g{"gl" + std::to_string(n), n, false, {}};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.basis.push_back(unit_matrix(n, i, j));
    return g;
}

RationalMatrix bracket(const RationalMatrix& a, const RationalMatrix& b) { return difference(a * b, b * a); }

std::vector<std::string> lie_algebra_failures(const MatrixLieAlgebra& g) {
    std::vector<std::string> out;
    RationalMatrix span;
    for (const auto& b : g.basis) span.append_row(flatten(b));
    const std::size_t r = rank(span);
    const std::size_t n = g.basis.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& x = g.basis[i];
            const auto& y = g.basis[j];
            RationalMatrix sum = bracket(x, y);
            const RationalMatrix yx = bracket(y, x);
            for (std::size_t a = 0; a < sum.rows(); ++a)
                for (std::size_t b = 0; b < sum.cols(); ++b) sum(a, b) += yx(a, b);
            if (!sum.is_zero()) out.push_back("antisymmetry fails on basis " + std::to_string(i) + "," + std::to_string(j));
            RationalMatrix closed = span;
            closed.append_row(flatten(bracket(x, y)));
            if (rank(closed) != r) out.push_back("bracket of basis " + std::to_string(i) + "," + std::to_string(j) + " leaves the algebra");
            for (std::size_t k = 0; k < n; ++k) {
                const auto& z = g.basis[k];
                RationalMatrix jac = bracket(x, bracket(y, z));
                const RationalMatrix t2 = bracket(y, bracket(z, x));
                const RationalMatrix t3 = bracket(z, bracket(x, y));
                for (std::size_t a = 0; a < jac.rows(); ++a)
                    for (std::size_t b = 0; b < jac.cols(); ++b) jac(a, b) += t2(a, b) + t3(a, b);
                if (!jac.is_zero())
                    out.push_back("Jacobi fails on basis " + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k));
            }
        }
    return out;
}

// ---- matrix forms -------------------------------------------------------------

LieValuedForm::LieValuedForm(int size_, int dim_, int degree_)
    : size(size_), dim(dim_), degree(degree_), entries(static_cast<std::size_t>(size_ * size_), PolyForm(dim_, degree_)) {
    if (size_ < 1) throw ParameterError("matrix forms need size >= 1");
}

LieValuedForm LieValuedForm::constant(const RationalMatrix& m, const PolyForm& w) {
    if (m.rows() != m.cols()) throw ParameterError("matrix must be square");
    LieValuedForm out(static_cast<int>(m.rows()), w.dim, w.degree);
    for (int i = 0; i < out.size; ++i)
        for (int j = 0; j < out.size; ++j)
            if (m(i, j) != 0) out.at(i, j) = m(i, j) * w;
    return out;
}

bool LieValuedForm::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const PolyForm& w) { return w.is_zero(); });
}

LieValuedForm operator+(const LieValuedForm& a, const LieValuedForm& b) {
    require_same_shape(a, b);
    LieValuedForm out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] = a.entries[i] + b.entries[i];
    return out;
}

LieValuedForm operator-(const LieValuedForm& a, const LieValuedForm& b) {
    require_same_shape(a, b);
    LieValuedForm out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] = a.entries[i] - b.entries[i];
    return out;
}

LieValuedForm exterior_d(const LieValuedForm& a) {
    LieValuedForm out(a.size, a.dim, a.degree + 1);
    for (std::size_t i = 0; i < a.entries.size(); ++i) out.entries[i] = exterior_d(a.entries[i]);
    return out;
}

LieValuedForm wedge(const LieValuedForm& a, const LieValuedForm& b) {
    require_same_shape(a, b);
    LieValuedForm out(a.size, a.dim, a.degree + b.degree);
    for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < a.size; ++j)
            for (int k = 0; k < a.size; ++k) out.at(i, j) = out.at(i, j) + wedge(a.at(i, k), b.at(k, j));
    return out;
}

LieValuedForm pullback(const LieValuedForm& a, const RationalMatrix& m) {
    LieValuedForm out(a.size, static_cast<int>(m.cols()) - 1, a.degree);
    for (std::size_t i = 0; i < a.entries.size(); ++i) out.entries[i] = pullback(a.entries[i], m);
    return out;
}

LieValuedForm pullback_face(const LieValuedForm& a, int i) { return pullback(a, face_matrix(a.dim, i)); }

PolyForm trace(const LieValuedForm& a) {
    PolyForm out(a.dim, a.degree);
    for (int i = 0; i < a.size; ++i) out = out + a.at(i, i);
    return out;
}

bool in_algebra(const MatrixLieAlgebra& g, const LieValuedForm& a) {
    if (a.size != g.size) return false;
    return !g.traceless || trace(a).is_zero();
}

LieValuedForm curvature(const LieValuedForm& connection) {
    if (connection.degree != 1) throw ParameterError("a connection is a 1-form");
    return exterior_d(connection) + wedge(connection, connection);
}

LieValuedForm bianchi_defect(const LieValuedForm& connection) {
    const LieValuedForm f = curvature(connection);
    return exterior_d(f) - (wedge(f, connection) - wedge(connection, f));
}

PolyForm chern_weil_form(const LieValuedForm& curvature, int k) {
    if (curvature.degree != 2) throw ParameterError("curvature is a 2-form");
    if (k < 1) throw ParameterError("Chern-Weil power must be positive");
    if (2 * k > curvature.dim) return PolyForm(curvature.dim, 2 * k);
    LieValuedForm power = curvature;
    for (int i = 1; i < k; ++i) power = wedge(power, curvature);
    return trace(power);
}

// ---- extension across faces ---------------------------------------------------

PolyForm restrict_to_hyperplane(const PolyForm& w, int i) {
    if (i < 1 || i > w.dim) throw ParameterError("hyperplane index out of range");
    const IndexMask bit = IndexMask{1} << (i - 1);
    PolyForm out(w.dim, w.degree);
    for (const auto& [mask, f] : w.terms) {
        if (mask & bit) continue;
        Polynomial g(w.dim);
        for (const auto& [e, c] : f.terms())
            if (e[i - 1] == 0) g.add_term(e, c);
        out.add(mask, g);
    }
    return out;
}

FaceExtension face_extend(int dim, int degree, const std::vector<std::optional<PolyForm>>& data) {
    if (dim < 1) throw ParameterError("extension needs a positive dimension");
    if (static_cast<int>(data.size()) != dim) throw ParameterError("one datum slot per coordinate hyperplane");
    for (const auto& d : data)
        if (d && (d->dim != dim || d->degree != degree)) throw ParameterError("face datum has the wrong dimension or degree");

    std::vector<std::optional<PolyForm>> residual(dim);
    for (int i = 1; i <= dim; ++i)
        if (data[i - 1]) residual[i - 1] = restrict_to_hyperplane(*data[i - 1], i);
    for (int i = 1; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j) {
            if (!residual[i - 1] || !residual[j - 1]) continue;
            if (restrict_to_hyperplane(*residual[i - 1], j) != restrict_to_hyperplane(*residual[j - 1], i))
                throw IncompatibilityError("face data disagree",
                                           "faces " + std::to_string(i) + " and " + std::to_string(j) + " differ on their intersection");
        }

    FaceExtension out{PolyForm(dim, degree), 0};
    for (int i = dim; i >= 1; --i) {
        if (!residual[i - 1]) continue;
        const PolyForm ext = restrict_to_hyperplane(*residual[i - 1], i);
        out.form = out.form + ext;
        ++out.steps;
        for (int j = 1; j < i; ++j)
            if (residual[j - 1]) residual[j - 1] = restrict_to_hyperplane(*residual[j - 1] - ext, j);
    }
    for (int i = 1; i <= dim; ++i)
        if (data[i - 1] && restrict_to_hyperplane(out.form, i) != restrict_to_hyperplane(*data[i - 1], i))
            throw std::logic_error("face extension does not restrict to its data");
    return out;
}

namespace {

void check_horn_data(int n, int k, const std::vector<LieValuedForm>& faces) {
    if (n < 1 || k < 0 || k > n) throw ParameterError("horn index out of range");
    if (static_cast<int>(faces.size()) != n + 1) throw ParameterError("horn data need n+1 slots");
    const int size = faces[k == 0 ? 1 : 0].size;
    const int degree = faces[k == 0 ? 1 : 0].degree;
    for (int i = 0; i <= n; ++i) {
        if (i == k) continue;
        if (faces[i].dim != n - 1 || faces[i].size != size || faces[i].degree != degree)
            throw ParameterError("face " + std::to_string(i) + " has the wrong shape");
    }
}

}  // namespace

std::optional<std::pair<int, int>> horn_incompatibility(int n, int k, const std::vector<LieValuedForm>& faces) {
    check_horn_data(n, k, faces);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (i == k || j == k) continue;
            if (pullback_face(faces[j], i) != pullback_face(faces[i], j - 1)) return std::pair{i, j};
        }
    return std::nullopt;
}

LieValuedForm horn_connection_fill(int n, int k, const std::vector<LieValuedForm>& faces) {
    if (auto bad = horn_incompatibility(n, k, faces))
        throw IncompatibilityError("horn data disagree", "faces " + std::to_string(bad->first) + " and " +
                                                             std::to_string(bad->second) + " differ on their intersection");
    const LieValuedForm& sample = faces[k == 0 ? 1 : 0];
    const int size = sample.size;
    const int degree = sample.degree;

    // Chart with vertex k first: every present face becomes a coordinate hyperplane.
    std::vector<int> order{k};
    for (int j = 0; j <= n; ++j)
        if (j != k) order.push_back(j);
    std::vector<int> position(n + 1);
    for (int q = 0; q <= n; ++q) position[order[q]] = q;

    std::vector<std::vector<std::optional<PolyForm>>> data(static_cast<std::size_t>(size * size),
                                                          std::vector<std::optional<PolyForm>>(n));
    for (int i = 0; i <= n; ++i) {
        if (i == k) continue;
        const int m = position[i];
        std::vector<int> sorted;
        for (int v = 0; v <= n; ++v)
            if (v != i) sorted.push_back(v);
        std::vector<int> rho;
        for (int q = 0; q <= n; ++q)
            if (q != m) rho.push_back(static_cast<int>(std::find(sorted.begin(), sorted.end(), order[q]) - sorted.begin()));
        const LieValuedForm on_face = pullback(faces[i], vertex_map_matrix(n - 1, rho));
        for (std::size_t e = 0; e < on_face.entries.size(); ++e)
            data[e][m - 1] = lift_from_hyperplane(on_face.entries[e], m, n);
    }

    LieValuedForm chart(size, n, degree);
    for (std::size_t e = 0; e < chart.entries.size(); ++e) chart.entries[e] = face_extend(n, degree, data[e]).form;
    LieValuedForm out = pullback(chart, vertex_map_matrix(n, position));
    for (int i = 0; i <= n; ++i)
        if (i != k && pullback_face(out, i) != faces[i]) throw std::logic_error("horn filler does not restrict to its faces");
    return out;
}

// ---- abelian Chern numbers ----------------------------------------------------

namespace {

struct EdgeIncidence {
    int triangle;
    int face;
};

std::string edge_name(const std::array<int, 2>& e) { return std::to_string(e[0]) + "-" + std::to_string(e[1]); }

}  // namespace

U1ChernResult u1_chern_number(const U1BundleData& b) {
    std::map<std::array<int, 2>, std::vector<EdgeIncidence>> edges;
    for (std::size_t t = 0; t < b.triangles.size(); ++t) {
        const auto& tri = b.triangles[t];
        if (!(tri.vertices[0] < tri.vertices[1] && tri.vertices[1] < tri.vertices[2]))
            throw StructuralError("triangle vertices must be strictly increasing");
        if (tri.orientation != 1 && tri.orientation != -1) throw StructuralError("orientation must be +1 or -1");
        if (tri.connection.dim != 2 || tri.connection.degree != 1) throw StructuralError("connection must be a 1-form on a triangle");
        for (int i = 0; i < 3; ++i) {
            std::array<int, 2> e{};
            for (int j = 0, c = 0; j < 3; ++j)
                if (j != i) e[c++] = tri.vertices[j];
            edges[e].push_back({static_cast<int>(t), i});
        }
    }
    auto sign = [&](const EdgeIncidence& inc) { return b.triangles[inc.triangle].orientation * (inc.face % 2 ? -1 : 1); };
    for (const auto& [e, incs] : edges) {
        if (incs.size() != 2) throw StructuralError("edge " + edge_name(e) + " is not shared by exactly two triangles");
        if (sign(incs[0]) != -sign(incs[1])) throw StructuralError("orientations disagree across edge " + edge_name(e));
    }

    std::map<std::array<int, 2>, int> seen;
    std::map<int, Rational> winding;
    for (const auto& tr : b.transitions) {
        auto it = edges.find(tr.edge);
        if (it == edges.end()) throw StructuralError("transition on unknown edge " + edge_name(tr.edge));
        if (seen[tr.edge]++) throw StructuralError("two transitions on edge " + edge_name(tr.edge));
        const auto& incs = it->second;
        const bool forward = incs[0].triangle == tr.from && incs[1].triangle == tr.to;
        const bool backward = incs[1].triangle == tr.from && incs[0].triangle == tr.to;
        if (!forward && !backward) throw StructuralError("transition on edge " + edge_name(tr.edge) + " names the wrong triangles");
        if (!tr.potential.is_zero() && tr.potential.variables() != 1) throw StructuralError("potential must be a function on an edge");
        const EdgeIncidence from = forward ? incs[0] : incs[1];
        const EdgeIncidence to = forward ? incs[1] : incs[0];

        const PolyForm jump = pullback_face(b.triangles[to.triangle].connection, to.face) -
                              pullback_face(b.triangles[from.triangle].connection, from.face);
        const Polynomial potential = tr.potential.is_zero() ? Polynomial(1) : tr.potential;
        if (jump != exterior_d(PolyForm::function(1, potential)))
            throw IncompatibilityError("transition does not relate the connections", "edge " + edge_name(tr.edge));

        const int eps = sign(from);
        winding[tr.edge[0]] += eps * (potential.evaluate(std::vector<Rational>{0}) + tr.winding);
        winding[tr.edge[1]] -= eps * (potential.evaluate(std::vector<Rational>{1}) + tr.winding);
    }
    for (const auto& [e, incs] : edges)
        if (!seen.count(e)) throw StructuralError("edge " + edge_name(e) + " has no transition");

    U1ChernResult out;
    for (const auto& tri : b.triangles) out.degree += tri.orientation * integrate(exterior_d(tri.connection));
    out.integral = true;
    for (auto& [v, n] : winding) {
        n.canonicalize();
        out.vertex_windings.emplace_back(v, n);
        out.winding_total += n;
        if (n.get_den() != 1) out.integral = false;
    }
    return out;
}

U1BundleData reverse_orientation(const U1BundleData& b) {
    U1BundleData out = b;
    for (auto& tri : out.triangles) tri.orientation = -tri.orientation;
    return out;
}

U1BundleData disjoint_union(const U1BundleData& a, const U1BundleData& b) {
    int offset = 0;
    for (const auto& tri : a.triangles) offset = std::max(offset, tri.vertices[2] + 1);
    const int shift = static_cast<int>(a.triangles.size());
    U1BundleData out = a;
    for (auto tri : b.triangles) {
        for (int& v : tri.vertices) v += offset;
        out.triangles.push_back(tri);
    }
    for (auto tr : b.transitions) {
        tr.edge[0] += offset;
        tr.edge[1] += offset;
        tr.from += shift;
        tr.to += shift;
        out.transitions.push_back(tr);
    }
    return out;
}

U1BundleData trivial_u1_bundle() {
    U1BundleData b;
    // Boundary orientation of Δ³: face d_i carries sign (-1)^i.
    b.triangles = {{{1, 2, 3}, 1, PolyForm(2, 1)},
                   {{0, 2, 3}, -1, PolyForm(2, 1)},
                   {{0, 1, 3}, 1, PolyForm(2, 1)},
                   {{0, 1, 2}, -1, PolyForm(2, 1)}};
    for (int a = 0; a < 4; ++a)
        for (int c = a + 1; c < 4; ++c) {
            std::vector<int> on;
            for (int t = 0; t < 4; ++t) {
                const auto& v = b.triangles[t].vertices;
                if (std::count(v.begin(), v.end(), a) && std::count(v.begin(), v.end(), c)) on.push_back(t);
            }
            b.transitions.push_back({{a, c}, on[0], on[1], Polynomial(1), 0});
        }
    return b;
}

U1BundleData unit_u1_bundle() {
    U1BundleData b = trivial_u1_bundle();
    // A = 2 t1 dt2 on [123]: ∫ dA = 1, absorbed across [23] by the gauge change -2s + s².
    b.triangles[0].connection = Polynomial::constant(2, 2) * Polynomial::coordinate(2, 1) * PolyForm::differential(2, 2);
    for (auto& tr : b.transitions)
        if (tr.edge == std::array<int, 2>{2, 3}) {
            Polynomial p = Rational(-2) * Polynomial::coordinate(1, 1) + Polynomial::coordinate(1, 1).pow(2);
            tr.potential = tr.from == 0 ? p : -p;
        }
    return b;
}

// ---- extra degeneracy on connection forms -------------------------------------

double bump_factor(double t0) {
    if (t0 >= 0.5) return 0.0;
    const double x = 0.5 - t0;
    return std::exp(4.0 - 1.0 / (x * x));
}

std::vector<std::vector<double>> evaluate(const LieValuedForm& w, const std::vector<double>& barycentric) {
    if (w.degree != 1) throw ParameterError("numeric evaluation handles 1-forms");
    if (static_cast<int>(barycentric.size()) != w.dim + 1) throw ParameterError("point has the wrong length");
    const std::vector<double> chart(barycentric.begin() + 1, barycentric.end());
    std::vector<std::vector<double>> out(w.dim, std::vector<double>(w.entries.size(), 0.0));
    for (int i = 1; i <= w.dim; ++i)
        for (std::size_t e = 0; e < w.entries.size(); ++e)
            out[i - 1][e] = w.entries[e].coefficient(IndexMask{1} << (i - 1)).evaluate(chart);
    return out;
}

std::vector<std::vector<double>> extra_degeneracy_s(const LieValuedForm& w, const std::vector<double>& barycentric) {
    const int n = w.dim;
    if (static_cast<int>(barycentric.size()) != n + 2) throw ParameterError("point has the wrong length");
    double total = 0;
    for (double t : barycentric) {
        if (!(t >= -1e-12)) throw DomainError("point lies outside the simplex");
        total += t;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("barycentric coordinates must sum to 1");
    const double t0 = barycentric[0];
    if (t0 >= 1.0) throw DomainError("s_-1 is undefined at the vertex t0 = 1");

    std::vector<std::vector<double>> out(n + 1, std::vector<double>(w.entries.size(), 0.0));
    const double bump = bump_factor(t0);
    if (bump == 0.0) return out;
    const double scale = 1.0 / (1.0 - t0);
    std::vector<double> image;
    for (int j = 1; j <= n + 1; ++j) image.push_back(barycentric[j] * scale);
    const auto a = evaluate(w, image);
    // f*du_j = dt_{j+1}/(1-t0) + t_{j+1}/(1-t0)² dt0, with dt0 = -Σ dt_i.
    for (int i = 1; i <= n + 1; ++i)
        for (std::size_t e = 0; e < w.entries.size(); ++e) {
            double c = 0;
            for (int j = 1; j <= n; ++j) c += a[j - 1][e] * ((i == j + 1 ? scale : 0.0) - barycentric[j + 1] * scale * scale);
            out[i - 1][e] = bump * c;
        }
    return out;
}

double face_zero_defect(const LieValuedForm& w, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> draw(1.0);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> u(w.dim + 1);
        double sum = 0;
        for (double& x : u) sum += (x = draw(rng));
        for (double& x : u) x /= sum;
        std::vector<double> point{0.0};
        point.insert(point.end(), u.begin(), u.end());
        const auto c = extra_degeneracy_s(w, point);
        const auto expected = evaluate(w, u);
        // Along d^0 the chart coordinates are t_2..t_{n+1}, and dt_1 = -Σ dv_j.
        for (int j = 1; j <= w.dim; ++j)
            for (std::size_t e = 0; e < w.entries.size(); ++e)
                worst = std::max(worst, std::abs(c[j][e] - c[0][e] - expected[j - 1][e]));
    }
    return worst;
}

}  // namespace smoothset
