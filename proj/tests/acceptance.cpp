// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "smoothset/cli.hpp"
#include "smoothset/connections.hpp"
#include "smoothset/errors.hpp"
#include "smoothset/forms.hpp"
#include "smoothset/homology.hpp"
#include "smoothset/io.hpp"
#include "smoothset/kan.hpp"
#include "smoothset/report.hpp"
#include "smoothset/sheaf.hpp"
#include "smoothset/subdivision.hpp"

using namespace smoothset;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures = SMOOTHSET_FIXTURES;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

// ---- independent Smith normal form over int64 -----------------------------------

using Dense = std::vector<std::vector<long long>>;

Dense dense_from_triplets(const std::string& text) {
    std::istringstream in(text);
    std::size_t rows = 0, cols = 0, nnz = 0;
    in >> rows >> cols >> nnz;
    Dense m(rows, std::vector<long long>(cols, 0));
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t i = 0, j = 0;
        std::string v;
        in >> i >> j >> v;
        m.at(i).at(j) = std::stoll(v);
    }
    return m;
}

long long checked_mul_sub(long long a, long long q, long long b) {
    long long p = 0, r = 0;
    if (__builtin_mul_overflow(q, b, &p) || __builtin_sub_overflow(a, p, &r)) throw std::overflow_error("int64 overflow in oracle");
    return r;
}

/// Diagonal of the Smith normal form (nonzero entries only).
std::vector<long long> smith_diagonal(Dense m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<long long> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (pi == rows || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) pi = i, pj = j;
            if (pi == rows) return diag;
            std::swap(m[t], m[pi]);
            for (auto& row : m) std::swap(row[t], row[pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                const long long q = m[i][t] / m[t][t];
                for (std::size_t j = t; j < cols; ++j) m[i][j] = checked_mul_sub(m[i][j], q, m[t][j]);
                clean = clean && m[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                const long long q = m[t][j] / m[t][t];
                for (std::size_t i = t; i < rows; ++i) m[i][j] = checked_mul_sub(m[i][j], q, m[i][t]);
                clean = clean && m[t][j] == 0;
            }
            if (!clean) continue;
            // Divisibility: fold an offending row into the pivot row and repeat.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t j = t; j < cols; ++j) m[t][j] += m[bad][j];
        }
        diag.push_back(std::llabs(m[t][t]));
    }
    return diag;
}

struct OracleHomology {
    std::vector<std::size_t> betti;
    std::vector<std::vector<long long>> torsion;
};

OracleHomology oracle_homology(const ChainComplex& c) {
    const int top = c.top_degree;
    std::vector<std::vector<long long>> diag(top + 2);
    for (int n = 1; n <= top + 1 && n < static_cast<int>(c.boundary.size()); ++n)
        diag[n] = smith_diagonal(dense_from_triplets(write_triplets(c.boundary[n])));
    OracleHomology h;
    for (int n = 0; n <= top; ++n) {
        h.betti.push_back(c.rank(n) - diag[n].size() - diag[n + 1].size());
        std::vector<long long> t;
        for (long long d : diag[n + 1])
            if (d > 1) t.push_back(d);
        h.torsion.push_back(t);
    }
    return h;
}

// ---- criteria -------------------------------------------------------------------

Outcome criterion_homology() {
    Outcome o;
    struct Case {
        const char* file;
        std::vector<std::size_t> betti;
        std::vector<std::vector<long long>> torsion;
    };
    const std::vector<Case> cases{{"boundary3.sset", {1, 0, 1}, {{}, {}, {}}},
                                  {"torus.sset", {1, 2, 1}, {{}, {}, {}}},
                                  {"rp2.sset", {1, 0, 0}, {{}, {2}, {}}}};
    std::ostringstream detail;
    for (const auto& c : cases) {
        const auto start = Clock::now();
        const auto x = load_simplicial_set(fixtures / c.file);
        const auto cc = chain_complex(x, Ring::integers);
        const auto h = homology(cc);
        const double elapsed = seconds_since(start);
        const auto oracle = oracle_homology(cc);
        std::vector<std::vector<long long>> tors;
        for (const auto& t : h.torsion) {
            std::vector<long long> v;
            for (const auto& z : t) v.push_back(z.get_si());
            tors.push_back(v);
        }
        o.require(h.betti == c.betti, std::string(c.file) + ": betti numbers differ from the expected values");
        o.require(tors == c.torsion, std::string(c.file) + ": torsion differs from the expected values");
        o.require(oracle.betti == h.betti && oracle.torsion == tors, std::string(c.file) + ": oracle disagrees");
        o.require(elapsed < 1.0, std::string(c.file) + ": slower than 1 s");
        detail << c.file << " " << std::fixed << std::setprecision(3) << elapsed << "s; ";
    }
    if (o.pass) o.detail = detail.str() + "oracle SNF agrees";
    return o;
}

AffineSimplex random_simplex(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
    AffineSimplex s;
    for (int i = 0; i <= n; ++i) {
        Point p;
        for (int k = 0; k < n; ++k) {
            Rational q(num(rng), den(rng));
            q.canonicalize();
            p.push_back(q);
        }
        s.vertices.push_back(std::move(p));
    }
    return s;
}

Outcome criterion_subdivision() {
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 rng(2024);
    for (int n = 1; n <= 4; ++n)
        for (int t = 0; t < 100; ++t) {
            const AffineChain c(random_simplex(rng, n));
            const AffineChain s = subdivide(c);
            o.require(boundary(s) == subdivide(boundary(c)), "boundary does not commute with S in dim " + std::to_string(n));
            o.require(boundary(homotopy(c)) + homotopy(boundary(c)) == s - c, "chain homotopy fails in dim " + std::to_string(n));
        }
    for (int n = 1; n <= 3; ++n)
        for (int t = 0; t < 20; ++t) {
            const auto s = random_simplex(rng, n);
            // diam(Sσ) ≤ n/(n+1)·diam(σ), compared on squares.
            const Rational ratio(n, n + 1);
            o.require(iterated_diameter(s, 1) <= ratio * ratio * diameter_squared(s),
                      "diameter contraction fails in dim " + std::to_string(n));
        }
    const double elapsed = seconds_since(start);
    o.require(elapsed < 10.0, "slower than 10 s");
    if (o.pass) {
        std::ostringstream d;
        d << "400 simplices, both identities exact; contraction on 60; " << std::fixed << std::setprecision(2) << elapsed << "s";
        o.detail = d.str();
    }
    return o;
}

Outcome criterion_mayer_vietoris() {
    Outcome o;
    auto circle = std::make_shared<const SimplicialSet>(load_simplicial_set(fixtures / "circle.sset"));
    auto sphere = std::make_shared<const SimplicialSet>(load_simplicial_set(fixtures / "boundary3.sset"));
    struct Case {
        std::string name;
        std::shared_ptr<const SimplicialSet> x;
        SubSet a, b;
        std::vector<std::size_t> connecting;
    };
    const std::vector<std::string> arc{"01", "12"}, chord{"02"}, star{"012", "013", "023"}, opposite{"123"};
    const std::vector<Case> cases{
        {"circle", circle, closure_of_names(*circle, arc), closure_of_names(*circle, chord), {1}},
        {"sphere star cover", sphere, closure_of_names(*sphere, star), closure_of_names(*sphere, opposite), {0, 1}},
        {"sphere trivial cover", sphere, full_subset(*sphere), full_subset(*sphere), {0, 0}},
    };
    std::ostringstream detail;
    for (const auto& c : cases) {
        const auto start = Clock::now();
        const auto seq = mayer_vietoris(c.x, c.a, c.b);
        const double elapsed = seconds_since(start);
        o.require(seq.all_exact(), c.name + ": not exact at some node");
        o.require(seq.connecting_ranks == c.connecting, c.name + ": unexpected connecting ranks");
        o.require(elapsed < 1.0, c.name + ": slower than 1 s");
        detail << c.name << " exact at " << seq.nodes.size() << " nodes; ";
    }
    if (o.pass) o.detail = detail.str() + "circle connecting rank 1";
    return o;
}

Outcome criterion_sheafification() {
    Outcome o;
    const auto start = Clock::now();
    std::size_t presheaves = 0, maps = 0;
    for (const char* file : {"two_edges.site", "circle.site"}) {
        const auto site = load_site(fixtures / file);
        std::vector<Sheafification> results;
        std::vector<const Presheaf*> sheaves;
        for (const auto& p : site.presheaves) results.push_back(sheafify(p.presheaf));
        for (std::size_t i = 0; i < site.presheaves.size(); ++i) {
            if (check_status(site.presheaves[i].presheaf).sheaf) sheaves.push_back(&site.presheaves[i].presheaf);
            sheaves.push_back(&results[i].result);
        }
        for (std::size_t i = 0; i < site.presheaves.size(); ++i) {
            const auto& f = site.presheaves[i].presheaf;
            const auto& s = results[i];
            ++presheaves;
            o.require(check_status(s.result).sheaf, site.presheaves[i].name + ": sheafification is not a sheaf");
            o.require(is_natural(f, s.result, s.unit), site.presheaves[i].name + ": unit is not natural");
            for (const Presheaf* g : sheaves)
                for (const auto& phi : natural_transformations(f, *g)) {
                    ++maps;
                    o.require(count_factorizations(f, s.result, s.unit, *g, phi) == 1,
                              site.presheaves[i].name + ": factorization is not unique");
                }
        }
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < 5.0, "slower than 5 s");
    if (o.pass) {
        std::ostringstream d;
        d << presheaves << " presheaves, " << maps << " maps into corpus sheaves each factor uniquely; " << std::fixed
          << std::setprecision(2) << elapsed << "s";
        o.detail = d.str();
    }
    return o;
}

Outcome criterion_derham() {
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> coef(-4, 4);
    int stokes = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 4;
        PolyForm w(n, n - 1);
        for (IndexMask m : masks_of_degree(n, n - 1)) {
            Polynomial f(n);
            for (const auto& e : monomials(n, 3)) f.add_term(e, coef(rng));
            w.add(m, f);
        }
        Rational faces = 0;
        for (int i = 0; i <= n; ++i) {
            const PolyForm face = pullback_face(w, i);
            faces += (i % 2 ? -1 : 1) * (n == 1 ? face.coefficient(0).evaluate(std::vector<Rational>{}) : integrate(face));
        }
        stokes += integrate(exterior_d(w)) == faces;
    }
    o.require(stokes == 200, "Stokes fails on " + std::to_string(200 - stokes) + " pairs");

    std::size_t cochains = 0;
    for (const char* file : {"boundary3.sset", "torus.sset"}) {
        auto x = std::make_shared<const SimplicialSet>(load_simplicial_set(fixtures / file));
        for (int p = 0; p <= x->cap(); ++p) {
            const std::size_t count = x->nondegenerate_count(p);
            // Basis cochains and one dense combination.
            for (std::size_t i = 0; i <= count; ++i) {
                Cochain c(count, 0);
                if (i < count) c[i] = 1;
                else
                    for (std::size_t k = 0; k < count; ++k) {
                        c[k] = Rational(static_cast<long>(k) - 2, 3);
                        c[k].canonicalize();
                    }
                o.require(derham_map(whitney(x, p, c)) == c, std::string(file) + ": derham o whitney != id");
                ++cochains;
            }
        }
    }

    auto sphere = std::make_shared<const SimplicialSet>(load_simplicial_set(fixtures / "boundary3.sset"));
    const auto dr = derham_cohomology(sphere, 3);
    o.require(dr.dimensions() == std::vector<std::size_t>{1, 0, 1}, "de Rham betti numbers of the sphere are not (1,0,1)");
    for (const auto& d : dr.degrees) o.require(d.isomorphism, "comparison map is not an isomorphism");
    o.require(dr.stabilized, "dimensions at D=3 and D=4 differ");
    const double elapsed = seconds_since(start);
    o.require(elapsed < 30.0, "slower than 30 s");
    if (o.pass) {
        std::ostringstream d;
        d << "Stokes 200/200; derham o whitney = id on " << cochains << " cochains; sphere (1,0,1) iso, stable D=3..4; "
          << std::fixed << std::setprecision(2) << elapsed << "s";
        o.detail = d.str();
    }
    return o;
}

Outcome criterion_kan() {
    Outcome o;
    const auto start = Clock::now();
    for (const char* file : {"nerve_z2.sset", "nerve_z3.sset"}) {
        const auto r = is_fibrant(load_simplicial_set(fixtures / file));
        o.require(r.fibrant && r.checked_up_to == 3, std::string(file) + ": not certified fibrant up to 3");
        o.require(r.unique_fillers, std::string(file) + ": fillers not unique");
    }
    const auto edge = load_simplicial_set(fixtures / "delta1.sset");
    const auto r = is_fibrant(edge);
    o.require(!r.fibrant && r.counterexample && fill_horn(edge, *r.counterexample).empty(), "edge: no verified witness");
    const auto inc = load_simplicial_map(fixtures / "boundary2_in_delta2.map");
    const auto f = is_fibration(inc);
    o.require(!f.fibration && f.counterexample, "boundary inclusion: no witness");
    if (f.counterexample) {
        // The horn lives in the boundary, its image is filled in the target, no source filler exists.
        o.require(is_horn(inc.source(), f.counterexample->horn), "boundary inclusion: witness is not a horn");
        o.require(fill_horn(inc.source(), f.counterexample->horn).empty(), "boundary inclusion: witness horn has a filler");
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < 10.0, "slower than 10 s");
    if (o.pass)
        o.detail = "BZ/2, BZ/3 fibrant to 3 with unique fillers; edge witness " + describe(edge, *r.counterexample) +
                   "; inclusion witness " + describe(inc.source(), f.counterexample->horn);
    return o;
}

LieValuedForm random_connection(std::mt19937_64& rng, bool traceless, int n) {
    std::uniform_int_distribution<int> coef(-3, 3);
    auto one_form = [&] {
        PolyForm w(n, 1);
        for (int i = 1; i <= n; ++i) {
            Polynomial f(n);
            for (const auto& e : monomials(n, 1)) f.add_term(e, coef(rng));
            w.add(IndexMask{1} << (i - 1), f);
        }
        return w;
    };
    if (!traceless) return LieValuedForm::constant(RationalMatrix::identity(1), one_form());
    LieValuedForm a(2, n, 1);
    a.at(0, 0) = one_form();
    a.at(1, 1) = Rational(-1) * a.at(0, 0);
    a.at(0, 1) = one_form();
    a.at(1, 0) = one_form();
    return a;
}

Outcome criterion_extension() {
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 rng(12);
    int cases = 0, rejected = 0;
    const std::vector<std::pair<int, int>> horns{{1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}, {3, 0},
                                                 {3, 1}, {3, 2}, {3, 3}, {3, 0}, {2, 1}, {3, 2}};
    for (std::size_t c = 0; c < horns.size(); ++c) {
        const auto [n, k] = horns[c];
        const bool traceless = c % 2 == 1;
        const auto global = random_connection(rng, traceless, n);
        std::vector<LieValuedForm> faces(n + 1, LieValuedForm(global.size, n - 1, 1));
        for (int i = 0; i <= n; ++i)
            if (i != k) faces[i] = pullback_face(global, i);
        const auto filled = horn_connection_fill(n, k, faces);
        for (int i = 0; i <= n; ++i)
            if (i != k) o.require(pullback_face(filled, i) == faces[i], "horn filler restriction differs in case " + std::to_string(c));

        // The same data through face_extend in chart coordinates, entry by entry.
        std::vector<std::optional<PolyForm>> data(n);
        for (int i = 1; i <= n; ++i)
            if (i != k || k == 0) data[i - 1] = restrict_to_hyperplane(global.entries[0], i);
        const auto ext = face_extend(n, 1, data);
        for (int i = 1; i <= n; ++i)
            if (data[i - 1]) o.require(restrict_to_hyperplane(ext.form, i) == *data[i - 1], "face_extend restriction differs");
        ++cases;

        if (n == 3) {
            // A perturbation that is nonzero on two edges of one face.
            const int victim = k == 0 ? 1 : 0;
            RationalMatrix bump(global.size, global.size);
            bump(0, global.size - 1) = 1;
            faces[victim] = faces[victim] + LieValuedForm::constant(bump, PolyForm::differential(2, 1) + PolyForm::differential(2, 2));
            try {
                horn_connection_fill(n, k, faces);
                o.require(false, "incompatible horn accepted in case " + std::to_string(c));
            } catch (const IncompatibilityError& e) {
                o.require(!e.witness.empty(), "rejection without witness");
                ++rejected;
            }
        }
    }
    try {
        face_extend(2, 0, {PolyForm::function(2, Polynomial::constant(2, 1)), PolyForm(2, 0)});
        o.require(false, "incompatible face data accepted");
    } catch (const IncompatibilityError& e) {
        o.require(!e.witness.empty(), "rejection without witness");
        ++rejected;
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < 5.0, "slower than 5 s");
    if (o.pass) {
        std::ostringstream d;
        d << cases << " cases (u1 and sl2, n <= 3) restrict exactly; " << rejected << " incompatible inputs rejected with witness; "
          << std::fixed << std::setprecision(2) << elapsed << "s";
        o.detail = d.str();
    }
    return o;
}

Outcome criterion_chern_weil() {
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        const auto f = curvature(random_connection(rng, true, 3 + t % 2));
        for (int k = 1; k <= 2; ++k) o.require(exterior_d(chern_weil_form(f, k)).is_zero(), "tr F^k is not closed");
    }
    std::uniform_int_distribution<int> weight(0, 3);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 2, m = 1 + t % 3;
        const auto a = random_connection(rng, true, n);
        RationalMatrix map(n + 1, m + 1);
        for (int j = 0; j <= m; ++j) {
            std::vector<int> w(n + 1);
            int total = 0;
            while (total == 0) {
                total = 0;
                for (int& x : w) total += (x = weight(rng));
            }
            for (int i = 0; i <= n; ++i) {
                map(i, j) = Rational(w[i], total);
                map(i, j).canonicalize();
            }
        }
        for (int k = 1; k <= 2; ++k)
            o.require(pullback(chern_weil_form(curvature(a), k), map) == chern_weil_form(curvature(pullback(a, map)), k),
                      "Chern-Weil form is not natural");
    }
    const auto degree = [](const char* file) { return u1_chern_number(parse_u1_bundle(read_file(fixtures / file))).degree; };
    o.require(degree("trivial.u1") == 0, "trivial bundle has nonzero degree");
    o.require(degree("unit.u1") == 1, "unit bundle does not have degree 1");
    o.require(degree("unit_reversed.u1") == -1, "orientation reversal does not negate the degree");
    o.require(u1_chern_number(reverse_orientation(parse_u1_bundle(read_file(fixtures / "unit.u1")))).degree == -1,
              "reverse_orientation does not negate the degree");
    const double elapsed = seconds_since(start);
    o.require(elapsed < 10.0, "slower than 10 s");
    if (o.pass) {
        std::ostringstream d;
        d << "closedness on 20, naturality on 20; degrees 0, 1, -1; " << std::fixed << std::setprecision(2) << elapsed << "s";
        o.detail = d.str();
    }
    return o;
}

Outcome criterion_extra_degeneracy() {
    Outcome o;
    const auto start = Clock::now();
    // e^-12 to 30 digits, evaluated independently with mpmath.
    const double expected = 6.14421235332820975868230817880e-6;
    o.require(std::abs(bump_factor(0.0) - 1.0) <= 1e-12, "factor at t0 = 0 is not 1");
    o.require(std::abs(bump_factor(0.25) - expected) <= 1e-9 * expected, "factor at t0 = 1/4 is off");
    const auto in = std::get<ExtraDegeneracyInput>(parse_extend(read_file(fixtures / "extra_degeneracy.ext")));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const double t0 = 0.5 + 0.4999 * unit(rng);
        std::vector<double> p{t0};
        double rest = 1.0 - t0;
        for (int i = 0; i < in.form.dim; ++i) {
            const double x = rest * unit(rng);
            p.push_back(x);
            rest -= x;
        }
        p.push_back(rest);
        for (const auto& c : extra_degeneracy_s(in.form, p))
            for (double v : c) o.require(v == 0.0, "nonzero value on the half t0 >= 1/2");
    }
    const double defect = face_zero_defect(in.form, 100, 9);
    o.require(defect <= 1e-9, "d0 s = id fails beyond 1e-9");
    const double elapsed = seconds_since(start);
    o.require(elapsed < 1.0, "slower than 1 s");
    if (o.pass) {
        std::ostringstream d;
        d << "factor(0)=1, factor(1/4)=" << std::setprecision(10) << bump_factor(0.25) << ", zero on 100 points of t0>=1/2, d0 s defect "
          << std::scientific << std::setprecision(2) << defect;
        o.detail = d.str();
    }
    return o;
}

Outcome criterion_determinism() {
    Outcome o;
    std::vector<std::vector<std::string>> runs;
    for (const auto& entry : fs::directory_iterator(fixtures)) {
        const std::string path = entry.path().string();
        const auto ext = entry.path().extension();
        if (ext == ".sset") {
            for (const char* c : {"homology", "ring", "kan", "show"}) runs.push_back({c, path});
            runs.push_back({"homology", path, "--ring", "rat", "--format", "json"});
            runs.push_back({"derham", path, "--poly-degree", "2"});
        } else if (ext == ".map") {
            runs.push_back({"fibration", path});
        } else if (ext == ".site") {
            runs.push_back({"sheaf", path});
        } else if (ext == ".u1") {
            runs.push_back({"chern", path});
        } else if (ext == ".ext") {
            runs.push_back({"extend", path});
            runs.push_back({"extend", path, "--format", "json"});
        } else if (ext == ".chain") {
            runs.push_back({"subdivide-check", path, "--trials", "5", "--seed", "3"});
        }
    }
    runs.push_back({"mv", (fixtures / "circle.sset").string(), "--a", "01,12", "--b", "02"});
    runs.push_back({"mv", (fixtures / "boundary3.sset").string(), "--a", "012,013,023", "--b", "123"});
    runs.push_back({"derham", (fixtures / "boundary3.sset").string(), "--check-stokes", "--trials", "40"});
    std::sort(runs.begin(), runs.end());
    int compared = 0;
    for (const auto& args : runs) {
        std::ostringstream out1, err1, out2, err2;
        const int code1 = run(args, out1, err1);
        const int code2 = run(args, out2, err2);
        std::string line;
        for (const auto& a : args) line += a + " ";
        o.require(code1 == code2, "exit codes differ: " + line);
        o.require(strip_timing(out1.str()) == strip_timing(out2.str()) && err1.str() == err2.str(), "reports differ: " + line);
        o.require(code1 == 2 || out1.str().find("timing") != std::string::npos, "report without timing: " + line);
        ++compared;
    }
    if (o.pass) o.detail = std::to_string(compared) + " command runs byte-identical modulo timing";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"homology suite", criterion_homology},
        {"subdivision identities", criterion_subdivision},
        {"Mayer-Vietoris exactness", criterion_mayer_vietoris},
        {"sheafification", criterion_sheafification},
        {"de Rham comparison", criterion_derham},
        {"Kan machinery", criterion_kan},
        {"connection extension", criterion_extension},
        {"Chern-Weil", criterion_chern_weil},
        {"extra degeneracy (numeric)", criterion_extra_degeneracy},
        {"determinism", criterion_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " [" << std::fixed
                  << std::setprecision(2) << seconds_since(start) << "s]: " << o.detail << std::endl;
    }
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
