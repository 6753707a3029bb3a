#include "smoothset/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "smoothset/connections.hpp"
#include "smoothset/errors.hpp"
#include "smoothset/forms.hpp"
#include "smoothset/homology.hpp"
#include "smoothset/io.hpp"
#include "smoothset/kan.hpp"
#include "smoothset/report.hpp"
#include "smoothset/sheaf.hpp"
#include "smoothset/subdivision.hpp"

namespace smoothset {

namespace {

struct Options {
    std::string file;
    std::optional<int> cap;
    std::string ring = "int";
    int poly_degree = 3;
    std::string format = "text";
    std::uint64_t seed = 1;
    int trials = 0;
    std::string a, b;
    bool check_stokes = false;
};

template <class Range>
std::string join(const Range& r, const std::string& sep = " ") {
    std::ostringstream out;
    bool first = true;
    for (const auto& v : r) {
        out << (first ? "" : sep) << v;
        first = false;
    }
    return out.str();
}

std::string numeric_text(double v) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(12) << v;
    return out.str();
}

std::string read_input(const Options& o, Report& r) {
    const std::string content = read_file(o.file);
    r.add_input(o.file, content);
    return content;
}

SimplicialSet load_set(const Options& o, Report& r) {
    SimplicialSet x = parse_simplicial_set(read_input(o, r));
    if (o.cap) {
        if (*o.cap < 0 || *o.cap > x.cap())
            throw ParameterError("--cap must lie between 0 and the stored cap " + std::to_string(x.cap()));
        x = with_cap(x, *o.cap);
    }
    return x;
}

std::string counts(const SimplicialSet& x) {
    std::vector<std::size_t> c;
    for (int n = 0; n <= x.cap(); ++n) c.push_back(x.nondegenerate_count(n));
    return join(c);
}

std::string form_text(const PolyForm& w) { return w.is_zero() ? "0" : to_text(w); }

// ---- commands -----------------------------------------------------------------

void cmd_homology(const Options& o, Report& r) {
    const auto x = load_set(o, r);
    Ring ring;
    if (o.ring == "int") ring = Ring::integers;
    else if (o.ring == "rat") ring = Ring::rationals;
    else throw ParameterError("--ring must be int or rat");
    const auto h = homology(chain_complex(x, ring));
    r.exact("ring", to_string(ring));
    r.exact("nondegenerate", counts(x));
    r.exact("betti", join(h.betti));
    if (ring == Ring::integers) {
        std::vector<std::string> tors;
        for (std::size_t n = 0; n < h.torsion.size(); ++n)
            if (!h.torsion[n].empty()) {
                std::vector<std::string> d;
                for (const auto& z : h.torsion[n]) d.push_back(z.get_str());
                tors.push_back("H" + std::to_string(n) + "=" + join(d, ","));
            }
        r.exact("torsion", tors.empty() ? "none" : join(tors));
    }
    r.exact("euler", std::to_string(euler_characteristic(h)));
}

void cmd_ring(const Options& o, Report& r) {
    const auto x = load_set(o, r);
    const auto ring = cohomology_ring(x);
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n < ring.basis.size(); ++n) dims.push_back(ring.dimension(static_cast<int>(n)));
    r.exact("dimensions", join(dims));
    std::ostringstream products;
    const int top = static_cast<int>(ring.basis.size()) - 1;
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q <= top; ++q)
            for (std::size_t i = 0; i < ring.dimension(p); ++i)
                for (std::size_t j = 0; j < ring.dimension(q); ++j) {
                    const auto& v = ring.product(p, i, q, j);
                    if (is_zero(v)) continue;
                    std::vector<std::string> c;
                    for (const auto& q_ : v) c.push_back(q_.get_str());
                    products << "e" << p << "." << i << " * e" << q << "." << j << " = (" << join(c, ",") << ")\n";
                }
    std::string table = products.str();
    if (!table.empty()) table.pop_back();
    r.exact("products", table.empty() ? "none" : table);
    const auto failures = ring_axiom_failures(ring);
    r.exact("axioms", failures.empty() ? "graded-commutative, associative, unital" : join(failures, "; "));
    if (!failures.empty()) r.fail();
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string t; std::getline(in, t, ',');)
        if (!t.empty()) out.push_back(t);
    return out;
}

void cmd_mv(const Options& o, Report& r) {
    auto x = std::make_shared<const SimplicialSet>(load_set(o, r));
    if (o.a.empty() || o.b.empty()) throw ParameterError("mv needs --a and --b generator lists");
    const auto a = closure_of_names(*x, split_names(o.a));
    const auto b = closure_of_names(*x, split_names(o.b));
    const auto seq = mayer_vietoris(x, a, b);
    std::ostringstream nodes;
    for (std::size_t i = 0; i < seq.nodes.size(); ++i)
        nodes << seq.nodes[i].label << " dim=" << seq.nodes[i].dimension << " exact=" << (seq.exact[i] ? "yes" : "no")
              << (i + 1 < seq.nodes.size() ? "\n" : "");
    r.exact("nodes", nodes.str());
    std::vector<std::size_t> ranks;
    for (const auto& m : seq.maps) ranks.push_back(rank(m));
    r.exact("map-ranks", join(ranks));
    r.exact("connecting-ranks", join(seq.connecting_ranks));
    r.exact("exact", seq.all_exact() ? "yes" : "no");
    if (!seq.all_exact()) r.fail();
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

bool subdivision_identities(const AffineChain& c) {
    const AffineChain s = subdivide(c);
    return boundary(s) == subdivide(boundary(c)) && boundary(homotopy(c)) + homotopy(boundary(c)) == s - c;
}

void cmd_subdivide_check(const Options& o, Report& r) {
    const int trials = o.trials > 0 ? o.trials : 100;
    std::mt19937_64 rng(o.seed);
    r.exact("seed", std::to_string(o.seed));
    if (!o.file.empty()) {
        const auto chain = parse_affine_chain(read_input(o, r));
        const bool ok = subdivision_identities(chain);
        r.exact("input-chain", ok ? "identities hold" : "identities fail");
        if (!ok) r.fail();
    }
    for (int n = 1; n <= 4; ++n) {
        int passed = 0;
        for (int t = 0; t < trials; ++t) passed += subdivision_identities(AffineChain(random_simplex(rng, n)));
        r.exact("identities dim " + std::to_string(n), std::to_string(passed) + "/" + std::to_string(trials));
        if (passed != trials) r.fail();
    }
    for (int n = 1; n <= 3; ++n) {
        int passed = 0;
        const int checks = std::min(trials, 20);
        for (int t = 0; t < checks; ++t) {
            const auto s = random_simplex(rng, n);
            const int times = t < 3 ? 2 : 1;
            passed += iterated_diameter(s, times) <= diameter_bound(s, times);
        }
        r.exact("contraction dim " + std::to_string(n), std::to_string(passed) + "/" + std::to_string(checks));
        if (passed != checks) r.fail();
    }
}

std::string sizes(const Presheaf& f) {
    std::vector<std::string> out;
    for (int u = 0; u < f.site->object_count(); ++u) out.push_back(f.site->object(u).name + "=" + std::to_string(f.size(u)));
    return join(out);
}

void cmd_sheaf(const Options& o, Report& r) {
    const auto file = parse_site(read_input(o, r), std::filesystem::path(o.file).parent_path());
    std::vector<Sheafification> results;
    for (const auto& [name, f] : file.presheaves) results.push_back(sheafify(f));
    std::vector<std::pair<std::string, const Presheaf*>> sheaves;
    for (std::size_t i = 0; i < file.presheaves.size(); ++i) {
        if (check_status(file.presheaves[i].presheaf).sheaf) sheaves.emplace_back(file.presheaves[i].name, &file.presheaves[i].presheaf);
        sheaves.emplace_back("a(" + file.presheaves[i].name + ")", &results[i].result);
    }
    for (std::size_t i = 0; i < file.presheaves.size(); ++i) {
        const auto& [name, f] = file.presheaves[i];
        const auto status = check_status(f);
        r.exact(name + ".status", status.sheaf ? "sheaf" : status.separated ? "separated, not a sheaf" : "not separated");
        if (status.witness) r.exact(name + ".witness", describe(f, *status.witness));
        const auto& s = results[i];
        r.exact(name + ".sections", sizes(f));
        r.exact(name + ".sheafified", sizes(s.result) + (s.quotient_applied ? " (after separated quotient)" : "") +
                                          " rounds=" + std::to_string(s.rounds));
        const bool is_sheaf = check_status(s.result).sheaf;
        r.exact(name + ".sheafified-status", is_sheaf ? "sheaf" : "not a sheaf");
        if (!is_sheaf) r.fail();
        std::size_t maps = 0;
        std::vector<std::string> bad;
        for (const auto& [gname, g] : sheaves) {
            for (const auto& phi : natural_transformations(f, *g)) {
                ++maps;
                if (count_factorizations(f, s.result, s.unit, *g, phi) != 1) bad.push_back(gname);
            }
        }
        r.exact(name + ".universal", std::to_string(maps) + " maps into " + std::to_string(sheaves.size()) + " sheaves, " +
                                         (bad.empty() ? "each factors uniquely" : "non-unique factorization into " + join(bad, ",")));
        if (!bad.empty()) r.fail();
    }
}

PolyForm random_form(std::mt19937_64& rng, int n, int p, int max_degree) {
    std::uniform_int_distribution<int> coef(-4, 4);
    PolyForm w(n, p);
    for (IndexMask m : masks_of_degree(n, p)) {
        Polynomial f(n);
        for (const auto& e : monomials(n, max_degree)) f.add_term(e, coef(rng));
        w.add(m, f);
    }
    return w;
}

void cmd_derham(const Options& o, Report& r) {
    auto x = std::make_shared<const SimplicialSet>(load_set(o, r));
    const auto dr = derham_cohomology(x, o.poly_degree);
    std::vector<std::size_t> forms, dims, simp;
    std::vector<std::string> iso;
    bool all_iso = true;
    for (const auto& d : dr.degrees) {
        forms.push_back(d.forms);
        dims.push_back(d.dimension);
        simp.push_back(d.simplicial);
        iso.push_back(d.isomorphism ? "yes" : "no");
        all_iso = all_iso && d.isomorphism;
    }
    r.exact("poly-degree", std::to_string(o.poly_degree));
    r.exact("form-fields", join(forms));
    r.exact("derham-betti", join(dims));
    r.exact("simplicial-betti", join(simp));
    r.exact("isomorphism", join(iso));
    r.exact("stabilized", dr.stabilized ? "yes" : "no");
    if (!all_iso) r.fail();

    std::size_t cochains = 0;
    bool whitney_ok = true;
    for (int p = 0; p <= x->cap(); ++p) {
        const std::size_t count = x->nondegenerate_count(p);
        for (std::size_t i = 0; i < count; ++i) {
            Cochain e(count, 0);
            e[i] = 1;
            whitney_ok = whitney_ok && derham_map(whitney(x, p, e)) == e;
            ++cochains;
        }
    }
    r.exact("whitney", std::string(whitney_ok ? "derham o whitney = id" : "derham o whitney != id") + " on " +
                           std::to_string(cochains) + " basis cochains");
    if (!whitney_ok) r.fail();

    if (o.check_stokes) {
        const int trials = o.trials > 0 ? o.trials : 200;
        std::mt19937_64 rng(o.seed);
        int passed = 0;
        for (int t = 0; t < trials; ++t) {
            const int n = 1 + t % 4;
            const PolyForm w = random_form(rng, n, n - 1, 3);
            Rational boundary_sum = 0;
            for (int i = 0; i <= n; ++i) {
                const PolyForm face = pullback_face(w, i);
                const Rational v = n == 1 ? face.coefficient(0).evaluate(std::vector<Rational>{}) : integrate(face);
                boundary_sum += (i % 2 ? -1 : 1) * v;
            }
            passed += integrate(exterior_d(w)) == boundary_sum;
        }
        r.exact("seed", std::to_string(o.seed));
        r.exact("stokes", std::to_string(passed) + "/" + std::to_string(trials));
        if (passed != trials) r.fail();
    }
}

void cmd_kan(const Options& o, Report& r) {
    const auto x = load_set(o, r);
    const auto rep = is_fibrant(x);
    r.exact("checked-up-to", std::to_string(rep.checked_up_to));
    std::ostringstream stats;
    for (std::size_t i = 0; i < rep.statistics.size(); ++i) {
        const auto& s = rep.statistics[i];
        stats << "n=" << s.n << " k=" << s.k << " horns=" << s.horns << " fillers=" << s.min_fillers << ".." << s.max_fillers
              << (i + 1 < rep.statistics.size() ? "\n" : "");
    }
    r.exact("horns", stats.str());
    r.exact("unique-fillers", rep.unique_fillers ? "yes" : "no");
    r.exact("fibrant", rep.fibrant ? "yes" : "no");
    if (rep.counterexample) {
        r.exact("counterexample", describe(x, *rep.counterexample));
        r.fail();
    }
}

void cmd_fibration(const Options& o, Report& r) {
    read_input(o, r);
    const auto f = load_simplicial_map(o.file);
    const auto rep = is_fibration(f);
    r.exact("checked-up-to", std::to_string(rep.checked_up_to));
    r.exact("lifting-problems", std::to_string(rep.problems));
    r.exact("fibration", rep.fibration ? "yes" : "no");
    if (rep.counterexample) {
        const auto& c = *rep.counterexample;
        r.exact("counterexample", describe(f.source(), c.horn) + " over " + f.target().name(c.horn.n, c.target));
        r.fail();
    }
}

void cmd_chern(const Options& o, Report& r) {
    const auto b = parse_u1_bundle(read_input(o, r));
    const auto c = u1_chern_number(b);
    r.exact("degree", c.degree.get_str());
    r.exact("winding-total", c.winding_total.get_str());
    std::vector<std::string> v;
    for (const auto& [vertex, n] : c.vertex_windings) v.push_back(std::to_string(vertex) + ":" + n.get_str());
    r.exact("vertex-windings", join(v));
    r.exact("integral", c.integral ? "yes" : "no");
    if (!c.integral || c.degree.get_den() != 1 || c.degree != c.winding_total) r.fail();
}

void extend_faces(const FaceExtendInput& in, Report& r) {
    try {
        const auto out = face_extend(in.dim, in.degree, in.data);
        r.exact("steps", std::to_string(out.steps));
        r.exact("extension", form_text(out.form));
        std::vector<int> faces;
        for (int i = 1; i <= in.dim; ++i)
            if (in.data[i - 1]) faces.push_back(i);
        r.exact("restrictions", "match on faces " + join(faces, ","));
    } catch (const IncompatibilityError& e) {
        r.exact("incompatible", e.witness);
        r.fail();
    }
}

void extend_horn(const HornFillInput& in, Report& r) {
    r.exact("algebra", in.algebra.name);
    if (auto bad = horn_incompatibility(in.n, in.k, in.faces)) {
        r.exact("incompatible", "faces " + std::to_string(bad->first) + " and " + std::to_string(bad->second) +
                                    " differ on their intersection");
        r.fail();
        return;
    }
    const auto filled = horn_connection_fill(in.n, in.k, in.faces);
    r.exact("filler", to_text(filled));
    std::vector<int> faces;
    for (int i = 0; i <= in.n; ++i)
        if (i != in.k) faces.push_back(i);
    r.exact("restrictions", "match on faces " + join(faces, ","));
    r.exact("in-algebra", in_algebra(in.algebra, filled) ? "yes" : "no");
    const auto f = curvature(filled);
    r.exact("curvature", to_text(f));
    r.exact("bianchi", bianchi_defect(filled).is_zero() ? "holds" : "fails");
    for (int k = 1; 2 * k <= in.n; ++k) {
        const PolyForm cw = chern_weil_form(f, k);
        r.exact("chern-weil k=" + std::to_string(k), form_text(cw) + (exterior_d(cw).is_zero() ? " (closed)" : " (not closed)"));
    }
    if (!in_algebra(in.algebra, filled) || !bianchi_defect(filled).is_zero()) r.fail();
}

void extend_extra_degeneracy(const ExtraDegeneracyInput& in, Report& r, std::uint64_t seed) {
    constexpr double tolerance = 1e-9;
    r.exact("algebra", in.algebra.name);
    r.numeric("factor t0=0", numeric_text(bump_factor(0.0)), 1e-12);
    r.numeric("factor t0=1/4", numeric_text(bump_factor(0.25)), 1e-9);
    for (const auto& p : in.points) {
        std::vector<std::string> coords, comps;
        for (double t : p) coords.push_back(numeric_text(t));
        for (const auto& c : extra_degeneracy_s(in.form, p)) {
            std::vector<std::string> e;
            for (double v : c) e.push_back(numeric_text(v));
            comps.push_back("[" + join(e, ",") + "]");
        }
        r.numeric("s(" + join(coords, ",") + ")", join(comps), tolerance);
    }
    const double defect = face_zero_defect(in.form, in.samples, seed);
    r.numeric("d0 s = id defect over " + std::to_string(in.samples) + " points", numeric_text(defect), tolerance);
    if (!(defect <= tolerance)) r.fail();
}

void cmd_extend(const Options& o, Report& r) {
    const auto in = parse_extend(read_input(o, r));
    if (auto* f = std::get_if<FaceExtendInput>(&in)) {
        r.exact("mode", "faces");
        extend_faces(*f, r);
    } else if (auto* h = std::get_if<HornFillInput>(&in)) {
        r.exact("mode", "horn");
        extend_horn(*h, r);
    } else {
        r.exact("mode", "extra-degeneracy");
        r.exact("seed", std::to_string(o.seed));
        extend_extra_degeneracy(std::get<ExtraDegeneracyInput>(in), r, o.seed);
    }
}

void cmd_show(const Options& o, Report& r) {
    const auto x = load_set(o, r);
    r.exact("cap", std::to_string(x.cap()));
    r.exact("truncated", x.truncated() ? "yes" : "no");
    r.exact("nondegenerate", counts(x));
    r.exact("tables", serialize(x));
}

using Handler = std::function<void(const Options&, Report&)>;

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations with simplicial sets, sheaves, forms and connections", "smoothset"};
    app.require_subcommand(1, 1);
    Options o;

    struct Command {
        const char* name;
        const char* help;
        Handler handler;
        bool file_required;
    };
    const std::vector<Command> commands{
        {"homology", "Betti numbers and torsion of a simplicial set", cmd_homology, true},
        {"ring", "Cohomology ring with cup products", cmd_ring, true},
        {"mv", "Mayer-Vietoris sequence for a cover by two sub-complexes", cmd_mv, true},
        {"subdivide-check", "Randomized subdivision identities (optional chain file)", cmd_subdivide_check, false},
        {"sheaf", "Sheaf conditions, sheafification and its universal property", cmd_sheaf, true},
        {"derham", "Polynomial de Rham cohomology and the comparison map", cmd_derham, true},
        {"kan", "Horn filling and fibrancy up to the cap", cmd_kan, true},
        {"fibration", "Kan fibration check for a map file", cmd_fibration, true},
        {"chern", "Degree of a U(1) bundle with connection on a surface", cmd_chern, true},
        {"extend", "Face extension, horn fillers for connections, extra degeneracy", cmd_extend, true},
        {"show", "Summary and canonical tables of a simplicial set", cmd_show, true},
    };
    std::map<std::string, Handler> handlers;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        auto* file = sub->add_option("file", o.file, "input file");
        if (c.file_required) file->required();
        sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", o.seed, "seed for randomized suites");
        const std::string name = c.name;
        if (name == "homology" || name == "ring" || name == "mv" || name == "derham" || name == "kan" || name == "show")
            sub->add_option("--cap", o.cap, "dimension cap (at most the stored cap)");
        if (name == "homology") sub->add_option("--ring", o.ring, "coefficients")->check(CLI::IsMember({"int", "rat"}));
        if (name == "mv") {
            sub->add_option("--a", o.a, "comma-separated generators of A");
            sub->add_option("--b", o.b, "comma-separated generators of B");
        }
        if (name == "derham") {
            sub->add_option("--poly-degree", o.poly_degree, "total polynomial degree bound D");
            sub->add_flag("--check-stokes", o.check_stokes, "run the randomized Stokes suite");
        }
        if (name == "subdivide-check" || name == "derham") sub->add_option("--trials", o.trials, "random trials");
        handlers[name] = c.handler;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }
    const auto* chosen = app.get_subcommands().front();
    Report report(args);
    const auto start = std::chrono::steady_clock::now();
    try {
        handlers.at(chosen->get_name())(o, report);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const IncompatibilityError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        err << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    report.set_timing_ms(elapsed.count());
    out << (o.format == "json" ? report.json() : report.text());
    return report.verdict() == Verdict::ok ? 0 : 1;
}

}  // namespace smoothset
