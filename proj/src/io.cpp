#include "smoothset/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "smoothset/errors.hpp"

namespace smoothset {

namespace {

struct Line {
    int number = 0;
    std::string keyword;
    std::string rest;
    std::vector<std::string> tokens;  // after the keyword
};

std::vector<std::string> split(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

/// Content lines after the header, which must read "smoothset <kind> 1".
std::vector<Line> content_lines(const std::string& text, const std::string& kind) {
    std::istringstream in(text);
    std::vector<Line> out;
    bool header = false;
    int number = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        if (!header) {
            if (split(raw) != std::vector<std::string>{"smoothset", kind, "1"})
                throw ParseError("expected header 'smoothset " + kind + " 1'", number);
            header = true;
            continue;
        }
        Line l;
        l.number = number;
        const auto space = raw.find_first_of(" \t");
        l.keyword = raw.substr(0, space);
        l.rest = space == std::string::npos ? std::string() : trim(raw.substr(space));
        l.tokens = split(l.rest);
        out.push_back(std::move(l));
    }
    if (!header) throw ParseError("missing header 'smoothset " + kind + " 1'", number);
    return out;
}

long to_integer(const std::string& s, int line) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw ParseError("not an integer: '" + s + "'", line);
    }
    if (used != s.size()) throw ParseError("not an integer: '" + s + "'", line);
    return v;
}

double to_double(const std::string& s, int line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + s + "'", line);
    }
    if (used != s.size()) throw ParseError("not a number: '" + s + "'", line);
    return v;
}

void expect_tokens(const Line& l, std::size_t count) {
    if (l.tokens.size() != count)
        throw ParseError("'" + l.keyword + "' takes " + std::to_string(count) + " argument(s)", l.number);
}

/// Splits off `count` leading tokens; the remainder is returned verbatim.
std::pair<std::vector<std::string>, std::string> split_head(const Line& l, std::size_t count) {
    std::istringstream in(l.rest);
    std::vector<std::string> head;
    for (std::size_t i = 0; i < count; ++i) {
        std::string t;
        if (!(in >> t)) throw ParseError("'" + l.keyword + "' needs " + std::to_string(count) + " leading fields", l.number);
        head.push_back(t);
    }
    std::string tail((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return {head, trim(tail)};
}

template <class F>
auto with_line(int line, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParameterError& e) {
        throw ParseError(e.what(), line);
    } catch (const StructuralError& e) {
        throw ParseError(e.what(), line);
    }
}

void check_identities(const SimplicialSet& x) {
    auto violations = validate(x);
    if (!violations.empty()) {
        const auto& v = violations.front();
        throw StructuralError("simplicial identity " + v.identity + " fails at " + x.name(v.dim, v.simplex) + ": " + v.detail);
    }
}

bool serializable_name(const std::string& s) {
    return !s.empty() && s != ":" && s != "|" && s.find_first_of(" \t\r\n#") == std::string::npos;
}

SimplicialSet parse_tables(const std::vector<Line>& lines) {
    int cap = -1;
    bool truncated = false;
    struct Row {
        int line;
        std::string name;
        std::vector<std::string> faces, degeneracies;
    };
    std::vector<std::vector<Row>> rows;
    int current = -1;
    for (const auto& l : lines) {
        if (l.keyword == "kind") continue;
        if (l.keyword == "cap") {
            expect_tokens(l, 1);
            cap = static_cast<int>(to_integer(l.tokens[0], l.number));
            if (cap < 0) throw ParseError("cap must be nonnegative", l.number);
        } else if (l.keyword == "truncated") {
            expect_tokens(l, 1);
            if (l.tokens[0] != "yes" && l.tokens[0] != "no") throw ParseError("truncated takes yes or no", l.number);
            truncated = l.tokens[0] == "yes";
        } else if (l.keyword == "dim") {
            expect_tokens(l, 1);
            const long n = to_integer(l.tokens[0], l.number);
            if (n != current + 1) throw ParseError("dimension blocks must appear in order 0, 1, 2, ...", l.number);
            current = static_cast<int>(n);
            rows.emplace_back();
        } else {
            if (current < 0) throw ParseError("simplex row before any 'dim' header", l.number);
            Row r{l.number, l.keyword, {}, {}};
            if (l.tokens.empty() || l.tokens[0] != ":") throw ParseError("expected 'name : faces | degeneracies'", l.number);
            bool degens = false;
            for (std::size_t i = 1; i < l.tokens.size(); ++i) {
                if (l.tokens[i] == "|") {
                    if (degens) throw ParseError("more than one '|' in a row", l.number);
                    degens = true;
                } else {
                    (degens ? r.degeneracies : r.faces).push_back(l.tokens[i]);
                }
            }
            if (!degens) throw ParseError("expected 'name : faces | degeneracies'", l.number);
            rows[current].push_back(std::move(r));
        }
    }
    if (cap < 0) throw ParseError("missing 'cap'", lines.empty() ? 1 : lines.back().number);
    if (static_cast<int>(rows.size()) != cap + 1)
        throw ParseError("expected dimension blocks 0.." + std::to_string(cap), lines.empty() ? 1 : lines.back().number);

    std::vector<std::map<std::string, SimplexId>> index(cap + 1);
    for (int n = 0; n <= cap; ++n)
        for (const auto& r : rows[n])
            if (!index[n].emplace(r.name, static_cast<SimplexId>(index[n].size())).second)
                throw ParseError("duplicate simplex '" + r.name + "' in dimension " + std::to_string(n), r.line);

    auto lookup = [&](int n, const std::string& name, int line, const char* role) {
        auto it = index[n].find(name);
        if (it == index[n].end())
            throw ParseError(std::string("unknown ") + role + " '" + name + "' in dimension " + std::to_string(n), line);
        return it->second;
    };

    std::vector<SimplicialSet::Level> levels(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        auto& level = levels[n];
        const std::size_t count = rows[n].size();
        level.faces.assign(n == 0 ? 0 : n + 1, std::vector<SimplexId>(count));
        level.degeneracies.assign(n == cap ? 0 : n + 1, std::vector<SimplexId>(count));
        for (std::size_t x = 0; x < count; ++x) {
            const auto& r = rows[n][x];
            level.names.push_back(r.name);
            if (r.faces.size() != level.faces.size())
                throw ParseError("'" + r.name + "' needs " + std::to_string(level.faces.size()) + " faces", r.line);
            if (r.degeneracies.size() != level.degeneracies.size())
                throw ParseError("'" + r.name + "' needs " + std::to_string(level.degeneracies.size()) + " degeneracies", r.line);
            for (std::size_t i = 0; i < r.faces.size(); ++i) level.faces[i][x] = lookup(n - 1, r.faces[i], r.line, "face");
            for (std::size_t i = 0; i < r.degeneracies.size(); ++i)
                level.degeneracies[i][x] = lookup(n + 1, r.degeneracies[i], r.line, "degeneracy");
        }
    }
    for (int n = 0; n <= cap; ++n) levels[n].degenerate.assign(levels[n].names.size(), false);
    for (int n = 0; n < cap; ++n)
        for (const auto& s : levels[n].degeneracies)
            for (SimplexId y : s) levels[n + 1].degenerate[y] = true;
    SimplicialSet x(std::move(levels), truncated);
    check_identities(x);
    return x;
}

SimplicialSet parse_complex(const std::vector<Line>& lines) {
    std::optional<int> cap;
    std::vector<std::vector<int>> facets;
    int last = 1;
    for (const auto& l : lines) {
        last = l.number;
        if (l.keyword == "kind") continue;
        if (l.keyword == "cap") {
            expect_tokens(l, 1);
            cap = static_cast<int>(to_integer(l.tokens[0], l.number));
        } else if (l.keyword == "facet") {
            if (l.tokens.empty()) throw ParseError("empty facet", l.number);
            std::vector<int> f;
            for (const auto& t : l.tokens) f.push_back(static_cast<int>(to_integer(t, l.number)));
            facets.push_back(std::move(f));
        } else {
            throw ParseError("unknown keyword '" + l.keyword + "'", l.number);
        }
    }
    if (facets.empty()) throw ParseError("a complex needs at least one facet", last);
    int top = 0;
    for (const auto& f : facets) top = std::max(top, static_cast<int>(f.size()) - 1);
    return with_line(last, [&] { return from_simplicial_complex(facets, cap.value_or(top)); });
}

SimplicialSet parse_nerve(const std::vector<Line>& lines) {
    std::optional<FiniteGroup> group;
    int cap = 3;
    int last = 1;
    for (const auto& l : lines) {
        last = l.number;
        if (l.keyword == "kind") continue;
        if (l.keyword == "cap") {
            expect_tokens(l, 1);
            cap = static_cast<int>(to_integer(l.tokens[0], l.number));
        } else if (l.keyword == "group") {
            if (l.tokens.size() == 2 && l.tokens[0] == "cyclic") {
                const long n = to_integer(l.tokens[1], l.number);
                if (n < 1) throw ParseError("cyclic group order must be positive", l.number);
                group = FiniteGroup::cyclic(static_cast<int>(n));
            } else if (l.tokens == std::vector<std::string>{"klein"}) {
                group = FiniteGroup::klein_four();
            } else {
                throw ParseError("group must be 'cyclic N' or 'klein'", l.number);
            }
        } else {
            throw ParseError("unknown keyword '" + l.keyword + "'", l.number);
        }
    }
    if (!group) throw ParseError("missing 'group'", last);
    return with_line(last, [&] { return nerve(*group, cap); });
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// ---- simplicial sets ----------------------------------------------------------

std::string serialize(const SimplicialSet& x) {
    std::ostringstream out;
    out << "smoothset sset 1\nkind tables\ncap " << x.cap() << "\ntruncated " << (x.truncated() ? "yes" : "no") << "\n";
    for (int n = 0; n <= x.cap(); ++n) {
        out << "dim " << n << "\n";
        const auto& level = x.level(n);
        for (std::size_t s = 0; s < level.names.size(); ++s) {
            if (!serializable_name(level.names[s])) throw ParameterError("simplex name '" + level.names[s] + "' cannot be written");
            out << level.names[s] << " :";
            for (const auto& f : level.faces) out << " " << x.name(n - 1, f[s]);
            out << " |";
            for (const auto& d : level.degeneracies) out << " " << x.name(n + 1, d[s]);
            out << "\n";
        }
    }
    return out.str();
}

SimplicialSet parse_simplicial_set(const std::string& text) {
    const auto lines = content_lines(text, "sset");
    if (lines.empty() || lines.front().keyword != "kind" || lines.front().tokens.size() != 1)
        throw ParseError("first line after the header must be 'kind tables|complex|nerve'", lines.empty() ? 1 : lines.front().number);
    const std::string& kind = lines.front().tokens[0];
    if (kind == "tables") return parse_tables(lines);
    if (kind == "complex") return parse_complex(lines);
    if (kind == "nerve") return parse_nerve(lines);
    throw ParseError("unknown kind '" + kind + "'", lines.front().number);
}

SimplicialSet load_simplicial_set(const std::filesystem::path& path) { return parse_simplicial_set(read_file(path)); }

SimplicialMap load_simplicial_map(const std::filesystem::path& path) {
    const auto lines = content_lines(read_file(path), "map");
    const auto dir = path.parent_path();
    auto load = [&](const std::string& name) { return std::make_shared<const SimplicialSet>(load_simplicial_set(dir / name)); };
    std::shared_ptr<const SimplicialSet> source, target, left, right;
    std::optional<int> factor;
    bool identity = false;
    std::vector<const Line*> sends;
    for (const auto& l : lines) {
        if (l.keyword == "source" || l.keyword == "target") {
            expect_tokens(l, 1);
            (l.keyword == "source" ? source : target) = load(l.tokens[0]);
        } else if (l.keyword == "identity") {
            expect_tokens(l, 1);
            source = target = load(l.tokens[0]);
            identity = true;
        } else if (l.keyword == "product") {
            expect_tokens(l, 2);
            left = load(l.tokens[0]);
            right = load(l.tokens[1]);
        } else if (l.keyword == "project") {
            expect_tokens(l, 1);
            factor = static_cast<int>(to_integer(l.tokens[0], l.number));
            if (*factor != 1 && *factor != 2) throw ParseError("project takes 1 or 2", l.number);
        } else if (l.keyword == "send") {
            expect_tokens(l, 3);
            sends.push_back(&l);
        } else {
            throw ParseError("unknown keyword '" + l.keyword + "'", l.number);
        }
    }
    const int last = lines.empty() ? 1 : lines.back().number;
    if (identity) return identity_map(source);
    if (left || factor) {
        if (!left || !factor) throw ParseError("a projection needs 'product A B' and 'project 1|2'", last);
        auto prod = std::make_shared<const SimplicialSet>(
            with_line(last, [&] { return product(*left, *right, std::nullopt, ProductCap::allow_truncation); }));
        return product_projection(prod, left, right, *factor - 1);
    }
    if (!source || !target) throw ParseError("a map needs 'source' and 'target'", last);
    std::map<SimplexRef, SimplexId> assignment;
    for (const Line* l : sends) {
        const int n = static_cast<int>(to_integer(l->tokens[0], l->number));
        if (n < 0 || n > std::min(source->cap(), target->cap())) throw ParseError("dimension out of range", l->number);
        auto s = source->find(n, l->tokens[1]);
        auto t = target->find(n, l->tokens[2]);
        if (!s) throw ParseError("unknown source simplex '" + l->tokens[1] + "'", l->number);
        if (!t) throw ParseError("unknown target simplex '" + l->tokens[2] + "'", l->number);
        assignment[{n, *s}] = *t;
    }
    SimplicialMap f = with_line(last, [&] { return map_from_nondegenerate(source, target, assignment); });
    auto violations = validate(f);
    if (!violations.empty())
        throw StructuralError("map is not simplicial: " + violations.front().identity + " at " +
                              source->name(violations.front().dim, violations.front().simplex));
    return f;
}

// ---- sites and presheaves -----------------------------------------------------

SiteFile parse_site(const std::string& text, const std::filesystem::path& directory) {
    const auto lines = content_lines(text, "site");
    std::shared_ptr<const SimplicialSet> base;
    std::optional<int> cap;
    std::vector<std::vector<int>> facets;
    std::vector<const Line*> objects, covers, presheaf_lines;
    for (const auto& l : lines) {
        if (l.keyword == "base") {
            expect_tokens(l, 1);
            base = std::make_shared<const SimplicialSet>(load_simplicial_set(directory / l.tokens[0]));
        } else if (l.keyword == "cap") {
            expect_tokens(l, 1);
            cap = static_cast<int>(to_integer(l.tokens[0], l.number));
        } else if (l.keyword == "facet") {
            std::vector<int> f;
            for (const auto& t : l.tokens) f.push_back(static_cast<int>(to_integer(t, l.number)));
            facets.push_back(std::move(f));
        } else if (l.keyword == "object") {
            objects.push_back(&l);
        } else if (l.keyword == "cover") {
            covers.push_back(&l);
        } else if (l.keyword == "presheaf" || l.keyword == "sections" || l.keyword == "restrict") {
            presheaf_lines.push_back(&l);
        } else {
            throw ParseError("unknown keyword '" + l.keyword + "'", l.number);
        }
    }
    const int last = lines.empty() ? 1 : lines.back().number;
    if (!base) {
        if (facets.empty()) throw ParseError("a site needs 'base PATH' or inline facets", last);
        int top = 0;
        for (const auto& f : facets) top = std::max(top, static_cast<int>(f.size()) - 1);
        base = std::make_shared<const SimplicialSet>(with_line(last, [&] { return from_simplicial_complex(facets, cap.value_or(top)); }));
    }

    std::vector<SiteObject> objs;
    std::map<std::string, int> ids;
    for (const Line* l : objects) {
        if (l->tokens.size() < 2) throw ParseError("object needs a name and generators", l->number);
        std::vector<std::string> gens(l->tokens.begin() + 1, l->tokens.end());
        SubSet cells = with_line(l->number, [&] { return closure_of_names(*base, gens); });
        if (!ids.emplace(l->tokens[0], static_cast<int>(objs.size())).second)
            throw ParseError("duplicate object '" + l->tokens[0] + "'", l->number);
        objs.push_back({l->tokens[0], std::move(cells)});
    }
    auto object_id = [&](const std::string& name, int line) {
        auto it = ids.find(name);
        if (it == ids.end()) throw ParseError("unknown object '" + name + "'", line);
        return it->second;
    };
    std::vector<std::vector<FiniteSite::Cover>> cover_lists(objs.size());
    for (const Line* l : covers) {
        if (l->tokens.size() < 2) throw ParseError("cover needs an object and members", l->number);
        FiniteSite::Cover c;
        for (std::size_t i = 1; i < l->tokens.size(); ++i) c.push_back(object_id(l->tokens[i], l->number));
        cover_lists[object_id(l->tokens[0], l->number)].push_back(std::move(c));
    }
    auto site = std::make_shared<const FiniteSite>(
        with_line(objects.empty() ? last : objects.front()->number, [&] { return FiniteSite(base, objs, cover_lists); }));

    SiteFile out{site, {}};
    for (std::size_t i = 0; i < presheaf_lines.size(); ++i) {
        const Line* l = presheaf_lines[i];
        if (l->keyword != "presheaf") throw ParseError("'" + l->keyword + "' outside a table presheaf", l->number);
        if (l->tokens.size() < 2) throw ParseError("presheaf needs a name and a kind", l->number);
        const std::string& name = l->tokens[0];
        const std::string& kind = l->tokens[1];
        Presheaf f;
        if (kind == "constant") {
            std::vector<std::string> values(l->tokens.begin() + 2, l->tokens.end());
            f = with_line(l->number, [&] { return constant_presheaf(site, values); });
        } else if (kind == "vertex-functions" || kind == "maps-to-simplex") {
            expect_tokens(*l, 3);
            const int k = static_cast<int>(to_integer(l->tokens[2], l->number));
            f = with_line(l->number, [&] { return kind == "vertex-functions" ? vertex_functions(site, k) : maps_to_simplex(site, k); });
        } else if (kind == "table") {
            expect_tokens(*l, 2);
            std::map<int, std::vector<std::string>> sections;
            std::map<std::pair<int, int>, std::map<std::string, std::string>> rules;
            while (i + 1 < presheaf_lines.size() && presheaf_lines[i + 1]->keyword != "presheaf") {
                const Line* r = presheaf_lines[++i];
                if (r->keyword == "sections") {
                    if (r->tokens.empty()) throw ParseError("sections needs an object", r->number);
                    sections[object_id(r->tokens[0], r->number)] = {r->tokens.begin() + 1, r->tokens.end()};
                } else {
                    if (r->tokens.size() < 2) throw ParseError("restrict needs two objects", r->number);
                    auto& rule = rules[{object_id(r->tokens[0], r->number), object_id(r->tokens[1], r->number)}];
                    for (std::size_t t = 2; t < r->tokens.size(); ++t) {
                        const auto eq = r->tokens[t].find('=');
                        if (eq == std::string::npos) throw ParseError("restriction entries read 'from=to'", r->number);
                        rule[r->tokens[t].substr(0, eq)] = r->tokens[t].substr(eq + 1);
                    }
                }
            }
            for (int u = 0; u < site->object_count(); ++u)
                if (!sections.count(u)) throw ParseError("no sections for object '" + site->object(u).name + "'", l->number);
            f = with_line(l->number, [&] {
                return make_presheaf(
                    site, [&](int u) { return sections.at(u); },
                    [&](int u, int v, const std::string& s) {
                        if (u == v) return s;
                        if (sections.at(v).size() == 1) return sections.at(v).front();
                        auto rule = rules.find({u, v});
                        if (rule == rules.end())
                            throw StructuralError("missing restriction " + site->object(u).name + " -> " + site->object(v).name);
                        auto it = rule->second.find(s);
                        if (it == rule->second.end())
                            throw StructuralError("section '" + s + "' has no restriction to " + site->object(v).name);
                        return it->second;
                    });
            });
        } else {
            throw ParseError("unknown presheaf kind '" + kind + "'", l->number);
        }
        with_line(l->number, [&] { validate(f); });
        out.presheaves.push_back({name, std::move(f)});
    }
    return out;
}

SiteFile load_site(const std::filesystem::path& path) { return parse_site(read_file(path), path.parent_path()); }

// ---- U(1) bundles -------------------------------------------------------------

U1BundleData parse_u1_bundle(const std::string& text) {
    U1BundleData b;
    for (const auto& l : content_lines(text, "u1bundle")) {
        if (l.keyword == "triangle") {
            auto [head, tail] = split_head(l, 4);
            U1Triangle t;
            for (int i = 0; i < 3; ++i) t.vertices[i] = static_cast<int>(to_integer(head[i], l.number));
            t.orientation = static_cast<int>(to_integer(head[3], l.number));
            t.connection = with_line(l.number, [&] { return parse_form(2, 1, tail); });
            b.triangles.push_back(std::move(t));
        } else if (l.keyword == "transition") {
            auto [head, tail] = split_head(l, 5);
            U1Transition tr;
            tr.edge = {static_cast<int>(to_integer(head[0], l.number)), static_cast<int>(to_integer(head[1], l.number))};
            tr.from = static_cast<int>(to_integer(head[2], l.number));
            tr.to = static_cast<int>(to_integer(head[3], l.number));
            tr.winding = to_integer(head[4], l.number);
            const PolyForm p = with_line(l.number, [&] { return parse_form(1, 0, tail); });
            tr.potential = p.is_zero() ? Polynomial(1) : p.coefficient(0);
            if (tr.from < 0 || tr.to < 0) throw ParseError("triangle index out of range", l.number);
            b.transitions.push_back(std::move(tr));
        } else {
            throw ParseError("unknown keyword '" + l.keyword + "'", l.number);
        }
    }
    for (const auto& tr : b.transitions)
        if (tr.from >= static_cast<int>(b.triangles.size()) || tr.to >= static_cast<int>(b.triangles.size()))
            throw StructuralError("transition names a triangle that does not exist");
    return b;
}

std::string serialize(const U1BundleData& b) {
    std::ostringstream out;
    out << "smoothset u1bundle 1\n";
    auto form_text = [](const PolyForm& w) { return w.is_zero() ? std::string("0") : to_text(w); };
    for (const auto& t : b.triangles)
        out << "triangle " << t.vertices[0] << " " << t.vertices[1] << " " << t.vertices[2] << " " << t.orientation << " "
            << form_text(t.connection) << "\n";
    for (const auto& tr : b.transitions)
        out << "transition " << tr.edge[0] << " " << tr.edge[1] << " " << tr.from << " " << tr.to << " " << tr.winding << " "
            << form_text(tr.potential.is_zero() ? PolyForm(1, 0) : PolyForm::function(1, tr.potential)) << "\n";
    return out.str();
}

// ---- extension inputs -----------------------------------------------------------

MatrixLieAlgebra parse_algebra(const std::string& text) {
    const auto t = split(text);
    if (t == std::vector<std::string>{"u1"}) return MatrixLieAlgebra::abelian();
    if (t == std::vector<std::string>{"sl2"}) return MatrixLieAlgebra::sl2();
    if (t.size() == 2 && t[0] == "gl") return MatrixLieAlgebra::gl(static_cast<int>(to_integer(t[1], 0)));
    throw ParameterError("algebra must be 'u1', 'sl2' or 'gl N'");
}

std::string to_text(const LieValuedForm& w) {
    std::ostringstream out;
    bool any = false;
    for (int i = 0; i < w.size; ++i)
        for (int j = 0; j < w.size; ++j)
            if (!w.at(i, j).is_zero()) {
                out << (any ? "\n" : "") << "entry " << i << " " << j << " " << to_text(w.at(i, j));
                any = true;
            }
    return any ? out.str() : "0";
}

ExtendInput parse_extend(const std::string& text) {
    const auto lines = content_lines(text, "extend");
    if (lines.empty() || lines.front().keyword != "mode" || lines.front().tokens.size() != 1)
        throw ParseError("first line after the header must be 'mode faces|horn|extra-degeneracy'", lines.empty() ? 1 : lines.front().number);
    const std::string mode = lines.front().tokens[0];
    std::map<std::string, long> numbers;
    MatrixLieAlgebra algebra = MatrixLieAlgebra::abelian();
    std::vector<const Line*> data;
    std::vector<std::vector<double>> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.keyword == "dim" || l.keyword == "degree" || l.keyword == "n" || l.keyword == "k" || l.keyword == "samples") {
            expect_tokens(l, 1);
            numbers[l.keyword] = to_integer(l.tokens[0], l.number);
        } else if (l.keyword == "algebra") {
            algebra = with_line(l.number, [&] { return parse_algebra(l.rest); });
        } else if (l.keyword == "face" || l.keyword == "entry") {
            data.push_back(&l);
        } else if (l.keyword == "point") {
            std::vector<double> p;
            for (const auto& t : l.tokens) p.push_back(to_double(t, l.number));
            points.push_back(std::move(p));
        } else {
            throw ParseError("unknown keyword '" + l.keyword + "'", l.number);
        }
    }
    const int last = lines.back().number;
    auto need = [&](const std::string& key) {
        auto it = numbers.find(key);
        if (it == numbers.end()) throw ParseError("missing '" + key + "'", last);
        return static_cast<int>(it->second);
    };

    if (mode == "faces") {
        FaceExtendInput in{need("dim"), numbers.count("degree") ? need("degree") : 0, {}};
        if (in.dim < 1 || in.degree < 0) throw ParseError("dimension must be positive and degree nonnegative", last);
        in.data.assign(in.dim, std::nullopt);
        for (const Line* l : data) {
            if (l->keyword != "face") throw ParseError("faces mode takes 'face' lines", l->number);
            auto [head, tail] = split_head(*l, 1);
            const long i = to_integer(head[0], l->number);
            if (i < 1 || i > in.dim) throw ParseError("face index out of range", l->number);
            in.data[i - 1] = with_line(l->number, [&] { return parse_form(in.dim, in.degree, tail); });
        }
        return in;
    }
    if (mode == "horn") {
        HornFillInput in{need("n"), need("k"), algebra, {}};
        if (in.n < 1 || in.k < 0 || in.k > in.n) throw ParseError("horn index out of range", last);
        in.faces.assign(in.n + 1, LieValuedForm(algebra.size, in.n - 1, 1));
        for (const Line* l : data) {
            if (l->keyword != "face") throw ParseError("horn mode takes 'face I ROW COL TERMS' lines", l->number);
            auto [head, tail] = split_head(*l, 3);
            const long i = to_integer(head[0], l->number);
            const long r = to_integer(head[1], l->number);
            const long c = to_integer(head[2], l->number);
            if (i < 0 || i > in.n || i == in.k) throw ParseError("face index out of range or equal to k", l->number);
            if (r < 0 || c < 0 || r >= algebra.size || c >= algebra.size) throw ParseError("matrix entry out of range", l->number);
            in.faces[i].at(r, c) = with_line(l->number, [&] { return parse_form(in.n - 1, 1, tail); });
        }
        for (int i = 0; i <= in.n; ++i)
            if (i != in.k && !in_algebra(algebra, in.faces[i])) throw ParseError("face " + std::to_string(i) + " is not in the algebra", last);
        return in;
    }
    if (mode == "extra-degeneracy") {
        ExtraDegeneracyInput in{algebra, LieValuedForm(algebra.size, need("dim"), 1), std::move(points),
                                numbers.count("samples") ? need("samples") : 100};
        if (in.form.dim < 1) throw ParseError("dimension must be positive", last);
        for (const Line* l : data) {
            if (l->keyword != "entry") throw ParseError("extra-degeneracy mode takes 'entry ROW COL TERMS' lines", l->number);
            auto [head, tail] = split_head(*l, 2);
            const long r = to_integer(head[0], l->number);
            const long c = to_integer(head[1], l->number);
            if (r < 0 || c < 0 || r >= algebra.size || c >= algebra.size) throw ParseError("matrix entry out of range", l->number);
            in.form.at(r, c) = with_line(l->number, [&] { return parse_form(in.form.dim, 1, tail); });
        }
        if (!in_algebra(algebra, in.form)) throw ParseError("form is not in the algebra", last);
        for (const auto& p : in.points)
            if (static_cast<int>(p.size()) != in.form.dim + 2) throw ParseError("points need " + std::to_string(in.form.dim + 2) + " coordinates", last);
        return in;
    }
    throw ParseError("unknown mode '" + mode + "'", lines.front().number);
}

}  // namespace smoothset
