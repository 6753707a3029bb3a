#include "smoothset/sheaf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "smoothset/errors.hpp"

namespace smoothset {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;  // the smallest index stays the root
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

// ---- site -------------------------------------------------------------------

FiniteSite::FiniteSite(std::shared_ptr<const SimplicialSet> base, std::vector<SiteObject> objects,
                       std::vector<std::vector<Cover>> covers)
    : base_(std::move(base)), objects_(std::move(objects)), covers_(std::move(covers)) {
    const int n = object_count();
    if (covers_.size() < objects_.size()) covers_.resize(objects_.size());
    if (covers_.size() != objects_.size()) throw StructuralError("covers given for unknown objects");
    for (int u = 0; u < n; ++u) {
        const auto& o = objects_[u];
        if (o.cells.member.size() != static_cast<std::size_t>(base_->cap() + 1))
            throw StructuralError("object '" + o.name + "' does not match the base");
        if (subset_empty(o.cells)) throw StructuralError("object '" + o.name + "' is empty");
        if (!is_closed(*base_, o.cells)) throw StructuralError("object '" + o.name + "' is not a sub-complex");
        for (int v = 0; v < u; ++v) {
            if (objects_[v].name == o.name) throw StructuralError("duplicate object name '" + o.name + "'");
            if (objects_[v].cells == o.cells)
                throw StructuralError("objects '" + objects_[v].name + "' and '" + o.name + "' coincide");
        }
    }
    leq_.assign(n, std::vector<bool>(n));
    meet_.assign(n, std::vector<std::optional<int>>(n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) leq_[u][v] = subset_leq(objects_[u].cells, objects_[v].cells);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            SubSet w = subset_intersection(objects_[u].cells, objects_[v].cells);
            if (subset_empty(w)) continue;
            for (int x = 0; x < n; ++x)
                if (objects_[x].cells == w) meet_[u][v] = x;
            if (!meet_[u][v])
                throw StructuralError("intersection of '" + objects_[u].name + "' and '" + objects_[v].name +
                                      "' is not an object");
        }
    for (int u = 0; u < n; ++u)
        for (const auto& c : covers_[u]) {
            if (c.empty()) throw StructuralError("empty cover of '" + objects_[u].name + "'");
            SubSet un = empty_subset(*base_);
            for (int m : c) {
                if (m < 0 || m >= n) throw StructuralError("cover member out of range");
                if (!leq_[m][u])
                    throw StructuralError("cover member '" + objects_[m].name + "' is not inside '" +
                                          objects_[u].name + "'");
                un = subset_union(un, objects_[m].cells);
            }
            if (!(un == objects_[u].cells))
                throw StructuralError("cover of '" + objects_[u].name + "' does not exhaust it");
        }
}

std::optional<int> FiniteSite::find(std::string_view name) const {
    for (int u = 0; u < object_count(); ++u)
        if (objects_[u].name == name) return u;
    return std::nullopt;
}

// ---- presheaves -------------------------------------------------------------

void validate(const Presheaf& f) {
    const auto& site = *f.site;
    const int n = site.object_count();
    if (static_cast<int>(f.sections.size()) != n || static_cast<int>(f.restriction.size()) != n)
        throw StructuralError("presheaf is not defined on every object of the site");
    for (int u = 0; u < n; ++u) {
        if (static_cast<int>(f.restriction[u].size()) != n)
            throw StructuralError("restriction table of '" + site.object(u).name + "' is incomplete");
        for (int v = 0; v < n; ++v) {
            const auto& r = f.restriction[u][v];
            if (!site.leq(v, u)) {
                if (!r.empty()) throw StructuralError("restriction given where no inclusion exists");
                continue;
            }
            if (r.size() != f.size(u))
                throw StructuralError("restriction '" + site.object(u).name + "' -> '" + site.object(v).name +
                                      "' is not total");
            for (int t : r)
                if (t < 0 || static_cast<std::size_t>(t) >= f.size(v))
                    throw StructuralError("restriction lands outside F('" + site.object(v).name + "')");
        }
        for (std::size_t s = 0; s < f.size(u); ++s)
            if (f.restriction[u][u][s] != static_cast<int>(s))
                throw StructuralError("restriction to '" + site.object(u).name + "' itself is not the identity");
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!site.leq(v, u)) continue;
            for (int w = 0; w < n; ++w) {
                if (!site.leq(w, v)) continue;
                for (std::size_t s = 0; s < f.size(u); ++s)
                    if (f.restrict(v, w, f.restrict(u, v, s)) != f.restrict(u, w, s))
                        throw StructuralError("restrictions do not compose along '" + site.object(w).name +
                                              "' <= '" + site.object(v).name + "' <= '" + site.object(u).name + "'");
            }
        }
}

Presheaf make_presheaf(std::shared_ptr<const FiniteSite> site,
                       const std::function<std::vector<std::string>(int)>& sections,
                       const std::function<std::string(int u, int v, const std::string& s)>& restrict) {
    Presheaf f;
    f.site = site;
    const int n = site->object_count();
    for (int u = 0; u < n; ++u) f.sections.push_back(sections(u));
    f.restriction.assign(n, std::vector<std::vector<int>>(n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!site->leq(v, u)) continue;
            for (const auto& s : f.sections[u]) {
                const std::string t = restrict(u, v, s);
                auto it = std::find(f.sections[v].begin(), f.sections[v].end(), t);
                if (it == f.sections[v].end())
                    throw StructuralError("restriction of '" + s + "' to '" + site->object(v).name + "' is unknown");
                f.restriction[u][v].push_back(static_cast<int>(it - f.sections[v].begin()));
            }
        }
    validate(f);
    return f;
}

Presheaf constant_presheaf(std::shared_ptr<const FiniteSite> site, const std::vector<std::string>& values) {
    return make_presheaf(
        site, [&](int) { return values; }, [](int, int, const std::string& s) { return s; });
}

namespace {

std::vector<SimplexId> object_vertices(const FiniteSite& site, int u) {
    std::vector<SimplexId> out;
    for (SimplexId v = 0; v < static_cast<SimplexId>(site.base().size(0)); ++v)
        if (site.object(u).cells.contains(0, v)) out.push_back(v);
    return out;
}

// Labels are written as "name=value" pairs over the vertices of the object.
std::string encode(const SimplicialSet& x, const std::vector<SimplexId>& verts, const std::vector<int>& values) {
    std::string s;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i) s += ',';
        s += x.name(0, verts[i]) + "=" + std::to_string(values[i]);
    }
    return s;
}

std::string restrict_labeling(const FiniteSite& site, int v, const std::string& s) {
    std::map<std::string, std::string> value;
    std::istringstream in(s);
    std::string kv;
    while (std::getline(in, kv, ',')) {
        auto eq = kv.find('=');
        value[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    std::string out;
    bool first = true;
    for (SimplexId w : object_vertices(site, v)) {
        if (!first) out += ',';
        first = false;
        out += site.base().name(0, w) + "=" + value.at(site.base().name(0, w));
    }
    return out;
}

std::vector<std::string> labelings(const FiniteSite& site, int u, int k,
                                   const std::function<bool(const std::map<SimplexId, int>&)>& accept) {
    auto verts = object_vertices(site, u);
    std::vector<std::string> out;
    std::vector<int> values(verts.size(), 0);
    while (true) {
        std::map<SimplexId, int> m;
        for (std::size_t i = 0; i < verts.size(); ++i) m[verts[i]] = values[i];
        if (accept(m)) out.push_back(encode(site.base(), verts, values));
        std::size_t i = 0;
        while (i < values.size() && ++values[i] == k) values[i++] = 0;
        if (i == values.size()) break;
    }
    return out;
}

}  // namespace

Presheaf vertex_functions(std::shared_ptr<const FiniteSite> site, int k) {
    if (k < 1) throw ParameterError("need at least one value");
    return make_presheaf(
        site, [&](int u) { return labelings(*site, u, k, [](const auto&) { return true; }); },
        [&](int, int v, const std::string& s) { return restrict_labeling(*site, v, s); });
}

Presheaf maps_to_simplex(std::shared_ptr<const FiniteSite> site, int m) {
    if (m < 0) throw ParameterError("target dimension must be nonnegative");
    const auto& x = site->base();
    auto monotone = [&](int u, const std::map<SimplexId, int>& f) {
        for (int n = 1; n <= x.cap(); ++n)
            for (SimplexId s = 0; s < static_cast<SimplexId>(x.size(n)); ++s) {
                if (!site->object(u).cells.contains(n, s)) continue;
                for (int k = 0; k < n; ++k)
                    if (f.at(x.vertex(n, s, k)) > f.at(x.vertex(n, s, k + 1))) return false;
            }
        return true;
    };
    return make_presheaf(
        site, [&](int u) { return labelings(*site, u, m + 1, [&](const auto& f) { return monotone(u, f); }); },
        [&](int, int v, const std::string& s) { return restrict_labeling(*site, v, s); });
}

// ---- sheaf condition --------------------------------------------------------

namespace {

// Calls visit(family) for every family over the cover that agrees on pairwise intersections.
void compatible_families(const Presheaf& f, const FiniteSite::Cover& cover,
                         const std::function<void(const std::vector<int>&)>& visit) {
    const auto& site = *f.site;
    std::vector<int> family(cover.size(), 0);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == cover.size()) {
            visit(family);
            return;
        }
        for (std::size_t s = 0; s < f.size(cover[i]); ++s) {
            family[i] = static_cast<int>(s);
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                auto w = site.meet(cover[i], cover[j]);
                if (w && f.restrict(cover[i], *w, family[i]) != f.restrict(cover[j], *w, family[j])) ok = false;
            }
            if (ok) go(i + 1);
        }
    };
    go(0);
}

}  // namespace

SheafStatus check_status(const Presheaf& f) {
    validate(f);
    SheafStatus st;
    const auto& site = *f.site;
    for (int u = 0; u < site.object_count(); ++u)
        for (std::size_t c = 0; c < site.covers(u).size(); ++c) {
            const auto& cover = site.covers(u)[c];
            compatible_families(f, cover, [&](const std::vector<int>& family) {
                std::size_t gluings = 0;
                for (std::size_t s = 0; s < f.size(u); ++s) {
                    bool match = true;
                    for (std::size_t i = 0; i < cover.size() && match; ++i)
                        match = f.restrict(u, cover[i], static_cast<int>(s)) == family[i];
                    if (match) ++gluings;
                }
                if (gluings == 1) return;
                if (gluings > 1) st.separated = false;
                st.sheaf = false;
                // prefer reporting a separation failure
                if (!st.witness || (gluings > 1 && st.witness->gluings == 0))
                    st.witness = GluingWitness{u, static_cast<int>(c), family, gluings};
            });
        }
    return st;
}

std::string describe(const Presheaf& f, const GluingWitness& w) {
    const auto& site = *f.site;
    std::ostringstream out;
    const auto& cover = site.covers(w.object)[w.cover];
    out << "cover {";
    for (std::size_t i = 0; i < cover.size(); ++i) out << (i ? ", " : "") << site.object(cover[i]).name;
    out << "} of " << site.object(w.object).name << ", family (";
    for (std::size_t i = 0; i < cover.size(); ++i) out << (i ? ", " : "") << f.sections[cover[i]][w.family[i]];
    out << ") has " << w.gluings << " gluings";
    return out.str();
}

// ---- natural transformations ------------------------------------------------

bool is_natural(const Presheaf& f, const Presheaf& g, const NaturalTransformation& eta) {
    const auto& site = *f.site;
    const int n = site.object_count();
    if (static_cast<int>(eta.size()) != n) return false;
    for (int u = 0; u < n; ++u) {
        if (eta[u].size() != f.size(u)) return false;
        for (int t : eta[u])
            if (t < 0 || static_cast<std::size_t>(t) >= g.size(u)) return false;
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!site.leq(v, u)) continue;
            for (std::size_t s = 0; s < f.size(u); ++s)
                if (g.restrict(u, v, eta[u][s]) != eta[v][f.restrict(u, v, static_cast<int>(s))]) return false;
        }
    return true;
}

NaturalTransformation compose(const NaturalTransformation& second, const NaturalTransformation& first) {
    NaturalTransformation out(first.size());
    for (std::size_t u = 0; u < first.size(); ++u)
        for (int s : first[u]) out[u].push_back(second[u][s]);
    return out;
}

NaturalTransformation identity_transformation(const Presheaf& f) {
    NaturalTransformation out(f.sections.size());
    for (std::size_t u = 0; u < out.size(); ++u) {
        out[u].resize(f.size(u));
        std::iota(out[u].begin(), out[u].end(), 0);
    }
    return out;
}

bool is_isomorphism(const Presheaf& f, const Presheaf& g, const NaturalTransformation& eta) {
    if (!is_natural(f, g, eta)) return false;
    for (std::size_t u = 0; u < eta.size(); ++u) {
        if (f.size(u) != g.size(u)) return false;
        std::set<int> image(eta[u].begin(), eta[u].end());
        if (image.size() != g.size(u)) return false;
    }
    return true;
}

namespace {

// Backtracking over (object, section) cells; fixed[u][s] >= 0 pins a value.
std::vector<NaturalTransformation> search_transformations(const Presheaf& f, const Presheaf& g,
                                                          const NaturalTransformation& fixed, std::size_t limit) {
    const auto& site = *f.site;
    const int n = site.object_count();
    std::vector<std::pair<int, int>> cells;
    for (int u = 0; u < n; ++u)
        for (std::size_t s = 0; s < f.size(u); ++s) cells.emplace_back(u, static_cast<int>(s));
    NaturalTransformation eta(n);
    std::vector<std::vector<bool>> assigned(n);
    for (int u = 0; u < n; ++u) {
        eta[u].assign(f.size(u), -1);
        assigned[u].assign(f.size(u), false);
    }
    auto consistent = [&](int u, int s) {
        for (int v = 0; v < n; ++v) {
            if (site.leq(v, u)) {
                int t = f.restrict(u, v, s);
                if (assigned[v][t] && g.restrict(u, v, eta[u][s]) != eta[v][t]) return false;
            }
            if (site.leq(u, v) && v != u)
                for (std::size_t r = 0; r < f.size(v); ++r)
                    if (assigned[v][r] && f.restrict(v, u, static_cast<int>(r)) == s &&
                        g.restrict(v, u, eta[v][r]) != eta[u][s])
                        return false;
        }
        return true;
    };
    std::vector<NaturalTransformation> out;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (out.size() >= limit) return;
        if (i == cells.size()) {
            out.push_back(eta);
            return;
        }
        auto [u, s] = cells[i];
        int lo = 0, hi = static_cast<int>(g.size(u));
        if (!fixed.empty() && fixed[u][s] >= 0) {
            lo = fixed[u][s];
            hi = lo + 1;
        }
        for (int t = lo; t < hi; ++t) {
            eta[u][s] = t;
            assigned[u][s] = true;
            if (consistent(u, s)) go(i + 1);
            assigned[u][s] = false;
        }
        eta[u][s] = -1;
    };
    go(0);
    return out;
}

}  // namespace

std::vector<NaturalTransformation> natural_transformations(const Presheaf& f, const Presheaf& g, std::size_t limit) {
    return search_transformations(f, g, {}, limit);
}

std::size_t count_factorizations(const Presheaf& f, const Presheaf& s, const NaturalTransformation& unit,
                                 const Presheaf& g, const NaturalTransformation& phi, std::size_t limit) {
    const int n = f.site->object_count();
    NaturalTransformation fixed(n);
    for (int u = 0; u < n; ++u) {
        fixed[u].assign(s.size(u), -1);
        for (std::size_t x = 0; x < f.size(u); ++x) {
            int& slot = fixed[u][unit[u][x]];
            if (slot >= 0 && slot != phi[u][x]) return 0;
            slot = phi[u][x];
        }
    }
    return search_transformations(s, g, fixed, limit).size();
}

// ---- separated quotient -----------------------------------------------------

namespace {

// Quotient of F by per-object partitions, named after the smallest member of each class.
QuotientResult quotient_by(const Presheaf& f, std::vector<UnionFind>& classes) {
    const int n = f.site->object_count();
    QuotientResult q;
    q.result.site = f.site;
    q.result.sections.resize(n);
    q.map.resize(n);
    for (int u = 0; u < n; ++u) {
        std::map<std::size_t, int> index;
        for (std::size_t s = 0; s < f.size(u); ++s) {
            auto root = classes[u].find(s);
            auto [it, fresh] = index.emplace(root, static_cast<int>(q.result.sections[u].size()));
            if (fresh) q.result.sections[u].push_back(f.sections[u][root]);
            q.map[u].push_back(it->second);
        }
    }
    q.result.restriction.assign(n, std::vector<std::vector<int>>(n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!f.site->leq(v, u)) continue;
            auto& r = q.result.restriction[u][v];
            r.assign(q.result.size(u), -1);
            for (std::size_t s = 0; s < f.size(u); ++s) r[q.map[u][s]] = q.map[v][f.restrict(u, v, static_cast<int>(s))];
        }
    validate(q.result);
    return q;
}

// Merges classes until equal sections restrict to equal classes.
bool close_under_restriction(const Presheaf& f, std::vector<UnionFind>& classes) {
    const auto& site = *f.site;
    bool changed = false;
    for (int u = 0; u < site.object_count(); ++u)
        for (int v = 0; v < site.object_count(); ++v) {
            if (!site.leq(v, u) || u == v) continue;
            for (std::size_t s = 0; s < f.size(u); ++s) {
                auto r = classes[u].find(s);
                if (r != s) changed |= classes[v].unite(f.restrict(u, v, static_cast<int>(s)),
                                                        f.restrict(u, v, static_cast<int>(r)));
            }
        }
    return changed;
}

}  // namespace

QuotientResult separated_quotient(const Presheaf& f) {
    validate(f);
    const auto& site = *f.site;
    const int n = site.object_count();
    std::vector<UnionFind> classes;
    for (int u = 0; u < n; ++u) classes.emplace_back(f.size(u));
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u)
            for (const auto& cover : site.covers(u))
                for (std::size_t s = 0; s < f.size(u); ++s)
                    for (std::size_t t = s + 1; t < f.size(u); ++t) {
                        if (classes[u].find(s) == classes[u].find(t)) continue;
                        bool agree = true;
                        for (int m : cover)
                            if (classes[m].find(f.restrict(u, m, static_cast<int>(s))) !=
                                classes[m].find(f.restrict(u, m, static_cast<int>(t)))) {
                                agree = false;
                                break;
                            }
                        if (agree) changed |= classes[u].unite(s, t);
                    }
        changed |= close_under_restriction(f, classes);
    }
    return quotient_by(f, classes);
}

// ---- plus construction ------------------------------------------------------

namespace {

struct LocalDatum {
    std::vector<int> members;
    std::vector<int> family;
    auto operator<=>(const LocalDatum&) const = default;
};

std::string datum_name(const Presheaf& f, const LocalDatum& d) {
    if (d.members.size() == 1) return f.sections[d.members[0]][d.family[0]];
    std::string s = "{";
    for (std::size_t i = 0; i < d.members.size(); ++i) {
        if (i) s += "; ";
        s += f.site->object(d.members[i]).name + ":" + f.sections[d.members[i]][d.family[i]];
    }
    return s + "}";
}

QuotientResult plus_construction(const Presheaf& f) {
    const auto& site = *f.site;
    const int n = site.object_count();
    std::vector<std::vector<LocalDatum>> data(n);
    std::vector<std::map<LocalDatum, std::size_t>> index(n);
    auto add = [&](int u, LocalDatum d) {
        if (index[u].count(d)) return;
        index[u][d] = data[u].size();
        data[u].push_back(std::move(d));
    };
    for (int u = 0; u < n; ++u) {
        for (std::size_t s = 0; s < f.size(u); ++s) add(u, {{u}, {static_cast<int>(s)}});
        for (const auto& cover : site.covers(u))
            compatible_families(f, cover, [&](const std::vector<int>& fam) { add(u, {cover, fam}); });
    }

    auto restrict_datum = [&](int u, int v, const LocalDatum& d) -> std::size_t {
        for (std::size_t i = 0; i < d.members.size(); ++i)
            if (site.leq(v, d.members[i])) return index[v].at({{v}, {f.restrict(d.members[i], v, d.family[i])}});
        for (const auto& cover : site.covers(v)) {
            LocalDatum r{cover, {}};
            for (int w : cover) {
                auto owner = std::find_if(d.members.begin(), d.members.end(), [&](int m) { return site.leq(w, m); });
                if (owner == d.members.end()) break;
                r.family.push_back(f.restrict(*owner, w, d.family[owner - d.members.begin()]));
            }
            if (r.family.size() == cover.size()) return index[v].at(r);
        }
        throw StructuralError("no declared cover of '" + site.object(v).name + "' refines the restriction of a cover of '" +
                              site.object(u).name + "'");
    };

    // raw presheaf of local data; restrictions are fixed choices, made coherent by the quotient
    Presheaf raw;
    raw.site = f.site;
    raw.sections.resize(n);
    raw.restriction.assign(n, std::vector<std::vector<int>>(n));
    for (int u = 0; u < n; ++u)
        for (const auto& d : data[u]) raw.sections[u].push_back(datum_name(f, d));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!site.leq(v, u)) continue;
            for (std::size_t k = 0; k < data[u].size(); ++k)
                raw.restriction[u][v].push_back(u == v ? static_cast<int>(k)
                                                       : static_cast<int>(restrict_datum(u, v, data[u][k])));
        }

    std::vector<UnionFind> classes;
    for (int u = 0; u < n; ++u) classes.emplace_back(data[u].size());
    for (int u = 0; u < n; ++u)
        for (std::size_t a = 0; a < data[u].size(); ++a)
            for (std::size_t b = a + 1; b < data[u].size(); ++b) {
                const auto &x = data[u][a], &y = data[u][b];
                bool agree = true;
                for (std::size_t i = 0; i < x.members.size() && agree; ++i)
                    for (std::size_t j = 0; j < y.members.size() && agree; ++j) {
                        auto w = site.meet(x.members[i], y.members[j]);
                        if (w && f.restrict(x.members[i], *w, x.family[i]) != f.restrict(y.members[j], *w, y.family[j]))
                            agree = false;
                    }
                if (agree) classes[u].unite(a, b);
            }
    bool changed = true;
    while (changed) {
        changed = close_under_restriction(raw, classes);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (!site.leq(v, u)) continue;
                for (int w = 0; w < n; ++w) {
                    if (!site.leq(w, v)) continue;
                    for (std::size_t k = 0; k < data[u].size(); ++k)
                        changed |= classes[w].unite(raw.restrict(v, w, raw.restrict(u, v, static_cast<int>(k))),
                                                    raw.restrict(u, w, static_cast<int>(k)));
                }
            }
    }

    // the raw tables need not compose, so only the quotient is validated
    QuotientResult q;
    q.result.site = f.site;
    q.result.sections.resize(n);
    std::vector<std::vector<int>> cls(n);
    for (int u = 0; u < n; ++u) {
        std::map<std::size_t, int> idx;
        for (std::size_t k = 0; k < data[u].size(); ++k) {
            auto root = classes[u].find(k);
            auto [it, fresh] = idx.emplace(root, static_cast<int>(q.result.sections[u].size()));
            if (fresh) q.result.sections[u].push_back(raw.sections[u][root]);
            cls[u].push_back(it->second);
        }
    }
    q.result.restriction.assign(n, std::vector<std::vector<int>>(n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!site.leq(v, u)) continue;
            auto& r = q.result.restriction[u][v];
            r.assign(q.result.size(u), -1);
            for (std::size_t k = 0; k < data[u].size(); ++k) r[cls[u][k]] = cls[v][raw.restriction[u][v][k]];
        }
    validate(q.result);
    q.map.resize(n);
    for (int u = 0; u < n; ++u)
        for (std::size_t s = 0; s < f.size(u); ++s) q.map[u].push_back(cls[u][s]);  // trivial data come first
    return q;
}

}  // namespace

Sheafification sheafify(const Presheaf& f) {
    validate(f);
    Sheafification out;
    out.result = f;
    out.unit = identity_transformation(f);
    constexpr int max_rounds = 4;
    for (int round = 0; round < max_rounds; ++round) {
        SheafStatus st = check_status(out.result);
        if (st.sheaf) return out;
        if (!st.separated) {
            auto q = separated_quotient(out.result);
            out.quotient_applied = true;
            out.unit = compose(q.map, out.unit);
            out.result = std::move(q.result);
        }
        auto p = plus_construction(out.result);
        ++out.rounds;
        out.unit = compose(p.map, out.unit);
        out.result = std::move(p.result);
    }
    if (!check_status(out.result).sheaf)
        throw StructuralError("sheafification did not reach a sheaf in " + std::to_string(max_rounds) + " rounds");
    return out;
}

// ---- sub-presheaves ---------------------------------------------------------

void validate_subpresheaf(const Presheaf& f, const SubPresheaf& g) {
    const auto& site = *f.site;
    if (static_cast<int>(g.size()) != site.object_count())
        throw StructuralError("sub-presheaf is not defined on every object");
    for (int u = 0; u < site.object_count(); ++u)
        if (g[u].size() != f.size(u)) throw StructuralError("sub-presheaf does not match F('" + site.object(u).name + "')");
    for (int u = 0; u < site.object_count(); ++u)
        for (int v = 0; v < site.object_count(); ++v) {
            if (!site.leq(v, u)) continue;
            for (std::size_t s = 0; s < f.size(u); ++s)
                if (g[u][s] && !g[v][f.restrict(u, v, static_cast<int>(s))])
                    throw StructuralError("sub-presheaf is not closed under restriction to '" + site.object(v).name + "'");
        }
}

Presheaf as_presheaf(const Presheaf& f, const SubPresheaf& g) {
    validate_subpresheaf(f, g);
    const int n = f.site->object_count();
    Presheaf out;
    out.site = f.site;
    std::vector<std::vector<int>> pos(n);
    out.sections.resize(n);
    for (int u = 0; u < n; ++u) {
        pos[u].assign(f.size(u), -1);
        for (std::size_t s = 0; s < f.size(u); ++s)
            if (g[u][s]) {
                pos[u][s] = static_cast<int>(out.sections[u].size());
                out.sections[u].push_back(f.sections[u][s]);
            }
    }
    out.restriction.assign(n, std::vector<std::vector<int>>(n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!f.site->leq(v, u)) continue;
            for (std::size_t s = 0; s < f.size(u); ++s)
                if (g[u][s]) out.restriction[u][v].push_back(pos[v][f.restrict(u, v, static_cast<int>(s))]);
        }
    validate(out);
    return out;
}

SubPresheafLattice union_intersection(const Presheaf& f, const SubPresheaf& g, const SubPresheaf& h) {
    validate_subpresheaf(f, g);
    validate_subpresheaf(f, h);
    const auto& site = *f.site;
    const int n = site.object_count();
    SubPresheafLattice out;
    out.meet = g;
    out.join = g;
    for (int u = 0; u < n; ++u)
        for (std::size_t s = 0; s < f.size(u); ++s) {
            out.meet[u][s] = g[u][s] && h[u][s];
            out.join[u][s] = g[u][s] || h[u][s];
        }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u)
            for (std::size_t s = 0; s < f.size(u); ++s) {
                if (out.join[u][s]) continue;
                for (const auto& cover : site.covers(u)) {
                    bool local = std::all_of(cover.begin(), cover.end(), [&](int m) {
                        return out.join[m][f.restrict(u, m, static_cast<int>(s))];
                    });
                    if (local) {
                        out.join[u][s] = changed = true;
                        break;
                    }
                }
            }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (!site.leq(v, u)) continue;
                for (std::size_t s = 0; s < f.size(u); ++s) {
                    int t = f.restrict(u, v, static_cast<int>(s));
                    if (out.join[u][s] && !out.join[v][t]) out.join[v][t] = changed = true;
                }
            }
    }
    return out;
}

}  // namespace smoothset
