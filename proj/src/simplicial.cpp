#include "smoothset/simplicial.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "smoothset/errors.hpp"

namespace smoothset {

namespace {

bool same_level(const SimplicialSet::Level& a, const SimplicialSet::Level& b) {
    return a.names == b.names && a.faces == b.faces && a.degeneracies == b.degeneracies &&
           a.degenerate == b.degenerate;
}

std::string ref_text(const SimplicialSet& x, int n, SimplexId id) {
    std::ostringstream out;
    out << "dim " << n << " '" << x.name(n, id) << "'";
    return out.str();
}

// Recomputes degenerate flags from the images of the degeneracy maps.
void assign_degenerate_flags(std::vector<SimplicialSet::Level>& levels) {
    for (std::size_t n = 0; n < levels.size(); ++n)
        levels[n].degenerate.assign(levels[n].names.size(), false);
    for (std::size_t n = 0; n + 1 < levels.size(); ++n)
        for (const auto& s : levels[n].degeneracies)
            for (SimplexId y : s) levels[n + 1].degenerate[y] = true;
}

}  // namespace

SimplicialSet::SimplicialSet(std::vector<Level> levels, bool truncated)
    : levels_(std::move(levels)), truncated_(truncated) {
    index_.resize(levels_.size());
    for (std::size_t n = 0; n < levels_.size(); ++n) {
        const auto& names = levels_[n].names;
        for (std::size_t x = 0; x < names.size(); ++x) {
            auto [it, inserted] = index_[n].emplace(names[x], static_cast<SimplexId>(x));
            if (!inserted)
                throw StructuralError("duplicate simplex identifier '" + names[x] + "' in dimension " +
                                      std::to_string(n));
        }
    }
}

std::optional<SimplexId> SimplicialSet::find(int n, std::string_view name) const {
    if (n < 0 || n > cap()) return std::nullopt;
    auto it = index_[n].find(std::string(name));
    if (it == index_[n].end()) return std::nullopt;
    return it->second;
}

SimplexId SimplicialSet::at(int n, std::string_view name) const {
    auto id = find(n, name);
    if (!id) throw StructuralError("unknown simplex '" + std::string(name) + "' in dimension " + std::to_string(n));
    return *id;
}

std::vector<SimplexId> SimplicialSet::nondegenerate(int n) const {
    std::vector<SimplexId> out;
    for (std::size_t x = 0; x < size(n); ++x)
        if (!levels_[n].degenerate[x]) out.push_back(static_cast<SimplexId>(x));
    return out;
}

std::size_t SimplicialSet::nondegenerate_count(int n) const {
    return static_cast<std::size_t>(std::count(levels_[n].degenerate.begin(), levels_[n].degenerate.end(), false));
}

std::optional<int> SimplicialSet::top_dimension() const {
    for (int n = cap(); n >= 0; --n)
        if (nondegenerate_count(n) > 0) return n;
    return std::nullopt;
}

int SimplicialSet::valid_degree_bound() const {
    if (truncated_) return cap() - 1;
    return top_dimension().value_or(-1);
}

SimplexId SimplicialSet::restrict_to(int n, SimplexId x, std::span<const int> vertices) const {
    std::vector<bool> keep(n + 1, false);
    for (int v : vertices) {
        if (v < 0 || v > n) throw ParameterError("vertex position out of range");
        keep[v] = true;
    }
    int d = n;
    for (int pos = n; pos >= 0; --pos) {
        if (keep[pos]) continue;
        x = face(d, pos, x);
        --d;
    }
    return x;
}

SimplexId SimplicialSet::vertex(int n, SimplexId x, int k) const {
    const int v[1] = {k};
    return restrict_to(n, x, v);
}

SimplexId SimplicialSet::front_face(int n, SimplexId x, int p) const {
    for (int d = n; d > p; --d) x = face(d, d, x);
    return x;
}

SimplexId SimplicialSet::back_face(int n, SimplexId x, int q) const {
    for (int d = n; d > q; --d) x = face(d, 0, x);
    return x;
}

SimplexId SimplicialSet::constant_simplex(SimplexId v, int n) const {
    for (int d = 0; d < n; ++d) v = degeneracy(d, 0, v);
    return v;
}

SimplexId SimplicialSet::apply_surjection(int k, SimplexId y, std::span<const int> surjection) const {
    const int n = static_cast<int>(surjection.size()) - 1;
    int d = k;
    for (int j = 0; j < n; ++j) {
        if (surjection[j] == surjection[j + 1]) {
            if (d >= cap()) throw ParameterError("degeneracy exceeds the dimension cap");
            y = degeneracy(d, j, y);
            ++d;
        }
    }
    if (d != n) throw ParameterError("not a surjection onto the simplex dimension");
    return y;
}

SimplicialSet::Decomposition SimplicialSet::decompose(int n, SimplexId x) const {
    if (!is_degenerate(n, x)) {
        Decomposition d{n, x, {}};
        for (int i = 0; i <= n; ++i) d.surjection.push_back(i);
        return d;
    }
    for (int j = 0; j < n; ++j) {
        SimplexId y = face(n, j, x);
        if (degeneracy(n - 1, j, y) != x) continue;
        Decomposition lower = decompose(n - 1, y);
        Decomposition d{lower.dim, lower.base, {}};
        for (int i = 0; i <= n; ++i) d.surjection.push_back(lower.surjection[i <= j ? i : i - 1]);
        return d;
    }
    throw StructuralError("simplex flagged degenerate but not a degeneracy: " + ref_text(*this, n, x));
}

bool operator==(const SimplicialSet& a, const SimplicialSet& b) {
    if (a.truncated_ != b.truncated_ || a.levels_.size() != b.levels_.size()) return false;
    for (std::size_t n = 0; n < a.levels_.size(); ++n)
        if (!same_level(a.levels_[n], b.levels_[n])) return false;
    return true;
}

// ---- validation -------------------------------------------------------------

namespace {

void check_structure(const SimplicialSet& x) {
    const int cap = x.cap();
    for (int n = 0; n <= cap; ++n) {
        const auto& L = x.level(n);
        const std::size_t count = L.names.size();
        const std::size_t expected_faces = n == 0 ? 0 : static_cast<std::size_t>(n + 1);
        const std::size_t expected_degens = n == cap ? 0 : static_cast<std::size_t>(n + 1);
        if (L.faces.size() != expected_faces)
            throw StructuralError("dimension " + std::to_string(n) + ": expected " + std::to_string(expected_faces) +
                                  " face maps");
        if (L.degeneracies.size() != expected_degens)
            throw StructuralError("dimension " + std::to_string(n) + ": expected " +
                                  std::to_string(expected_degens) + " degeneracy maps");
        if (L.degenerate.size() != count) throw StructuralError("degenerate flags do not match simplex count");
        for (std::size_t i = 0; i < L.faces.size(); ++i) {
            if (L.faces[i].size() != count) throw StructuralError("face table d" + std::to_string(i) + " is not total");
            for (std::size_t s = 0; s < count; ++s) {
                SimplexId t = L.faces[i][s];
                if (t < 0 || static_cast<std::size_t>(t) >= x.size(n - 1))
                    throw StructuralError("face d" + std::to_string(i) + " of " +
                                          ref_text(x, n, static_cast<SimplexId>(s)) + " hits unknown identifier");
            }
        }
        for (std::size_t i = 0; i < L.degeneracies.size(); ++i) {
            if (L.degeneracies[i].size() != count)
                throw StructuralError("degeneracy table s" + std::to_string(i) + " is not total");
            for (std::size_t s = 0; s < count; ++s) {
                SimplexId t = L.degeneracies[i][s];
                if (t < 0 || static_cast<std::size_t>(t) >= x.size(n + 1))
                    throw StructuralError("degeneracy s" + std::to_string(i) + " of " +
                                          ref_text(x, n, static_cast<SimplexId>(s)) + " hits unknown identifier");
            }
        }
    }
}

}  // namespace

std::vector<Violation> validate(const SimplicialSet& x) {
    check_structure(x);
    std::vector<Violation> out;
    const int cap = x.cap();
    auto report = [&](std::string identity, int n, SimplexId s, int i, int j) {
        out.push_back({std::move(identity), n, s,
                       ref_text(x, n, s) + " (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")"});
    };
    for (int n = 0; n <= cap; ++n) {
        for (SimplexId s = 0; s < static_cast<SimplexId>(x.size(n)); ++s) {
            if (n >= 2)
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        if (x.face(n - 1, i, x.face(n, j, s)) != x.face(n - 1, j - 1, x.face(n, i, s)))
                            report("d_i d_j = d_{j-1} d_i", n, s, i, j);
            if (n < cap) {
                for (int j = 0; j <= n; ++j) {
                    SimplexId sj = x.degeneracy(n, j, s);
                    for (int i = 0; i <= n + 1; ++i) {
                        SimplexId lhs = x.face(n + 1, i, sj);
                        if (i == j || i == j + 1) {
                            if (lhs != s) report("d_j s_j = id = d_{j+1} s_j", n, s, i, j);
                        } else if (i < j) {
                            if (lhs != x.degeneracy(n - 1, j - 1, x.face(n, i, s)))
                                report("d_i s_j = s_{j-1} d_i", n, s, i, j);
                        } else {
                            if (lhs != x.degeneracy(n - 1, j, x.face(n, i - 1, s)))
                                report("d_i s_j = s_j d_{i-1}", n, s, i, j);
                        }
                    }
                }
            }
            if (n + 2 <= cap)
                for (int j = 0; j <= n; ++j)
                    for (int i = 0; i <= j; ++i)
                        if (x.degeneracy(n + 1, i, x.degeneracy(n, j, s)) !=
                            x.degeneracy(n + 1, j + 1, x.degeneracy(n, i, s)))
                            report("s_i s_j = s_{j+1} s_i", n, s, i, j);
        }
        std::vector<bool> image(x.size(n), false);
        if (n > 0)
            for (const auto& sm : x.level(n - 1).degeneracies)
                for (SimplexId t : sm) image[t] = true;
        for (SimplexId s = 0; s < static_cast<SimplexId>(x.size(n)); ++s)
            if (image[s] != x.is_degenerate(n, s))
                out.push_back({"degenerate flag", n, s, ref_text(x, n, s) + " flag disagrees with degeneracy images"});
    }
    return out;
}

// ---- subsets ----------------------------------------------------------------

SubSet empty_subset(const SimplicialSet& x) {
    SubSet a;
    for (int n = 0; n <= x.cap(); ++n) a.member.emplace_back(x.size(n), false);
    return a;
}

SubSet full_subset(const SimplicialSet& x) {
    SubSet a;
    for (int n = 0; n <= x.cap(); ++n) a.member.emplace_back(x.size(n), true);
    return a;
}

SubSet closure(const SimplicialSet& x, std::span<const SimplexRef> generators) {
    SubSet a = empty_subset(x);
    std::deque<SimplexRef> todo(generators.begin(), generators.end());
    while (!todo.empty()) {
        SimplexRef r = todo.front();
        todo.pop_front();
        if (r.dim < 0 || r.dim > x.cap() || r.id < 0 || static_cast<std::size_t>(r.id) >= x.size(r.dim))
            throw StructuralError("closure generator out of range");
        if (a.member[r.dim][r.id]) continue;
        a.member[r.dim][r.id] = true;
        if (r.dim > 0)
            for (int i = 0; i <= r.dim; ++i) todo.push_back({r.dim - 1, x.face(r.dim, i, r.id)});
        if (r.dim < x.cap())
            for (int i = 0; i <= r.dim; ++i) todo.push_back({r.dim + 1, x.degeneracy(r.dim, i, r.id)});
    }
    return a;
}

SubSet closure_of_names(const SimplicialSet& x, std::span<const std::string> names) {
    std::vector<SimplexRef> gens;
    for (const auto& nm : names) {
        bool found = false;
        for (int n = 0; n <= x.cap() && !found; ++n)
            if (auto id = x.find(n, nm)) {
                gens.push_back({n, *id});
                found = true;
            }
        if (!found) throw StructuralError("unknown simplex '" + nm + "'");
    }
    return closure(x, gens);
}

bool is_closed(const SimplicialSet& x, const SubSet& a) {
    if (static_cast<int>(a.member.size()) != x.cap() + 1) return false;
    for (int n = 0; n <= x.cap(); ++n) {
        if (a.member[n].size() != x.size(n)) return false;
        for (SimplexId s = 0; s < static_cast<SimplexId>(x.size(n)); ++s) {
            if (!a.member[n][s]) continue;
            if (n > 0)
                for (int i = 0; i <= n; ++i)
                    if (!a.member[n - 1][x.face(n, i, s)]) return false;
            if (n < x.cap())
                for (int i = 0; i <= n; ++i)
                    if (!a.member[n + 1][x.degeneracy(n, i, s)]) return false;
        }
    }
    return true;
}

SubSet subset_union(const SubSet& a, const SubSet& b) {
    SubSet c = a;
    for (std::size_t n = 0; n < c.member.size(); ++n)
        for (std::size_t s = 0; s < c.member[n].size(); ++s) c.member[n][s] = a.member[n][s] || b.member[n][s];
    return c;
}

SubSet subset_intersection(const SubSet& a, const SubSet& b) {
    SubSet c = a;
    for (std::size_t n = 0; n < c.member.size(); ++n)
        for (std::size_t s = 0; s < c.member[n].size(); ++s) c.member[n][s] = a.member[n][s] && b.member[n][s];
    return c;
}

bool subset_leq(const SubSet& a, const SubSet& b) {
    for (std::size_t n = 0; n < a.member.size(); ++n)
        for (std::size_t s = 0; s < a.member[n].size(); ++s)
            if (a.member[n][s] && !b.member[n][s]) return false;
    return true;
}

bool subset_empty(const SubSet& a) {
    for (const auto& lvl : a.member)
        for (bool m : lvl)
            if (m) return false;
    return true;
}

std::optional<SimplexRef> uncovered_simplex(const SimplicialSet& x, const SubSet& a, const SubSet& b) {
    for (int n = 0; n <= x.cap(); ++n)
        for (SimplexId s : x.nondegenerate(n))
            if (!a.member[n][s] && !b.member[n][s]) return SimplexRef{n, s};
    return std::nullopt;
}

// ---- maps -------------------------------------------------------------------

SimplicialMap::SimplicialMap(std::shared_ptr<const SimplicialSet> source, std::shared_ptr<const SimplicialSet> target,
                             std::vector<std::vector<SimplexId>> level_map)
    : source_(std::move(source)), target_(std::move(target)), level_map_(std::move(level_map)) {}

std::vector<Violation> validate(const SimplicialMap& f) {
    const SimplicialSet& x = f.source();
    const SimplicialSet& y = f.target();
    if (f.cap() != x.cap() || f.cap() > y.cap()) throw StructuralError("map cap does not match its source");
    for (int n = 0; n <= f.cap(); ++n) {
        if (f.level_map()[n].size() != x.size(n)) throw StructuralError("level map is not total");
        for (SimplexId t : f.level_map()[n])
            if (t < 0 || static_cast<std::size_t>(t) >= y.size(n))
                throw StructuralError("level map hits unknown target simplex");
    }
    std::vector<Violation> out;
    for (int n = 0; n <= f.cap(); ++n)
        for (SimplexId s = 0; s < static_cast<SimplexId>(x.size(n)); ++s) {
            if (n > 0)
                for (int i = 0; i <= n; ++i)
                    if (f(n - 1, x.face(n, i, s)) != y.face(n, i, f(n, s)))
                        out.push_back({"f d_i = d_i f", n, s, ref_text(x, n, s) + " i=" + std::to_string(i)});
            if (n < f.cap())
                for (int i = 0; i <= n; ++i)
                    if (f(n + 1, x.degeneracy(n, i, s)) != y.degeneracy(n, i, f(n, s)))
                        out.push_back({"f s_i = s_i f", n, s, ref_text(x, n, s) + " i=" + std::to_string(i)});
        }
    return out;
}

SimplicialMap identity_map(std::shared_ptr<const SimplicialSet> x) {
    std::vector<std::vector<SimplexId>> lm;
    for (int n = 0; n <= x->cap(); ++n) {
        std::vector<SimplexId> m(x->size(n));
        for (std::size_t s = 0; s < m.size(); ++s) m[s] = static_cast<SimplexId>(s);
        lm.push_back(std::move(m));
    }
    return SimplicialMap(x, x, std::move(lm));
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (&f.target() != &g.source() && !(f.target() == g.source()))
        throw ParameterError("maps are not composable");
    const int cap = std::min(f.cap(), g.cap());
    std::vector<std::vector<SimplexId>> lm;
    for (int n = 0; n <= cap; ++n) {
        std::vector<SimplexId> m(f.source().size(n));
        for (std::size_t s = 0; s < m.size(); ++s) m[s] = g(n, f(n, static_cast<SimplexId>(s)));
        lm.push_back(std::move(m));
    }
    return SimplicialMap(f.source_ptr(), g.target_ptr(), std::move(lm));
}

SimplicialMap map_from_nondegenerate(std::shared_ptr<const SimplicialSet> source,
                                     std::shared_ptr<const SimplicialSet> target,
                                     const std::map<SimplexRef, SimplexId>& assignment) {
    if (target->cap() < source->cap()) throw ParameterError("target cap below source cap");
    std::vector<std::vector<SimplexId>> lm;
    for (int n = 0; n <= source->cap(); ++n) {
        std::vector<SimplexId> m(source->size(n));
        for (std::size_t s = 0; s < m.size(); ++s) {
            auto d = source->decompose(n, static_cast<SimplexId>(s));
            auto it = assignment.find({d.dim, d.base});
            if (it == assignment.end())
                throw StructuralError("map undefined on nondegenerate simplex '" + source->name(d.dim, d.base) + "'");
            m[s] = target->apply_surjection(d.dim, it->second, d.surjection);
        }
        lm.push_back(std::move(m));
    }
    return SimplicialMap(std::move(source), std::move(target), std::move(lm));
}

Restriction restrict(std::shared_ptr<const SimplicialSet> x, const SubSet& a) {
    if (!is_closed(*x, a)) throw StructuralError("sub-simplicial set is not closed under faces and degeneracies");
    const int cap = x->cap();
    std::vector<std::vector<SimplexId>> renumber(cap + 1);
    std::vector<std::vector<SimplexId>> incl(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        renumber[n].assign(x->size(n), -1);
        for (SimplexId s = 0; s < static_cast<SimplexId>(x->size(n)); ++s)
            if (a.member[n][s]) {
                renumber[n][s] = static_cast<SimplexId>(incl[n].size());
                incl[n].push_back(s);
            }
    }
    std::vector<SimplicialSet::Level> levels(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        auto& L = levels[n];
        const auto& src = x->level(n);
        for (SimplexId s : incl[n]) {
            L.names.push_back(src.names[s]);
            L.degenerate.push_back(src.degenerate[s]);
        }
        L.faces.resize(src.faces.size());
        for (std::size_t i = 0; i < src.faces.size(); ++i)
            for (SimplexId s : incl[n]) L.faces[i].push_back(renumber[n - 1][src.faces[i][s]]);
        L.degeneracies.resize(src.degeneracies.size());
        for (std::size_t i = 0; i < src.degeneracies.size(); ++i)
            for (SimplexId s : incl[n]) L.degeneracies[i].push_back(renumber[n + 1][src.degeneracies[i][s]]);
    }
    auto sub = std::make_shared<const SimplicialSet>(std::move(levels), x->truncated());
    return Restriction{sub, SimplicialMap(sub, x, std::move(incl))};
}

SimplicialMap inclusion_between(const Restriction& inner, const Restriction& outer) {
    const SimplicialSet& a = *inner.set;
    const SimplicialSet& b = *outer.set;
    std::vector<std::vector<SimplexId>> lm;
    for (int n = 0; n <= a.cap(); ++n) {
        std::vector<SimplexId> m(a.size(n));
        for (std::size_t s = 0; s < m.size(); ++s) m[s] = b.at(n, a.name(n, static_cast<SimplexId>(s)));
        lm.push_back(std::move(m));
    }
    return SimplicialMap(inner.set, outer.set, std::move(lm));
}

// ---- standard constructions -------------------------------------------------

std::vector<std::vector<int>> monotone_surjections(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k > n || k < 0) return out;
    std::vector<int> cur{0};
    auto rec = [&](auto&& self, int pos, int value) -> void {
        if (pos == n) {
            if (value == k) out.push_back(cur);
            return;
        }
        for (int step = 0; step <= 1; ++step) {
            int v = value + step;
            if (v > k || k - v > n - pos - 1) continue;
            cur.push_back(v);
            self(self, pos + 1, v);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

namespace {

std::string tuple_name(const std::vector<int>& t, bool digits) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!digits && i) s += '.';
        s += std::to_string(t[i]);
    }
    return s;
}

}  // namespace

SimplicialSet from_simplicial_complex(const std::vector<std::vector<int>>& facets, int cap) {
    if (cap < 0) throw ParameterError("dimension cap must be nonnegative");
    std::set<std::vector<int>> faces;
    bool digits = true;
    int top = -1;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw ParameterError("facet repeats a vertex");
        if (f.empty()) continue;
        if (f.front() < 0) throw ParameterError("vertex labels must be nonnegative");
        if (f.back() > 9) digits = false;
        top = std::max(top, static_cast<int>(f.size()) - 1);
        const std::size_t r = f.size();
        for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < r; ++i)
                if (mask & (1u << i)) sub.push_back(f[i]);
            faces.insert(sub);
        }
    }
    if (top > cap)
        throw ParameterError("dimension cap " + std::to_string(cap) + " is below the complex dimension " +
                             std::to_string(top) + "; truncation refused");

    std::vector<std::vector<std::vector<int>>> tuples(cap + 1);
    std::vector<std::map<std::vector<int>, SimplexId>> ids(cap + 1);
    for (int m = 0; m <= cap; ++m) {
        for (const auto& f : faces) {
            const int r = static_cast<int>(f.size()) - 1;
            for (const auto& sur : monotone_surjections(m, r)) {
                std::vector<int> t(m + 1);
                for (int i = 0; i <= m; ++i) t[i] = f[sur[i]];
                tuples[m].push_back(std::move(t));
            }
        }
        std::sort(tuples[m].begin(), tuples[m].end());
        for (std::size_t i = 0; i < tuples[m].size(); ++i) ids[m][tuples[m][i]] = static_cast<SimplexId>(i);
    }

    std::vector<SimplicialSet::Level> levels(cap + 1);
    for (int m = 0; m <= cap; ++m) {
        auto& L = levels[m];
        for (const auto& t : tuples[m]) {
            L.names.push_back(tuple_name(t, digits));
            L.degenerate.push_back(std::adjacent_find(t.begin(), t.end()) != t.end());
        }
        if (m > 0) {
            L.faces.assign(m + 1, {});
            for (int i = 0; i <= m; ++i)
                for (const auto& t : tuples[m]) {
                    std::vector<int> f = t;
                    f.erase(f.begin() + i);
                    L.faces[i].push_back(ids[m - 1].at(f));
                }
        }
        if (m < cap) {
            L.degeneracies.assign(m + 1, {});
            for (int i = 0; i <= m; ++i)
                for (const auto& t : tuples[m]) {
                    std::vector<int> s = t;
                    s.insert(s.begin() + i, t[i]);
                    L.degeneracies[i].push_back(ids[m + 1].at(s));
                }
        }
    }
    return SimplicialSet(std::move(levels), false);
}

SimplicialSet point(int cap) { return from_simplicial_complex({{0}}, cap); }

SimplicialSet delta(int n, int cap) {
    if (n < 0) throw ParameterError("simplex dimension must be nonnegative");
    std::vector<int> f(n + 1);
    for (int i = 0; i <= n; ++i) f[i] = i;
    return from_simplicial_complex({f}, cap);
}
SimplicialSet delta(int n) { return delta(n, n); }

SimplicialSet boundary(int n, int cap) {
    if (n < 1) throw ParameterError("boundary requires n >= 1");
    std::vector<std::vector<int>> facets;
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<int> f;
        for (int i = 0; i <= n; ++i)
            if (i != skip) f.push_back(i);
        facets.push_back(f);
    }
    return from_simplicial_complex(facets, cap);
}
SimplicialSet boundary(int n) { return boundary(n, n - 1); }

SimplicialSet horn(int n, int k, int cap) {
    if (n < 1) throw ParameterError("horn requires n >= 1");
    if (k < 0 || k > n)
        throw ParameterError("horn index k=" + std::to_string(k) + " out of range for n=" + std::to_string(n));
    std::vector<std::vector<int>> facets;
    for (int skip = 0; skip <= n; ++skip) {
        if (skip == k) continue;
        std::vector<int> f;
        for (int i = 0; i <= n; ++i)
            if (i != skip) f.push_back(i);
        facets.push_back(f);
    }
    return from_simplicial_complex(facets, cap);
}
SimplicialSet horn(int n, int k) { return horn(n, k, n - 1); }

SimplicialSet sphere_quotient(int n, int cap) {
    if (n < 1) throw ParameterError("sphere quotient requires n >= 1");
    SimplicialSet d = delta(n, cap);
    SubSet bd = empty_subset(d);
    for (int m = 0; m <= cap; ++m)
        for (SimplexId s = 0; s < static_cast<SimplexId>(d.size(m)); ++s) {
            std::vector<bool> used(n + 1, false);
            for (int v = 0; v <= m; ++v) used[d.vertex(m, s, v)] = true;
            bd.member[m][s] = std::find(used.begin(), used.end(), false) != used.end();
        }
    return quotient(d, bd);
}
SimplicialSet sphere_quotient(int n) { return sphere_quotient(n, n); }

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw ParameterError("group order must be positive");
    FiniteGroup g{"Z" + std::to_string(n), {}, 0};
    g.multiplication.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.multiplication[a][b] = (a + b) % n;
    return g;
}

FiniteGroup FiniteGroup::klein_four() {
    FiniteGroup g{"V4", {}, 0};
    g.multiplication.assign(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) g.multiplication[a][b] = a ^ b;
    return g;
}

void check_group(const FiniteGroup& g) {
    const int n = g.order();
    if (n == 0) throw ParameterError("group has no elements");
    for (const auto& row : g.multiplication) {
        if (static_cast<int>(row.size()) != n) throw ParameterError("multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ParameterError("multiplication table leaves the group");
    }
    for (int a = 0; a < n; ++a) {
        if (g.multiplication[g.identity][a] != a || g.multiplication[a][g.identity] != a)
            throw ParameterError("identity element is not neutral");
        std::vector<bool> seen(n, false);
        for (int b = 0; b < n; ++b) seen[g.multiplication[a][b]] = true;
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw ParameterError("row is not a permutation; no inverses");
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.multiplication[g.multiplication[a][b]][c] != g.multiplication[a][g.multiplication[b][c]])
                    throw ParameterError("multiplication is not associative");
    }
}

SimplicialSet nerve(const FiniteGroup& g, int cap) {
    check_group(g);
    if (cap < 0) throw ParameterError("dimension cap must be nonnegative");
    const int q = g.order();
    std::vector<SimplicialSet::Level> levels(cap + 1);
    std::vector<std::size_t> count(cap + 1, 1);
    for (int m = 1; m <= cap; ++m) count[m] = count[m - 1] * q;
    auto decode = [&](int m, std::size_t id) {
        std::vector<int> t(m);
        for (int i = m - 1; i >= 0; --i) {
            t[i] = static_cast<int>(id % q);
            id /= q;
        }
        return t;
    };
    auto encode = [&](const std::vector<int>& t) {
        std::size_t id = 0;
        for (int v : t) id = id * q + v;
        return static_cast<SimplexId>(id);
    };
    for (int m = 0; m <= cap; ++m) {
        auto& L = levels[m];
        for (std::size_t id = 0; id < count[m]; ++id) {
            auto t = decode(m, id);
            std::string nm = "(";
            for (int i = 0; i < m; ++i) nm += (i ? "," : "") + std::to_string(t[i]);
            L.names.push_back(nm + ")");
            if (m > 0) {
                if (L.faces.empty()) L.faces.assign(m + 1, {});
                for (int i = 0; i <= m; ++i) {
                    std::vector<int> f;
                    if (i == 0) {
                        f.assign(t.begin() + 1, t.end());
                    } else if (i == m) {
                        f.assign(t.begin(), t.end() - 1);
                    } else {
                        f = t;
                        f[i - 1] = g.multiplication[t[i - 1]][t[i]];
                        f.erase(f.begin() + i);
                    }
                    L.faces[i].push_back(encode(f));
                }
            }
            if (m < cap) {
                if (L.degeneracies.empty()) L.degeneracies.assign(m + 1, {});
                for (int i = 0; i <= m; ++i) {
                    std::vector<int> s = t;
                    s.insert(s.begin() + i, g.identity);
                    L.degeneracies[i].push_back(encode(s));
                }
            }
        }
    }
    assign_degenerate_flags(levels);
    return SimplicialSet(std::move(levels), true);
}

std::pair<SimplexId, SimplexId> product_components(const SimplicialSet&, const SimplicialSet& y, int n,
                                                   SimplexId pair) {
    const auto ny = static_cast<SimplexId>(y.size(n));
    return {pair / ny, pair % ny};
}

SimplexId product_pair(const SimplicialSet& y, int n, SimplexId a, SimplexId b) {
    return a * static_cast<SimplexId>(y.size(n)) + b;
}

SimplicialSet product(const SimplicialSet& x, const SimplicialSet& y, std::optional<int> cap, ProductCap policy) {
    const int max_cap = std::min(x.cap(), y.cap());
    const bool complete = !x.truncated() && !y.truncated();
    const int need = x.top_dimension().value_or(0) + y.top_dimension().value_or(0);
    int c = 0;
    if (cap) {
        if (*cap > max_cap)
            throw ParameterError("product cap " + std::to_string(*cap) + " exceeds a factor cap " +
                                 std::to_string(max_cap));
        if (*cap < 0) throw ParameterError("dimension cap must be nonnegative");
        c = *cap;
    } else {
        c = complete ? need : max_cap;
        if (c > max_cap) c = max_cap;
    }
    const bool cut = complete && c < need;
    if (cut && policy == ProductCap::refuse_truncation)
        throw ParameterError("product needs dimension cap " + std::to_string(need) + " but only " + std::to_string(c) +
                             " is available; truncation refused");

    std::vector<SimplicialSet::Level> levels(c + 1);
    for (int n = 0; n <= c; ++n) {
        auto& L = levels[n];
        const auto nx = static_cast<SimplexId>(x.size(n));
        const auto ny = static_cast<SimplexId>(y.size(n));
        for (SimplexId a = 0; a < nx; ++a)
            for (SimplexId b = 0; b < ny; ++b) L.names.push_back("(" + x.name(n, a) + "," + y.name(n, b) + ")");
        if (n > 0) {
            L.faces.assign(n + 1, {});
            for (int i = 0; i <= n; ++i)
                for (SimplexId a = 0; a < nx; ++a)
                    for (SimplexId b = 0; b < ny; ++b)
                        L.faces[i].push_back(product_pair(y, n - 1, x.face(n, i, a), y.face(n, i, b)));
        }
        if (n < c) {
            L.degeneracies.assign(n + 1, {});
            for (int i = 0; i <= n; ++i)
                for (SimplexId a = 0; a < nx; ++a)
                    for (SimplexId b = 0; b < ny; ++b)
                        L.degeneracies[i].push_back(
                            product_pair(y, n + 1, x.degeneracy(n, i, a), y.degeneracy(n, i, b)));
        }
    }
    assign_degenerate_flags(levels);
    return SimplicialSet(std::move(levels), !complete || cut);
}

SimplicialMap product_projection(std::shared_ptr<const SimplicialSet> prod, std::shared_ptr<const SimplicialSet> x,
                                 std::shared_ptr<const SimplicialSet> y, int which) {
    std::vector<std::vector<SimplexId>> lm;
    for (int n = 0; n <= prod->cap(); ++n) {
        std::vector<SimplexId> m(prod->size(n));
        for (std::size_t s = 0; s < m.size(); ++s) {
            auto [a, b] = product_components(*x, *y, n, static_cast<SimplexId>(s));
            m[s] = which == 0 ? a : b;
        }
        lm.push_back(std::move(m));
    }
    return SimplicialMap(prod, which == 0 ? x : y, std::move(lm));
}

SimplicialMap product_slice(std::shared_ptr<const SimplicialSet> x, std::shared_ptr<const SimplicialSet> y,
                            std::shared_ptr<const SimplicialSet> prod, SimplexId y_vertex) {
    std::vector<std::vector<SimplexId>> lm;
    for (int n = 0; n <= prod->cap(); ++n) {
        std::vector<SimplexId> m(x->size(n));
        const SimplexId c = y->constant_simplex(y_vertex, n);
        for (std::size_t s = 0; s < m.size(); ++s) m[s] = product_pair(*y, n, static_cast<SimplexId>(s), c);
        lm.push_back(std::move(m));
    }
    auto src = x->cap() == prod->cap() ? x : std::make_shared<const SimplicialSet>(with_cap(*x, prod->cap()));
    return SimplicialMap(src, prod, std::move(lm));
}

SimplicialSet quotient(const SimplicialSet& x, const SubSet& a) {
    if (!is_closed(x, a)) throw StructuralError("collapsed subset is not closed under faces and degeneracies");
    const int cap = x.cap();
    std::vector<std::vector<SimplexId>> renumber(cap + 1);
    std::vector<std::vector<SimplexId>> kept(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        renumber[n].assign(x.size(n), 0);
        for (SimplexId s = 0; s < static_cast<SimplexId>(x.size(n)); ++s)
            if (!a.member[n][s]) {
                kept[n].push_back(s);
                renumber[n][s] = static_cast<SimplexId>(kept[n].size());
            }
    }
    std::vector<SimplicialSet::Level> levels(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        auto& L = levels[n];
        L.names.push_back("*");
        for (SimplexId s : kept[n]) L.names.push_back(x.name(n, s));
        if (n > 0) {
            L.faces.assign(n + 1, {});
            for (int i = 0; i <= n; ++i) {
                L.faces[i].push_back(0);
                for (SimplexId s : kept[n]) L.faces[i].push_back(renumber[n - 1][x.face(n, i, s)]);
            }
        }
        if (n < cap) {
            L.degeneracies.assign(n + 1, {});
            for (int i = 0; i <= n; ++i) {
                L.degeneracies[i].push_back(0);
                for (SimplexId s : kept[n]) L.degeneracies[i].push_back(renumber[n + 1][x.degeneracy(n, i, s)]);
            }
        }
    }
    assign_degenerate_flags(levels);
    return SimplicialSet(std::move(levels), x.truncated());
}

SimplicialSet disjoint_union(const SimplicialSet& x, const SimplicialSet& y) {
    const int cap = std::min(x.cap(), y.cap());
    std::vector<SimplicialSet::Level> levels(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        auto& L = levels[n];
        const auto nx = static_cast<SimplexId>(x.size(n));
        for (SimplexId s = 0; s < nx; ++s) L.names.push_back("0:" + x.name(n, s));
        for (SimplexId s = 0; s < static_cast<SimplexId>(y.size(n)); ++s) L.names.push_back("1:" + y.name(n, s));
        auto glue = [&](const std::vector<SimplexId>& fx, const std::vector<SimplexId>& fy, SimplexId offset) {
            std::vector<SimplexId> out(fx.begin(), fx.end());
            for (SimplexId t : fy) out.push_back(t + offset);
            return out;
        };
        if (n > 0)
            for (int i = 0; i <= n; ++i)
                L.faces.push_back(glue(x.level(n).faces[i], y.level(n).faces[i], static_cast<SimplexId>(x.size(n - 1))));
        if (n < cap)
            for (int i = 0; i <= n; ++i)
                L.degeneracies.push_back(glue(x.level(n).degeneracies[i], y.level(n).degeneracies[i],
                                              static_cast<SimplexId>(x.size(n + 1))));
    }
    assign_degenerate_flags(levels);
    bool cut = false;
    for (int n = cap + 1; n <= x.cap(); ++n) cut = cut || x.nondegenerate_count(n) > 0;
    for (int n = cap + 1; n <= y.cap(); ++n) cut = cut || y.nondegenerate_count(n) > 0;
    return SimplicialSet(std::move(levels), x.truncated() || y.truncated() || cut);
}

SimplicialSet with_cap(const SimplicialSet& x, int cap) {
    if (cap < 0 || cap > x.cap()) throw ParameterError("with_cap only lowers the dimension cap");
    std::vector<SimplicialSet::Level> levels(x.levels().begin(), x.levels().begin() + cap + 1);
    levels[cap].degeneracies.clear();
    bool cut = x.truncated();
    for (int n = cap + 1; n <= x.cap(); ++n) cut = cut || x.nondegenerate_count(n) > 0;
    return SimplicialSet(std::move(levels), cut);
}

}  // namespace smoothset
