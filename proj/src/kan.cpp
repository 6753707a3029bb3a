#include "smoothset/kan.hpp"

#include <functional>
#include <numeric>
#include <sstream>

#include "smoothset/errors.hpp"

namespace smoothset {

std::string describe(const SimplicialSet& x, const Horn& h) {
    std::ostringstream out;
    out << "horn(" << h.n << "," << h.k << ") [";
    for (int i = 0; i <= h.n; ++i) {
        if (i) out << ", ";
        out << (i == h.k ? std::string("_") : x.name(h.n - 1, h.faces[i]));
    }
    out << "]";
    return out.str();
}

bool is_horn(const SimplicialSet& x, const Horn& h) {
    if (h.n < 1 || h.n > x.cap() || h.k < 0 || h.k > h.n || static_cast<int>(h.faces.size()) != h.n + 1) return false;
    for (int i = 0; i <= h.n; ++i) {
        if (i == h.k) continue;
        if (h.faces[i] < 0 || h.faces[i] >= static_cast<SimplexId>(x.size(h.n - 1))) return false;
    }
    if (h.n < 2) return true;
    for (int j = 0; j <= h.n; ++j)
        for (int i = 0; i < j; ++i) {
            if (i == h.k || j == h.k) continue;
            if (x.face(h.n - 1, i, h.faces[j]) != x.face(h.n - 1, j - 1, h.faces[i])) return false;
        }
    return true;
}

std::vector<Horn> enumerate_horns(const SimplicialSet& x, int n, int k) {
    if (n < 1 || n > x.cap()) throw ParameterError("horn dimension outside 1..cap");
    if (k < 0 || k > n) throw ParameterError("horn index outside 0..n");
    std::vector<Horn> out;
    Horn h{n, k, std::vector<SimplexId>(n + 1, -1)};
    const auto candidates = static_cast<SimplexId>(x.size(n - 1));
    std::function<void(int)> go = [&](int j) {
        if (j == k) return go(j + 1);
        if (j > n) {
            out.push_back(h);
            return;
        }
        for (SimplexId c = 0; c < candidates; ++c) {
            bool ok = true;
            if (n >= 2)
                for (int i = 0; i < j && ok; ++i) {
                    if (i == k) continue;
                    ok = x.face(n - 1, i, c) == x.face(n - 1, j - 1, h.faces[i]);
                }
            if (!ok) continue;
            h.faces[j] = c;
            go(j + 1);
        }
        h.faces[j] = -1;
    };
    go(0);
    return out;
}

std::vector<SimplexId> fill_horn(const SimplicialSet& x, const Horn& h) {
    if (!is_horn(x, h)) throw ParameterError("not a horn of this simplicial set");
    std::vector<SimplexId> out;
    for (SimplexId y = 0; y < static_cast<SimplexId>(x.size(h.n)); ++y) {
        bool ok = true;
        for (int i = 0; i <= h.n && ok; ++i)
            if (i != h.k) ok = x.face(h.n, i, y) == h.faces[i];
        if (ok) out.push_back(y);
    }
    return out;
}

FibrancyReport is_fibrant(const SimplicialSet& x) {
    FibrancyReport r;
    r.checked_up_to = x.cap();
    for (int n = 1; n <= x.cap(); ++n)
        for (int k = 0; k <= n; ++k) {
            HornStatistics st{n, k, 0, 0, 0};
            bool first = true;
            for (const auto& h : enumerate_horns(x, n, k)) {
                const std::size_t fillers = fill_horn(x, h).size();
                ++st.horns;
                st.min_fillers = first ? fillers : std::min(st.min_fillers, fillers);
                st.max_fillers = std::max(st.max_fillers, fillers);
                first = false;
                if (fillers == 0 && r.fibrant) {
                    r.fibrant = false;
                    r.counterexample = h;
                }
                if (n >= 2 && fillers != 1) r.unique_fillers = false;
            }
            r.statistics.push_back(st);
        }
    return r;
}

FibrationReport is_fibration(const SimplicialMap& p) {
    if (auto v = validate(p); !v.empty()) throw StructuralError("map does not commute with the structure maps");
    const auto& x = p.source();
    const auto& y = p.target();
    FibrationReport r;
    r.checked_up_to = std::min(x.cap(), y.cap());
    for (int n = 1; n <= r.checked_up_to; ++n)
        for (int k = 0; k <= n; ++k)
            for (const auto& h : enumerate_horns(x, n, k)) {
                std::vector<SimplexId> fillers = fill_horn(x, h);
                for (SimplexId t = 0; t < static_cast<SimplexId>(y.size(n)); ++t) {
                    bool matches = true;
                    for (int i = 0; i <= n && matches; ++i)
                        if (i != k) matches = y.face(n, i, t) == p(n - 1, h.faces[i]);
                    if (!matches) continue;
                    ++r.problems;
                    bool lifted = std::any_of(fillers.begin(), fillers.end(), [&](SimplexId z) { return p(n, z) == t; });
                    if (!lifted && r.fibration) {
                        r.fibration = false;
                        r.counterexample = LiftingProblem{h, t};
                    }
                }
            }
    return r;
}

namespace {

bool connected(const SimplicialSet& x) {
    const std::size_t v = x.size(0);
    if (v == 0) return false;
    std::vector<std::size_t> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t a) { return parent[a] == a ? a : parent[a] = root(parent[a]); };
    if (x.cap() >= 1)
        for (SimplexId e = 0; e < static_cast<SimplexId>(x.size(1)); ++e)
            parent[root(x.face(1, 0, e))] = root(x.face(1, 1, e));
    for (std::size_t a = 0; a < v; ++a)
        if (root(a) != root(0)) return false;
    return true;
}

}  // namespace

ExtraDegeneracyReport check_extra_degeneracy(const SimplicialSet& x, const ExtraDegeneracy& s) {
    if (!connected(x)) throw PreconditionError("extra degeneracy check needs a connected simplicial set");
    const int cap = x.cap();
    ExtraDegeneracyReport r;
    auto fail = [&](std::string identity, int n, SimplexId id) {
        if (!r.valid) return;
        r.valid = false;
        r.identity = std::move(identity);
        r.simplex = SimplexRef{n, id};
    };
    if (s.base < 0 || s.base >= static_cast<SimplexId>(x.size(0))) throw ParameterError("base vertex out of range");
    if (static_cast<int>(s.maps.size()) != cap) throw ParameterError("extra degeneracy needs one table per dimension below the cap");
    for (int n = 0; n < cap; ++n)
        if (s.maps[n].size() != x.size(n)) throw ParameterError("extra degeneracy table has the wrong length");
    auto sm1 = [&](int n, SimplexId a) { return s.maps[n][a]; };
    if (cap >= 1 && sm1(0, s.base) != x.degeneracy(0, 0, s.base)) fail("s_{-1}(base) = s_0(base)", 0, s.base);
    for (int n = 0; n < cap; ++n)
        for (SimplexId a = 0; a < static_cast<SimplexId>(x.size(n)); ++a) {
            const SimplexId up = sm1(n, a);
            if (up < 0 || up >= static_cast<SimplexId>(x.size(n + 1))) {
                fail("s_{-1} lands in X_{n+1}", n, a);
                continue;
            }
            if (x.face(n + 1, 0, up) != a) fail("d_0 s_{-1} = id", n, a);
            if (n == 0) {
                if (x.face(1, 1, up) != s.base) fail("d_1 s_{-1} = base", n, a);
            } else {
                for (int i = 0; i <= n; ++i)
                    if (x.face(n + 1, i + 1, up) != sm1(n - 1, x.face(n, i, a))) fail("d_{i+1} s_{-1} = s_{-1} d_i", n, a);
            }
            if (n + 1 < cap)
                for (int i = 0; i <= n; ++i)
                    if (x.degeneracy(n + 1, i + 1, up) != sm1(n + 1, x.degeneracy(n, i, a)))
                        fail("s_{i+1} s_{-1} = s_{-1} s_i", n, a);
        }
    if (!r.valid) return r;

    auto c = chain_complex(x, Ring::integers);
    r.acyclic = true;
    for (int n = 0; n < cap; ++n) {
        std::size_t in = n + 1 < static_cast<int>(c.boundary.size()) ? rank(c.boundary[n + 1]) : 0;
        std::size_t out = n >= 1 ? rank(c.boundary[n]) : 0;
        std::size_t betti = c.rank(n) - in - out;
        if (n == 0) --betti;
        r.reduced_betti.push_back(betti);
        if (!torsion(c, n).empty()) r.torsion_free = false;
        if (betti != 0) r.acyclic = false;
    }
    r.acyclic = r.acyclic && r.torsion_free;
    return r;
}

ExtraDegeneracy cone_extra_degeneracy(const SimplicialSet& x, SimplexId apex) {
    if (apex < 0 || apex >= static_cast<SimplexId>(x.size(0))) throw ParameterError("apex out of range");
    ExtraDegeneracy s;
    s.base = apex;
    const std::string& label = x.name(0, apex);
    for (int n = 0; n < x.cap(); ++n) {
        std::vector<SimplexId> m;
        for (SimplexId a = 0; a < static_cast<SimplexId>(x.size(n)); ++a) {
            auto hit = x.find(n + 1, label + x.name(n, a));
            if (!hit) hit = x.find(n + 1, label + "." + x.name(n, a));
            if (!hit) throw ParameterError("not a cone on '" + label + "': no simplex over '" + x.name(n, a) + "'");
            m.push_back(*hit);
        }
        s.maps.push_back(std::move(m));
    }
    return s;
}

}  // namespace smoothset
