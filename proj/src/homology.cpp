#include "smoothset/homology.hpp"

#include <sstream>

#include "smoothset/errors.hpp"

namespace smoothset {

std::string to_string(Ring r) { return r == Ring::integers ? "int" : "rat"; }

ChainComplex chain_complex(const SimplicialSet& x, Ring ring, Chains mode) {
    if (auto v = validate(x); !v.empty())
        throw StructuralError("input violates the simplicial identities: " + v.front().identity + " at " +
                              v.front().detail);
    ChainComplex c;
    c.ring = ring;
    const int cap = x.cap();
    std::vector<std::vector<std::optional<std::size_t>>> pos(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        pos[n].assign(x.size(n), std::nullopt);
        std::vector<SimplexId> b;
        for (SimplexId s = 0; s < static_cast<SimplexId>(x.size(n)); ++s)
            if (mode == Chains::unnormalized || !x.is_degenerate(n, s)) {
                pos[n][s] = b.size();
                b.push_back(s);
            }
        c.basis.push_back(std::move(b));
    }
    c.boundary.emplace_back(0, c.basis[0].size());
    for (int n = 1; n <= cap; ++n) {
        IntegerMatrix d(c.basis[n - 1].size(), c.basis[n].size());
        for (std::size_t col = 0; col < c.basis[n].size(); ++col)
            for (int i = 0; i <= n; ++i) {
                auto row = pos[n - 1][x.face(n, i, c.basis[n][col])];
                if (!row) continue;
                d(*row, col) += (i % 2 == 0) ? 1 : -1;
            }
        c.boundary.push_back(std::move(d));
    }
    for (int n = 2; n <= cap; ++n)
        if (!(c.boundary[n - 1] * c.boundary[n]).is_zero())
            throw StructuralError("boundary does not square to zero in degree " + std::to_string(n));
    c.top_degree = mode == Chains::normalized ? x.valid_degree_bound() : cap - 1;
    return c;
}

namespace {

std::size_t boundary_rank(const ChainComplex& c, int n) {
    if (n <= 0 || n >= static_cast<int>(c.boundary.size())) return 0;
    return rank(c.boundary[n]);
}

}  // namespace

HomologySummary homology(const ChainComplex& c) {
    HomologySummary h;
    h.ring = c.ring;
    for (int n = 0; n <= c.top_degree; ++n) {
        h.betti.push_back(c.rank(n) - boundary_rank(c, n) - boundary_rank(c, n + 1));
        h.torsion.push_back(c.ring == Ring::integers ? torsion(c, n) : std::vector<Integer>{});
    }
    return h;
}

std::vector<Integer> torsion(const ChainComplex& c, int n) {
    if (c.ring != Ring::integers) throw ParameterError("torsion requested over the rationals");
    if (n + 1 >= static_cast<int>(c.boundary.size())) return {};
    std::vector<Integer> out;
    for (auto& d : elementary_divisors(c.boundary[n + 1]))
        if (d > 1) out.push_back(d);
    return out;
}

long euler_characteristic(const HomologySummary& h) {
    long chi = 0;
    for (std::size_t n = 0; n < h.betti.size(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(h.betti[n]);
    return chi;
}

// ---- cochains ---------------------------------------------------------------

CochainComplex::CochainComplex(const SimplicialSet& x) : x_(&x), top_(x.truncated() ? x.cap() - 1 : x.cap()) {
    const int cap = x.cap();
    for (int n = 0; n <= cap; ++n) {
        nondeg_.push_back(x.nondegenerate(n));
        std::vector<std::optional<std::size_t>> pos(x.size(n));
        for (std::size_t i = 0; i < nondeg_[n].size(); ++i) pos[nondeg_[n][i]] = i;
        position_.push_back(std::move(pos));
    }
    for (int n = 0; n <= cap; ++n) {
        const std::size_t next = n < cap ? nondeg_[n + 1].size() : 0;
        RationalMatrix d(next, nondeg_[n].size());
        if (n < cap)
            for (std::size_t r = 0; r < next; ++r)
                for (int i = 0; i <= n + 1; ++i) {
                    auto col = position_[n][x.face(n + 1, i, nondeg_[n + 1][r])];
                    if (col) d(r, *col) += (i % 2 == 0) ? 1 : -1;
                }
        coboundary_.push_back(std::move(d));
    }
    for (int n = 0; n <= top_; ++n) {
        RowEchelon b;
        if (n == 0) {
            b.reduced = RationalMatrix(0, nondeg_[0].size());
        } else {
            b = row_reduce(coboundary_[n - 1].transpose());
        }
        RationalMatrix z = kernel_basis(coboundary_[n]);
        RationalMatrix reduced(0, nondeg_[n].size());
        for (std::size_t i = 0; i < z.rows(); ++i) {
            RationalVector v = z.row(i);
            reduce_against(v, b);
            if (!is_zero(v)) reduced.append_row(v);
        }
        RowEchelon reps = row_reduce(reduced);
        if (reps.reduced.rows() == 0) reps.reduced = RationalMatrix(0, nondeg_[n].size());
        boundaries_.push_back(std::move(b));
        reps_.push_back(std::move(reps.reduced));
        rep_pivots_.push_back(std::move(reps.pivots));
    }
}

Cochain CochainComplex::apply_coboundary(int n, const Cochain& c) const { return multiply(coboundary_[n], c); }

std::optional<std::size_t> CochainComplex::position(int n, SimplexId x) const { return position_[n][x]; }

bool CochainComplex::is_coboundary(int n, const Cochain& c) const {
    Cochain v = c;
    reduce_against(v, boundaries_[n]);
    return is_zero(v);
}

RationalVector CochainComplex::coordinates(int n, const Cochain& cocycle) const {
    if (n < 0 || n > top_) throw ParameterError("degree outside the computed range");
    if (!is_zero(apply_coboundary(n, cocycle))) throw PreconditionError("cochain is not a cocycle");
    Cochain v = cocycle;
    reduce_against(v, boundaries_[n]);
    RationalVector coords(reps_[n].rows());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        coords[i] = v[rep_pivots_[n][i]];
        if (coords[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= coords[i] * reps_[n](i, j);
    }
    if (!is_zero(v)) throw StructuralError("cocycle not spanned by the cohomology basis");
    return coords;
}

Cochain CochainComplex::cup(int p, const Cochain& a, int q, const Cochain& b) const {
    const int n = p + q;
    Cochain out(n <= x_->cap() ? nondeg_[n].size() : 0);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const SimplexId s = nondeg_[n][k];
        auto f = position_[p][x_->front_face(n, s, p)];
        if (!f || a[*f] == 0) continue;
        auto g = position_[q][x_->back_face(n, s, q)];
        if (!g) continue;
        out[k] = a[*f] * b[*g];
    }
    return out;
}

CohomologyRingPresentation cohomology_ring(const SimplicialSet& x) {
    if (auto v = validate(x); !v.empty()) throw StructuralError("input violates the simplicial identities");
    CochainComplex cc(x);
    CohomologyRingPresentation r;
    const int top = cc.top_degree();
    for (int n = 0; n <= top; ++n) {
        std::vector<Cochain> b;
        for (std::size_t i = 0; i < cc.dimension(n); ++i) b.push_back(cc.representative(n, i));
        r.basis.push_back(std::move(b));
    }
    r.products.resize(top + 1);
    for (int p = 0; p <= top; ++p) {
        r.products[p].resize(top + 1);
        for (int q = 0; p + q <= top; ++q) {
            auto& table = r.products[p][q];
            table.resize(r.basis[p].size());
            for (std::size_t i = 0; i < r.basis[p].size(); ++i)
                for (std::size_t j = 0; j < r.basis[q].size(); ++j)
                    table[i].push_back(cc.coordinates(p + q, cc.cup(p, r.basis[p][i], q, r.basis[q][j])));
        }
    }
    if (top >= 0) r.unit = cc.coordinates(0, Cochain(cc.cochain_rank(0), Rational(1)));
    return r;
}

namespace {

RationalVector combine(const CohomologyRingPresentation& r, int p, const RationalVector& left, int q, std::size_t j) {
    RationalVector out(r.dimension(p + q));
    for (std::size_t l = 0; l < left.size(); ++l) {
        if (left[l] == 0) continue;
        const auto& prod = r.product(p, l, q, j);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += left[l] * prod[k];
    }
    return out;
}

}  // namespace

std::vector<std::string> ring_axiom_failures(const CohomologyRingPresentation& r) {
    std::vector<std::string> out;
    const int top = static_cast<int>(r.basis.size()) - 1;
    auto tag = [](const char* what, int p, std::size_t i, int q, std::size_t j) {
        std::ostringstream s;
        s << what << " (" << p << "," << i << ")x(" << q << "," << j << ")";
        return s.str();
    };
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q <= top; ++q)
            for (std::size_t i = 0; i < r.dimension(p); ++i)
                for (std::size_t j = 0; j < r.dimension(q); ++j) {
                    RationalVector ab = r.product(p, i, q, j);
                    RationalVector ba = r.product(q, j, p, i);
                    if ((p * q) % 2 == 1)
                        for (auto& v : ba) v = -v;
                    if (ab != ba) out.push_back(tag("graded commutativity", p, i, q, j));
                    for (int s = 0; p + q + s <= top; ++s)
                        for (std::size_t k = 0; k < r.dimension(s); ++k) {
                            RationalVector left = combine(r, p + q, ab, s, k);
                            // a ∪ (b ∪ c), expanded through the (b ∪ c) coordinates
                            RationalVector right(r.dimension(p + q + s));
                            const auto& bc = r.product(q, j, s, k);
                            for (std::size_t l = 0; l < bc.size(); ++l) {
                                if (bc[l] == 0) continue;
                                const auto& prod = r.product(p, i, q + s, l);
                                for (std::size_t m = 0; m < right.size(); ++m) right[m] += bc[l] * prod[m];
                            }
                            if (left != right) out.push_back(tag("associativity", p, i, q, j));
                        }
                }
    for (int q = 0; q <= top && !r.unit.empty(); ++q)
        for (std::size_t j = 0; j < r.dimension(q); ++j) {
            RationalVector e(r.dimension(q));
            e[j] = 1;
            if (combine(r, 0, r.unit, q, j) != e) out.push_back(tag("unit", 0, 0, q, j));
        }
    return out;
}

Cochain pullback_cochain(const SimplicialMap& f, const CochainComplex& source, const CochainComplex& target, int n,
                         const Cochain& c) {
    const auto& basis = source.basis(n);
    Cochain out(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        auto pos = target.position(n, f(n, basis[k]));
        if (pos) out[k] = c[*pos];
    }
    return out;
}

RationalMatrix induced_map(const SimplicialMap& f, const CochainComplex& source, const CochainComplex& target, int n) {
    RationalMatrix m(source.dimension(n), target.dimension(n));
    for (std::size_t j = 0; j < target.dimension(n); ++j) {
        RationalVector coords = source.coordinates(n, pullback_cochain(f, source, target, n, target.representative(n, j)));
        for (std::size_t i = 0; i < coords.size(); ++i) m(i, j) = coords[i];
    }
    return m;
}

// ---- Mayer–Vietoris ---------------------------------------------------------

bool MayerVietorisSequence::all_exact() const {
    for (bool e : exact)
        if (!e) return false;
    return true;
}

MayerVietorisSequence mayer_vietoris(std::shared_ptr<const SimplicialSet> x, const SubSet& a, const SubSet& b) {
    if (x->truncated()) throw PreconditionError("Mayer-Vietoris needs a complete (untruncated) simplicial set");
    if (!is_closed(*x, a) || !is_closed(*x, b))
        throw StructuralError("cover members must be closed under faces and degeneracies");
    if (auto miss = uncovered_simplex(*x, a, b))
        throw PreconditionError("simplex '" + x->name(miss->dim, miss->id) + "' lies in neither A nor B");

    Restriction ra = restrict(x, a);
    Restriction rb = restrict(x, b);
    Restriction ri = restrict(x, subset_intersection(a, b));
    SimplicialMap i_a = ra.inclusion, i_b = rb.inclusion;
    SimplicialMap j_a = inclusion_between(ri, ra), j_b = inclusion_between(ri, rb);
    CochainComplex cx(*x), ca(*ra.set), cb(*rb.set), ci(*ri.set);

    MayerVietorisSequence seq;
    const int top = x->valid_degree_bound();
    for (int n = 0; n <= top; ++n) {
        const std::size_t dx = cx.dimension(n), da = ca.dimension(n), db = cb.dimension(n), di = ci.dimension(n);
        seq.nodes.push_back({"H^" + std::to_string(n) + "(X)", n, dx});
        seq.nodes.push_back({"H^" + std::to_string(n) + "(A)+H^" + std::to_string(n) + "(B)", n, da + db});
        seq.nodes.push_back({"H^" + std::to_string(n) + "(AnB)", n, di});

        RationalMatrix restr(da + db, dx);
        RationalMatrix ma = induced_map(i_a, ca, cx, n), mb = induced_map(i_b, cb, cx, n);
        for (std::size_t c = 0; c < dx; ++c) {
            for (std::size_t r = 0; r < da; ++r) restr(r, c) = ma(r, c);
            for (std::size_t r = 0; r < db; ++r) restr(da + r, c) = mb(r, c);
        }
        RationalMatrix diff(di, da + db);
        RationalMatrix na = induced_map(j_a, ci, ca, n), nb = induced_map(j_b, ci, cb, n);
        for (std::size_t r = 0; r < di; ++r) {
            for (std::size_t c = 0; c < da; ++c) diff(r, c) = na(r, c);
            for (std::size_t c = 0; c < db; ++c) diff(r, da + c) = -nb(r, c);
        }
        seq.maps.push_back(std::move(restr));
        seq.maps.push_back(std::move(diff));

        if (n == top) break;
        // connecting map: extend by zero to A, take the coboundary there, read it on X
        const std::size_t dx1 = cx.dimension(n + 1);
        RationalMatrix conn(dx1, di);
        for (std::size_t j = 0; j < di; ++j) {
            Cochain c = ci.representative(n, j);
            Cochain ext(ca.cochain_rank(n));
            for (std::size_t k = 0; k < ca.basis(n).size(); ++k) {
                auto in_i = ri.set->find(n, ra.set->name(n, ca.basis(n)[k]));
                if (!in_i) continue;
                if (auto pos = ci.position(n, *in_i)) ext[k] = c[*pos];
            }
            Cochain dext = ca.apply_coboundary(n, ext);
            Cochain onx(cx.cochain_rank(n + 1));
            for (std::size_t k = 0; k < cx.basis(n + 1).size(); ++k) {
                auto in_a = ra.set->find(n + 1, x->name(n + 1, cx.basis(n + 1)[k]));
                if (!in_a) continue;
                if (auto pos = ca.position(n + 1, *in_a)) onx[k] = dext[*pos];
            }
            RationalVector coords = cx.coordinates(n + 1, onx);
            for (std::size_t r = 0; r < dx1; ++r) conn(r, j) = coords[r];
        }
        seq.connecting_ranks.push_back(rank(conn));
        seq.maps.push_back(std::move(conn));
    }

    for (std::size_t i = 0; i < seq.nodes.size(); ++i) {
        const std::size_t in_rank = i == 0 ? 0 : rank(seq.maps[i - 1]);
        const std::size_t out_rank = i < seq.maps.size() ? rank(seq.maps[i]) : 0;
        bool composite_zero = true;
        if (i > 0 && i < seq.maps.size()) composite_zero = (seq.maps[i] * seq.maps[i - 1]).is_zero();
        seq.exact.push_back(composite_zero && in_rank + out_rank == seq.nodes[i].dimension);
    }
    return seq;
}

}  // namespace smoothset
