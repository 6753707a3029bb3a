#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smoothset/simplicial.hpp"

namespace smoothset {

struct SiteObject {
    std::string name;
    SubSet cells;
};

/// Nonempty sub-complexes of a base simplicial set, ordered by inclusion, with declared
/// covering families. Nonempty pairwise intersections must again be objects; an empty
/// intersection stands for the empty object and imposes no condition.
class FiniteSite {
public:
    using Cover = std::vector<int>;

    FiniteSite(std::shared_ptr<const SimplicialSet> base, std::vector<SiteObject> objects,
               std::vector<std::vector<Cover>> covers);

    const SimplicialSet& base() const { return *base_; }
    std::shared_ptr<const SimplicialSet> base_ptr() const { return base_; }
    int object_count() const { return static_cast<int>(objects_.size()); }
    const SiteObject& object(int u) const { return objects_[u]; }
    std::optional<int> find(std::string_view name) const;
    bool leq(int v, int u) const { return leq_[v][u]; }
    /// Intersection of two objects; nullopt when empty.
    std::optional<int> meet(int u, int v) const { return meet_[u][v]; }
    const std::vector<Cover>& covers(int u) const { return covers_[u]; }

private:
    std::shared_ptr<const SimplicialSet> base_;
    std::vector<SiteObject> objects_;
    std::vector<std::vector<Cover>> covers_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<std::optional<int>>> meet_;
};

/// Presheaf of finite sets. restriction[u][v][s] is the image of s ∈ F(u) in F(v); the
/// table is empty unless v ≤ u.
struct Presheaf {
    std::shared_ptr<const FiniteSite> site;
    std::vector<std::vector<std::string>> sections;
    std::vector<std::vector<std::vector<int>>> restriction;

    std::size_t size(int u) const { return sections[u].size(); }
    int restrict(int u, int v, int s) const { return restriction[u][v][s]; }
};

/// Throws StructuralError unless F is total on its site, restriction along u ≤ u is the
/// identity, and restrictions compose.
void validate(const Presheaf& f);

/// Builds a presheaf from section labels and a restriction rule on labels.
Presheaf make_presheaf(std::shared_ptr<const FiniteSite> site,
                       const std::function<std::vector<std::string>(int)>& sections,
                       const std::function<std::string(int u, int v, const std::string& s)>& restrict);

Presheaf constant_presheaf(std::shared_ptr<const FiniteSite> site, const std::vector<std::string>& values);
/// U ↦ functions from the vertices of U to {0..k-1}.
Presheaf vertex_functions(std::shared_ptr<const FiniteSite> site, int k);
/// U ↦ simplicial maps U → Δ^m, i.e. vertex labelings monotone along every simplex.
/// The base must be an ordered simplicial complex.
Presheaf maps_to_simplex(std::shared_ptr<const FiniteSite> site, int m);

struct GluingWitness {
    int object = -1;
    int cover = -1;               // index into site.covers(object)
    std::vector<int> family;      // one section per cover member
    std::size_t gluings = 0;      // 0 (no gluing) or ≥ 2 (ambiguous)
};

struct SheafStatus {
    bool separated = true;
    bool sheaf = true;
    std::optional<GluingWitness> witness;
};

SheafStatus check_status(const Presheaf& f);
std::string describe(const Presheaf& f, const GluingWitness& w);

/// component[u][s] ∈ G(u) for s ∈ F(u).
using NaturalTransformation = std::vector<std::vector<int>>;

bool is_natural(const Presheaf& f, const Presheaf& g, const NaturalTransformation& eta);
NaturalTransformation compose(const NaturalTransformation& second, const NaturalTransformation& first);
NaturalTransformation identity_transformation(const Presheaf& f);
/// All natural transformations F → G, stopping after `limit` of them.
std::vector<NaturalTransformation> natural_transformations(const Presheaf& f, const Presheaf& g,
                                                           std::size_t limit = 100000);
bool is_isomorphism(const Presheaf& f, const Presheaf& g, const NaturalTransformation& eta);

struct QuotientResult {
    Presheaf result;
    NaturalTransformation map;
};

/// Identifies sections that agree on some cover, closed under restriction, to a fixpoint.
QuotientResult separated_quotient(const Presheaf& f);

struct Sheafification {
    Presheaf result;
    NaturalTransformation unit;
    bool quotient_applied = false;  // F was not separated, so the separated quotient ran first
    int rounds = 0;                 // plus-construction passes
};

/// Sheafification through local data, iterated until the sheaf condition holds on every
/// declared cover. Throws StructuralError when a restriction of local data has no
/// declared refining cover.
Sheafification sheafify(const Presheaf& f);

/// Number of natural transformations ψ: S → G with ψ∘unit = φ, counted up to `limit`.
std::size_t count_factorizations(const Presheaf& f, const Presheaf& s, const NaturalTransformation& unit,
                                 const Presheaf& g, const NaturalTransformation& phi, std::size_t limit = 2);

/// member[u][s]: whether s ∈ F(u) belongs to the sub-presheaf.
using SubPresheaf = std::vector<std::vector<bool>>;

void validate_subpresheaf(const Presheaf& f, const SubPresheaf& g);
Presheaf as_presheaf(const Presheaf& f, const SubPresheaf& g);

struct SubPresheafLattice {
    SubPresheaf join;  // sections locally in G or H
    SubPresheaf meet;  // objectwise intersection
};

/// Union and intersection of sub-presheaves of a sheaf; throws StructuralError when G or H
/// is not closed under restriction.
SubPresheafLattice union_intersection(const Presheaf& f, const SubPresheaf& g, const SubPresheaf& h);

}  // namespace smoothset
