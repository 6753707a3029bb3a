#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smoothset {

using SimplexId = std::int32_t;

struct SimplexRef {
    int dim = 0;
    SimplexId id = 0;
    auto operator<=>(const SimplexRef&) const = default;
};

/// Finite simplicial set truncated at a dimension cap, with every simplex
/// (degenerate ones included) stored explicitly together with its face and
/// degeneracy tables.
///
/// `truncated()` records whether nondegenerate simplices may exist above the
/// cap. A complete set (not truncated) is determined by its tables: above the
/// cap everything is degenerate.
class SimplicialSet {
public:
    struct Level {
        std::vector<std::string> names;
        std::vector<std::vector<SimplexId>> faces;         // faces[i][x], i = 0..n (empty for n = 0)
        std::vector<std::vector<SimplexId>> degeneracies;  // degeneracies[i][x], i = 0..n (empty at the cap)
        std::vector<bool> degenerate;
    };

    /// EZ decomposition x = surjection^*(base) with base nondegenerate.
    struct Decomposition {
        int dim = 0;
        SimplexId base = 0;
        std::vector<int> surjection;  // monotone surjection [n] -> [dim]
    };

    SimplicialSet() = default;
    /// Stores the tables as given; only name uniqueness is enforced here.
    /// Call validate() for structural and identity checks.
    SimplicialSet(std::vector<Level> levels, bool truncated);

    int cap() const { return static_cast<int>(levels_.size()) - 1; }
    bool truncated() const { return truncated_; }
    bool empty() const { return levels_.empty() || levels_[0].names.empty(); }

    std::size_t size(int n) const { return levels_[n].names.size(); }
    const Level& level(int n) const { return levels_[n]; }
    const std::vector<Level>& levels() const { return levels_; }

    const std::string& name(int n, SimplexId x) const { return levels_[n].names[x]; }
    std::optional<SimplexId> find(int n, std::string_view name) const;
    SimplexId at(int n, std::string_view name) const;  // throws StructuralError when absent

    SimplexId face(int n, int i, SimplexId x) const { return levels_[n].faces[i][x]; }
    SimplexId degeneracy(int n, int i, SimplexId x) const { return levels_[n].degeneracies[i][x]; }
    bool is_degenerate(int n, SimplexId x) const { return levels_[n].degenerate[x]; }

    std::vector<SimplexId> nondegenerate(int n) const;
    std::size_t nondegenerate_count(int n) const;
    /// Highest dimension holding a nondegenerate simplex; nullopt when empty.
    std::optional<int> top_dimension() const;
    /// Degrees in which (co)homology is determined by the stored tables.
    int valid_degree_bound() const;

    /// Face spanned by the given strictly increasing vertex positions of x.
    SimplexId restrict_to(int n, SimplexId x, std::span<const int> vertices) const;
    SimplexId vertex(int n, SimplexId x, int k) const;
    SimplexId front_face(int n, SimplexId x, int p) const;
    SimplexId back_face(int n, SimplexId x, int q) const;
    /// s_0^n applied to a vertex.
    SimplexId constant_simplex(SimplexId vertex, int n) const;
    /// Applies the degeneracy operator of a monotone surjection [n] -> [k] to y in X_k.
    SimplexId apply_surjection(int k, SimplexId y, std::span<const int> surjection) const;
    Decomposition decompose(int n, SimplexId x) const;

    friend bool operator==(const SimplicialSet& a, const SimplicialSet& b);

private:
    std::vector<Level> levels_;
    bool truncated_ = false;
    std::vector<std::unordered_map<std::string, SimplexId>> index_;
};

struct Violation {
    std::string identity;
    int dim = 0;
    SimplexId simplex = 0;
    std::string detail;
};

/// Structural problems (arities, unknown identifiers) throw StructuralError.
/// Identity failures are returned; an empty list certifies the simplicial identities
/// and the degenerate flags.
std::vector<Violation> validate(const SimplicialSet& x);

/// Sub-simplicial set as a membership mask per dimension.
struct SubSet {
    std::vector<std::vector<bool>> member;
    bool contains(int n, SimplexId x) const { return member[n][x]; }
    friend bool operator==(const SubSet&, const SubSet&) = default;
};

SubSet empty_subset(const SimplicialSet& x);
SubSet full_subset(const SimplicialSet& x);
/// Smallest sub-simplicial set containing the generators.
SubSet closure(const SimplicialSet& x, std::span<const SimplexRef> generators);
/// Generators given by name; the dimension is found by search. Throws StructuralError if unknown.
SubSet closure_of_names(const SimplicialSet& x, std::span<const std::string> names);
bool is_closed(const SimplicialSet& x, const SubSet& a);
SubSet subset_union(const SubSet& a, const SubSet& b);
SubSet subset_intersection(const SubSet& a, const SubSet& b);
bool subset_leq(const SubSet& a, const SubSet& b);
bool subset_empty(const SubSet& a);
/// First nondegenerate simplex of x lying in neither a nor b.
std::optional<SimplexRef> uncovered_simplex(const SimplicialSet& x, const SubSet& a, const SubSet& b);

class SimplicialMap {
public:
    SimplicialMap() = default;
    SimplicialMap(std::shared_ptr<const SimplicialSet> source, std::shared_ptr<const SimplicialSet> target,
                  std::vector<std::vector<SimplexId>> level_map);

    const SimplicialSet& source() const { return *source_; }
    const SimplicialSet& target() const { return *target_; }
    std::shared_ptr<const SimplicialSet> source_ptr() const { return source_; }
    std::shared_ptr<const SimplicialSet> target_ptr() const { return target_; }
    int cap() const { return static_cast<int>(level_map_.size()) - 1; }
    SimplexId operator()(int n, SimplexId x) const { return level_map_[n][x]; }
    const std::vector<std::vector<SimplexId>>& level_map() const { return level_map_; }

private:
    std::shared_ptr<const SimplicialSet> source_;
    std::shared_ptr<const SimplicialSet> target_;
    std::vector<std::vector<SimplexId>> level_map_;
};

std::vector<Violation> validate(const SimplicialMap& f);
SimplicialMap identity_map(std::shared_ptr<const SimplicialSet> x);
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);  // g after f
/// Extends an assignment on nondegenerate simplices along degeneracies.
SimplicialMap map_from_nondegenerate(std::shared_ptr<const SimplicialSet> source,
                                     std::shared_ptr<const SimplicialSet> target,
                                     const std::map<SimplexRef, SimplexId>& assignment);

struct Restriction {
    std::shared_ptr<const SimplicialSet> set;
    SimplicialMap inclusion;
};
/// The sub-simplicial set as a simplicial set of its own (names kept) plus its inclusion.
Restriction restrict(std::shared_ptr<const SimplicialSet> x, const SubSet& a);
/// Inclusion restrict(x, inner) -> restrict(x, outer) for inner <= outer.
SimplicialMap inclusion_between(const Restriction& inner, const Restriction& outer);

// ---- standard constructions -------------------------------------------------

/// Ordered simplicial complex on integer vertex labels, given by its facets.
/// Simplices are weakly increasing vertex tuples supported on a face.
/// Throws ParameterError when cap is below the dimension of a facet.
SimplicialSet from_simplicial_complex(const std::vector<std::vector<int>>& facets, int cap);

SimplicialSet point(int cap = 0);
SimplicialSet delta(int n, int cap);
SimplicialSet delta(int n);
SimplicialSet boundary(int n, int cap);
SimplicialSet boundary(int n);
SimplicialSet horn(int n, int k, int cap);
SimplicialSet horn(int n, int k);
SimplicialSet sphere_quotient(int n, int cap);
SimplicialSet sphere_quotient(int n);

struct FiniteGroup {
    std::string name;
    std::vector<std::vector<int>> multiplication;  // multiplication[a][b] = a*b
    int identity = 0;

    int order() const { return static_cast<int>(multiplication.size()); }
    static FiniteGroup cyclic(int n);
    static FiniteGroup klein_four();
};
void check_group(const FiniteGroup& g);
/// Nerve of a group up to the cap; always flagged truncated.
SimplicialSet nerve(const FiniteGroup& g, int cap);

enum class ProductCap { refuse_truncation, allow_truncation };
/// Levelwise product. Without an explicit cap: complete factors get the sum of their
/// dimensions, truncated factors the smaller cap. A cap too small for complete factors
/// is refused unless truncation is allowed.
SimplicialSet product(const SimplicialSet& x, const SimplicialSet& y, std::optional<int> cap = std::nullopt,
                      ProductCap policy = ProductCap::refuse_truncation);
std::pair<SimplexId, SimplexId> product_components(const SimplicialSet& x, const SimplicialSet& y, int n,
                                                   SimplexId pair);
SimplexId product_pair(const SimplicialSet& y, int n, SimplexId a, SimplexId b);
SimplicialMap product_projection(std::shared_ptr<const SimplicialSet> prod, std::shared_ptr<const SimplicialSet> x,
                                 std::shared_ptr<const SimplicialSet> y, int which);
/// x -> x × y, x ↦ (x, constant at vertex v).
SimplicialMap product_slice(std::shared_ptr<const SimplicialSet> x, std::shared_ptr<const SimplicialSet> y,
                            std::shared_ptr<const SimplicialSet> prod, SimplexId y_vertex);

/// Collapses a (closed) sub-simplicial set to the degeneracy tower of one base point "*".
SimplicialSet quotient(const SimplicialSet& x, const SubSet& a);
SimplicialSet disjoint_union(const SimplicialSet& x, const SimplicialSet& y);

/// Same set with a smaller cap (tables cut off). Raising the cap is not supported.
SimplicialSet with_cap(const SimplicialSet& x, int cap);

/// Enumerates monotone surjections [n] -> [k] in lexicographic order.
std::vector<std::vector<int>> monotone_surjections(int n, int k);

}  // namespace smoothset
