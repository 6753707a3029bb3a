#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smoothset/homology.hpp"
#include "smoothset/simplicial.hpp"

namespace smoothset {

/// Compatible (n-1)-simplices x_i for i ≠ k; faces[k] is unused and set to -1.
struct Horn {
    int n = 0;
    int k = 0;
    std::vector<SimplexId> faces;
};

std::string describe(const SimplicialSet& x, const Horn& h);
bool is_horn(const SimplicialSet& x, const Horn& h);

/// Every horn Λⁿ_k → X, by exhaustive search.
std::vector<Horn> enumerate_horns(const SimplicialSet& x, int n, int k);
/// Every n-simplex y with d_i y = x_i for i ≠ k.
std::vector<SimplexId> fill_horn(const SimplicialSet& x, const Horn& h);

struct HornStatistics {
    int n = 0;
    int k = 0;
    std::size_t horns = 0;
    std::size_t min_fillers = 0;
    std::size_t max_fillers = 0;
};

/// Fibrancy verdict for horns of dimension 1..cap; it says nothing above the cap.
struct FibrancyReport {
    bool fibrant = true;
    int checked_up_to = 0;
    std::vector<HornStatistics> statistics;
    std::optional<Horn> counterexample;
    /// Every horn of dimension ≥ 2 has exactly one filler.
    bool unique_fillers = true;
};

FibrancyReport is_fibrant(const SimplicialSet& x);

struct LiftingProblem {
    Horn horn;            // in the source
    SimplexId target = 0;  // n-simplex of the target whose faces match the image of the horn
};

struct FibrationReport {
    bool fibration = true;
    int checked_up_to = 0;
    std::size_t problems = 0;
    std::optional<LiftingProblem> counterexample;
};

FibrationReport is_fibration(const SimplicialMap& p);

/// s₋₁: X_n → X_{n+1} for n < cap, together with the base vertex.
struct ExtraDegeneracy {
    SimplexId base = 0;
    std::vector<std::vector<SimplexId>> maps;
};

struct ExtraDegeneracyReport {
    bool valid = true;
    std::optional<std::string> identity;  // failed identity
    std::optional<SimplexRef> simplex;    // where it failed
    /// Reduced homology in degrees 0..cap-1 (betti and torsion counts), filled in on success.
    std::vector<std::size_t> reduced_betti;
    bool torsion_free = true;
    bool acyclic = false;
};

/// Throws PreconditionError when X is not connected.
ExtraDegeneracyReport check_extra_degeneracy(const SimplicialSet& x, const ExtraDegeneracy& s);
/// Coning onto a vertex by prefixing its label to simplex names; throws ParameterError when
/// X is not a cone on that vertex.
ExtraDegeneracy cone_extra_degeneracy(const SimplicialSet& x, SimplexId apex);

}  // namespace smoothset
