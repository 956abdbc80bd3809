#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "coherent/measure.hpp"
#include "coherent/simplex.hpp"

namespace coherent {

/// Candidate decomposition m = mu + nu. Whether the pair actually satisfies
/// the weighted-marginal conditions is checked, never assumed.
struct RepresentationPair {
    DiscreteMeasure mu;
    DiscreteMeasure nu;
};

/// The discrete marginal conditions for a pair (mu, nu): for every value a
/// taken by the first coordinate on supp(mu) u supp(nu),
///   (1-a) * mu-column-mass(a) = a * nu-column-mass(a),
/// and the same for every second-coordinate value. Exact.
bool satisfies_r_conditions(const RepresentationPair& rep);

/// Linear feasibility system deciding whether a measure m decomposes as
/// mu + nu with (mu, nu) satisfying the marginal conditions. One variable
/// per atom p (the candidate mu-mass at p, boxed by [0, m(p)]); one equality
/// constraint per distinct column value a (mu-column-mass(a) = a * column
/// mass of m at a) and one per distinct row value b.
struct FeasibilitySystem {
    std::vector<Point2> atom_points;      // variable order
    std::vector<Rational> column_values;  // sorted distinct x values
    std::vector<Rational> row_values;     // sorted distinct y values
    BoundedSystem lp;                     // column constraints first, then row constraints
};

FeasibilitySystem build_system(const DiscreteMeasure& m);

struct CoherenceReport {
    bool feasible = false;
    Rational defect;  // minimum total constraint violation inside the box
    std::optional<RepresentationPair> representation;
};

/// Decides coherence of m (any positive total mass; the conditions are
/// homogeneous). Feasible iff defect == 0; on success the returned pair has
/// mu(p) = u_p and nu(p) = m(p) - u_p and satisfies every constraint exactly.
CoherenceReport check_coherence(const DiscreteMeasure& m);

/// Minimum total violation of the marginal constraints; 0 iff coherent.
Rational coherence_defect(const DiscreteMeasure& m);

struct UniquenessResult {
    bool unique = false;
    /// A second, distinct exact representation when not unique.
    std::optional<RepresentationPair> witness;
};

/// True iff the feasible polytope of build_system(m) is a single point,
/// decided by minimizing and maximizing every variable over the polytope.
/// Throws std::invalid_argument("not coherent") for incoherent m.
UniquenessResult check_uniqueness(const DiscreteMeasure& m);

/// Signed weight vector over supp(mu) | supp(nu); the shape of null-space
/// directions of the homogeneous marginal system.
struct SignedPair {
    std::vector<std::pair<Point2, Rational>> mu_part;
    std::vector<std::pair<Point2, Rational>> nu_part;
};

struct MinimalityResult {
    bool minimal = false;
    std::size_t null_space_dim = 0;
    /// A null direction independent of (mu, nu) when not minimal, plus a
    /// step size: ((mu, nu) + eps * direction) / 2 is a valid representation
    /// dominated by (mu, nu) and not proportional to it.
    std::optional<SignedPair> witness_direction;
    std::optional<Rational> witness_epsilon;
};

/// Minimality of a representation: build the homogeneous system over the
/// supports (per column value a, (1-a) * sum of mu-variables = a * sum of
/// nu-variables, and likewise per row value) and compute its null space by
/// exact elimination. The pair itself is always a null vector, so the
/// representation is minimal exactly when the null space is a line.
/// Throws std::invalid_argument("not a representation") if the pair fails
/// the marginal conditions.
MinimalityResult check_minimality(const RepresentationPair& rep);

struct ExtremalityReport {
    bool coherent = false;
    bool unique = false;
    bool minimal = false;
    bool extreme = false;  // always coherent && unique && minimal
    Rational defect;
    std::size_t null_space_dim = 0;
    std::optional<RepresentationPair> representation;
    std::optional<RepresentationPair> witness_alt_representation;  // iff not unique
    std::optional<SignedPair> witness_null_direction;              // iff not minimal
    std::optional<Rational> witness_epsilon;
};

/// Full verdict for a measure with at least one atom; the measure is
/// normalized to total mass 1 first.
ExtremalityReport check_extreme(const DiscreteMeasure& m);

/// Finite expert model: an outcome space with positive rational weights,
/// an event, and two partitions (the two experts' information).
struct ExpertModel {
    std::vector<Rational> weights;                    // > 0, one per outcome
    std::vector<std::size_t> event;                   // 0-based outcome indices
    std::vector<std::vector<std::size_t>> partition1; // cells of 0-based indices
    std::vector<std::vector<std::size_t>> partition2;
};

/// Joint law of the two experts' conditional probabilities of the event,
/// as an exact discrete measure, together with its representation: mu is the
/// pushforward of the restriction to the event, nu of the complement. The
/// pair satisfies the marginal conditions exactly by construction.
std::pair<DiscreteMeasure, RepresentationPair> from_expert_model(const ExpertModel& em);

/// Expert model text format:
///   weights w1 w2 ... wn
///   event i1 i2 ...          (1-based indices, possibly empty)
///   partition1 [1 2][3]...
///   partition2 [1][2 3]...
ExpertModel read_expert_model(std::istream& in);
ExpertModel read_expert_model_file(const std::string& path);

}  // namespace coherent
