#pragma once

#include <set>
#include <span>
#include <vector>

#include "evfuse/bba.hpp"

namespace evfuse {

/// Dempster normalization is refused when k is this close to 1.
inline constexpr double total_conflict_tolerance = 1e-12;

/// One conflicting focal tuple: the member picked from each source, the
/// product of their masses, and their (empty) intersection.
struct ConflictTerm {
    std::vector<Proposition> members;
    double product_mass;
    Proposition intersection;
};

/// Output of the conjunctive consensus operator.
struct ConjunctiveResult {
    MassMap masses;                          // non-empty intersections
    std::vector<ConflictTerm> conflicts;     // one entry per conflicting tuple
    double total_conflict = 0.0;             // k
    std::set<Proposition> source_focal_union;  // focal in at least one source
    std::set<Proposition> core;              // propositions with mass > 0
};

/// Conjunctive consensus over s >= 2 sources: every focal tuple's product
/// mass lands on the tuple's intersection, or on the conflict ledger when
/// that intersection is empty under the model. Sources must be valid bbas
/// over the model (no mass on empty propositions).
ConjunctiveResult conjunctive(std::span<const MassAssignment> sources, const Model& model);

/// Uniform redistribution: the total conflict k is split equally over the
/// propositions focal in at least one source; consensus mass elsewhere is
/// kept as is.
MassAssignment urr(std::span<const MassAssignment> sources, const Model& model);

/// Core-based uniform redistribution: k is split equally over the core of
/// the conjunctive consensus. Throws RuleDomainError when the core is empty
/// (k = 1).
MassAssignment murr(std::span<const MassAssignment> sources, const Model& model);

/// Partially uniform redistribution: each conflicting tuple's product mass
/// is split over the tuple's own members, each distinct member receiving
/// the share (occurrences / s).
MassAssignment purr(std::span<const MassAssignment> sources, const Model& model);

/// Direct two-source route for purr: each conflicting pair's product mass
/// is split half-and-half between its two sides. Agrees with purr at s = 2.
MassAssignment purr_two_source(const MassAssignment& a, const MassAssignment& b,
                               const Model& model);

/// Dempster's rule: conjunctive masses scaled by 1/(1-k). Throws
/// RuleDomainError when k = 1 within total_conflict_tolerance.
MassAssignment dempster(std::span<const MassAssignment> sources, const Model& model);

/// Proportional conflict redistribution no. 5, two sources: for each
/// conflicting pair (X, Y), X gains m1(X)^2 m2(Y)/(m1(X)+m2(Y)) and Y gains
/// m2(Y)^2 m1(X)/(m1(X)+m2(Y)), over both source orderings.
MassAssignment pcr5(const MassAssignment& a, const MassAssignment& b, const Model& model);

/// The two redistribution support sets and their cardinalities:
/// urr shares k over `urr_support` (n), murr over `murr_support` (n_core).
struct RedistributionSupports {
    std::set<Proposition> urr_support;
    std::size_t urr_count;
    std::set<Proposition> murr_support;
    std::size_t murr_count;
};

RedistributionSupports redistribution_supports(const ConjunctiveResult& result);

}  // namespace evfuse
