#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "evfuse/lattice.hpp"

namespace evfuse {

/// Masses on input must sum to 1 within this tolerance.
inline constexpr double mass_sum_tolerance = 1e-9;

using MassMap = std::map<Proposition, double>;

/// A basic belief assignment: canonical non-zero propositions with strictly
/// positive masses summing to 1. Immutable once built.
class MassAssignment {
public:
    const Frame& frame() const { return frame_; }
    const MassMap& entries() const { return entries_; }

    /// Mass of `p`, 0 when not focal.
    double mass(const Proposition& p) const;

    /// The focal elements (strictly positive mass), in canonical order.
    std::vector<Proposition> focal_set() const;

    bool operator==(const MassAssignment& other) const {
        return frame_ == other.frame_ && entries_ == other.entries_;
    }

    /// Wrap masses produced by a combination rule. Keys must be canonical,
    /// non-zero and unique (map keys are); masses must be non-negative and
    /// sum to 1 within mass_sum_tolerance. Zero entries are dropped.
    /// Violations throw std::logic_error: they indicate a broken rule.
    static MassAssignment from_normalized(Frame frame, MassMap entries);

private:
    MassAssignment(Frame frame, MassMap entries)
        : frame_(std::move(frame)), entries_(std::move(entries)) {}

    Frame frame_;
    MassMap entries_;
};

/// Validate and build a bba over `model`'s frame. Rejects duplicate
/// canonical keys, masses on empty propositions (zero or empty under the
/// model), negative masses, and sums off 1 by more than mass_sum_tolerance.
/// Zero-mass entries on valid propositions are dropped.
MassAssignment make_bba(const Model& model,
                        const std::vector<std::pair<Proposition, double>>& entries);

/// The vacuous bba: full mass on total ignorance.
MassAssignment vacuous(const Frame& frame);

/// Deterministic random bba: samples `focal_count` distinct propositions
/// that are non-empty under `model` (uniformly, via enumeration), then draws
/// masses from a flat simplex, rounded to 12 decimals with the last entry
/// repaired so the sum is exactly 1. Same seed, same output, any platform.
MassAssignment random_bba(const Model& model, std::uint64_t seed, std::size_t focal_count);

}  // namespace evfuse
