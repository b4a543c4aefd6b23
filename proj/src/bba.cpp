#include "evfuse/bba.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace evfuse {

double MassAssignment::mass(const Proposition& p) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? 0.0 : it->second;
}

std::vector<Proposition> MassAssignment::focal_set() const {
    std::vector<Proposition> out;
    out.reserve(entries_.size());
    for (const auto& [p, m] : entries_) out.push_back(p);
    return out;
}

MassAssignment MassAssignment::from_normalized(Frame frame, MassMap entries) {
    double sum = 0.0;
    for (auto it = entries.begin(); it != entries.end();) {
        if (it->first.is_zero() || it->second < 0.0)
            throw std::logic_error("combination produced an invalid mass entry");
        sum += it->second;
        it = it->second == 0.0 ? entries.erase(it) : std::next(it);
    }
    if (std::abs(sum - 1.0) > mass_sum_tolerance)
        throw std::logic_error("combination output does not sum to 1");
    return MassAssignment(std::move(frame), std::move(entries));
}

MassAssignment make_bba(const Model& model,
                        const std::vector<std::pair<Proposition, double>>& entries) {
    if (entries.empty()) throw ValidationError("mass assignment needs at least one entry");
    MassMap out;
    double sum = 0.0;
    for (const auto& [p, mass] : entries) {
        if (!(p.frame() == model.frame()))
            throw ValidationError("mass entry '" + p.str() + "': frame mismatch");
        if (mass < 0.0)
            throw ValidationError("negative mass " + std::to_string(mass) + " on '" + p.str() + "'");
        if (model.is_empty(p))
            throw ValidationError("mass on empty proposition '" + p.str() + "'");
        if (!out.emplace(p, mass).second)
            throw ValidationError("duplicate proposition '" + p.str() + "'");
        sum += mass;
    }
    if (std::abs(sum - 1.0) > mass_sum_tolerance)
        throw ValidationError("masses sum to " + std::to_string(sum) + ", expected 1");
    return MassAssignment::from_normalized(model.frame(), std::move(out));
}

MassAssignment vacuous(const Frame& frame) {
    MassMap entries;
    entries.emplace(Proposition::total_ignorance(frame), 1.0);
    return MassAssignment::from_normalized(frame, std::move(entries));
}

namespace {

// mt19937_64 is fully specified by the standard, and the draws below avoid
// libm, so the generated assignments are identical across platforms.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            const std::uint64_t v = gen_();
            if (v < limit) return v % bound;
        }
    }

private:
    std::mt19937_64 gen_;
};

constexpr std::uint64_t simplex_scale = 1'000'000'000'000ull;  // 12 decimals

}  // namespace

MassAssignment random_bba(const Model& model, std::uint64_t seed, std::size_t focal_count) {
    const auto all = enumerate_hyper_power_set(model.frame());
    std::vector<Proposition> candidates;
    for (const auto& p : all)
        if (!p.is_zero() && !model.is_empty(p)) candidates.push_back(p);
    if (focal_count < 1 || focal_count > candidates.size())
        throw ValidationError("focal count " + std::to_string(focal_count) +
                              " out of range [1, " + std::to_string(candidates.size()) + "]");

    DeterministicRng rng(seed);

    // Partial Fisher-Yates: the first focal_count slots are a uniform sample
    // without replacement.
    for (std::size_t i = 0; i < focal_count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
        std::swap(candidates[i], candidates[j]);
    }
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(focal_count),
                     candidates.end());

    // Flat simplex at 12-decimal resolution: focal_count - 1 distinct cut
    // points split [0, simplex_scale] into positive integer parts.
    std::vector<std::uint64_t> cuts;
    std::set<std::uint64_t> used;
    while (cuts.size() + 1 < focal_count) {
        const std::uint64_t c = 1 + rng.below(simplex_scale - 1);
        if (used.insert(c).second) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> masses(focal_count);
    std::uint64_t prev = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < focal_count; ++i) {
        masses[i] = static_cast<double>(cuts[i] - prev) * 1e-12;
        prev = cuts[i];
        acc += masses[i];
    }
    masses[focal_count - 1] = 1.0 - acc;  // repair so the sum is exactly 1

    std::vector<std::pair<Proposition, double>> entries;
    entries.reserve(focal_count);
    for (std::size_t i = 0; i < focal_count; ++i) entries.emplace_back(candidates[i], masses[i]);
    return make_bba(model, entries);
}

}  // namespace evfuse
