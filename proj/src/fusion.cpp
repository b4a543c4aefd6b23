#include "evfuse/fusion.hpp"

#include <array>
#include <utility>

namespace evfuse {

namespace {

void check_sources(std::span<const MassAssignment> sources, const Model& model) {
    if (sources.size() < 2) throw ValidationError("combination needs at least two sources");
    for (const auto& s : sources)
        if (!(s.frame() == model.frame()))
            throw ValidationError("combination: source frame mismatch");
}

}  // namespace

ConjunctiveResult conjunctive(std::span<const MassAssignment> sources, const Model& model) {
    check_sources(sources, model);
    const std::size_t s = sources.size();

    std::vector<std::vector<std::pair<Proposition, double>>> focals(s);
    ConjunctiveResult out;
    for (std::size_t i = 0; i < s; ++i) {
        focals[i].assign(sources[i].entries().begin(), sources[i].entries().end());
        for (const auto& [p, m] : focals[i]) out.source_focal_union.insert(p);
    }

    // Odometer over all focal tuples, rightmost index fastest; the fixed
    // order keeps accumulation (and thus output) deterministic.
    std::vector<std::size_t> idx(s, 0);
    for (;;) {
        Proposition meet = focals[0][idx[0]].first;
        double product = focals[0][idx[0]].second;
        for (std::size_t i = 1; i < s; ++i) {
            meet = intersect(meet, focals[i][idx[i]].first);
            product *= focals[i][idx[i]].second;
        }
        if (model.is_empty(meet)) {
            std::vector<Proposition> members;
            members.reserve(s);
            for (std::size_t i = 0; i < s; ++i) members.push_back(focals[i][idx[i]].first);
            out.total_conflict += product;
            out.conflicts.push_back({std::move(members), product, std::move(meet)});
        } else {
            out.masses[meet] += product;
        }

        std::size_t pos = s;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < focals[pos].size()) break;
            idx[pos] = 0;
            if (pos == 0) {
                for (const auto& [p, m] : out.masses) out.core.insert(p);
                return out;
            }
        }
    }
}

MassAssignment urr(std::span<const MassAssignment> sources, const Model& model) {
    ConjunctiveResult res = conjunctive(sources, model);
    MassMap masses = std::move(res.masses);
    if (res.total_conflict > 0.0) {
        const double share = res.total_conflict / static_cast<double>(res.source_focal_union.size());
        for (const auto& p : res.source_focal_union) masses[p] += share;
    }
    return MassAssignment::from_normalized(model.frame(), std::move(masses));
}

MassAssignment murr(std::span<const MassAssignment> sources, const Model& model) {
    ConjunctiveResult res = conjunctive(sources, model);
    if (res.core.empty())
        throw RuleDomainError("murr undefined: conjunctive core is empty (total conflict)");
    MassMap masses = std::move(res.masses);
    if (res.total_conflict > 0.0) {
        const double share = res.total_conflict / static_cast<double>(res.core.size());
        for (auto& [p, m] : masses) m += share;
    }
    return MassAssignment::from_normalized(model.frame(), std::move(masses));
}

MassAssignment purr(std::span<const MassAssignment> sources, const Model& model) {
    ConjunctiveResult res = conjunctive(sources, model);
    MassMap masses = std::move(res.masses);
    const double s = static_cast<double>(sources.size());
    for (const auto& ct : res.conflicts) {
        for (std::size_t i = 0; i < ct.members.size(); ++i) {
            const Proposition& member = ct.members[i];
            bool seen = false;
            for (std::size_t j = 0; j < i; ++j)
                if (ct.members[j] == member) {
                    seen = true;
                    break;
                }
            if (seen) continue;
            std::size_t occurrences = 0;
            for (const auto& m : ct.members)
                if (m == member) ++occurrences;
            masses[member] += ct.product_mass * static_cast<double>(occurrences) / s;
        }
    }
    return MassAssignment::from_normalized(model.frame(), std::move(masses));
}

MassAssignment purr_two_source(const MassAssignment& a, const MassAssignment& b,
                               const Model& model) {
    const std::array<MassAssignment, 2> pair{a, b};
    ConjunctiveResult res = conjunctive(pair, model);
    MassMap masses = std::move(res.masses);
    for (const auto& ct : res.conflicts) {
        masses[ct.members[0]] += ct.product_mass * 0.5;
        masses[ct.members[1]] += ct.product_mass * 0.5;
    }
    return MassAssignment::from_normalized(model.frame(), std::move(masses));
}

MassAssignment dempster(std::span<const MassAssignment> sources, const Model& model) {
    ConjunctiveResult res = conjunctive(sources, model);
    const double scale = 1.0 - res.total_conflict;
    if (scale <= total_conflict_tolerance)
        throw RuleDomainError("dempster undefined: total conflict k = 1");
    MassMap masses = std::move(res.masses);
    for (auto& [p, m] : masses) m /= scale;
    return MassAssignment::from_normalized(model.frame(), std::move(masses));
}

MassAssignment pcr5(const MassAssignment& a, const MassAssignment& b, const Model& model) {
    const std::array<MassAssignment, 2> pair{a, b};
    ConjunctiveResult res = conjunctive(pair, model);
    MassMap masses = std::move(res.masses);
    for (const auto& ct : res.conflicts) {
        const Proposition& x = ct.members[0];
        const Proposition& y = ct.members[1];
        const double mx = a.mass(x);
        const double my = b.mass(y);
        const double denom = mx + my;  // > 0: both are focal masses
        masses[x] += mx * mx * my / denom;
        masses[y] += my * my * mx / denom;
    }
    return MassAssignment::from_normalized(model.frame(), std::move(masses));
}

RedistributionSupports redistribution_supports(const ConjunctiveResult& result) {
    return {result.source_focal_union, result.source_focal_union.size(), result.core,
            result.core.size()};
}

}  // namespace evfuse
