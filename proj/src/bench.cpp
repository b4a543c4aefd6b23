#include "evfuse/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>

namespace evfuse {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ull * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double x = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(x);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (values[hi] - values[lo]) * (x - static_cast<double>(lo));
}

Model bench_model(std::size_t atoms) {
    static const std::vector<std::string> labels{"A", "B", "C", "D"};
    Frame frame(std::vector<std::string>(labels.begin(), labels.begin() + atoms));
    std::vector<Proposition> constraints;
    for (std::size_t i = 0; i < atoms; ++i)
        for (std::size_t j = i + 1; j < atoms; ++j)
            constraints.push_back(canonicalize(
                frame, {ProductTerm((std::uint64_t{1} << i) | (std::uint64_t{1} << j))}));
    return Model(frame, std::move(constraints), Emptiness::propagated);
}

}  // namespace

BenchSummary run_bench(const BenchParams& params) {
    if (params.atoms < 1 || params.atoms > max_enumeration_atoms)
        throw ValidationError("atoms must be in [1, " + std::to_string(max_enumeration_atoms) +
                              "]");
    if (params.source_count != 2 && params.source_count != 3)
        throw ValidationError("sources must be 2 or 3");
    if (params.trials < 1) throw ValidationError("trials must be >= 1");

    const Model model = bench_model(params.atoms);

    std::vector<Rule> rules{Rule::conjunctive, Rule::urr, Rule::murr, Rule::purr, Rule::dempster};
    if (params.source_count == 2) rules.push_back(Rule::pcr5);

    std::map<Rule, std::vector<double>> samples;

    const auto run_one = [&](Rule rule, const std::vector<MassAssignment>& sources) {
        const std::span<const MassAssignment> span(sources);
        switch (rule) {
            case Rule::conjunctive: conjunctive(span, model); break;
            case Rule::urr: urr(span, model); break;
            case Rule::murr: murr(span, model); break;
            case Rule::purr: purr(span, model); break;
            case Rule::dempster: dempster(span, model); break;
            case Rule::pcr5: pcr5(sources[0], sources[1], model); break;
        }
    };

    for (std::size_t trial = 0; trial < params.trials + 1; ++trial) {
        std::vector<MassAssignment> sources;
        for (std::size_t j = 0; j < params.source_count; ++j)
            sources.push_back(
                random_bba(model, mix(mix(params.seed, trial), j), params.focal_count));
        const bool warmup = trial == 0;
        for (Rule rule : rules) {
            try {
                const auto t0 = std::chrono::steady_clock::now();
                run_one(rule, sources);
                const auto t1 = std::chrono::steady_clock::now();
                if (!warmup)
                    samples[rule].push_back(
                        std::chrono::duration<double, std::micro>(t1 - t0).count());
            } catch (const RuleDomainError&) {
                // undefined on this trial; not a sample
            }
        }
    }

    BenchSummary summary{params, {}};
    for (Rule rule : rules) {
        const auto& v = samples[rule];
        summary.rows.push_back({rule, v.size(), percentile(v, 0.5), percentile(v, 0.9)});
    }
    return summary;
}

std::string render_bench_table(const BenchSummary& summary) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "atoms=%zu focals=%zu sources=%zu trials=%zu seed=%llu\n",
                  summary.params.atoms, summary.params.focal_count, summary.params.source_count,
                  summary.params.trials,
                  static_cast<unsigned long long>(summary.params.seed));
    std::string out = buf;
    out += "rule         samples  median[us]  p90[us]\n";
    for (const auto& row : summary.rows) {
        if (row.samples == 0) {
            std::snprintf(buf, sizeof(buf), "%-12s %7zu  %10s  %7s\n",
                          std::string(rule_name(row.rule)).c_str(), row.samples, "n/a", "n/a");
        } else {
            std::snprintf(buf, sizeof(buf), "%-12s %7zu  %10.2f  %7.2f\n",
                          std::string(rule_name(row.rule)).c_str(), row.samples, row.median_us,
                          row.p90_us);
        }
        out += buf;
    }
    return out;
}

}  // namespace evfuse
