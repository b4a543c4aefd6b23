#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evfuse/report.hpp"

namespace evfuse {

struct BenchParams {
    std::size_t atoms = 3;
    std::size_t focal_count = 10;
    std::size_t source_count = 2;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
};

struct BenchRow {
    Rule rule;
    std::size_t samples;  // trials minus rule-domain skips
    double median_us;
    double p90_us;
};

struct BenchSummary {
    BenchParams params;
    std::vector<BenchRow> rows;
};

/// Time each rule over `trials` random scenarios drawn deterministically
/// from `seed`. The trial model declares every pairwise atom intersection
/// empty (propagated), so random sources genuinely conflict. Only the
/// combination call is timed; pcr5 is skipped for three-source runs, and
/// trials where a rule is undefined (murr/dempster at k = 1) are dropped
/// from that rule's samples.
BenchSummary run_bench(const BenchParams& params);

std::string render_bench_table(const BenchSummary& summary);

}  // namespace evfuse
