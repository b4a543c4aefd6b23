#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evfuse/bench.hpp"
#include "evfuse/report.hpp"

namespace {

using namespace evfuse;

std::optional<Emptiness> parse_mode_flag(const std::string& flag) {
    if (flag.empty()) return std::nullopt;
    if (flag == "declared") return Emptiness::declared;
    if (flag == "propagated") return Emptiness::propagated;
    throw ValidationError("--emptiness must be declared or propagated");
}

void print_report(const ComparisonReport& report, const std::string& format) {
    if (format == "json")
        std::cout << render_json(report).dump(2) << "\n";
    else if (format == "table")
        std::cout << render_table(report);
    else
        throw ValidationError("--format must be table or json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combination of basic belief assignments over hyper-power sets"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string rule_flag;
    std::string rules_flag;
    std::string emptiness_flag;
    std::string format_flag = "table";
    std::uint64_t seed = 1;
    std::size_t atoms = 3, focals = 10, sources = 2, trials = 100;

    auto* combine = app.add_subcommand("combine", "Run one combination rule on a scenario");
    combine->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
    combine->add_option("--rule", rule_flag, "conjunctive|urr|murr|purr|dempster|pcr5")
        ->required();
    combine->add_option("--emptiness", emptiness_flag, "Override: declared|propagated");
    combine->add_option("--format", format_flag, "table|json (default table)");

    auto* compare = app.add_subcommand("compare", "Run several rules side by side");
    compare->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
    compare->add_option("--rules", rules_flag, "Comma-separated rule list")->required();
    compare->add_option("--format", format_flag, "table|json (default table)");

    auto* bench = app.add_subcommand("bench", "Time the rules on random scenarios");
    bench->add_option("--atoms", atoms, "Frame size (1..4, default 3)");
    bench->add_option("--focals", focals, "Focal elements per source (default 10)");
    bench->add_option("--sources", sources, "Sources per trial (2 or 3, default 2)");
    bench->add_option("--trials", trials, "Random trials (default 100)");
    bench->add_option("--seed", seed, "Scenario stream seed (default 1)");

    auto* enumerate = app.add_subcommand("enumerate", "List the hyper-power set of a small frame");
    enumerate->add_option("--atoms", atoms, "Frame size (1..4)")->required();

    try {
        app.parse(argc, argv);

        if (combine->parsed()) {
            const Scenario scenario = load_scenario(scenario_path, parse_mode_flag(emptiness_flag));
            print_report(build_report(scenario, {rule_from_name(rule_flag)}), format_flag);
        } else if (compare->parsed()) {
            const Scenario scenario = load_scenario(scenario_path);
            print_report(build_report(scenario, parse_rule_list(rules_flag)), format_flag);
        } else if (bench->parsed()) {
            std::cout << render_bench_table(run_bench({atoms, focals, sources, trials, seed}));
        } else if (enumerate->parsed()) {
            static const std::vector<std::string> labels{"A", "B", "C", "D"};
            if (atoms < 1 || atoms > max_enumeration_atoms)
                throw ValidationError("--atoms must be in [1, 4]");
            Frame frame(std::vector<std::string>(labels.begin(), labels.begin() + atoms));
            const auto all = enumerate_hyper_power_set(frame);
            for (const auto& p : all) std::cout << p.str() << "\n";
            std::cout << "total: " << all.size() << "\n";
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit clean; usage errors do not
    } catch (const RuleDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
