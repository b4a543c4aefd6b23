#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "evfuse/fusion.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace evfuse;

namespace {

void check_masses(const MassMap& actual, const fix::Expected& expected, double tol) {
    CHECK(actual.size() == expected.size());
    for (const auto& [p, m] : actual) {
        const auto it = expected.find(p.str());
        REQUIRE_MESSAGE(it != expected.end(), "unexpected proposition ", p.str());
        CHECK_MESSAGE(std::abs(m - it->second) <= tol, p.str(), ": ", m, " vs ", it->second);
    }
}

std::set<std::string> names_of(const std::set<Proposition>& props) {
    std::set<std::string> out;
    for (const auto& p : props) out.insert(p.str());
    return out;
}

}  // namespace

TEST_CASE("conjunctive consensus on the worked sources") {
    const Model model = fix::worked_model();
    const auto sources = fix::worked_sources(model);
    const ConjunctiveResult res = conjunctive(sources, model);

    check_masses(res.masses, fix::conjunctive_expected, 1e-12);
    CHECK(std::abs(res.total_conflict - 0.24) <= 1e-12);

    REQUIRE(res.conflicts.size() == 2);
    CHECK(res.conflicts[0].members[0].str() == "A");
    CHECK(res.conflicts[0].members[1].str() == "C");
    CHECK(res.conflicts[0].intersection.str() == "A & C");
    CHECK(std::abs(res.conflicts[0].product_mass - 0.12) <= 1e-12);
    CHECK(res.conflicts[1].members[0].str() == "A | B");
    CHECK(res.conflicts[1].members[1].str() == "C");
    CHECK(res.conflicts[1].intersection.str() == "(A & C) | (B & C)");
    CHECK(std::abs(res.conflicts[1].product_mass - 0.12) <= 1e-12);
    for (const auto& ct : res.conflicts) {
        CHECK(model.is_empty(ct.intersection));
        CHECK(ct.product_mass > 0.0);
        CHECK(ct.members.size() == sources.size());
    }
    for (const auto& [p, m] : res.masses) CHECK(!model.is_empty(p));

    const auto supports = redistribution_supports(res);
    CHECK(supports.urr_count == 4);
    CHECK(supports.murr_count == 5);
    CHECK(names_of(supports.urr_support) == std::set<std::string>{"A", "A | B", "B", "C"});
    CHECK(names_of(supports.murr_support) ==
          std::set<std::string>{"A", "A & B", "A | B", "B", "B & C"});

    double total = res.total_conflict;
    for (const auto& [p, m] : res.masses) total += m;
    CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("urr matches the worked valuation") {
    const Model model = fix::worked_model();
    const auto sources = fix::worked_sources(model);
    check_masses(urr(sources, model).entries(), fix::urr_expected, 1e-12);
}

TEST_CASE("murr matches the worked valuation") {
    const Model model = fix::worked_model();
    const auto sources = fix::worked_sources(model);
    check_masses(murr(sources, model).entries(), fix::murr_expected, 1e-12);
}

TEST_CASE("purr matches the worked valuation") {
    const Model model = fix::worked_model();
    const auto sources = fix::worked_sources(model);
    check_masses(purr(sources, model).entries(), fix::purr_expected, 1e-12);
    const auto direct = purr_two_source(sources[0], sources[1], model);
    check_masses(direct.entries(), fix::purr_expected, 1e-12);
}

TEST_CASE("dempster matches the scaled consensus") {
    const Model model = fix::worked_model();
    const auto sources = fix::worked_sources(model);
    const auto res = conjunctive(sources, model);
    const auto d = dempster(sources, model);
    check_masses(d.entries(), fix::dempster_expected, 1e-6);
    for (const auto& [p, m] : d.entries())
        CHECK(std::abs(m - res.masses.at(p) / (1.0 - res.total_conflict)) <= 1e-15);
}

TEST_CASE("pcr5 redistributes each conflict proportionally") {
    const Model model = fix::worked_model();
    const auto sources = fix::worked_sources(model);
    const auto res = conjunctive(sources, model);
    const auto out = pcr5(sources[0], sources[1], model);
    check_masses(out.entries(), fix::pcr5_expected, 1e-6);

    const Proposition a = parse_expression("A", model.frame());
    const Proposition c = parse_expression("C", model.frame());
    CHECK(std::abs((out.mass(a) - res.masses.at(a)) - 0.068571) <= 1e-6);
    CHECK(std::abs(out.mass(c) - 2 * 0.051429) <= 2e-6);
}

TEST_CASE("three-source combination in one pass") {
    const Frame frame = gen::tiny_frame(2);
    const Model model(frame, {parse_expression("A & B", frame)});
    const auto p = [&](const char* text) { return parse_expression(text, frame); };
    const std::array<MassAssignment, 3> sources{
        make_bba(model, {{p("A"), 0.6}, {p("B"), 0.4}}),
        make_bba(model, {{p("A"), 0.5}, {p("B"), 0.5}}), vacuous(frame)};

    const auto res = conjunctive(sources, model);
    check_masses(res.masses, {{"A", 0.30}, {"B", 0.20}}, 1e-12);
    CHECK(std::abs(res.total_conflict - 0.50) <= 1e-12);
    REQUIRE(res.conflicts.size() == 2);
    for (const auto& ct : res.conflicts) CHECK(ct.members.size() == 3);
    CHECK(redistribution_supports(res).urr_count == 3);

    check_masses(urr(sources, model).entries(),
                 {{"A", 0.3 + 0.5 / 3}, {"B", 0.2 + 0.5 / 3}, {"A | B", 0.5 / 3}}, 1e-9);
    check_masses(urr(sources, model).entries(),
                 {{"A", 0.466667}, {"B", 0.366667}, {"A | B", 0.166667}}, 1e-6);
    check_masses(purr(sources, model).entries(),
                 {{"A", 0.466667}, {"B", 0.366667}, {"A | B", 0.166667}}, 1e-6);
    check_masses(murr(sources, model).entries(), {{"A", 0.55}, {"B", 0.45}}, 1e-12);
}

TEST_CASE("degenerate and total-conflict behavior") {
    const Frame frame = gen::tiny_frame(2);
    const Model model(frame, {parse_expression("A & B", frame)});
    const Proposition a = Proposition::atom(frame, "A");
    const Proposition b = Proposition::atom(frame, "B");
    const auto m1 = make_bba(model, {{a, 1.0}});
    const auto m2 = make_bba(model, {{b, 1.0}});
    const std::array<MassAssignment, 2> pair{m1, m2};

    CHECK_THROWS_AS(murr(pair, model), RuleDomainError);
    CHECK_THROWS_WITH_AS(dempster(pair, model), "dempster undefined: total conflict k = 1",
                         RuleDomainError);

    const auto via_pcr5 = pcr5(m1, m2, model);
    CHECK(via_pcr5.mass(a) == 0.5);
    CHECK(via_pcr5.mass(b) == 0.5);
    const auto via_urr = urr(pair, model);
    CHECK(via_urr.mass(a) == 0.5);
    CHECK(via_urr.mass(b) == 0.5);
    const auto via_purr = purr(pair, model);
    CHECK(via_purr.mass(a) == 0.5);
    CHECK(via_purr.mass(b) == 0.5);

    const std::array<MassAssignment, 1> one{m1};
    CHECK_THROWS_AS(conjunctive(one, model), ValidationError);
    const std::array<MassAssignment, 2> mixed{m1, vacuous(gen::tiny_frame(3))};
    CHECK_THROWS_AS(conjunctive(mixed, model), ValidationError);
}

TEST_CASE("vacuous sources agree on total ignorance") {
    const Frame frame = gen::tiny_frame(3);
    const Model model(frame, {});
    const std::array<MassAssignment, 2> pair{vacuous(frame), vacuous(frame)};
    const auto res = conjunctive(pair, model);
    CHECK(res.masses.at(Proposition::total_ignorance(frame)) == 1.0);
    CHECK(res.total_conflict == 0.0);
    const auto supports = redistribution_supports(res);
    CHECK(supports.urr_count == 1);
    CHECK(supports.murr_count == 1);
    CHECK(supports.urr_support.begin()->str() == "A | B | C");
    CHECK(supports.murr_support.begin()->str() == "A | B | C");
}

TEST_CASE("a vacuous partner is neutral for every rule") {
    // exact on the worked sources
    const Model model = fix::worked_model();
    for (const auto& m : fix::worked_sources(model)) {
        const std::array<MassAssignment, 2> pair{m, vacuous(model.frame())};
        const auto res = conjunctive(pair, model);
        CHECK(res.total_conflict == 0.0);
        CHECK(res.masses == m.entries());
    }

    // within 1e-12 per entry on random draws, under every rule and both orders
    std::mt19937_64 rng(424242);
    for (int iter = 0; iter < 200; ++iter) {
        const Frame frame = gen::tiny_frame(2 + iter % 3);
        const Model rmodel = gen::random_model(rng, frame);
        const MassAssignment m = gen::random_sources(rng, rmodel, 1).front();
        const MassAssignment vac = vacuous(frame);
        const std::array<MassAssignment, 2> pair{m, vac};
        const std::array<MassAssignment, 2> flipped{vac, m};

        const auto close_to_m = [&](const MassAssignment& out) {
            CHECK(out.entries().size() == m.entries().size());
            for (const auto& [p, mass] : m.entries())
                CHECK(std::abs(out.mass(p) - mass) <= 1e-12);
        };
        close_to_m(urr(pair, rmodel));
        close_to_m(murr(pair, rmodel));
        close_to_m(purr(pair, rmodel));
        close_to_m(dempster(pair, rmodel));
        close_to_m(pcr5(m, vac, rmodel));
        close_to_m(pcr5(vac, m, rmodel));
        close_to_m(urr(flipped, rmodel));
        CHECK(conjunctive(pair, rmodel).masses == m.entries());
    }
}

TEST_CASE("zero conflict means exact agreement across rules") {
    std::mt19937_64 rng(31337);
    for (int iter = 0; iter < 100; ++iter) {
        const Frame frame = gen::tiny_frame(2 + iter % 3);
        const Model free_model(frame, {});  // no constraints: intersections never vanish
        const auto sources = gen::random_sources(rng, free_model, 2 + iter % 2);

        const auto res = conjunctive(sources, free_model);
        CHECK(res.total_conflict == 0.0);
        CHECK(res.conflicts.empty());
        CHECK(urr(sources, free_model).entries() == res.masses);
        CHECK(murr(sources, free_model).entries() == res.masses);
        CHECK(purr(sources, free_model).entries() == res.masses);
        CHECK(dempster(sources, free_model).entries() == res.masses);
        if (sources.size() == 2)
            CHECK(pcr5(sources[0], sources[1], free_model).entries() == res.masses);
    }
}

TEST_CASE("conservation and non-negativity on random inputs") {
    std::mt19937_64 rng(8675309);
    int checked = 0;
    for (int iter = 0; iter < 500; ++iter) {
        const Frame frame = gen::tiny_frame(2 + iter % 3);
        const Model model = gen::random_model(rng, frame);
        const auto sources = gen::random_sources(rng, model, 2 + iter % 2);

        const auto res = conjunctive(sources, model);
        double sum = res.total_conflict;
        for (const auto& [p, m] : res.masses) {
            CHECK(m >= 0.0);
            sum += m;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);

        const auto check_rule = [&](const char* name, auto&& fn) {
            try {
                const MassAssignment out = fn();
                double s = 0.0;
                for (const auto& [p, m] : out.entries()) {
                    CHECK_MESSAGE(m >= 0.0, name, " produced a negative mass");
                    s += m;
                }
                CHECK_MESSAGE(std::abs(s - 1.0) <= 1e-9, name, " sums to ", s);
            } catch (const RuleDomainError&) {
                // undefined on this draw (total conflict); nothing to conserve
            }
        };
        check_rule("urr", [&] { return urr(sources, model); });
        check_rule("murr", [&] { return murr(sources, model); });
        check_rule("purr", [&] { return purr(sources, model); });
        check_rule("dempster", [&] { return dempster(sources, model); });
        if (sources.size() == 2)
            check_rule("pcr5", [&] { return pcr5(sources[0], sources[1], model); });
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("redistribution increments are uniform") {
    std::mt19937_64 rng(1999);
    for (int iter = 0; iter < 200; ++iter) {
        const Frame frame = gen::tiny_frame(2 + iter % 3);
        const Model model = gen::random_model(rng, frame);
        const auto sources = gen::random_sources(rng, model, 2 + iter % 2);

        const auto res = conjunctive(sources, model);
        const auto supports = redistribution_supports(res);

        const auto u = urr(sources, model);
        const double share =
            res.total_conflict / static_cast<double>(supports.urr_count);
        for (const auto& p : supports.urr_support) {
            const double base = res.masses.contains(p) ? res.masses.at(p) : 0.0;
            CHECK(std::abs((u.mass(p) - base) - share) <= 1e-15);
        }
        for (const auto& [p, m] : u.entries())
            if (!supports.urr_support.contains(p)) CHECK(m == res.masses.at(p));

        if (!res.core.empty()) {
            const auto mu = murr(sources, model);
            CHECK(mu.entries().size() == res.masses.size());
            const double cshare =
                res.total_conflict / static_cast<double>(supports.murr_count);
            for (const auto& p : supports.murr_support)
                CHECK(std::abs((mu.mass(p) - res.masses.at(p)) - cshare) <= 1e-15);
        }
    }
}

TEST_CASE("purr only feeds conflict participants") {
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 200; ++iter) {
        const Frame frame = gen::tiny_frame(2 + iter % 3);
        const Model model = gen::random_model(rng, frame);
        const auto sources = gen::random_sources(rng, model, 2 + iter % 2);

        const auto res = conjunctive(sources, model);
        std::set<Proposition> participants;
        for (const auto& ct : res.conflicts)
            for (const auto& member : ct.members) participants.insert(member);

        const MassAssignment out = purr(sources, model);
        for (const auto& [p, m] : out.entries()) {
            const double base = res.masses.contains(p) ? res.masses.at(p) : 0.0;
            if (m > base + 1e-15) CHECK(participants.contains(p));
        }
    }
}

TEST_CASE("both purr routes agree at two sources") {
    std::mt19937_64 rng(246810);
    for (int iter = 0; iter < 200; ++iter) {
        const Frame frame = gen::tiny_frame(2 + iter % 3);
        const Model model = gen::random_model(rng, frame);
        const auto sources = gen::random_sources(rng, model, 2);
        const auto general = purr(sources, model);
        const auto direct = purr_two_source(sources[0], sources[1], model);
        CHECK(general.entries().size() == direct.entries().size());
        for (const auto& [p, m] : general.entries())
            CHECK(std::abs(m - direct.mass(p)) <= 1e-15);
    }
}

TEST_CASE("source order does not matter") {
    std::mt19937_64 rng(13579);
    for (int iter = 0; iter < 100; ++iter) {
        const Frame frame = gen::tiny_frame(2 + iter % 3);
        const Model model = gen::random_model(rng, frame);
        const auto sources = gen::random_sources(rng, model, 2 + iter % 2);
        const std::vector<MassAssignment> reversed(sources.rbegin(), sources.rend());

        const auto compare = [&](const MassAssignment& x, const MassAssignment& y) {
            CHECK(x.entries().size() == y.entries().size());
            for (const auto& [p, m] : x.entries()) CHECK(std::abs(m - y.mass(p)) <= 1e-12);
        };
        compare(urr(sources, model), urr(reversed, model));
        compare(purr(sources, model), purr(reversed, model));
        try {
            compare(murr(sources, model), murr(reversed, model));
        } catch (const RuleDomainError&) {
            CHECK_THROWS_AS(murr(reversed, model), RuleDomainError);
        }
        try {
            compare(dempster(sources, model), dempster(reversed, model));
        } catch (const RuleDomainError&) {
            CHECK_THROWS_AS(dempster(reversed, model), RuleDomainError);
        }
        if (sources.size() == 2)
            compare(pcr5(sources[0], sources[1], model), pcr5(sources[1], sources[0], model));

        const auto k1 = conjunctive(sources, model).total_conflict;
        const auto k2 = conjunctive(reversed, model).total_conflict;
        CHECK(std::abs(k1 - k2) <= 1e-12);
    }
}

TEST_CASE("rules match the brute-force oracle") {
    // deterministic anchor: the oracle reproduces the worked valuations
    const Model model = fix::worked_model();
    const auto sources = fix::worked_sources(model);
    CHECK(oracle::max_gap(oracle::urr(sources, model), urr(sources, model).entries()) <= 1e-12);
    for (const auto& [name, value] : fix::urr_expected)
        CHECK(std::abs(oracle::urr(sources, model).at(name) - value) <= 1e-12);

    std::mt19937_64 rng(112358);
    for (int iter = 0; iter < 100; ++iter) {
        const Frame frame = gen::tiny_frame(3);
        const Model rmodel = gen::random_model(rng, frame);
        const auto rsources = gen::random_sources(rng, rmodel, 3);

        const auto expected = oracle::consensus(rsources, rmodel);
        const auto res = conjunctive(rsources, rmodel);
        CHECK(std::abs(expected.k - res.total_conflict) <= 1e-12);
        CHECK(oracle::max_gap(expected.masses, res.masses) <= 1e-12);
        CHECK(expected.conflicts.size() == res.conflicts.size());

        CHECK(oracle::max_gap(oracle::urr(rsources, rmodel), urr(rsources, rmodel).entries()) <=
              1e-12);
        CHECK(oracle::max_gap(oracle::purr(rsources, rmodel), purr(rsources, rmodel).entries()) <=
              1e-12);
        if (!res.core.empty())
            CHECK(oracle::max_gap(oracle::murr(rsources, rmodel),
                                  murr(rsources, rmodel).entries()) <= 1e-12);
    }
}
