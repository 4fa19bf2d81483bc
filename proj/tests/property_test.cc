#include <doctest.h>

#include "fixtures.hh"
#include "generators.hh"
#include "oracles.hh"

#include <decgraph/io.hh>

using namespace decgraph;
using namespace decgraph::testing;

namespace
{
    /// Random problem over {a, b, c} with two agents whose observation
    /// functions are random tables over a small label set.
    auto random_table_problem(std::mt19937 & rng) -> ObservationProblem
    {
        ObservationProblem p;
        p.alphabet = { Token{"a"}, Token{"b"}, Token{"c"} };
        for (auto & s : all_strings(p.alphabet, 2))
            if (rng() % 4 == 0) {
                p.legal_behaviour.insert(s);
                if (rng() % 2 == 0)
                    p.target_behaviour.insert(s);
            }
        for (int i = 0 ; i < 2 ; ++i) {
            std::map<Str, Label> entries;
            for (auto & s : p.legal_behaviour)
                entries.emplace(s, Label{ Token{ std::string(1, static_cast<char>('p' + rng() % 3)) } });
            p.observations.push_back(ObservationFunction::table(std::move(entries)));
        }
        return p;
    }

    auto random_solution(std::mt19937 & rng, const ObservationProblem & p, const FusionRule & r) -> Solution
    {
        Solution sol;
        sol.tables.resize(p.agents());
        for (auto & s : p.legal_behaviour)
            for (int i = 0 ; i < p.agents() ; ++i)
                sol.tables[i].emplace(p.observations[i](s), r.decisions[rng() % r.decisions.size()]);
        return sol;
    }
}

TEST_CASE("search and enumeration agree on problems with table observations")
{
    std::mt19937 rng{ 99 };
    const std::vector<FusionRule> rules{ builtin_rule("conjunctive", 2), builtin_rule("disjunctive", 2),
        builtin_rule("cpda", 2), builtin_rule("conjunctive_cd", 2) };
    for (int round = 0 ; round < 150 ; ++round) {
        auto p = random_table_problem(rng);
        REQUIRE(validate_problem(p).ok());
        for (auto & r : rules) {
            auto m = find_morphism(build_observation_graph(p), build_decision_graph(r));
            CHECK(m.has_value() == solvable_by_enumeration(p, r));
            if (m) {
                REQUIRE(verify_morphism(*m).ok());
                CHECK(verify_solution(p, extract_solution(*m, p, r), r));
            }
        }
    }
}

TEST_CASE("every verifying solution induces a morphism")
{
    std::mt19937 rng{ 5 };
    auto r = builtin_rule("cpda", 2);
    int verified = 0;
    for (int round = 0 ; round < 3000 ; ++round) {
        auto p = random_table_problem(rng);
        auto sol = random_solution(rng, p, r);
        if (! verify_solution(p, sol, r))
            continue;
        ++verified;
        CHECK(verify_morphism(solution_morphism(p, sol, r)).ok());
    }
    CHECK(verified > 0);
}

TEST_CASE("search is deterministic and closed under composition on random graphs")
{
    std::mt19937 rng{ 31337 };
    int composed = 0;
    for (int round = 0 ; round < 200 ; ++round) {
        int agents = 1 + rng() % 3;
        auto a = random_graph(rng, 1 + rng() % 6, agents);
        auto b = random_graph(rng, 1 + rng() % 6, agents);
        auto c = random_graph(rng, 1 + rng() % 6, agents);

        auto ab = find_morphism(a, b);
        auto again = find_morphism(a, b);
        REQUIRE(ab.has_value() == again.has_value());
        if (! ab)
            continue;
        CHECK(morphism_to_json(*ab).dump() == morphism_to_json(*again).dump());

        auto bc = find_morphism(b, c);
        if (! bc)
            continue;
        ++composed;
        CHECK(verify_morphism(compose(*ab, *bc)).ok());
        CHECK(find_morphism(a, c));
    }
    CHECK(composed > 0);
}

TEST_CASE("quotients leave no empty edges between distinct classes")
{
    std::mt19937 rng{ 4 };
    for (int round = 0 ; round < 300 ; ++round) {
        auto g = random_graph(rng, 1 + rng() % 8, 1 + rng() % 3);
        auto q = quotient_by_indistinguishability(g);
        if (q.conflict)
            continue;
        for (int u = 0 ; u < q.graph.size() ; ++u)
            for (int v = u + 1 ; v < q.graph.size() ; ++v)
                CHECK_FALSE(q.graph.edge(u, v).empty());
        int total = 0;
        for (auto & cls : q.members) {
            total += static_cast<int>(cls.size());
            for (int v : cls)
                CHECK(g.colour(v) == q.graph.colour(q.class_of[v]));
        }
        CHECK(total == g.size());
    }
}
