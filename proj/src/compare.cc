#include <decgraph/compare.hh>

using std::optional;
using std::string;
using std::vector;

namespace decgraph
{
    auto to_string(Relation r) -> string
    {
        switch (r) {
            case Relation::equivalent:          return "equivalent";
            case Relation::first_strictly_less: return "first_strictly_less";
            case Relation::first_strictly_more: return "first_strictly_more";
            case Relation::incomparable:        return "incomparable";
        }
        return "incomparable";
    }

    auto parse_relation(const string & text) -> Relation
    {
        for (auto r : { Relation::equivalent, Relation::first_strictly_less, Relation::first_strictly_more, Relation::incomparable })
            if (to_string(r) == text)
                return r;
        throw ParseError{"unknown relation: " + text};
    }

    auto mirror(Relation r) -> Relation
    {
        switch (r) {
            case Relation::first_strictly_less: return Relation::first_strictly_more;
            case Relation::first_strictly_more: return Relation::first_strictly_less;
            default:                            return r;
        }
    }

    auto describe(Relation r) -> string
    {
        switch (r) {
            case Relation::equivalent:          return "equivalent";
            case Relation::first_strictly_less: return "second strictly more permissive";
            case Relation::first_strictly_more: return "first strictly more permissive";
            case Relation::incomparable:        return "incomparable";
        }
        return "incomparable";
    }

    auto compare(const FusionRule & first, const FusionRule & second, const SearchOptions & options) -> PermissivenessVerdict
    {
        if (first.agents != second.agents)
            throw ArityMismatch{"cannot compare a rule over " + std::to_string(first.agents) + " agents with one over "
                + std::to_string(second.agents)};

        auto a = build_decision_graph(first);
        auto b = build_decision_graph(second);

        PermissivenessVerdict verdict;
        verdict.forward = find_morphism(a, b, options);
        verdict.backward = find_morphism(b, a, options);

        if (verdict.forward && verdict.backward)
            verdict.relation = Relation::equivalent;
        else if (verdict.forward)
            verdict.relation = Relation::first_strictly_less;
        else if (verdict.backward)
            verdict.relation = Relation::first_strictly_more;
        else
            verdict.relation = Relation::incomparable;
        return verdict;
    }

    auto separating_problem(const FusionRule & first, const FusionRule & second,
            Encoding encoding, const SearchOptions & options) -> optional<ObservationProblem>
    {
        if (first.agents != second.agents)
            throw ArityMismatch{"cannot compare a rule over " + std::to_string(first.agents) + " agents with one over "
                + std::to_string(second.agents)};

        if (find_morphism(build_decision_graph(first), build_decision_graph(second), options))
            return std::nullopt;
        return decision_graph_to_observation(first, encoding).problem;
    }

    auto relation_matrix(const vector<FusionRule> & rules, const SearchOptions & options) -> RelationMatrix
    {
        for (auto & r : rules)
            if (r.agents != rules.front().agents)
                throw ArityMismatch{"rule " + r.name + " has " + std::to_string(r.agents) + " agents, "
                    + rules.front().name + " has " + std::to_string(rules.front().agents)};

        int n = static_cast<int>(rules.size());
        RelationMatrix result;
        result.cells.assign(n, vector<PermissivenessVerdict>(n));
        for (auto & r : rules)
            result.names.push_back(r.name);

        for (int i = 0 ; i < n ; ++i)
            for (int j = i ; j < n ; ++j) {
                auto verdict = compare(rules[i], rules[j], options);
                result.cells[j][i] = PermissivenessVerdict{ mirror(verdict.relation), verdict.backward, verdict.forward };
                result.cells[i][j] = std::move(verdict);
            }

        // at_most[i][j]: rules[j] is at least as permissive as rules[i]
        auto at_most = [&] (int i, int j) { return result.cells[i][j].forward.has_value(); };

        vector<int> class_of(n, -1);
        for (int i = 0 ; i < n ; ++i) {
            if (class_of[i] != -1)
                continue;
            class_of[i] = static_cast<int>(result.classes.size());
            result.classes.push_back({ i });
            for (int j = i + 1 ; j < n ; ++j)
                if (class_of[j] == -1 && at_most(i, j) && at_most(j, i)) {
                    class_of[j] = class_of[i];
                    result.classes.back().push_back(j);
                }
        }

        int c = static_cast<int>(result.classes.size());
        auto below = [&] (int x, int y) {
            int a = result.classes[x].front(), b = result.classes[y].front();
            return x != y && at_most(a, b) && ! at_most(b, a);
        };
        for (int x = 0 ; x < c ; ++x)
            for (int y = 0 ; y < c ; ++y) {
                if (! below(x, y))
                    continue;
                bool covered = true;
                for (int z = 0 ; z < c && covered ; ++z)
                    if (below(x, z) && below(z, y))
                        covered = false;
                if (covered)
                    result.hasse.emplace_back(x, y);
            }

        return result;
    }
}
