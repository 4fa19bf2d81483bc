#include <decgraph/morphism.hh>

#include <algorithm>
#include <set>

using std::optional;
using std::string;
using std::vector;

namespace decgraph
{
    auto verify_morphism(const Morphism & m) -> GMReport
    {
        if (m.source.agents() != m.target.agents())
            throw ArityMismatch{"source has " + std::to_string(m.source.agents()) + " agents, target has "
                + std::to_string(m.target.agents())};

        GMReport report;
        if (static_cast<int>(m.map.size()) != m.source.size()) {
            report.shape_violations.push_back("map covers " + std::to_string(m.map.size()) + " of "
                    + std::to_string(m.source.size()) + " source nodes");
            return report;
        }
        for (int v = 0 ; v < m.source.size() ; ++v)
            if (m.map[v] < 0 || m.map[v] >= m.target.size())
                report.shape_violations.push_back("image of node " + node_key(m.source.node(v)) + " is outside the target");
        if (! report.shape_violations.empty())
            return report;

        for (int v = 0 ; v < m.source.size() ; ++v)
            if (m.source.colour(v) != m.target.colour(m.map[v]))
                report.colour_violations.push_back(v);

        for (int u = 0 ; u < m.source.size() ; ++u)
            for (int v = u + 1 ; v < m.source.size() ; ++v)
                if (! m.target.edge(m.map[u], m.map[v]).subset_of(m.source.edge(u, v)))
                    report.edge_violations.emplace_back(u, v);

        return report;
    }

    namespace
    {
        class Searcher
        {
        public:
            Searcher(const ColoredGraph & source, const ColoredGraph & target, const SearchOptions & options) :
                _source(source),
                _target(target),
                _options(options),
                _assignment(source.size(), -1)
            {
            }

            auto run() -> optional<vector<int>>
            {
                vector<vector<int>> domains(_source.size());
                for (int u = 0 ; u < _source.size() ; ++u)
                    for (int t = 0 ; t < _target.size() ; ++t)
                        if (_source.colour(u) == _target.colour(t))
                            domains[u].push_back(t);

                if (search(domains, 0))
                    return _assignment;
                return std::nullopt;
            }

            auto expansions() const -> std::uint64_t { return _expansions; }

        private:
            auto search(const vector<vector<int>> & domains, int assigned) -> bool
            {
                if (assigned == _source.size())
                    return true;

                // fewest candidates first, ties by declaration order
                int var = -1;
                for (int u = 0 ; u < _source.size() ; ++u)
                    if (_assignment[u] == -1 && (var == -1 || domains[u].size() < domains[var].size()))
                        var = u;

                for (int value : domains[var]) {
                    if (_options.budget && _expansions >= *_options.budget)
                        throw SearchLimitExceeded{"morphism search gave up after " + std::to_string(_expansions) + " expansions"};
                    ++_expansions;

                    vector<vector<int>> next(_source.size());
                    bool wiped_out = false;
                    for (int w = 0 ; w < _source.size() && ! wiped_out ; ++w) {
                        if (_assignment[w] != -1 || w == var)
                            continue;
                        auto allowed = _source.edge(var, w);
                        for (int c : domains[w])
                            if (_target.edge(value, c).subset_of(allowed))
                                next[w].push_back(c);
                        wiped_out = next[w].empty();
                    }
                    if (wiped_out)
                        continue;

                    _assignment[var] = value;
                    if (search(next, assigned + 1))
                        return true;
                    _assignment[var] = -1;
                }
                return false;
            }

            const ColoredGraph & _source;
            const ColoredGraph & _target;
            const SearchOptions & _options;
            vector<int> _assignment;
            std::uint64_t _expansions = 0;
        };
    }

    auto find_morphism(const ColoredGraph & source, const ColoredGraph & target,
            const SearchOptions & options, SearchStats * stats) -> optional<Morphism>
    {
        if (source.agents() != target.agents())
            throw ArityMismatch{"source has " + std::to_string(source.agents()) + " agents, target has "
                + std::to_string(target.agents())};

        // an empty-coloured source edge forces equal images only when no two
        // distinct target nodes are joined by an empty-coloured edge
        bool target_separates = true;
        for (int u = 0 ; u < target.size() && target_separates ; ++u)
            for (int v = u + 1 ; v < target.size() && target_separates ; ++v)
                target_separates = ! target.edge(u, v).empty();

        Quotient quotient;
        if (target_separates) {
            quotient = quotient_by_indistinguishability(source);
            if (quotient.conflict)
                return std::nullopt;
        }
        else {
            quotient.graph = source;
            for (int v = 0 ; v < source.size() ; ++v)
                quotient.class_of.push_back(v);
        }

        Searcher searcher{quotient.graph, target, options};
        optional<vector<int>> found;
        try {
            found = searcher.run();
        }
        catch (const SearchLimitExceeded &) {
            if (stats)
                stats->expansions = searcher.expansions();
            throw;
        }
        if (stats)
            stats->expansions = searcher.expansions();
        if (! found)
            return std::nullopt;

        Morphism m{ source, target, vector<int>(source.size()) };
        for (int v = 0 ; v < source.size() ; ++v)
            m.map[v] = (*found)[quotient.class_of[v]];
        return m;
    }

    auto extract_solution(const Morphism & m, const ObservationProblem & p, const FusionRule & r) -> Solution
    {
        if (m.source.size() != static_cast<int>(p.legal_behaviour.size()) || m.map.size() != p.legal_behaviour.size())
            throw GraphMismatch{"morphism source is not the observation graph of the problem"};
        if (p.agents() != r.agents || m.target.agents() != r.agents)
            throw ArityMismatch{"problem, rule and morphism disagree on the agent count"};

        Solution sol;
        sol.tables.resize(p.agents());
        for (std::size_t k = 0 ; k < p.legal_behaviour.size() ; ++k) {
            auto & s = p.legal_behaviour[k];
            auto & source_node = m.source.node(static_cast<int>(k));
            if (source_node.kind != GraphNode::Kind::string || source_node.payload != s)
                throw GraphMismatch{"morphism source node " + std::to_string(k) + " is not " + to_string(s)};

            int image = m.map[k];
            if (image < 0 || image >= m.target.size() || m.target.node(image).kind != GraphNode::Kind::tuple)
                throw GraphMismatch{"morphism target is not a decision graph"};
            auto & tuple = m.target.node(image).payload;
            if (! r.find(tuple))
                throw GraphMismatch{"image " + tuple_to_string(tuple) + " is not in the rule's domain"};

            for (int i = 0 ; i < p.agents() ; ++i) {
                auto label = p.observations[i](s);
                auto [it, inserted] = sol.tables[i].emplace(label, tuple[i]);
                if (! inserted && it->second != tuple[i])
                    throw InconsistentMorphism{"agent " + std::to_string(i + 1) + " would decide both "
                        + it->second.text() + " and " + tuple[i].text() + " on observation \"" + to_string(label) + "\""};
            }
        }
        return sol;
    }

    namespace
    {
        auto decide(const ObservationProblem & p, const Solution & sol, const Str & s) -> optional<DecisionTuple>
        {
            DecisionTuple tuple;
            for (int i = 0 ; i < p.agents() ; ++i) {
                auto & table = sol.tables[i];
                auto it = table.find(p.observations[i](s));
                if (it == table.end())
                    return std::nullopt;
                tuple.push_back(it->second);
            }
            return tuple;
        }
    }

    auto verify_solution(const ObservationProblem & p, const Solution & sol, const FusionRule & r) -> bool
    {
        if (static_cast<int>(sol.tables.size()) != p.agents() || p.agents() != r.agents)
            return false;

        for (auto & s : p.legal_behaviour) {
            auto tuple = decide(p, sol, s);
            if (! tuple)
                return false;
            auto j = r.find(*tuple);
            if (! j || r.output[*j] != p.target_behaviour.contains(s))
                return false;
        }
        return true;
    }

    auto solution_morphism(const ObservationProblem & p, const Solution & sol, const FusionRule & r) -> Morphism
    {
        if (static_cast<int>(sol.tables.size()) != p.agents() || p.agents() != r.agents)
            throw ArityMismatch{"problem, solution and rule disagree on the agent count"};

        Morphism m{ build_observation_graph(p), build_decision_graph(r), {} };
        for (auto & s : p.legal_behaviour) {
            auto tuple = decide(p, sol, s);
            if (! tuple)
                throw InconsistentMorphism{"solution has no decision for string " + to_string(s)};
            auto j = r.find(*tuple);
            if (! j)
                throw InconsistentMorphism{"decision " + tuple_to_string(*tuple) + " is outside the rule's domain"};
            m.map.push_back(static_cast<int>(*j));
        }
        return m;
    }

    auto solvable_by_enumeration(const ObservationProblem & p, const FusionRule & r, std::uint64_t budget) -> bool
    {
        if (p.agents() != r.agents)
            throw ArityMismatch{"problem has " + std::to_string(p.agents()) + " agents, rule has " + std::to_string(r.agents)};

        // slot = (agent, distinct observation label); each slot takes a decision index
        vector<vector<int>> slot_of(p.legal_behaviour.size(), vector<int>(p.agents()));
        int slots = 0;
        for (int i = 0 ; i < p.agents() ; ++i) {
            std::map<Label, int> labels;
            for (std::size_t k = 0 ; k < p.legal_behaviour.size() ; ++k) {
                auto [it, inserted] = labels.emplace(p.observations[i](p.legal_behaviour[k]), slots);
                if (inserted)
                    ++slots;
                slot_of[k][i] = it->second;
            }
        }

        auto base = static_cast<std::uint64_t>(r.decisions.size());
        if (slots > 0 && base == 0)
            return false;
        std::uint64_t total = 1;
        for (int k = 0 ; k < slots ; ++k) {
            if (total > budget / base)
                throw BudgetExceeded{"enumeration needs " + std::to_string(r.decisions.size()) + "^" + std::to_string(slots)
                    + " assignments, over the budget of " + std::to_string(budget)};
            total *= base;
        }

        std::map<vector<int>, bool> outputs;
        for (std::size_t j = 0 ; j < r.domain.size() ; ++j) {
            vector<int> code;
            for (auto & d : r.domain[j])
                code.push_back(static_cast<int>(std::find(r.decisions.begin(), r.decisions.end(), d) - r.decisions.begin()));
            outputs.emplace(std::move(code), r.output[j]);
        }

        vector<int> digits(slots, 0);
        vector<int> tuple(p.agents());
        while (true) {
            bool ok = true;
            for (std::size_t k = 0 ; k < p.legal_behaviour.size() && ok ; ++k) {
                for (int i = 0 ; i < p.agents() ; ++i)
                    tuple[i] = digits[slot_of[k][i]];
                auto it = outputs.find(tuple);
                ok = it != outputs.end() && it->second == p.target_behaviour.contains(p.legal_behaviour[k]);
            }
            if (ok)
                return true;

            int pos = slots - 1;
            while (pos >= 0 && ++digits[pos] == static_cast<int>(base))
                digits[pos--] = 0;
            if (pos < 0)
                return false;
        }
    }

    auto compose(const Morphism & first, const Morphism & second) -> Morphism
    {
        if (! (first.target == second.source))
            throw GraphMismatch{"target of the first morphism is not the source of the second"};

        Morphism result{ first.source, second.target, {} };
        for (int v : first.map) {
            if (v < 0 || v >= static_cast<int>(second.map.size()))
                throw GraphMismatch{"first morphism points outside its target"};
            result.map.push_back(second.map[v]);
        }
        return result;
    }

    auto identity_morphism(const ColoredGraph & g) -> Morphism
    {
        Morphism m{ g, g, vector<int>(g.size()) };
        for (int v = 0 ; v < g.size() ; ++v)
            m.map[v] = v;
        return m;
    }
}
