#include <decgraph/model.hh>

#include <algorithm>
#include <functional>

using std::optional;
using std::set;
using std::string;
using std::vector;

namespace decgraph
{
    namespace
    {
        constexpr int max_agents = 64;

        auto display(const Str & s) -> string
        {
            return s.empty() ? string{"ε"} : to_string(s);
        }

        auto check_common(const vector<Token> & alphabet, const Language & legal, const Language & target,
                const vector<ObservationFunction> & observations, ValidationReport & report) -> void
        {
            int agents = static_cast<int>(observations.size());
            if (agents < 1)
                report.violations.push_back("agent count must be at least 1");
            if (agents > max_agents)
                report.violations.push_back("agent count " + std::to_string(agents) + " exceeds " + std::to_string(max_agents));

            set<Token> sigma;
            for (auto & t : alphabet) {
                if (t.text().empty())
                    report.violations.push_back("empty token in alphabet");
                if (! sigma.insert(t).second)
                    report.violations.push_back("duplicate token in alphabet: " + t.text());
            }

            auto over_alphabet = [&] (const Language & lang, const char * name) {
                for (auto & s : lang)
                    for (auto & t : s)
                        if (! sigma.contains(t)) {
                            report.violations.push_back(string{name} + " string " + display(s) + " uses token outside alphabet: " + t.text());
                            break;
                        }
                for (auto & s : lang.duplicates())
                    report.violations.push_back(string{"duplicate string in "} + name + ": " + display(s));
            };
            over_alphabet(legal, "L");
            over_alphabet(target, "K");

            for (auto & s : target)
                if (! legal.contains(s))
                    report.violations.push_back("K ⊄ L: " + display(s) + " is in K but not in L");

            for (int i = 0 ; i < agents ; ++i) {
                auto & p = observations[i];
                string name = "P_" + std::to_string(i + 1);
                if (p.kind() == ObservationFunction::Kind::projection) {
                    for (auto & t : p.observable())
                        if (! sigma.contains(t))
                            report.violations.push_back(name + " observes token outside alphabet: " + t.text());
                }
                else {
                    for (auto & s : legal)
                        if (! p.entries().contains(s))
                            report.violations.push_back(name + " partial on L: no entry for " + display(s));
                }
            }
        }

        auto all_tuples(const vector<Token> & decisions, int agents) -> vector<DecisionTuple>
        {
            vector<DecisionTuple> result;
            vector<std::size_t> digits(agents, 0);
            while (true) {
                DecisionTuple t;
                for (auto d : digits)
                    t.push_back(decisions[d]);
                result.push_back(std::move(t));

                int pos = agents - 1;
                while (pos >= 0 && ++digits[pos] == decisions.size())
                    digits[pos--] = 0;
                if (pos < 0)
                    break;
            }
            return result;
        }
    }

    auto make_str(std::initializer_list<const char *> texts) -> Str
    {
        Str s;
        for (auto t : texts)
            s.emplace_back(t);
        return s;
    }

    auto to_string(const Str & s) -> string
    {
        string result;
        for (auto & t : s) {
            if (! result.empty())
                result += ' ';
            result += t.text();
        }
        return result;
    }

    auto tuple_to_string(const DecisionTuple & t) -> string
    {
        string result = "(";
        for (std::size_t i = 0 ; i < t.size() ; ++i) {
            if (i > 0)
                result += ',';
            result += t[i].text();
        }
        return result + ")";
    }

    Language::Language(std::initializer_list<Str> strings)
    {
        for (auto & s : strings)
            if (! insert(s))
                _duplicates.push_back(s);
    }

    Language::Language(vector<Str> strings)
    {
        for (auto & s : strings)
            if (! insert(s))
                _duplicates.push_back(s);
    }

    auto Language::insert(Str s) -> bool
    {
        if (! _index.insert(s).second)
            return false;
        _strings.push_back(std::move(s));
        return true;
    }

    auto ObservationFunction::projection(set<Token> observable) -> ObservationFunction
    {
        ObservationFunction p;
        p._kind = Kind::projection;
        p._observable = std::move(observable);
        return p;
    }

    auto ObservationFunction::table(std::map<Str, Label> entries) -> ObservationFunction
    {
        ObservationFunction p;
        p._kind = Kind::table;
        p._entries = std::move(entries);
        return p;
    }

    auto ObservationFunction::operator()(const Str & s) const -> Label
    {
        if (_kind == Kind::projection) {
            Label result;
            for (auto & t : s)
                if (_observable.contains(t))
                    result.push_back(t);
            return result;
        }

        auto it = _entries.find(s);
        if (it == _entries.end())
            throw UnknownString{"no observation recorded for string " + display(s)};
        return it->second;
    }

    auto observe(const ObservationFunction & p, const Str & s) -> Label
    {
        return p(s);
    }

    auto ControlProblem::controllable_events() const -> set<Token>
    {
        set<Token> result;
        for (auto & c : controllable)
            result.insert(c.begin(), c.end());
        return result;
    }

    auto ControlProblem::uncontrollable_events() const -> set<Token>
    {
        auto sigma_c = controllable_events();
        set<Token> result;
        for (auto & t : alphabet)
            if (! sigma_c.contains(t))
                result.insert(t);
        return result;
    }

    auto observation_tuple(const ObservationProblem & p, const Str & s) -> ObservationTuple
    {
        if (! p.legal_behaviour.contains(s))
            throw UnknownString{"string " + display(s) + " is not in L"};

        ObservationTuple result;
        result.reserve(p.observations.size());
        for (auto & obs : p.observations)
            result.push_back(obs(s));
        return result;
    }

    auto validate_problem(const ObservationProblem & p) -> ValidationReport
    {
        ValidationReport report;
        check_common(p.alphabet, p.legal_behaviour, p.target_behaviour, p.observations, report);
        return report;
    }

    auto validate_problem(const ControlProblem & c) -> ValidationReport
    {
        ValidationReport report;
        check_common(c.alphabet, c.legal_behaviour, c.target_behaviour, c.observations, report);

        if (c.controllable.size() != c.observations.size())
            report.violations.push_back("controllable alphabet count " + std::to_string(c.controllable.size())
                    + " differs from agent count " + std::to_string(c.observations.size()));

        set<Token> sigma(c.alphabet.begin(), c.alphabet.end());
        for (std::size_t i = 0 ; i < c.controllable.size() ; ++i)
            for (auto & t : c.controllable[i])
                if (! sigma.contains(t))
                    report.violations.push_back("Σ_c," + std::to_string(i + 1) + " contains token outside alphabet: " + t.text());

        return report;
    }

    auto controllability_witness(const ControlProblem & c) -> optional<ControllabilityWitness>
    {
        auto sigma_u = c.uncontrollable_events();
        for (auto & s : c.target_behaviour)
            for (auto & u : sigma_u) {
                Str su = s;
                su.push_back(u);
                if (c.legal_behaviour.contains(su) && ! c.target_behaviour.contains(su))
                    return ControllabilityWitness{ s, u };
            }
        return std::nullopt;
    }

    auto check_controllability(const ControlProblem & c) -> bool
    {
        return ! controllability_witness(c);
    }

    auto reduce(const ControlProblem & c, bool allow_uncontrollable) -> ReducedFamily
    {
        if (! allow_uncontrollable) {
            if (auto w = controllability_witness(c)) {
                Str su = w->prefix;
                su.push_back(w->event);
                throw ControllabilityViolation{"uncontrollable continuation leaves K: " + display(su)
                    + " is in L - K but " + display(w->prefix) + " is in K"};
            }
        }

        auto sigma_c = c.controllable_events();
        ReducedFamily family;
        for (auto & sigma : c.alphabet) {
            if (! sigma_c.contains(sigma))
                continue;

            ReducedEvent ev;
            ev.event = sigma;
            ev.problem.alphabet = c.alphabet;
            for (std::size_t i = 0 ; i < c.controllable.size() ; ++i)
                if (c.controllable[i].contains(sigma)) {
                    ev.agents.push_back(static_cast<int>(i) + 1);
                    ev.problem.observations.push_back(c.observations.at(i));
                }

            for (auto & s : c.target_behaviour) {
                Str extended = s;
                extended.push_back(sigma);
                if (c.legal_behaviour.contains(extended))
                    ev.problem.legal_behaviour.insert(s);
                if (c.target_behaviour.contains(extended))
                    ev.problem.target_behaviour.insert(s);
            }

            family.events.push_back(std::move(ev));
        }
        return family;
    }

    auto FusionRule::find(const DecisionTuple & t) const -> optional<std::size_t>
    {
        auto it = std::find(domain.begin(), domain.end(), t);
        if (it == domain.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - domain.begin());
    }

    auto validate_rule(const FusionRule & r) -> ValidationReport
    {
        ValidationReport report;
        if (r.agents < 1)
            report.violations.push_back("agent count must be at least 1");
        if (r.agents > max_agents)
            report.violations.push_back("agent count " + std::to_string(r.agents) + " exceeds " + std::to_string(max_agents));

        set<Token> decisions;
        for (auto & d : r.decisions) {
            if (d.text().empty())
                report.violations.push_back("empty decision token");
            if (! decisions.insert(d).second)
                report.violations.push_back("duplicate decision: " + d.text());
        }

        if (r.domain.empty())
            report.violations.push_back("domain is empty");
        if (r.output.size() != r.domain.size())
            report.violations.push_back("output has " + std::to_string(r.output.size()) + " entries for "
                    + std::to_string(r.domain.size()) + " domain tuples");

        set<DecisionTuple> seen;
        for (auto & t : r.domain) {
            if (static_cast<int>(t.size()) != r.agents)
                report.violations.push_back("tuple " + tuple_to_string(t) + " does not have " + std::to_string(r.agents) + " entries");
            for (auto & d : t)
                if (! decisions.contains(d)) {
                    report.violations.push_back("tuple " + tuple_to_string(t) + " uses undeclared decision " + d.text());
                    break;
                }
            if (! seen.insert(t).second)
                report.violations.push_back("duplicate tuple " + tuple_to_string(t));
        }
        return report;
    }

    auto builtin_rule_names() -> const vector<string> &
    {
        static const vector<string> names{ "conjunctive", "disjunctive", "cpda", "conjunctive_cd", "const0", "const1" };
        return names;
    }

    auto builtin_rule(const string & name, int agents) -> FusionRule
    {
        if (agents < 1 || agents > max_agents)
            throw ArityMismatch{"builtin rule needs between 1 and " + std::to_string(max_agents) + " agents, got " + std::to_string(agents)};

        const Token zero{"0"}, one{"1"};
        FusionRule r;
        r.name = name;
        r.agents = agents;

        auto has = [] (const DecisionTuple & t, const Token & d) {
            return std::find(t.begin(), t.end(), d) != t.end();
        };

        auto fill = [&] (std::function<bool (const DecisionTuple &)> allowed, std::function<bool (const DecisionTuple &)> out) {
            for (auto & t : all_tuples(r.decisions, agents))
                if (allowed(t)) {
                    r.output.push_back(out(t));
                    r.domain.push_back(std::move(t));
                }
        };

        if (name == "conjunctive") {
            r.decisions = { zero, one };
            fill([] (auto &) { return true; }, [&] (auto & t) { return ! has(t, zero); });
        }
        else if (name == "disjunctive") {
            r.decisions = { zero, one };
            fill([] (auto &) { return true; }, [&] (auto & t) { return has(t, one); });
        }
        else if (name == "cpda" || name == "conjunctive_cd") {
            bool cd = name == "conjunctive_cd";
            Token third{cd ? "cd" : "dk"};
            r.decisions = { zero, one, third };
            fill([&] (auto & t) {
                    if (has(t, zero) && has(t, one))
                        return false;
                    return cd || has(t, zero) || has(t, one);
                    },
                    [&] (auto & t) { return ! has(t, zero); });
        }
        else if (name == "const0" || name == "const1") {
            bool value = name == "const1";
            r.decisions = { zero, one };
            r.domain.push_back(DecisionTuple(agents, value ? one : zero));
            r.output.push_back(value);
        }
        else
            throw UnknownRuleName{"unknown builtin rule: " + name};

        return r;
    }
}
