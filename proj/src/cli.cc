#include <decgraph/cli.hh>
#include <decgraph/io.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <variant>

namespace fs = std::filesystem;

using std::optional;
using std::string;
using std::vector;

namespace decgraph
{
    namespace
    {
        struct RunConfig
        {
            optional<std::uint64_t> budget;
            bool allow_uncontrollable = false;
            string witness;
            string separating;
            string out;

            string input;
            vector<string> inputs;
            string rule;
            string solution;
            string morphism;
            string encoding = "unary";
            string dot;
            bool quotient = false;

            auto search() const -> SearchOptions { return SearchOptions{ budget }; }
        };

        /// Result of a subcommand body; exceptions map onto the other codes.
        using Outcome = int;

        class Commands
        {
        public:
            Commands(const RunConfig & config, std::ostream & out, std::ostream & err) :
                _config(config), _out(out), _err(err)
            {
            }

            auto validate() -> Outcome
            {
                auto j = read_json_file(_config.input);
                auto report = problem_kind(j) == ProblemKind::observation
                    ? validate_problem(observation_problem_from_json(j))
                    : validate_problem(control_problem_from_json(j));
                if (report.ok()) {
                    _out << "valid\n";
                    return exit_positive;
                }
                for (auto & v : report.violations)
                    _out << "violation: " << v << "\n";
                return exit_invalid;
            }

            auto reduce() -> Outcome
            {
                auto c = control_problem_from_json(read_json_file(_config.input));
                if (! require_valid(validate_problem(c)))
                    return exit_invalid;
                require_out("reduce");

                ReducedFamily family;
                try {
                    family = decgraph::reduce(c, _config.allow_uncontrollable);
                }
                catch (const ControllabilityViolation & e) {
                    _err << "controllability violation: " << e.what() << "\n";
                    return exit_negative;
                }

                fs::create_directories(_config.out);
                Json manifest = Json::array();
                for (auto & ev : family.events) {
                    auto file = "obs_" + sanitize_filename(ev.event.text()) + ".json";
                    write_json_file(fs::path{_config.out} / file, problem_to_json(ev.problem));
                    manifest.push_back(Json{ { "file", file }, { "event", ev.event.text() }, { "agents", ev.agents } });
                    _out << file << ": event " << ev.event.text() << ", |L| = " << ev.problem.legal_behaviour.size()
                        << ", |K| = " << ev.problem.target_behaviour.size() << "\n";
                }
                write_json_file(fs::path{_config.out} / "manifest.json", manifest);
                _out << family.events.size() << " observation problem(s) written to " << _config.out << "\n";
                return exit_positive;
            }

            auto check(bool solve) -> Outcome
            {
                auto p = load_observation_problem(_config.input);
                if (! p)
                    return exit_invalid;
                auto r = resolve_rule(_config.rule);
                if (p->agents() != r.agents)
                    throw ArityMismatch{"problem has " + std::to_string(p->agents()) + " agents, rule " + r.name
                        + " has " + std::to_string(r.agents)};
                if (solve)
                    require_out("solve");

                auto source = build_observation_graph(*p);
                auto quotient = quotient_by_indistinguishability(source);
                auto m = find_morphism(source, build_decision_graph(r), _config.search());
                if (! m) {
                    _out << "UNSOLVABLE\n";
                    if (quotient.conflict)
                        _out << "strings \"" << node_key(source.node(quotient.conflict->first)) << "\" and \""
                            << node_key(source.node(quotient.conflict->second))
                            << "\" share every observation but differ in membership of K\n";
                    return exit_negative;
                }

                if (! verify_morphism(*m).ok())
                    throw Error{"internal error: search returned an invalid morphism"};

                if (! _config.witness.empty())
                    write_json_file(_config.witness, morphism_to_json(*m));

                if (solve) {
                    auto sol = extract_solution(*m, *p, r);
                    if (! verify_solution(*p, sol, r))
                        throw Error{"internal error: extracted solution does not verify"};
                    write_json_file(_config.out, solution_to_json(sol));
                }

                _out << "SOLVABLE\n";
                return exit_positive;
            }

            auto verify_solution_cmd() -> Outcome
            {
                auto r = resolve_rule(_config.rule);
                auto input = load_input(_config.input);
                if (! input)
                    return exit_invalid;

                if (auto * p = std::get_if<ObservationProblem>(&*input)) {
                    if (p->agents() != r.agents)
                        throw ArityMismatch{"problem has " + std::to_string(p->agents()) + " agents, rule " + r.name
                            + " has " + std::to_string(r.agents)};
                    if (_config.solution.empty() == _config.morphism.empty())
                        throw ParseError{"verify-solution on a problem needs exactly one of --solution or --morphism"};

                    if (! _config.solution.empty()) {
                        auto sol = solution_from_json(read_json_file(_config.solution));
                        bool ok = decgraph::verify_solution(*p, sol, r);
                        _out << (ok ? "VALID" : "INVALID") << "\n";
                        return ok ? exit_positive : exit_negative;
                    }
                    return report_morphism(build_observation_graph(*p), build_decision_graph(r));
                }

                if (_config.morphism.empty())
                    throw ParseError{"verify-solution on a rule needs --morphism"};
                auto & source_rule = std::get<FusionRule>(*input);
                if (source_rule.agents != r.agents)
                    throw ArityMismatch{"rule " + source_rule.name + " and rule " + r.name + " differ in agent count"};
                return report_morphism(build_decision_graph(source_rule), build_decision_graph(r));
            }

            auto compare() -> Outcome
            {
                if (_config.inputs.size() != 2)
                    throw ParseError{"compare takes exactly two rules"};
                auto first = resolve_rule(_config.inputs[0]);
                auto second = resolve_rule(_config.inputs[1]);
                auto verdict = decgraph::compare(first, second, _config.search());

                for (auto * m : { &verdict.forward, &verdict.backward })
                    if (*m && ! verify_morphism(**m).ok())
                        throw Error{"internal error: search returned an invalid morphism"};

                _out << first.name << " vs " << second.name << ": " << describe(verdict.relation) << "\n";
                _out << "  morphism " << first.name << " -> " << second.name << ": " << (verdict.forward ? "found" : "none") << "\n";
                _out << "  morphism " << second.name << " -> " << first.name << ": " << (verdict.backward ? "found" : "none") << "\n";

                if (! _config.witness.empty()) {
                    if (verdict.forward)
                        write_json_file(_config.witness + ".forward.json", morphism_to_json(*verdict.forward));
                    if (verdict.backward)
                        write_json_file(_config.witness + ".backward.json", morphism_to_json(*verdict.backward));
                }

                if (! _config.separating.empty()) {
                    fs::create_directories(_config.separating);
                    auto encoding = parse_encoding(_config.encoding);
                    // a missing morphism means the source rule's own d2o problem separates
                    if (! verdict.forward) {
                        auto path = fs::path{_config.separating} / "separating_first.json";
                        write_json_file(path, problem_to_json(decision_graph_to_observation(first, encoding).problem));
                        _out << "  " << path.string() << ": solvable with " << first.name << ", not with " << second.name << "\n";
                    }
                    if (! verdict.backward) {
                        auto path = fs::path{_config.separating} / "separating_second.json";
                        write_json_file(path, problem_to_json(decision_graph_to_observation(second, encoding).problem));
                        _out << "  " << path.string() << ": solvable with " << second.name << ", not with " << first.name << "\n";
                    }
                }

                if (! _config.out.empty())
                    write_json_file(_config.out, verdict_to_json(verdict, first.name, second.name));
                return exit_positive;
            }

            auto poset() -> Outcome
            {
                if (_config.inputs.empty())
                    throw ParseError{"poset needs at least one rule"};
                vector<FusionRule> rules;
                for (auto & selector : _config.inputs)
                    rules.push_back(resolve_rule(selector));

                auto matrix = relation_matrix(rules, _config.search());
                for (std::size_t i = 0 ; i < rules.size() ; ++i)
                    for (std::size_t j = 0 ; j < rules.size() ; ++j)
                        if (i != j)
                            _out << matrix.names[i] << " vs " << matrix.names[j] << ": " << describe(matrix.cells[i][j].relation) << "\n";
                for (auto & cls : matrix.classes) {
                    _out << "class:";
                    for (int i : cls)
                        _out << " " << matrix.names[i];
                    _out << "\n";
                }
                for (auto & [lower, upper] : matrix.hasse)
                    _out << "hasse: " << matrix.names[matrix.classes[lower].front()] << " < "
                        << matrix.names[matrix.classes[upper].front()] << "\n";

                if (! _config.out.empty())
                    write_json_file(_config.out, matrix_to_json(matrix));
                return exit_positive;
            }

            auto d2o() -> Outcome
            {
                auto r = resolve_rule(_config.input);
                auto res = decision_graph_to_observation(r, parse_encoding(_config.encoding));
                if (! verify_d2o(res, r))
                    throw Error{"internal error: d2o construction is not isomorphic to the decision graph"};

                if (_config.out.empty()) {
                    _out << problem_to_json(res.problem).dump(2) << "\n";
                    return exit_positive;
                }
                fs::create_directories(_config.out);
                write_json_file(fs::path{_config.out} / "problem.json", problem_to_json(res.problem));
                write_json_file(fs::path{_config.out} / "bijection.json", bijection_to_json(res));
                _out << "wrote " << res.problem.legal_behaviour.size() << " strings (" << res.problem.target_behaviour.size()
                    << " in K) to " << _config.out << "\n";
                return exit_positive;
            }

            auto graph() -> Outcome
            {
                auto input = load_input(_config.input);
                if (! input)
                    return exit_invalid;

                ColoredGraph g = std::holds_alternative<ObservationProblem>(*input)
                    ? build_observation_graph(std::get<ObservationProblem>(*input))
                    : build_decision_graph(std::get<FusionRule>(*input));
                if (_config.quotient)
                    g = quotient_by_indistinguishability(g).graph;

                auto text = export_dot(g, DotOptions{ fs::path{_config.input}.stem().string(), true });
                auto path = ! _config.dot.empty() ? _config.dot : _config.out;
                if (path.empty())
                    _out << text;
                else
                    write_text_file(path, text);
                return exit_positive;
            }

        private:
            auto require_valid(const ValidationReport & report) -> bool
            {
                for (auto & v : report.violations)
                    _err << "violation: " << v << "\n";
                return report.ok();
            }

            auto require_out(const char * command) -> void
            {
                if (_config.out.empty())
                    throw ParseError{string{command} + " needs -o/--out"};
            }

            auto load_observation_problem(const string & path) -> optional<ObservationProblem>
            {
                auto p = observation_problem_from_json(read_json_file(path));
                if (! require_valid(validate_problem(p)))
                    return std::nullopt;
                return p;
            }

            /// A problem file, a rule file, or a builtin rule selector.
            auto load_input(const string & input) -> optional<std::variant<ObservationProblem, FusionRule>>
            {
                if (fs::exists(input)) {
                    auto j = read_json_file(input);
                    if (is_rule_json(j))
                        return rule_from_json(j, fs::path{input}.stem().string());
                    auto p = load_observation_problem(input);
                    if (! p)
                        return std::nullopt;
                    return *p;
                }
                return resolve_rule(input);
            }

            auto report_morphism(const ColoredGraph & source, const ColoredGraph & target) -> Outcome
            {
                auto m = morphism_from_json(read_json_file(_config.morphism), source, target);
                auto report = verify_morphism(m);
                for (int v : report.colour_violations)
                    _out << "colour violation at " << node_key(source.node(v)) << "\n";
                for (auto & [u, v] : report.edge_violations)
                    _out << "edge violation at " << node_key(source.node(u)) << " -- " << node_key(source.node(v)) << ": "
                        << to_string(target.edge(m.map[u], m.map[v])) << " not inside " << to_string(source.edge(u, v)) << "\n";
                _out << (report.ok() ? "VALID" : "INVALID") << "\n";
                return report.ok() ? exit_positive : exit_negative;
            }

            const RunConfig & _config;
            std::ostream & _out;
            std::ostream & _err;
        };
    }

    auto sanitize_filename(const string & text) -> string
    {
        string result;
        for (unsigned char c : text) {
            if (std::isalnum(c) || c == '_' || c == '-')
                result += static_cast<char>(c);
            else {
                char buf[4];
                std::snprintf(buf, sizeof buf, "~%02X", c);
                result += buf;
            }
        }
        return result;
    }

    auto run_cli(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        RunConfig config;
        CLI::App app{"Decentralized observation and control problems via coloured graph morphisms", "decgraph"};
        app.require_subcommand(1);
        app.fallthrough();

        app.add_option("--budget", config.budget, "Maximum search expansions (morphism search) or table assignments");
        app.add_flag("--allow-uncontrollable", config.allow_uncontrollable, "Reduce even when controllability fails");
        app.add_option("--witness", config.witness, "Write witness morphism(s) to this path (prefix for compare)");
        app.add_option("--separating", config.separating, "Directory for separating problems (compare)");
        app.add_option("-o,--out", config.out, "Output file or directory");

        auto validate = app.add_subcommand("validate", "Check a problem file");
        validate->add_option("problem", config.input)->required();

        auto reduce = app.add_subcommand("reduce", "Split a control problem into per-event observation problems");
        reduce->add_option("problem", config.input)->required();

        auto check = app.add_subcommand("check", "Decide solvability of an observation problem under a fusion rule");
        check->add_option("problem", config.input)->required();
        check->add_option("--rule", config.rule, "name:agents or rule file")->required();

        auto solve = app.add_subcommand("solve", "Like check, and write the local decision tables");
        solve->add_option("problem", config.input)->required();
        solve->add_option("--rule", config.rule, "name:agents or rule file")->required();

        auto verify = app.add_subcommand("verify-solution", "Verify a solution or morphism file");
        verify->add_option("input", config.input, "Problem file, rule file or name:agents")->required();
        verify->add_option("--rule", config.rule, "Target rule")->required();
        verify->add_option("--solution", config.solution);
        verify->add_option("--morphism", config.morphism);

        auto compare = app.add_subcommand("compare", "Compare the permissiveness of two fusion rules");
        compare->add_option("rules", config.inputs)->required()->expected(2);
        compare->add_option("--encoding", config.encoding, "Encoding of separating problems (unary|tagged)");

        auto poset = app.add_subcommand("poset", "Permissiveness matrix and Hasse diagram of a list of rules");
        poset->add_option("rules", config.inputs)->required();

        auto d2o = app.add_subcommand("d2o", "Recast a decision graph as an observation problem");
        d2o->add_option("rule", config.input)->required();
        d2o->add_option("--encoding", config.encoding, "unary|tagged");

        auto graph = app.add_subcommand("graph", "Export the observation or decision graph as DOT");
        graph->add_option("input", config.input, "Problem file, rule file or name:agents")->required();
        graph->add_option("--dot", config.dot, "DOT output path (default: -o, else stdout)");
        graph->add_flag("--quotient", config.quotient, "Merge nodes joined by empty-coloured edges");

        try {
            vector<string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            int code = app.exit(e, out, err);
            return code == 0 ? exit_positive : exit_invalid;
        }

        Commands commands{config, out, err};
        try {
            if (*validate) return commands.validate();
            if (*reduce)   return commands.reduce();
            if (*check)    return commands.check(false);
            if (*solve)    return commands.check(true);
            if (*verify)   return commands.verify_solution_cmd();
            if (*compare)  return commands.compare();
            if (*poset)    return commands.poset();
            if (*d2o)      return commands.d2o();
            if (*graph)    return commands.graph();
        }
        catch (const SearchLimitExceeded & e) {
            err << "budget exceeded: " << e.what() << "\n";
            return exit_budget;
        }
        catch (const BudgetExceeded & e) {
            err << "budget exceeded: " << e.what() << "\n";
            return exit_budget;
        }
        catch (const ControllabilityViolation & e) {
            err << "controllability violation: " << e.what() << "\n";
            return exit_negative;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << "\n";
            return exit_invalid;
        }
        return exit_invalid;
    }
}
