#include <decgraph/io.hh>

#include <algorithm>
#include <fstream>
#include <sstream>

using std::string;
using std::vector;

namespace decgraph
{
    namespace
    {
        // nlohmann exceptions surface as ParseError
        template <typename F_>
        auto parsing(const char * what, F_ && f)
        {
            try {
                return f();
            }
            catch (const nlohmann::json::exception & e) {
                throw ParseError{string{what} + ": " + e.what()};
            }
        }

        auto tokens_to_json(const vector<Token> & tokens) -> Json
        {
            Json j = Json::array();
            for (auto & t : tokens)
                j.push_back(t.text());
            return j;
        }

        auto tokens_from_json(const Json & j) -> vector<Token>
        {
            if (! j.is_array())
                throw ParseError{"expected an array of token texts, got " + j.dump()};
            vector<Token> result;
            for (auto & t : j)
                result.emplace_back(t.get<string>());
            return result;
        }

        auto language_from_json(const Json & j) -> Language
        {
            if (! j.is_array())
                throw ParseError{"expected an array of strings, got " + j.dump()};
            vector<Str> strings;
            for (auto & s : j)
                strings.push_back(str_from_json(s));
            return Language{ std::move(strings) };
        }

        auto language_to_json(const Language & lang) -> Json
        {
            Json j = Json::array();
            for (auto & s : lang)
                j.push_back(str_to_json(s));
            return j;
        }

        auto observation_to_json(const ObservationFunction & p) -> Json
        {
            if (p.kind() == ObservationFunction::Kind::projection)
                return Json{ { "kind", "projection" },
                    { "observable", tokens_to_json({ p.observable().begin(), p.observable().end() }) } };

            Json map = Json::array();
            for (auto & [s, label] : p.entries())
                map.push_back(Json::array({ str_to_json(s), str_to_json(label) }));
            return Json{ { "kind", "table" }, { "map", std::move(map) } };
        }

        auto observation_from_json(const Json & j) -> ObservationFunction
        {
            auto kind = j.at("kind").get<string>();
            if (kind == "projection") {
                auto tokens = tokens_from_json(j.at("observable"));
                return ObservationFunction::projection({ tokens.begin(), tokens.end() });
            }
            if (kind == "table") {
                std::map<Str, Label> entries;
                for (auto & entry : j.at("map")) {
                    if (! entry.is_array() || entry.size() != 2)
                        throw ParseError{"table entries are [string, label] pairs, got " + entry.dump()};
                    auto s = str_from_json(entry[0]);
                    if (! entries.emplace(s, str_from_json(entry[1])).second)
                        throw ParseError{"table lists string \"" + to_string(s) + "\" twice"};
                }
                return ObservationFunction::table(std::move(entries));
            }
            throw ParseError{"unknown observation kind: " + kind};
        }

        auto observations_from_json(const Json & j) -> vector<ObservationFunction>
        {
            vector<ObservationFunction> result;
            for (auto & p : j.at("observations"))
                result.push_back(observation_from_json(p));
            if (j.at("agents").get<int>() != static_cast<int>(result.size()))
                throw ParseError{"agents is " + j.at("agents").dump() + " but " + std::to_string(result.size())
                    + " observation functions are given"};
            return result;
        }

        auto node_key_json(const GraphNode & node) -> Json
        {
            if (node.kind == GraphNode::Kind::tuple)
                return tokens_to_json(node.payload);
            return node_key(node);
        }

        auto find_node(const ColoredGraph & g, const Json & key) -> int
        {
            if (key.is_array()) {
                auto tokens = tokens_from_json(key);
                for (int v = 0 ; v < g.size() ; ++v)
                    if (g.node(v).kind == GraphNode::Kind::tuple && g.node(v).payload == tokens)
                        return v;
                throw ParseError{"no tuple node " + key.dump()};
            }
            return g.find_key(key.get<string>());
        }
    }

    auto str_to_json(const Str & s) -> Json
    {
        return tokens_to_json(s);
    }

    auto str_from_json(const Json & j) -> Str
    {
        return parsing("string", [&] { return tokens_from_json(j); });
    }

    auto problem_kind(const Json & j) -> ProblemKind
    {
        return parsing("problem", [&] {
            auto type = j.at("type").get<string>();
            if (type == "observation")
                return ProblemKind::observation;
            if (type == "control")
                return ProblemKind::control;
            throw ParseError{"unknown problem type: " + type};
        });
    }

    auto problem_to_json(const ObservationProblem & p) -> Json
    {
        Json observations = Json::array();
        for (auto & obs : p.observations)
            observations.push_back(observation_to_json(obs));
        return Json{
            { "type", "observation" },
            { "agents", p.agents() },
            { "alphabet", tokens_to_json(p.alphabet) },
            { "L", language_to_json(p.legal_behaviour) },
            { "K", language_to_json(p.target_behaviour) },
            { "observations", std::move(observations) } };
    }

    auto observation_problem_from_json(const Json & j) -> ObservationProblem
    {
        return parsing("observation problem", [&] {
            if (j.at("type").get<string>() != "observation")
                throw ParseError{"not an observation problem: type is " + j.at("type").dump()};
            ObservationProblem p;
            p.alphabet = tokens_from_json(j.at("alphabet"));
            p.legal_behaviour = language_from_json(j.at("L"));
            p.target_behaviour = language_from_json(j.at("K"));
            p.observations = observations_from_json(j);
            return p;
        });
    }

    auto problem_to_json(const ControlProblem & c) -> Json
    {
        Json observations = Json::array(), controllable = Json::array();
        for (auto & obs : c.observations)
            observations.push_back(observation_to_json(obs));
        for (auto & events : c.controllable)
            controllable.push_back(tokens_to_json({ events.begin(), events.end() }));
        return Json{
            { "type", "control" },
            { "agents", c.agents() },
            { "alphabet", tokens_to_json(c.alphabet) },
            { "controllable", std::move(controllable) },
            { "L", language_to_json(c.legal_behaviour) },
            { "K", language_to_json(c.target_behaviour) },
            { "observations", std::move(observations) } };
    }

    auto control_problem_from_json(const Json & j) -> ControlProblem
    {
        return parsing("control problem", [&] {
            if (j.at("type").get<string>() != "control")
                throw ParseError{"not a control problem: type is " + j.at("type").dump()};
            ControlProblem c;
            c.alphabet = tokens_from_json(j.at("alphabet"));
            for (auto & events : j.at("controllable")) {
                auto tokens = tokens_from_json(events);
                c.controllable.emplace_back(tokens.begin(), tokens.end());
            }
            c.legal_behaviour = language_from_json(j.at("L"));
            c.target_behaviour = language_from_json(j.at("K"));
            c.observations = observations_from_json(j);
            return c;
        });
    }

    auto rule_to_json(const FusionRule & r) -> Json
    {
        Json domain = Json::array(), output = Json::array();
        for (auto & t : r.domain)
            domain.push_back(tokens_to_json(t));
        for (bool b : r.output)
            output.push_back(b ? 1 : 0);
        return Json{
            { "type", "fusion_rule" },
            { "agents", r.agents },
            { "decisions", tokens_to_json(r.decisions) },
            { "domain", std::move(domain) },
            { "output", std::move(output) } };
    }

    auto rule_from_json(const Json & j, string name) -> FusionRule
    {
        return parsing("fusion rule", [&] {
            for (auto & [key, value] : j.items())
                if (key != "type" && key != "agents" && key != "decisions" && key != "domain" && key != "output")
                    throw ParseError{"unexpected field in fusion rule: " + key};
            if (j.at("type").get<string>() != "fusion_rule")
                throw ParseError{"not a fusion rule: type is " + j.at("type").dump()};

            FusionRule r;
            r.name = std::move(name);
            r.agents = j.at("agents").get<int>();
            r.decisions = tokens_from_json(j.at("decisions"));
            for (auto & t : j.at("domain"))
                r.domain.push_back(tokens_from_json(t));
            for (auto & b : j.at("output")) {
                auto value = b.get<int>();
                if (value != 0 && value != 1)
                    throw ParseError{"output values are 0 or 1, got " + b.dump()};
                r.output.push_back(value == 1);
            }

            auto report = validate_rule(r);
            if (! report.ok())
                throw ParseError{"invalid fusion rule: " + report.violations.front()};
            return r;
        });
    }

    auto is_rule_json(const Json & j) -> bool
    {
        return j.is_object() && j.contains("type") && j["type"] == "fusion_rule";
    }

    auto morphism_to_json(const Morphism & m) -> Json
    {
        Json j = Json::array();
        for (int v = 0 ; v < m.source.size() ; ++v)
            j.push_back(Json::array({ node_key_json(m.source.node(v)), node_key_json(m.target.node(m.map.at(v))) }));
        return j;
    }

    auto morphism_from_json(const Json & j, const ColoredGraph & source, const ColoredGraph & target) -> Morphism
    {
        return parsing("morphism", [&] {
            if (! j.is_array())
                throw ParseError{"a morphism file is an array of [source, target] pairs"};
            Morphism m{ source, target, vector<int>(source.size(), -1) };
            for (auto & pair : j) {
                if (! pair.is_array() || pair.size() != 2)
                    throw ParseError{"morphism entries are [source, target] pairs, got " + pair.dump()};
                int u = find_node(source, pair[0]);
                if (m.map[u] != -1)
                    throw ParseError{"source node " + pair[0].dump() + " is mapped twice"};
                m.map[u] = find_node(target, pair[1]);
            }
            for (int v = 0 ; v < source.size() ; ++v)
                if (m.map[v] == -1)
                    throw ParseError{"source node \"" + node_key(source.node(v)) + "\" is not mapped"};
            return m;
        });
    }

    auto solution_to_json(const Solution & sol) -> Json
    {
        Json j = Json::array();
        for (auto & table : sol.tables) {
            Json entries = Json::array();
            for (auto & [label, decision] : table)
                entries.push_back(Json::array({ str_to_json(label), decision.text() }));
            j.push_back(std::move(entries));
        }
        return j;
    }

    auto solution_from_json(const Json & j) -> Solution
    {
        return parsing("solution", [&] {
            if (! j.is_array())
                throw ParseError{"a solution file is an array of per-agent tables"};
            Solution sol;
            for (auto & table : j) {
                auto & t = sol.tables.emplace_back();
                for (auto & entry : table) {
                    if (! entry.is_array() || entry.size() != 2)
                        throw ParseError{"solution entries are [label, decision] pairs, got " + entry.dump()};
                    auto label = str_from_json(entry[0]);
                    if (! t.emplace(label, Token{entry[1].get<string>()}).second)
                        throw ParseError{"label \"" + to_string(label) + "\" appears twice in one table"};
                }
            }
            return sol;
        });
    }

    auto bijection_to_json(const D2OResult & res) -> Json
    {
        Json pairs = Json::array();
        for (auto & [tuple, s] : res.bijection)
            pairs.push_back(Json::array({ tokens_to_json(tuple), str_to_json(s) }));
        return Json{ { "encoding", to_string(res.encoding) }, { "bijection", std::move(pairs) } };
    }

    auto d2o_from_json(const Json & problem, const Json & bijection) -> D2OResult
    {
        return parsing("d2o result", [&] {
            D2OResult res;
            res.problem = observation_problem_from_json(problem);
            res.encoding = parse_encoding(bijection.at("encoding").get<string>());
            for (auto & pair : bijection.at("bijection")) {
                if (! pair.is_array() || pair.size() != 2)
                    throw ParseError{"bijection entries are [tuple, string] pairs, got " + pair.dump()};
                res.bijection.emplace_back(tokens_from_json(pair[0]), str_from_json(pair[1]));
            }
            return res;
        });
    }

    auto verdict_to_json(const PermissivenessVerdict & v, const string & first, const string & second) -> Json
    {
        return Json{
            { "first", first },
            { "second", second },
            { "relation", to_string(v.relation) },
            { "description", describe(v.relation) },
            { "forward", v.forward ? morphism_to_json(*v.forward) : Json(nullptr) },
            { "backward", v.backward ? morphism_to_json(*v.backward) : Json(nullptr) } };
    }

    auto matrix_to_json(const RelationMatrix & m) -> Json
    {
        Json matrix = Json::array(), classes = Json::array(), hasse = Json::array();
        for (auto & row : m.cells) {
            Json r = Json::array();
            for (auto & cell : row)
                r.push_back(to_string(cell.relation));
            matrix.push_back(std::move(r));
        }
        for (auto & cls : m.classes) {
            Json c = Json::array();
            for (int i : cls)
                c.push_back(m.names[i]);
            classes.push_back(std::move(c));
        }
        for (auto & [lower, upper] : m.hasse)
            hasse.push_back(Json::array({ m.names[m.classes[lower].front()], m.names[m.classes[upper].front()] }));
        return Json{ { "rules", m.names }, { "matrix", std::move(matrix) }, { "classes", std::move(classes) }, { "hasse", std::move(hasse) } };
    }

    auto read_json_file(const std::filesystem::path & path) -> Json
    {
        std::ifstream in{path};
        if (! in)
            throw ParseError{"cannot read " + path.string()};
        try {
            return Json::parse(in);
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError{path.string() + ": " + e.what()};
        }
    }

    auto write_json_file(const std::filesystem::path & path, const Json & j) -> void
    {
        write_text_file(path, j.dump(2) + "\n");
    }

    auto write_text_file(const std::filesystem::path & path, const string & text) -> void
    {
        std::ofstream out{path, std::ios::binary};
        if (! out)
            throw Error{"cannot write " + path.string()};
        out << text;
        if (! out)
            throw Error{"failed writing " + path.string()};
    }

    auto resolve_rule(const string & selector) -> FusionRule
    {
        auto colon = selector.rfind(':');
        if (colon != string::npos) {
            auto name = selector.substr(0, colon);
            auto & names = builtin_rule_names();
            if (std::find(names.begin(), names.end(), name) != names.end()) {
                int agents = 0;
                try {
                    std::size_t used = 0;
                    agents = std::stoi(selector.substr(colon + 1), &used);
                    if (used != selector.size() - colon - 1)
                        throw ParseError{""};
                }
                catch (const std::exception &) {
                    throw ParseError{"bad agent count in rule selector: " + selector};
                }
                if (agents < 1)
                    throw ParseError{"bad agent count in rule selector: " + selector};
                auto r = builtin_rule(name, agents);
                r.name = selector;
                return r;
            }
        }

        if (! std::filesystem::exists(selector))
            throw ParseError{"not a builtin rule (name:agents) or a rule file: " + selector};
        return rule_from_json(read_json_file(selector), std::filesystem::path{selector}.stem().string());
    }
}
