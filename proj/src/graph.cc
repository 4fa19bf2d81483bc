#include <decgraph/graph.hh>

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using std::string;
using std::vector;

namespace decgraph
{
    AgentSet::AgentSet(std::initializer_list<int> agents)
    {
        for (int a : agents)
            insert(a);
    }

    auto AgentSet::from_bits(std::uint64_t bits) -> AgentSet
    {
        AgentSet a;
        a._bits = bits;
        return a;
    }

    auto AgentSet::size() const -> int
    {
        return std::popcount(_bits);
    }

    auto AgentSet::members() const -> vector<int>
    {
        vector<int> result;
        for (int i = 1 ; i <= 64 ; ++i)
            if (contains(i))
                result.push_back(i);
        return result;
    }

    auto to_string(const AgentSet & a) -> string
    {
        string result = "{";
        bool first = true;
        for (int i : a.members()) {
            if (! first)
                result += ',';
            first = false;
            result += std::to_string(i);
        }
        return result + "}";
    }

    auto node_key(const GraphNode & node) -> string
    {
        switch (node.kind) {
            case GraphNode::Kind::string: return to_string(node.payload);
            case GraphNode::Kind::tuple:  return tuple_to_string(node.payload);
            case GraphNode::Kind::plain:  return node.label;
        }
        return node.label;
    }

    ColoredGraph::ColoredGraph(int agents, vector<GraphNode> nodes, vector<AgentSet> edges) :
        _agents(agents),
        _nodes(std::move(nodes)),
        _edges(std::move(edges))
    {
        auto n = _nodes.size();
        if (_edges.size() != n * n)
            throw GraphMismatch{"edge matrix size does not match node count"};
        for (std::size_t u = 0 ; u < n ; ++u) {
            if (! _edges[u * n + u].empty())
                throw GraphMismatch{"self pair carries a colour"};
            for (std::size_t v = u + 1 ; v < n ; ++v)
                if (_edges[u * n + v] != _edges[v * n + u])
                    throw GraphMismatch{"edge colours are not symmetric"};
        }
    }

    auto ColoredGraph::find_key(const string & key) const -> int
    {
        int found = -1;
        for (int v = 0 ; v < size() ; ++v)
            if (node_key(_nodes[v]) == key) {
                if (found != -1)
                    throw ParseError{"ambiguous node key: \"" + key + "\""};
                found = v;
            }
        if (found == -1)
            throw ParseError{"no node with key \"" + key + "\""};
        return found;
    }

    namespace
    {
        template <typename Payload_, typename Differ_>
        auto complete_graph(int agents, const vector<Payload_> & payloads, Differ_ && differ) -> vector<AgentSet>
        {
            auto n = payloads.size();
            vector<AgentSet> edges(n * n);
            for (std::size_t u = 0 ; u < n ; ++u)
                for (std::size_t v = u + 1 ; v < n ; ++v) {
                    AgentSet a;
                    for (int i = 0 ; i < agents ; ++i)
                        if (differ(payloads[u], payloads[v], i))
                            a.insert(i + 1);
                    edges[u * n + v] = a;
                    edges[v * n + u] = a;
                }
            return edges;
        }
    }

    auto build_observation_graph(const ObservationProblem & p) -> ColoredGraph
    {
        vector<GraphNode> nodes;
        vector<ObservationTuple> tuples;
        for (auto & s : p.legal_behaviour) {
            nodes.push_back(GraphNode{ GraphNode::Kind::string, s, {}, p.target_behaviour.contains(s) });
            tuples.push_back(observation_tuple(p, s));
        }

        auto edges = complete_graph(p.agents(), tuples, [] (auto & a, auto & b, int i) { return a[i] != b[i]; });
        return ColoredGraph{ p.agents(), std::move(nodes), std::move(edges) };
    }

    auto build_decision_graph(const FusionRule & r) -> ColoredGraph
    {
        vector<GraphNode> nodes;
        for (std::size_t j = 0 ; j < r.domain.size() ; ++j)
            nodes.push_back(GraphNode{ GraphNode::Kind::tuple, r.domain[j], {}, r.output.at(j) });

        auto edges = complete_graph(r.agents, r.domain, [] (auto & a, auto & b, int i) { return a[i] != b[i]; });
        return ColoredGraph{ r.agents, std::move(nodes), std::move(edges) };
    }

    auto quotient_by_indistinguishability(const ColoredGraph & g) -> Quotient
    {
        int n = g.size();
        vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&] (int v) {
            while (parent[v] != v)
                v = parent[v] = parent[parent[v]];
            return v;
        };
        // the smaller index becomes the root, so roots are first members
        auto unite = [&] (int u, int v) {
            u = find(u), v = find(v);
            if (u == v)
                return false;
            if (v < u)
                std::swap(u, v);
            parent[v] = u;
            return true;
        };

        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                if (g.edge(u, v).empty())
                    unite(u, v);

        Quotient q;
        vector<AgentSet> edges;
        while (true) {
            q.class_of.assign(n, -1);
            q.members.clear();
            vector<int> root_class(n, -1);
            for (int v = 0 ; v < n ; ++v) {
                int r = find(v);
                if (root_class[r] == -1) {
                    root_class[r] = static_cast<int>(q.members.size());
                    q.members.emplace_back();
                }
                q.class_of[v] = root_class[r];
                q.members[root_class[r]].push_back(v);
            }

            // an image edge must fit inside every member pair, so classes
            // inherit the intersection; for observation graphs all member
            // pairs agree
            int m = static_cast<int>(q.members.size());
            edges.assign(m * m, AgentSet::from_bits(~std::uint64_t{0}));
            for (int c = 0 ; c < m ; ++c)
                edges[c * m + c] = AgentSet{};
            for (int u = 0 ; u < n ; ++u)
                for (int v = 0 ; v < n ; ++v) {
                    int cu = q.class_of[u], cv = q.class_of[v];
                    if (cu != cv)
                        edges[cu * m + cv] = AgentSet::from_bits(edges[cu * m + cv].bits() & g.edge(u, v).bits());
                }

            bool merged = false;
            for (int c = 0 ; c < m ; ++c)
                for (int d = c + 1 ; d < m ; ++d)
                    if (edges[c * m + d].empty())
                        merged = unite(q.members[c].front(), q.members[d].front()) || merged;
            if (! merged)
                break;
        }

        vector<GraphNode> nodes;
        for (auto & cls : q.members) {
            nodes.push_back(g.node(cls.front()));
            if (! q.conflict)
                for (int v : cls)
                    if (g.colour(v) != g.colour(cls.front())) {
                        q.conflict = std::make_pair(cls.front(), v);
                        break;
                    }
        }

        q.graph = ColoredGraph{ g.agents(), std::move(nodes), std::move(edges) };
        return q;
    }

    auto to_string(Encoding e) -> string
    {
        return e == Encoding::tagged ? "tagged" : "unary";
    }

    auto parse_encoding(const string & text) -> Encoding
    {
        if (text == "tagged")
            return Encoding::tagged;
        if (text == "unary")
            return Encoding::unary;
        throw ParseError{"unknown encoding: " + text};
    }

    auto decision_graph_to_observation(const FusionRule & r, Encoding encoding) -> D2OResult
    {
        D2OResult result;
        result.encoding = encoding;
        auto & problem = result.problem;

        auto tagged = [] (const Token & d, int agent) { return Token{d.text() + "^" + std::to_string(agent)}; };
        auto zero = [] (int agent) { return Token{"0_" + std::to_string(agent)}; };
        auto one = [] (int agent) { return Token{"1_" + std::to_string(agent)}; };

        std::map<Token, std::size_t> code;
        for (std::size_t j = 0 ; j < r.decisions.size() ; ++j)
            code.emplace(r.decisions[j], j);

        for (int i = 1 ; i <= r.agents ; ++i) {
            std::set<Token> observable;
            if (encoding == Encoding::tagged)
                for (auto & d : r.decisions)
                    observable.insert(tagged(d, i));
            else
                observable = { zero(i), one(i) };

            if (encoding == Encoding::tagged)
                for (auto & d : r.decisions)
                    problem.alphabet.push_back(tagged(d, i));
            else {
                problem.alphabet.push_back(zero(i));
                problem.alphabet.push_back(one(i));
            }
            problem.observations.push_back(ObservationFunction::projection(std::move(observable)));
        }

        for (std::size_t j = 0 ; j < r.domain.size() ; ++j) {
            auto & v = r.domain[j];
            Str s;
            for (int i = 1 ; i <= r.agents ; ++i) {
                auto & d = v.at(i - 1);
                if (encoding == Encoding::tagged)
                    s.push_back(tagged(d, i));
                else {
                    s.insert(s.end(), code.at(d), zero(i));
                    s.push_back(one(i));
                }
            }
            problem.legal_behaviour.insert(s);
            if (r.output.at(j))
                problem.target_behaviour.insert(s);
            result.bijection.emplace_back(v, std::move(s));
        }

        return result;
    }

    auto verify_d2o(const D2OResult & res, const FusionRule & r) -> bool
    {
        auto & p = res.problem;
        if (! validate_problem(p).ok() || p.agents() != r.agents)
            return false;
        if (res.bijection.size() != r.domain.size() || p.legal_behaviour.size() != r.domain.size())
            return false;

        // domain index -> L index
        vector<int> image(r.domain.size(), -1);
        std::set<Str> used;
        for (auto & [tuple, s] : res.bijection) {
            auto j = r.find(tuple);
            if (! j || image[*j] != -1 || ! used.insert(s).second)
                return false;
            auto & strings = p.legal_behaviour.strings();
            auto it = std::find(strings.begin(), strings.end(), s);
            if (it == strings.end())
                return false;
            image[*j] = static_cast<int>(it - strings.begin());
        }

        auto obs = build_observation_graph(p);
        auto dec = build_decision_graph(r);
        for (int u = 0 ; u < dec.size() ; ++u) {
            if (dec.colour(u) != obs.colour(image[u]))
                return false;
            for (int v = u + 1 ; v < dec.size() ; ++v)
                if (dec.edge(u, v) != obs.edge(image[u], image[v]))
                    return false;
        }
        return true;
    }

    namespace
    {
        auto quote(const string & s) -> string
        {
            string result = "\"";
            for (char c : s) {
                if (c == '"' || c == '\\')
                    result += '\\';
                result += c;
            }
            return result + "\"";
        }

        auto edge_style(const AgentSet & a) -> string
        {
            if (a.empty())
                return "style=bold, color=gray, constraint=false";
            if (a == AgentSet{1})
                return "style=dotted, color=blue";
            if (a == AgentSet{2})
                return "style=dashed, color=red";
            return "style=solid, color=purple";
        }
    }

    auto export_dot(const ColoredGraph & g, const DotOptions & options) -> string
    {
        std::ostringstream out;
        out << "graph " << quote(options.name) << " {\n";
        for (int v = 0 ; v < g.size() ; ++v) {
            auto key = node_key(g.node(v));
            if (g.node(v).kind == GraphNode::Kind::string && key.empty())
                key = "ε";
            out << "  n" << v << " [label=" << quote(key);
            if (g.colour(v))
                out << ", peripheries=2, color=green";
            else
                out << ", peripheries=1, color=red";
            out << "];\n";
        }
        for (int u = 0 ; u < g.size() ; ++u)
            for (int v = u + 1 ; v < g.size() ; ++v) {
                auto a = g.edge(u, v);
                if (a.empty() && ! options.show_empty_edges)
                    continue;
                out << "  n" << u << " -- n" << v << " [label=" << quote(to_string(a)) << ", " << edge_style(a) << "];\n";
            }
        out << "}\n";
        return out.str();
    }
}
