#pragma once

#include <decgraph/model.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace decgraph
{
    /// A subset of the agents {1..n}, stored as a bit mask (bit i-1 for agent i).
    class AgentSet
    {
    public:
        AgentSet() = default;
        AgentSet(std::initializer_list<int> agents);

        static auto from_bits(std::uint64_t bits) -> AgentSet;

        auto insert(int agent) -> void { _bits |= bit(agent); }
        auto contains(int agent) const -> bool { return _bits & bit(agent); }
        auto empty() const -> bool { return _bits == 0; }
        auto size() const -> int;
        auto bits() const -> std::uint64_t { return _bits; }

        auto subset_of(const AgentSet & other) const -> bool { return (_bits & ~other._bits) == 0; }

        /// Members in increasing order, 1-based.
        auto members() const -> std::vector<int>;

        auto operator==(const AgentSet &) const -> bool = default;

    private:
        static auto bit(int agent) -> std::uint64_t { return std::uint64_t{1} << (agent - 1); }

        std::uint64_t _bits = 0;
    };

    /// "{1,2}", "{}" for the empty set.
    auto to_string(const AgentSet & a) -> std::string;

    struct GraphNode
    {
        enum class Kind
        {
            string,  // payload is a string of L
            tuple,   // payload is a decision tuple
            plain    // no payload, keyed by label
        };

        Kind kind = Kind::plain;
        std::vector<Token> payload;
        std::string label;  // only for plain nodes
        bool colour = false;

        auto operator==(const GraphNode &) const -> bool = default;
    };

    /// Node key used in files and diagnostics: space-joined tokens for string
    /// nodes, "(d1,d2)" for tuples, the label for plain nodes.
    auto node_key(const GraphNode & node) -> std::string;

    /// A complete graph whose nodes carry a binary colour and whose unordered
    /// node pairs carry an agent set. The full edge matrix is stored.
    class ColoredGraph
    {
    public:
        ColoredGraph() = default;

        /// edges is row-major size() x size(); must be symmetric with empty diagonal.
        ColoredGraph(int agents, std::vector<GraphNode> nodes, std::vector<AgentSet> edges);

        auto agents() const -> int { return _agents; }
        auto size() const -> int { return static_cast<int>(_nodes.size()); }
        auto node(int v) const -> const GraphNode & { return _nodes[v]; }
        auto nodes() const -> const std::vector<GraphNode> & { return _nodes; }
        auto colour(int v) const -> bool { return _nodes[v].colour; }
        auto edge(int u, int v) const -> AgentSet { return _edges[u * size() + v]; }

        /// Index of the first node whose key is key, throwing ParseError when
        /// absent or ambiguous.
        auto find_key(const std::string & key) const -> int;

        auto operator==(const ColoredGraph &) const -> bool = default;

    private:
        int _agents = 0;
        std::vector<GraphNode> _nodes;
        std::vector<AgentSet> _edges;
    };

    /// One node per string of L in declaration order, coloured by membership of K;
    /// pairs coloured by the agents observing the two strings differently.
    auto build_observation_graph(const ObservationProblem & p) -> ColoredGraph;

    /// One node per domain tuple, coloured by the rule output; pairs coloured by
    /// the components where the tuples differ.
    auto build_decision_graph(const FusionRule & r) -> ColoredGraph;

    struct Quotient
    {
        ColoredGraph graph;
        std::vector<int> class_of;              // source node -> quotient node
        std::vector<std::vector<int>> members;  // quotient node -> source nodes
        std::optional<std::pair<int, int>> conflict;
    };

    /// Merges nodes joined by empty-coloured edges. A class holding both colours
    /// is reported as conflict (source node indices); the class then takes the
    /// colour of its first member.
    auto quotient_by_indistinguishability(const ColoredGraph & g) -> Quotient;

    enum class Encoding
    {
        tagged,
        unary
    };

    auto to_string(Encoding e) -> std::string;
    auto parse_encoding(const std::string & text) -> Encoding;

    struct D2OResult
    {
        ObservationProblem problem;
        std::vector<std::pair<DecisionTuple, Str>> bijection;
        Encoding encoding = Encoding::unary;
    };

    /// An observation problem whose observation graph is isomorphic to the
    /// decision graph of r. Unary codes use the declared order of the decisions,
    /// starting at zero.
    auto decision_graph_to_observation(const FusionRule & r, Encoding encoding) -> D2OResult;

    auto verify_d2o(const D2OResult & res, const FusionRule & r) -> bool;

    struct DotOptions
    {
        std::string name = "G";
        bool show_empty_edges = true;
    };

    auto export_dot(const ColoredGraph & g, const DotOptions & options = {}) -> std::string;
}
