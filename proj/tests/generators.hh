#pragma once

#include <decgraph/graph.hh>
#include <decgraph/morphism.hh>

#include <random>
#include <string>

namespace decgraph::testing
{
    /// Complete graph with random node colours and random (possibly empty) edge colours.
    inline auto random_graph(std::mt19937 & rng, int nodes, int agents) -> ColoredGraph
    {
        std::vector<GraphNode> ns;
        for (int v = 0 ; v < nodes ; ++v)
            ns.push_back(GraphNode{ GraphNode::Kind::plain, {}, "v" + std::to_string(v), rng() % 2 == 0 });

        std::vector<AgentSet> edges(nodes * nodes);
        std::uint64_t mask = (std::uint64_t{1} << agents) - 1;
        for (int u = 0 ; u < nodes ; ++u)
            for (int v = u + 1 ; v < nodes ; ++v) {
                // bias away from the empty colour so quotients stay interesting
                auto bits = rng() & mask;
                if (bits == 0 && rng() % 3 != 0)
                    bits = mask;
                edges[u * nodes + v] = edges[v * nodes + u] = AgentSet::from_bits(bits);
            }
        return ColoredGraph{ agents, std::move(ns), std::move(edges) };
    }

    /// Tries every node map; independent of the search.
    inline auto morphism_exists_brute_force(const ColoredGraph & source, const ColoredGraph & target) -> bool
    {
        int n = source.size(), t = target.size();
        if (n == 0)
            return true;
        if (t == 0)
            return false;
        std::vector<int> map(n, 0);
        while (true) {
            bool ok = true;
            for (int u = 0 ; u < n && ok ; ++u) {
                ok = source.colour(u) == target.colour(map[u]);
                for (int v = u + 1 ; v < n && ok ; ++v)
                    ok = (target.edge(map[u], map[v]).bits() & ~source.edge(u, v).bits()) == 0;
            }
            if (ok)
                return true;
            int pos = n - 1;
            while (pos >= 0 && ++map[pos] == t)
                map[pos--] = 0;
            if (pos < 0)
                return false;
        }
    }
}
