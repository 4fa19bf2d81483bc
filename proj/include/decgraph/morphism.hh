#pragma once

#include <decgraph/graph.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace decgraph
{
    /// A node map between two coloured graphs, by node index.
    struct Morphism
    {
        ColoredGraph source;
        ColoredGraph target;
        std::vector<int> map;

        auto operator==(const Morphism &) const -> bool = default;
    };

    struct GMReport
    {
        /// Source nodes whose image has a different colour.
        std::vector<int> colour_violations;
        /// Source pairs (u < v) whose image edge is not inside the source edge.
        std::vector<std::pair<int, int>> edge_violations;
        /// Map is not total or points outside the target.
        std::vector<std::string> shape_violations;

        auto ok() const -> bool { return colour_violations.empty() && edge_violations.empty() && shape_violations.empty(); }
    };

    /// Checks colour preservation and edge-colour intensiveness. Throws
    /// ArityMismatch when the graphs disagree on the agent count.
    auto verify_morphism(const Morphism & m) -> GMReport;

    struct SearchOptions
    {
        /// Maximum number of tentative assignments; unlimited when empty.
        std::optional<std::uint64_t> budget;
    };

    struct SearchStats
    {
        std::uint64_t expansions = 0;
    };

    /// Complete, deterministic backtracking search. The source is first
    /// quotiented by its empty-coloured edges. Throws ArityMismatch, or
    /// SearchLimitExceeded when the budget runs out.
    auto find_morphism(const ColoredGraph & source, const ColoredGraph & target,
            const SearchOptions & options = {}, SearchStats * stats = nullptr) -> std::optional<Morphism>;

    /// Per-agent decision tables keyed by observation label.
    struct Solution
    {
        std::vector<std::map<Label, Token>> tables;

        auto operator==(const Solution &) const -> bool = default;
    };

    /// Reads local decision tables off a morphism from the observation graph of
    /// p into the decision graph of r. Throws InconsistentMorphism when an
    /// observation label would receive two decisions.
    auto extract_solution(const Morphism & m, const ObservationProblem & p, const FusionRule & r) -> Solution;

    /// Every string of L gets a tuple in the domain whose output matches
    /// membership of K.
    auto verify_solution(const ObservationProblem & p, const Solution & sol, const FusionRule & r) -> bool;

    /// The node map s -> (table_1[P_1 s], ..., table_n[P_n s]) from the
    /// observation graph of p into the decision graph of r. Throws
    /// InconsistentMorphism when a tuple is missing from the domain or a
    /// table lacks an entry.
    auto solution_morphism(const ObservationProblem & p, const Solution & sol, const FusionRule & r) -> Morphism;

    /// Exhaustive solvability oracle over all decision tables, independent of
    /// the graph machinery. Throws BudgetExceeded when the number of table
    /// assignments is above budget.
    auto solvable_by_enumeration(const ObservationProblem & p, const FusionRule & r,
            std::uint64_t budget = 10'000'000) -> bool;

    /// second after first. Throws GraphMismatch unless first.target == second.source.
    auto compose(const Morphism & first, const Morphism & second) -> Morphism;

    auto identity_morphism(const ColoredGraph & g) -> Morphism;
}
