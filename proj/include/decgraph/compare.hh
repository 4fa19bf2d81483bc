#pragma once

#include <decgraph/morphism.hh>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace decgraph
{
    enum class Relation
    {
        equivalent,
        first_strictly_less,  // the second rule is strictly more permissive
        first_strictly_more,
        incomparable
    };

    auto to_string(Relation r) -> std::string;
    auto parse_relation(const std::string & text) -> Relation;
    auto mirror(Relation r) -> Relation;

    /// Human-readable verdict, e.g. "second strictly more permissive".
    auto describe(Relation r) -> std::string;

    struct PermissivenessVerdict
    {
        Relation relation = Relation::incomparable;
        std::optional<Morphism> forward;   // first decision graph -> second
        std::optional<Morphism> backward;  // second decision graph -> first
    };

    /// Permissiveness of two fusion rules over the same agents, decided by
    /// searching for decision-graph morphisms in both directions.
    auto compare(const FusionRule & first, const FusionRule & second, const SearchOptions & options = {}) -> PermissivenessVerdict;

    /// A problem solvable with first but not with second, when one exists:
    /// the decision graph of first recast as an observation problem.
    auto separating_problem(const FusionRule & first, const FusionRule & second,
            Encoding encoding = Encoding::unary, const SearchOptions & options = {}) -> std::optional<ObservationProblem>;

    struct RelationMatrix
    {
        std::vector<std::string> names;
        std::vector<std::vector<PermissivenessVerdict>> cells;
        /// Equivalence classes of the preorder, as rule indices; a class is
        /// listed at the position of its first member.
        std::vector<std::vector<int>> classes;
        /// Covering pairs (lower class, upper class): the upper class is
        /// strictly more permissive with nothing in between.
        std::vector<std::pair<int, int>> hasse;
    };

    /// Throws ArityMismatch unless all rules share the agent count.
    auto relation_matrix(const std::vector<FusionRule> & rules, const SearchOptions & options = {}) -> RelationMatrix;
}
