#pragma once

#include <decgraph/compare.hh>

#include <json.hpp>

#include <filesystem>
#include <string>

namespace decgraph
{
    using Json = nlohmann::json;

    // Strings are arrays of token texts; epsilon is [].
    auto str_to_json(const Str & s) -> Json;
    auto str_from_json(const Json & j) -> Str;

    enum class ProblemKind
    {
        observation,
        control
    };

    /// Reads the "type" field of a problem file.
    auto problem_kind(const Json & j) -> ProblemKind;

    auto problem_to_json(const ObservationProblem & p) -> Json;
    auto observation_problem_from_json(const Json & j) -> ObservationProblem;

    auto problem_to_json(const ControlProblem & c) -> Json;
    auto control_problem_from_json(const Json & j) -> ControlProblem;

    /// Fields exactly: type, agents, decisions, domain, output.
    auto rule_to_json(const FusionRule & r) -> Json;
    auto rule_from_json(const Json & j, std::string name = "rule") -> FusionRule;

    /// Whether j looks like a fusion-rule file rather than a problem file.
    auto is_rule_json(const Json & j) -> bool;

    /// Array of [source key, target key]; string nodes are keyed by their
    /// space-joined tokens, tuple nodes by an array of decision texts.
    auto morphism_to_json(const Morphism & m) -> Json;
    auto morphism_from_json(const Json & j, const ColoredGraph & source, const ColoredGraph & target) -> Morphism;

    /// Per-agent array of [label, decision] pairs.
    auto solution_to_json(const Solution & sol) -> Json;
    auto solution_from_json(const Json & j) -> Solution;

    auto bijection_to_json(const D2OResult & res) -> Json;
    auto d2o_from_json(const Json & problem, const Json & bijection) -> D2OResult;

    auto verdict_to_json(const PermissivenessVerdict & v, const std::string & first, const std::string & second) -> Json;
    auto matrix_to_json(const RelationMatrix & m) -> Json;

    auto read_json_file(const std::filesystem::path & path) -> Json;

    /// Two-space indented dump with a trailing newline.
    auto write_json_file(const std::filesystem::path & path, const Json & j) -> void;
    auto write_text_file(const std::filesystem::path & path, const std::string & text) -> void;

    /// "name:agents" for a builtin rule, otherwise a path to a rule file.
    auto resolve_rule(const std::string & selector) -> FusionRule;
}
