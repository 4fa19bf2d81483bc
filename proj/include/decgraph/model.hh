#pragma once

#include <decgraph/error.hh>

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace decgraph
{
    /// An opaque event symbol. Equality is exact text equality.
    class Token
    {
    public:
        Token() = default;
        explicit Token(std::string text) : _text(std::move(text)) { }

        auto text() const -> const std::string & { return _text; }

        auto operator<=>(const Token &) const = default;

    private:
        std::string _text;
    };

    /// A finite token sequence; the empty sequence is epsilon.
    using Str = std::vector<Token>;

    /// Observation labels compare by equality only. Both projection and table
    /// observation functions produce token sequences.
    using Label = Str;

    using DecisionTuple = std::vector<Token>;

    auto make_str(std::initializer_list<const char *> texts) -> Str;

    /// Space-joined token text, "" for epsilon.
    auto to_string(const Str & s) -> std::string;

    /// "(d1,d2,...)".
    auto tuple_to_string(const DecisionTuple & t) -> std::string;

    /// A finite set of strings that remembers declaration order.
    class Language
    {
    public:
        Language() = default;
        Language(std::initializer_list<Str> strings);
        explicit Language(std::vector<Str> strings);

        /// Returns false if s was already present.
        auto insert(Str s) -> bool;
        auto contains(const Str & s) const -> bool { return _index.contains(s); }
        auto size() const -> std::size_t { return _strings.size(); }
        auto empty() const -> bool { return _strings.empty(); }
        auto strings() const -> const std::vector<Str> & { return _strings; }
        auto operator[](std::size_t i) const -> const Str & { return _strings[i]; }
        auto begin() const { return _strings.begin(); }
        auto end() const { return _strings.end(); }

        /// Set equality, ignoring declaration order.
        auto same_set(const Language & other) const -> bool { return _index == other._index; }

        /// Strings declared more than once in the constructor input.
        auto duplicates() const -> const std::vector<Str> & { return _duplicates; }

    private:
        std::vector<Str> _strings;
        std::set<Str> _index;
        std::vector<Str> _duplicates;
    };

    class ObservationFunction
    {
    public:
        enum class Kind
        {
            projection,
            table
        };

        /// Natural projection: erases every token outside observable.
        static auto projection(std::set<Token> observable) -> ObservationFunction;
        static auto table(std::map<Str, Label> entries) -> ObservationFunction;

        auto kind() const -> Kind { return _kind; }
        auto observable() const -> const std::set<Token> & { return _observable; }
        auto entries() const -> const std::map<Str, Label> & { return _entries; }

        /// Throws UnknownString for a table function on a string it does not list.
        auto operator()(const Str & s) const -> Label;

    private:
        Kind _kind = Kind::projection;
        std::set<Token> _observable;
        std::map<Str, Label> _entries;
    };

    auto observe(const ObservationFunction & p, const Str & s) -> Label;

    struct ObservationProblem
    {
        std::vector<Token> alphabet;
        Language legal_behaviour;   // L
        Language target_behaviour;  // K
        std::vector<ObservationFunction> observations;

        auto agents() const -> int { return static_cast<int>(observations.size()); }
    };

    struct ControlProblem
    {
        std::vector<Token> alphabet;
        std::vector<std::set<Token>> controllable;
        Language legal_behaviour;
        Language target_behaviour;
        std::vector<ObservationFunction> observations;

        auto agents() const -> int { return static_cast<int>(observations.size()); }
        auto controllable_events() const -> std::set<Token>;
        auto uncontrollable_events() const -> std::set<Token>;
    };

    using ObservationTuple = std::vector<Label>;

    /// Broadcast application of every observation function to s. Throws
    /// UnknownString when s is not in L.
    auto observation_tuple(const ObservationProblem & p, const Str & s) -> ObservationTuple;

    struct ValidationReport
    {
        std::vector<std::string> violations;

        auto ok() const -> bool { return violations.empty(); }
    };

    auto validate_problem(const ObservationProblem & p) -> ValidationReport;
    auto validate_problem(const ControlProblem & c) -> ValidationReport;

    struct ControllabilityWitness
    {
        Str prefix;
        Token event;
    };

    /// A string s in K and an uncontrollable u with su in L - K, if any.
    auto controllability_witness(const ControlProblem & c) -> std::optional<ControllabilityWitness>;
    auto check_controllability(const ControlProblem & c) -> bool;

    struct ReducedEvent
    {
        Token event;
        std::vector<int> agents;  // 1-based indices of the agents controlling event
        ObservationProblem problem;
    };

    struct ReducedFamily
    {
        std::vector<ReducedEvent> events;
    };

    /// One observation problem per controllable event, in alphabet order.
    auto reduce(const ControlProblem & c, bool allow_uncontrollable = false) -> ReducedFamily;

    struct FusionRule
    {
        std::string name;
        int agents = 0;
        std::vector<Token> decisions;
        std::vector<DecisionTuple> domain;
        std::vector<bool> output;  // parallel to domain

        /// Index of t in domain, if allowed.
        auto find(const DecisionTuple & t) const -> std::optional<std::size_t>;
    };

    /// Empty report for a well-formed rule.
    auto validate_rule(const FusionRule & r) -> ValidationReport;

    auto builtin_rule_names() -> const std::vector<std::string> &;

    /// conjunctive, disjunctive, cpda, conjunctive_cd, const0, const1.
    auto builtin_rule(const std::string & name, int agents) -> FusionRule;
}
