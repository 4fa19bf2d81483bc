#pragma once

#include <decgraph/model.hh>

namespace decgraph::testing
{
    inline auto projection(std::initializer_list<const char *> observable) -> ObservationFunction
    {
        std::set<Token> tokens;
        for (auto t : observable)
            tokens.emplace(t);
        return ObservationFunction::projection(std::move(tokens));
    }

    /// L = {a, b, ab, bb}, K = {b}, agent 1 sees a, agent 2 sees b.
    inline auto example_one() -> ObservationProblem
    {
        ObservationProblem p;
        p.alphabet = { Token{"a"}, Token{"b"} };
        p.legal_behaviour = Language{ make_str({"a"}), make_str({"b"}), make_str({"a", "b"}), make_str({"b", "b"}) };
        p.target_behaviour = Language{ make_str({"b"}) };
        p.observations = { projection({"a"}), projection({"b"}) };
        return p;
    }

    /// Sigma_u = {a, b}, both agents control γ; agent 1 sees a, agent 2 sees b.
    inline auto gamma_control() -> ControlProblem
    {
        ControlProblem c;
        c.alphabet = { Token{"a"}, Token{"b"}, Token{"γ"} };
        c.controllable = { { Token{"γ"} }, { Token{"γ"} } };
        c.legal_behaviour = Language{ Str{}, make_str({"a"}), make_str({"b"}), make_str({"a", "γ"}), make_str({"b", "γ"}) };
        c.target_behaviour = Language{ Str{}, make_str({"a"}), make_str({"b"}), make_str({"a", "γ"}) };
        c.observations = { projection({"a"}), projection({"b"}) };
        return c;
    }

    /// Two strings s, t with identical observations; K chosen by the caller.
    inline auto indistinguishable_pair(bool both_in_k) -> ObservationProblem
    {
        ObservationProblem p;
        p.alphabet = { Token{"s"}, Token{"t"} };
        p.legal_behaviour = Language{ make_str({"s"}), make_str({"t"}) };
        p.target_behaviour = both_in_k ? Language{ make_str({"s"}), make_str({"t"}) } : Language{ make_str({"s"}) };
        p.observations = { projection({}), projection({}) };
        return p;
    }
}
