#pragma once

#include <stdexcept>
#include <string>

namespace decgraph
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class UnknownString : public Error
    {
    public:
        using Error::Error;
    };

    class ControllabilityViolation : public Error
    {
    public:
        using Error::Error;
    };

    class UnknownRuleName : public Error
    {
    public:
        using Error::Error;
    };

    class ArityMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class GraphMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class InconsistentMorphism : public Error
    {
    public:
        using Error::Error;
    };

    /// The optional expansion budget of a morphism search ran out before the
    /// search space was exhausted; nothing is known about existence.
    class SearchLimitExceeded : public Error
    {
    public:
        using Error::Error;
    };

    class BudgetExceeded : public Error
    {
    public:
        using Error::Error;
    };

    /// Malformed input file or value.
    class ParseError : public Error
    {
    public:
        using Error::Error;
    };
}
