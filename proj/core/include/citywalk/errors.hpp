#pragma once

#include <stdexcept>
#include <string>

namespace citywalk {

// Base class for all engine errors. Callers that only care about
// "engine failed" can catch this one.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// World-file violates the schema. Carries the field path (e.g.
// "nodes.n0003.neighbors[1].heading") so operators can locate the defect.
class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& msg)
        : Error(path + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// A cross-reference (neighbor id, place id, ...) does not resolve.
class DanglingReference : public Error {
public:
    using Error::Error;
};

// Edge A->B present without a reciprocal B->A (or reciprocal heading off).
class AsymmetricEdge : public Error {
public:
    using Error::Error;
};

class CoincidentPoints : public Error {
public:
    using Error::Error;
};

// No street node within the requested radius.
class NoStreetView : public Error {
public:
    using Error::Error;
};

class UnknownNode : public Error {
public:
    using Error::Error;
};

class UnknownPlace : public Error {
public:
    using Error::Error;
};

class UnknownMode : public Error {
public:
    using Error::Error;
};

class Unreachable : public Error {
public:
    using Error::Error;
};

class NoEdgeInDirection : public Error {
public:
    using Error::Error;
};

// Navigation cannot make progress (web mover hiding a needed edge).
class Stuck : public Error {
public:
    using Error::Error;
};

class EmptyRegion : public Error {
public:
    using Error::Error;
};

class InfeasibleParams : public Error {
public:
    using Error::Error;
};

// Transport- or content-level failure of a perception/reasoning provider.
class ProviderError : public Error {
public:
    using Error::Error;
};

// Provider returned an action outside the allowed action set.
class InvalidAction : public Error {
public:
    using Error::Error;
};

// Provider answered with an option index outside the valid range.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// Provider reply could not be mapped to a structured answer.
class UnparseableAnswer : public Error {
public:
    using Error::Error;
};

// Active detection lost its candidate after re-aiming.
class LostTarget : public Error {
public:
    using Error::Error;
};

// Episode step budget exhausted before the agent stopped.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace citywalk
