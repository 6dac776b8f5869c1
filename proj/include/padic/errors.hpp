#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// Base class for all domain errors. The CLI maps these to structured report
// entries; anything not derived from Error is a genuine bug.
struct Error : std::runtime_error {
    explicit Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind(std::move(kind)) {}
    std::string kind;
};

struct ContextMismatch : Error {
    explicit ContextMismatch(const std::string& what)
        : Error("ContextMismatch", what) {}
};

struct NotAUnit : Error {
    explicit NotAUnit(const std::string& what) : Error("NotAUnit", what) {}
};

struct SupportOverflow : Error {
    explicit SupportOverflow(const std::string& what)
        : Error("SupportOverflow", what) {}
};

struct ConvergenceViolation : Error {
    explicit ConvergenceViolation(const std::string& what)
        : Error("ConvergenceViolation", what) {}
};

struct NotCommuting : Error {
    NotCommuting(int i, int j, const std::string& what)
        : Error("NotCommuting", what), i(i), j(j) {}
    int i, j;
};

struct NotSmall : Error {
    NotSmall(int i, const std::string& what) : Error("NotSmall", what), i(i) {}
    int i;
};

struct HiggsConditionViolated : Error {
    HiggsConditionViolated(int i, int j, const std::string& what)
        : Error("HiggsConditionViolated", what), i(i), j(j) {}
    int i, j;
};

struct NotAMorphism : Error {
    NotAMorphism(int index, const std::string& what)
        : Error("NotAMorphism", what), index(index) {}
    int index;
};

struct SearchSpaceTooLarge : Error {
    explicit SearchSpaceTooLarge(const std::string& what)
        : Error("SearchSpaceTooLarge", what) {}
};

struct DescentStalled : Error {
    DescentStalled(long step, const std::string& what)
        : Error("DescentStalled", what), step(step) {}
    long step;
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what)
        : Error("PrecisionExhausted", what) {}
};

struct UnsupportedRing : Error {
    explicit UnsupportedRing(const std::string& what)
        : Error("UnsupportedRing", what) {}
};

struct MalformedJob : Error {
    explicit MalformedJob(const std::string& what)
        : Error("MalformedJob", what) {}
};

// Violations of internal arithmetic invariants (e.g. an exact division that
// fails despite the guard-digit budget). Never expected to fire.
struct InternalError : Error {
    explicit InternalError(const std::string& what)
        : Error("InternalError", what) {}
};

}  // namespace padic
