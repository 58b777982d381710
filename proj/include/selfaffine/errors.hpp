#pragma once

#include <stdexcept>
#include <string>

namespace selfaffine {

/// Base class for all recoverable errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct CollinearSource : Error {
    explicit CollinearSource(const std::string& msg) : Error(msg) {}
};

struct SingularMap : Error {
    explicit SingularMap(const std::string& msg) : Error(msg) {}
};

struct DegenerateQuadrangle : Error {
    explicit DegenerateQuadrangle(const std::string& msg) : Error(msg) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string& msg) : Error(msg) {}
};

struct NotApplicable : Error {
    explicit NotApplicable(const std::string& msg) : Error(msg) {}
};

struct InvalidWeights : Error {
    explicit InvalidWeights(const std::string& msg) : Error(msg) {}
};

struct ParallelogramExcluded : Error {
    explicit ParallelogramExcluded(const std::string& msg) : Error(msg) {}
};

struct DegenerateDiagonals : Error {
    explicit DegenerateDiagonals(const std::string& msg) : Error(msg) {}
};

struct NotThreePieces : Error {
    explicit NotThreePieces(const std::string& msg) : Error(msg) {}
};

struct TypeMismatch : Error {
    explicit TypeMismatch(const std::string& msg) : Error(msg) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

struct VerificationFailure : Error {
    explicit VerificationFailure(const std::string& msg) : Error(msg) {}
};

struct UnverifiedDissection : Error {
    explicit UnverifiedDissection(const std::string& msg) : Error(msg) {}
};

struct MissingCatalogue : Error {
    explicit MissingCatalogue(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace selfaffine
