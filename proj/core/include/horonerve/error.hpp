#pragma once

#include <stdexcept>
#include <string>

namespace horonerve {

/// Base class for every error raised by the library. `kind()` is a short
/// machine-readable tag that the CLI copies into its diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class UnknownLetterError : public Error {
public:
    explicit UnknownLetterError(const std::string& letter)
        : Error("unknown-letter", "unknown generator letter '" + letter + "'"), letter_(letter) {}
    const std::string& letter() const noexcept { return letter_; }

private:
    std::string letter_;
};

class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& what) : Error("resource-limit", what) {}
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& what) : Error("invalid-argument", what) {}
};

class UnknownVertexError : public Error {
public:
    explicit UnknownVertexError(const std::string& what) : Error("unknown-vertex", what) {}
};

class DecompositionError : public Error {
public:
    explicit DecompositionError(const std::string& what) : Error("decomposition", what) {}
};

class DisconnectedError : public Error {
public:
    explicit DisconnectedError(const std::string& what) : Error("disconnected-input", what) {}
};

class NonSimplicialMapError : public Error {
public:
    explicit NonSimplicialMapError(const std::string& what) : Error("non-simplicial-map", what) {}
};

class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error("shape-mismatch", what) {}
};

class EmptyWindowError : public Error {
public:
    explicit EmptyWindowError(const std::string& what) : Error("empty-window", what) {}
};

class EmbeddingError : public Error {
public:
    EmbeddingError(const std::string& what, double distortion)
        : Error("embedding-infeasible", what), distortion_(distortion) {}
    double distortion() const noexcept { return distortion_; }

private:
    double distortion_;
};

class ScheduleError : public Error {
public:
    explicit ScheduleError(const std::string& what) : Error("schedule-mismatch", what) {}
};

class DomainMismatchError : public Error {
public:
    explicit DomainMismatchError(const std::string& what) : Error("domain-mismatch", what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config", what) {}
};

} // namespace horonerve
