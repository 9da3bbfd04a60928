#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace logdiv {

/// Error raised when an operation's mathematical preconditions fail.
/// `code` is a stable machine-readable tag (e.g. "EmptyIdeal", "NotNested",
/// "RayOutsideSupport", "SupportMismatch", "TorsionCokernel", "NotSharp",
/// "RankTooLarge"); the CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Raised when a desk-scale enumeration would exceed its safety cap.
class EnumerationLimit : public DomainError {
public:
    explicit EnumerationLimit(const std::string& message)
        : DomainError("EnumerationLimit", message) {}
};

/// Malformed input text (CLI interchange format). Exit code 2.
class ParseError : public std::runtime_error {
public:
    ParseError(long line, long column, const std::string& message)
        : std::runtime_error(message), line_(line), column_(column) {}

    long line() const { return line_; }
    long column() const { return column_; }

private:
    long line_;
    long column_;
};

/// Well-formed text that violates a document schema. Exit code 2.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string path, const std::string& message)
        : std::runtime_error(message), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

} // namespace logdiv
