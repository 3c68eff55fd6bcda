#pragma once

#include <stdexcept>
#include <string>

namespace macell {

// Base for all library errors. Subclasses distinguish how the CLI maps
// failures to exit codes: input/usage problems vs. verified domain failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad JSON, bad formula text, signature violations.
struct InputError : Error {
    explicit InputError(const std::string& what) : Error(what) {}
};

// Formula text that does not match the grammar. Carries a byte offset.
struct ParseError : InputError {
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " (at offset " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// A precondition whose violation is a meaningful analysis result
// (e.g. no witness exists, extension hypothesis not met).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

}  // namespace macell
