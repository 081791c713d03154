#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace tsc {

enum class Errc {
    Overflow,
    DivisionByZero,
    DomainError,
    NotInScale,
    InvalidArgument,
    EmptyOperand,
    WindowTooSmall,
    NotDifferentiableData,
    EndpointUnresolvable,
    CandidateNotInvariant,
    EmptyScan,
    InvalidBand,
    SyntaxError,
    InvalidInterval,
    DuplicateName,
    UnknownName,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Parse-time diagnostic; line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(Errc code, std::size_t line, std::size_t column, const std::string& message,
                std::string expected = {})
        : Error(code, format(line, column, message, expected)),
          line_(line), column_(column), message_(message), expected_(std::move(expected)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& message,
                              const std::string& expected) {
        std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
        if (!expected.empty()) out += " (expected " + expected + ")";
        return out;
    }

    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string expected_;
};

}  // namespace tsc
