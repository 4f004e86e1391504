#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace mdec {

// Invalid input: bad arguments, malformed data, violated preconditions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed CSV content. Carries the 1-based line number.
class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A numerical routine failed (e.g. eigensolver did not converge).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rethrows `error` as the same category (validation / numeric / I/O) with `context`
// prepended to the message.
[[noreturn]] inline void rethrow_with_context(const std::string& context, std::exception_ptr error) {
    try {
        std::rethrow_exception(error);
    } catch (const ValidationError& e) {
        throw ValidationError(context + e.what());
    } catch (const NumericError& e) {
        throw NumericError(context + e.what());
    } catch (const IoError& e) {
        throw IoError(context + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(context + e.what());
    }
}

}  // namespace mdec
