#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopgrowth {

enum class ErrorKind {
    Parse,       // malformed space expression or CLI arguments
    Hypothesis,  // a theorem hypothesis is violated by the input
    Validation,  // input outside an operation's domain or guard
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected = {})
        : Error(ErrorKind::Parse, what), offset_(offset), expected_(std::move(expected))
    {
    }

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

inline Error hypothesis_error(const std::string& what) { return Error(ErrorKind::Hypothesis, what); }
inline Error validation_error(const std::string& what) { return Error(ErrorKind::Validation, what); }

const char* to_string(ErrorKind kind) noexcept;

}  // namespace loopgrowth
