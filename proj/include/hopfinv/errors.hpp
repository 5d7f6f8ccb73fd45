#pragma once

#include <stdexcept>
#include <string>

namespace hopfinv {

// All library failures carry a short machine-readable kind ("OrderMismatch",
// "DegenerateIntegralSpace", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Parse and I/O problems map to exit code 2 in the CLI, everything else to 1.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("ParseError", msg) {}
};

}  // namespace hopfinv
