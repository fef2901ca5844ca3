#ifndef PURSUIT_ERRORS_HPP
#define PURSUIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pursuit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad graph construction input (out-of-range endpoint, self-loop).
class GraphError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Game cannot be set up (for instance, a disconnected graph).
class SetupError : public Error {
public:
    using Error::Error;
};

// An illegal action was submitted to the referee. The message names the agent.
class MoveError : public Error {
public:
    MoveError(std::string agent, const std::string& what)
        : Error(agent + ": " + what), agent_(std::move(agent)) {}
    const std::string& agent() const noexcept { return agent_; }

private:
    std::string agent_;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::size_t required, std::size_t budget)
        : Error("state space of " + std::to_string(required) + " exceeds budget " +
                std::to_string(budget)),
          required_(required) {}
    std::size_t required() const noexcept { return required_; }

private:
    std::size_t required_;
};

class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace pursuit

#endif  // PURSUIT_ERRORS_HPP
