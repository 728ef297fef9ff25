#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotm {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(std::vector<std::string> problems);
    std::vector<std::string> problems;
};

struct InputAlphabetError : std::runtime_error {
    InputAlphabetError(std::size_t position, char symbol)
        : std::runtime_error("input symbol '" + std::string(1, symbol) + "' at position " +
                             std::to_string(position) + " is not in the input alphabet"),
          position(position) {}
    std::size_t position;  // 1-based
};

struct HaltedError : std::logic_error {
    HaltedError() : std::logic_error("configuration is already halted") {}
};

struct UndefinedTransitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlphabetOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotStaticallyReversibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StageInvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MachineMisbehaviorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoCostModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rotm
