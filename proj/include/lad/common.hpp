// Shared error types for the local action diagram toolkit.
//
// ContractError signals a violated precondition or malformed input; the message
// names the offending object.  BudgetError signals that a computation was
// refused because its predicted size exceeds a configured bound; `predicted`
// and `budget` carry the numbers so callers can report them.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lad {

class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& msg, std::uint64_t predicted, std::uint64_t budget)
        : std::runtime_error(msg), predicted(predicted), budget(budget) {}
    std::uint64_t predicted;
    std::uint64_t budget;
};

} // namespace lad
