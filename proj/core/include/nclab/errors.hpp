#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nclab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDistance : public Error {
public:
    using Error::Error;
};

class IllegalClaim : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class NoMove : public Error {
public:
    using Error::Error;
};

/// Raised when a request exceeds a configured size limit (solver cap, board size guard).
class CapacityError : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

class SpecError : public Error {
public:
    using Error::Error;
};

/// A strategy produced an illegal move. Carries which side failed and in which round (1-based).
class StrategyFault : public Error {
public:
    StrategyFault(std::string role, std::string strategy, std::size_t round, const std::string & detail) :
        Error(role + " strategy '" + strategy + "' faulted in round " + std::to_string(round) + ": " + detail),
        role_(std::move(role)),
        strategy_(std::move(strategy)),
        round_(round)
    {
    }

    const std::string & role() const noexcept { return role_; }
    const std::string & strategy() const noexcept { return strategy_; }
    std::size_t round() const noexcept { return round_; }

private:
    std::string role_;
    std::string strategy_;
    std::size_t round_;
};

} // namespace nclab
