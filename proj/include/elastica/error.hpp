#pragma once

#include <stdexcept>
#include <string>

namespace elastica {

/// Violated precondition on an argument (bad dimensions, out-of-range parameter).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Configuration that the explicit scheme cannot run (CFL number above 1).
class ConfigRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A statistic that has no value for the given data (empty sequence, zero variance).
class UndefinedStatistic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
    if (!ok) throw ContractError(what);
}
}  // namespace detail

}  // namespace elastica
