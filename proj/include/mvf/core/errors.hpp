#pragma once

#include <stdexcept>
#include <string>

namespace mvf {

/// Requested work does not fit the configured memory/segment budget.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to reach its accuracy target.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the analytic domain of a function (poles, branch cuts,
/// half-planes where a series does not converge).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace mvf
