#pragma once

#include <stdexcept>
#include <string>

namespace grw {

// Argument outside the open interval of a warping function (or of a beta
// domain). Carries the bound that was violated.
class DomainError : public std::domain_error {
public:
    DomainError(const std::string& what, double value, double bound)
        : std::domain_error(what), value_(value), bound_(bound) {}

    double value() const noexcept { return value_; }
    double bound() const noexcept { return bound_; }

private:
    double value_;
    double bound_;
};

// The flow of b(t)d/dt left the interval before reaching the requested time.
class FlowEscapeError : public std::runtime_error {
public:
    FlowEscapeError(const std::string& what, double reached_time, double endpoint)
        : std::runtime_error(what), reached_time_(reached_time), endpoint_(endpoint) {}

    double reached_time() const noexcept { return reached_time_; }
    double endpoint() const noexcept { return endpoint_; }

private:
    double reached_time_;
    double endpoint_;
};

// A requested value lies outside the image of a monotone map.
class RangeError : public std::range_error {
public:
    RangeError(const std::string& what, double lower, double upper)
        : std::range_error(what), lower_(lower), upper_(upper) {}

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

// Initial data on the null cone: integration is refused, the closed-form
// light-like curves describe these solutions.
class NullDataError : public std::invalid_argument {
public:
    explicit NullDataError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace grw
