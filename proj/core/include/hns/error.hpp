/// @file error.hpp
/// @brief Exception types raised by the library

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hns {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class SingularMultiplier : public Error {
public:
    using Error::Error;
};

class UnsupportedNorm : public Error {
public:
    using Error::Error;
};

class InconclusiveReport : public Error {
public:
    using Error::Error;
};

class MissingState : public Error {
public:
    using Error::Error;
};

class Misalignment : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidWindow : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class BlowUp : public Error {
public:
    BlowUp(const std::string& what, double time) : Error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

class ContractionFailure : public Error {
public:
    ContractionFailure(const std::string& what, std::vector<double> trace)
        : Error(what), trace_(std::move(trace)) {}
    const std::vector<double>& trace() const { return trace_; }

private:
    std::vector<double> trace_;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, std::vector<double> trace)
        : Error(what), trace_(std::move(trace)) {}
    const std::vector<double>& trace() const { return trace_; }

private:
    std::vector<double> trace_;
};

} // namespace hns
