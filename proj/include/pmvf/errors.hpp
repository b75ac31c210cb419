#pragma once

#include <stdexcept>
#include <string>

namespace pmvf {

/// Failure category, used by the command line front end to pick an exit code.
enum class ErrorKind {
    Validation,  ///< bad input: preconditions, configuration, geometry
    Numerical,   ///< a numerical routine failed on valid input
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class SingularGradient : public Error {
public:
    explicit SingularGradient(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class NonFiniteIntegrand : public Error {
public:
    explicit NonFiniteIntegrand(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class GridTooCoarse : public Error {
public:
    explicit GridTooCoarse(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class EmptyDomain : public Error {
public:
    explicit EmptyDomain(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class InterpolationOutOfHull : public Error {
public:
    explicit InterpolationOutOfHull(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class BracketFailure : public Error {
public:
    explicit BracketFailure(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class NoSignChange : public Error {
public:
    explicit NoSignChange(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class NewtonDiverged : public Error {
public:
    explicit NewtonDiverged(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

}  // namespace pmvf
