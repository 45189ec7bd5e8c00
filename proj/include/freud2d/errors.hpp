#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freud2d {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NonFinite : public Error {
public:
    using Error::Error;
};

/// Factorization met a non-positive pivot (or eigenvalue) at `pivot()`.
class SingularMatrix : public Error {
public:
    SingularMatrix(const std::string& what, std::size_t pivot)
        : Error(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class ParameterDomain : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}
    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Orthogonalization broke down at degree `degree()` (conditioning ceiling).
class DegreeLimit : public Error {
public:
    DegreeLimit(const std::string& what, int degree)
        : Error(what + " (degree " + std::to_string(degree) + ")"), degree_(degree) {}
    int degree() const noexcept { return degree_; }

private:
    int degree_;
};

/// Two independent routes to the same coefficient disagree.
class InternalConsistency : public Error {
public:
    using Error::Error;
};

class IntegrationError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace freud2d
