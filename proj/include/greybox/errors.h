#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace greybox {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InvalidSample : public Error {
public:
    using Error::Error;
};

// Raised when the regression design matrix is rank deficient. `directions`
// names the basis terms that dominate each null-space vector.
class DegenerateFit : public Error {
public:
    DegenerateFit(const std::string& what, std::vector<std::string> directions)
        : Error(what), directions_(std::move(directions)) {}
    const std::vector<std::string>& directions() const { return directions_; }

private:
    std::vector<std::string> directions_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::vector<std::string> keys = {})
        : Error(what), keys_(std::move(keys)) {}
    const std::vector<std::string>& keys() const { return keys_; }

private:
    std::vector<std::string> keys_;
};

// Non-finite state or an algebraic loop without a solution during integration.
// `layer` is the 1-based tank layer that went non-finite, or 0 if not a layer.
class NumericalDivergence : public Error {
public:
    NumericalDivergence(const std::string& what, int layer = 0) : Error(what), layer_(layer) {}
    int layer() const { return layer_; }

private:
    int layer_;
};

class AlignmentError : public Error {
public:
    using Error::Error;
};

class DegenerateRange : public Error {
public:
    using Error::Error;
};

class DegenerateVariance : public Error {
public:
    using Error::Error;
};

// The tank is not hot (or cold) enough to serve the requested load.
class InsufficientTankTemperature : public Error {
public:
    using Error::Error;
};

}  // namespace greybox
