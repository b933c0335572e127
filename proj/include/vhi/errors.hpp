#ifndef VHI_ERRORS_HPP
#define VHI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vhi {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// argument outside the operation's domain (z >= 1, x outside (0,1], ...)
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// a lower hypergeometric parameter hit a nonpositive integer
class PoleParameterError : public Error {
public:
    explicit PoleParameterError(const std::string& what) : Error(what) {}
};

// series caps reached before the tail bound was met
class NotConvergedError : public Error {
public:
    explicit NotConvergedError(const std::string& what) : Error(what) {}
};

// parameters violate the Theorem regime -1 < 2*beta < 2*alpha <= 0
class RegimeError : public Error {
public:
    explicit RegimeError(const std::string& what) : Error(what) {}
};

// finite-difference stencil leaves the admissible domain
class StencilError : public Error {
public:
    explicit StencilError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace vhi

#endif
