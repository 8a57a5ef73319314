#pragma once

#include <stdexcept>
#include <string>

namespace vre {

// Error taxonomy mirrors the CLI exit codes: ConfigError -> 1, everything
// else derived from DataError -> 2.
class VreError : public std::runtime_error {
public:
    explicit VreError(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidInputError : public VreError {
public:
    explicit InvalidInputError(const std::string& msg) : VreError(msg) {}
};

class AlignmentError : public VreError {
public:
    explicit AlignmentError(const std::string& msg) : VreError(msg) {}
};

class DataError : public VreError {
public:
    explicit DataError(const std::string& msg) : VreError(msg) {}
};

class ConfigError : public VreError {
public:
    explicit ConfigError(const std::string& msg) : VreError(msg) {}
};

}  // namespace vre
