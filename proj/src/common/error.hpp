#pragma once

#include <stdexcept>
#include <string>

namespace smarttrap {

// Input failed a domain invariant (bad config value, malformed scene spec,
// out-of-range coordinate).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Byte-level parse failure (image codec, record log, key/value file).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Operation invoked in a state that does not admit it.
class StateError : public std::logic_error {
public:
    explicit StateError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace smarttrap
