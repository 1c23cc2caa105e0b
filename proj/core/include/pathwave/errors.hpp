#pragma once

#include <stdexcept>
#include <string>

namespace pathwave {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Violated precondition or operating-envelope check (CFL bounds, non-unit
/// direction vectors, non-finite inputs, mismatched grids, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Run-configuration problems. Carries the offending key so the CLI can
/// point at it.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Field file whose magic, version, or header layout is not ours.
class MalformedHeader : public IoError {
public:
    using IoError::IoError;
};

/// Header parses but declares a shape we cannot accept: dim outside {2,3},
/// odd or tiny cell counts, or a rank/grid that conflicts with what the
/// caller asked for.
class DimensionMismatch : public IoError {
public:
    using IoError::IoError;
};

/// Header promises more payload than the file contains.
class TruncatedPayload : public IoError {
public:
    using IoError::IoError;
};

} // namespace pathwave
