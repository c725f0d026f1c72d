#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "tsml/meta.hpp"

namespace tsml {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class EmptyCollection : public Error {
  public:
    using Error::Error;
};

/// Input data violates the estimator's capability tags. Carries the full
/// validation report so callers can inspect which tags failed.
class CapabilityError : public Error {
  public:
    CapabilityError(std::string message, ValidationReport report)
        : Error(std::move(message)), report_(std::move(report)) {}

    [[nodiscard]] const ValidationReport& report() const { return report_; }

  private:
    ValidationReport report_;
};

class NotFittedError : public Error {
  public:
    using Error::Error;
};

/// Predict-time data is structurally incompatible with the fitted schema.
class SchemaMismatch : public Error {
  public:
    SchemaMismatch(std::string message, CollectionMeta fitted, CollectionMeta incoming)
        : Error(std::move(message)), fitted_(fitted), incoming_(incoming) {}

    [[nodiscard]] const CollectionMeta& fitted() const { return fitted_; }
    [[nodiscard]] const CollectionMeta& incoming() const { return incoming_; }

  private:
    CollectionMeta fitted_;
    CollectionMeta incoming_;
};

/// Malformed `.ts` document. line() is 1-based.
class ParseError : public Error {
  public:
    ParseError(std::string message, std::size_t line)
        : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

class ConsistencyError : public Error {
  public:
    using Error::Error;
};

class InvalidParameter : public Error {
  public:
    using Error::Error;
};

class ChannelMismatch : public Error {
  public:
    using Error::Error;
};

class LengthMismatch : public Error {
  public:
    using Error::Error;
};

class InfeasibleBand : public Error {
  public:
    using Error::Error;
};

class UnsupportedKind : public Error {
  public:
    using Error::Error;
};

class SeriesTooShort : public Error {
  public:
    using Error::Error;
};

class DegenerateFeatures : public Error {
  public:
    using Error::Error;
};

class KindMismatch : public Error {
  public:
    using Error::Error;
};

class InsufficientData : public Error {
  public:
    using Error::Error;
};

class DegenerateScale : public Error {
  public:
    using Error::Error;
};

class TargetTooShort : public Error {
  public:
    using Error::Error;
};

class InvalidSpec : public Error {
  public:
    using Error::Error;
};

}  // namespace tsml
