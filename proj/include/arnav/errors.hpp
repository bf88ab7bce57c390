#pragma once

#include <stdexcept>
#include <string>

namespace arnav {

// Error categories map onto CLI exit codes:
//   ValidationError -> 1, ParseError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// --- validation ---

/// Scene/annotation config violates the schema; message carries a
/// JSON-pointer style path to the offending field.
class SchemaError : public ValidationError {
public:
    SchemaError(const std::string& path, const std::string& reason)
        : ValidationError(path + ": " + reason), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class InsufficientFrames : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyWindow : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InsufficientMeasurements : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class MixedExperimentKinds : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonStaticPhantom : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnorderedEvents : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// --- parse ---

class NonMonotonicFrames : public ParseError {
public:
    using ParseError::ParseError;
};

// --- numerical / degenerate geometry ---

class DegenerateInput : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientCorrespondence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateConfiguration : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateVariance : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace arnav
