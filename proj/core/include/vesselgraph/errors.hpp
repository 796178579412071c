#pragma once

#include <stdexcept>
#include <string>

namespace vesselgraph {

/// Error categories map one-to-one onto CLI exit codes.
enum class ErrorClass : int {
  Config = 2,    // rejected before any work starts
  Input = 3,     // unreadable or invalid input data
  Internal = 4,  // invariant violation; indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorClass::Config, what) {}
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorClass::Input, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(ErrorClass::Internal, what) {}
};

// ingest
struct MalformedRow : InputError {
  explicit MalformedRow(const std::string& what) : InputError(what) {}
};
struct OutOfRange : InputError {
  explicit OutOfRange(const std::string& what) : InputError(what) {}
};
struct UnknownVesselType : InputError {
  explicit UnknownVesselType(const std::string& what) : InputError(what) {}
};
struct TooShort : InputError {
  explicit TooShort(const std::string& what) : InputError(what) {}
};

// kinematics
struct InsufficientSamples : InputError {
  explicit InsufficientSamples(const std::string& what) : InputError(what) {}
};
struct PoleProximity : InputError {
  explicit PoleProximity(const std::string& what) : InputError(what) {}
};

// injector
struct DegenerateSigma : InputError {
  explicit DegenerateSigma(const std::string& what) : InputError(what) {}
};
struct SchemaViolation : ConfigError {
  explicit SchemaViolation(const std::string& what) : ConfigError(what) {}
};
struct UnresolvableTarget : ConfigError {
  explicit UnresolvableTarget(const std::string& what) : ConfigError(what) {}
};

// graph
struct IncompleteCoverage : InternalError {
  explicit IncompleteCoverage(const std::string& what) : InternalError(what) {}
};
struct DanglingLabel : InternalError {
  explicit DanglingLabel(const std::string& what) : InternalError(what) {}
};

// dataset io
struct IoError : InputError {
  explicit IoError(const std::string& what) : InputError(what) {}
};
struct CorruptDataset : InputError {
  explicit CorruptDataset(const std::string& what) : InputError(what) {}
};

}  // namespace vesselgraph
