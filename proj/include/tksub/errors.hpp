#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tksub/path.hpp"

namespace tksub {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidVertex : public Error {
 public:
  using Error::Error;
};

class EmptyGraph : public Error {
 public:
  EmptyGraph() : Error("graph has no vertices") {}
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class DensityTooLow : public Error {
 public:
  using Error::Error;
};

// Structured, expected failures of the constructive procedures. These are
// returned, not thrown: a builder failing on a sparse host is a legitimate
// outcome that callers branch on.
enum class FailureKind {
  InsufficientDegree,
  HubPoolExhausted,
  ConnectionStalled,
  CarveFailed,
  Acyclic,
  NoEvenCycle,
  ExpansionCollision,
  Disconnected,
  ValidationFailed,
  ArmsStalled,
  RetriesExhausted,
  NoEmbedding,
  WindowMissed,
  NoUnits,
  StageStalled,
};

const char* to_string(FailureKind kind);

struct Failure {
  FailureKind kind;
  std::string detail;
  // Partial structure at the point of failure (stalled path collection,
  // longest routed path, partial octopus arms).
  std::vector<Path> partial;

  Failure(FailureKind k, std::string d = {});
  Failure(FailureKind k, std::string d, std::vector<Path> p);
};

template <class T>
class Outcome {
 public:
  Outcome(T value) : data_(std::move(value)) {}
  Outcome(Failure failure) : data_(std::move(failure)) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<T>(data_); }
  T& value() & { return std::get<T>(data_); }
  T&& value() && { return std::get<T>(std::move(data_)); }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Failure& failure() const { return std::get<Failure>(data_); }

 private:
  std::variant<T, Failure> data_;
};

}  // namespace tksub
