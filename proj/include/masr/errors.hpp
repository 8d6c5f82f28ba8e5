#pragma once

#include <stdexcept>
#include <string>

namespace masr {

// Base of every error raised by the library. Callers that only need to
// distinguish "domain failure" from programming errors catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class PlacementError : public Error {
 public:
  using Error::Error;
};

// A formula was evaluated outside the range where it holds.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ReachabilityError : public Error {
 public:
  using Error::Error;
};

class InfeasiblePathError : public Error {
 public:
  using Error::Error;
};

class PlanError : public Error {
 public:
  using Error::Error;
};

class InfeasiblePlanError : public PlanError {
 public:
  InfeasiblePlanError(std::size_t step, const std::string& what)
      : PlanError(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class JointLimitError : public PlanError {
 public:
  JointLimitError(std::size_t step, int joint, const std::string& what)
      : PlanError(what), step_(step), joint_(joint) {}
  std::size_t step() const { return step_; }
  int joint() const { return joint_; }

 private:
  std::size_t step_;
  int joint_;
};

class TaskError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace masr
