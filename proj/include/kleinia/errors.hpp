#pragma once

#include <stdexcept>
#include <string>

namespace kleinia {

enum class ErrorKind {
  InvalidParams,
  InvalidTable,
  ClosureCapExceeded,
  SubgroupCapExceeded,
  RelationCheckFailed,
  NotNormal,
  GroupMismatch,
  NotCyclicQuotient,
  NotShodaPair,
  NotIdempotent,
  IncompleteDecomposition,
  TwistingNotCentral,
  UnsupportedCenter,
  SearchBudgetExceeded,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace kleinia
