#pragma once
#include <stdexcept>
#include <string>

namespace edrank {

enum class Err {
  InvalidFamilyParams,
  InvalidFamily,
  GeneratorOutsideLattice,
  VectorOutsideLattice,
  NotARoot,
  GradingNotPreserved,
  IdentityCheckFailed,
  EmptySubset,
  BudgetExceeded,
  UnsupportedPair,
  PipelineConditionFailed,
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& msg) { throw Error(c, msg); }

}  // namespace edrank
