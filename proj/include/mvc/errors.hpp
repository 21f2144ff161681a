#pragma once

#include <stdexcept>
#include <string>

namespace mvc {

/// Duplicate evaluation index handed to the codec.
struct IndexCollision : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluation index outside the configured index space.
struct IndexOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Server id not present in the pattern under inspection.
struct UnknownServerId : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Enumeration or verification request larger than the configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameters outside a scheme's (or operation's) domain of definition.
struct UnsupportedParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A server was fed a version id not strictly greater than all earlier ones.
struct OutOfOrderArrival : std::logic_error {
  using std::logic_error::logic_error;
};

/// A scheme asked to delete more symbols than a holding contains.
struct UnderflowDeletion : std::logic_error {
  using std::logic_error::logic_error;
};

/// Exact rational arithmetic exceeded 128-bit intermediate range.
struct RationalOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

}  // namespace mvc
