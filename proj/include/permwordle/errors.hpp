#pragma once

#include <stdexcept>
#include <string>

namespace permwordle {

/// A configured enumeration, round or search budget was exhausted. Operations
/// fail with this rather than fall back to sampling.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace permwordle
