#include "srlab/errors.hpp"

#include <cstdlib>

namespace srlab {

std::size_t orbit_budget() {
  static const std::size_t budget = [] {
    constexpr std::size_t kDefault = std::size_t{1} << 24;
    const char* env = std::getenv("SRLAB_BUDGET");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || v == 0) return kDefault;
    return static_cast<std::size_t>(v);
  }();
  return budget;
}

void require_budget(std::size_t count, const std::string& what) {
  if (count > orbit_budget()) {
    throw BudgetExceeded(what + ": " + std::to_string(count) +
                         " orbit evaluations exceed budget " +
                         std::to_string(orbit_budget()));
  }
}

}  // namespace srlab
