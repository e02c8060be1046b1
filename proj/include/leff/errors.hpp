#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace leff {

// One violated constraint, named after the rule it breaks, with the element
// indices that witness it. `detail` is a rendered form for humans.
struct Violation {
  std::string kind;
  std::vector<int> where;
  std::string detail;
};

// Rejected input or unmet precondition: bad relation data, operator axiom
// violations, budget overruns. The CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
 public:
  validation_error(std::string kind, std::string message,
                   std::vector<Violation> violations = {})
      : std::runtime_error(message),
        kind_(std::move(kind)),
        violations_(std::move(violations)) {}

  const std::string& kind() const { return kind_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::string kind_;
  std::vector<Violation> violations_;
};

// A proposition the library is built on failed to hold at runtime. Always a
// bug, never a user error. The CLI maps this to exit code 1.
class internal_error : public std::logic_error {
  using std::logic_error::logic_error;
};

[[noreturn]] void throw_internal(const char* expr, const char* file, int line,
                                 const std::string& what);

#define LEFF_INTERNAL_CHECK(cond, msg)                           \
  do {                                                           \
    if (!(cond)) ::leff::throw_internal(#cond, __FILE__, __LINE__, (msg)); \
  } while (0)

}  // namespace leff
