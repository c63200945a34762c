#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilgrowth {

// Degree cap for operations that materialize a dense basis of A(n) (2^n
// words).  Callers may raise it explicitly; the default keeps every dense
// ambient row at or below 2^16 bits.
inline constexpr int kDefaultDenseCap = 16;

// Thrown when an operation would materialize data past a configured cap.
// `degree` names the offending graded component.
class capacity_error : public std::runtime_error {
public:
  capacity_error(const std::string& what, int degree)
      : std::runtime_error(what), degree_(degree) {}
  int degree() const { return degree_; }

private:
  int degree_;
};

}  // namespace nilgrowth
