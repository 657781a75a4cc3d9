#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace mtsfuse {

// All recoverable failures surface as mtsfuse::Error with a human-readable
// message; callers that need a stage tag prepend it via the `where` argument.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string message) : std::runtime_error(std::move(message)) {}
};

namespace detail {
inline void format_into(std::ostringstream&) {}

template <typename T, typename... Rest>
void format_into(std::ostringstream& os, const T& head, const Rest&... tail) {
  os << head;
  format_into(os, tail...);
}
}  // namespace detail

template <typename... Parts>
[[noreturn]] void fail(const Parts&... parts) {
  std::ostringstream os;
  detail::format_into(os, parts...);
  throw Error(os.str());
}

template <typename... Parts>
void require(bool condition, const Parts&... parts) {
  if (!condition) fail(parts...);
}

}  // namespace mtsfuse
