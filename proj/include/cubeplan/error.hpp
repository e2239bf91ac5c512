#pragma once

#include <stdexcept>
#include <string>

namespace cubeplan {

// Domain error carrying a stable kind name (e.g. "NotAdmissible",
// "WorkspaceNotFinite") so the CLI can surface it verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)), message_(message) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string kind_;
  std::string message_;
};

}  // namespace cubeplan
