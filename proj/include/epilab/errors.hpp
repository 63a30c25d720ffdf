#pragma once

#include <stdexcept>
#include <string>

namespace epilab {

struct WindowTooSmall : std::runtime_error {
  explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParameter : std::runtime_error {
  explicit InvalidParameter(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
  explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NonMonotoneCDF : std::runtime_error {
  explicit NonMonotoneCDF(const std::string& what) : std::runtime_error(what) {}
};

struct NotNormalized : std::runtime_error {
  explicit NotNormalized(const std::string& what) : std::runtime_error(what) {}
};

struct DisconnectedSupport : std::runtime_error {
  explicit DisconnectedSupport(const std::string& what) : std::runtime_error(what) {}
};

struct NotLogConcave : std::runtime_error {
  explicit NotLogConcave(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionUnmet : std::runtime_error {
  explicit PreconditionUnmet(const std::string& what) : std::runtime_error(what) {}
};

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace epilab
