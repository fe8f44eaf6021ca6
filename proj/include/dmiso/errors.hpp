#pragma once

#include <stdexcept>
#include <string>

namespace dmiso {

enum class ErrorKind {
  Input,
  PrecisionLoss,
  ZeroToPrecision,
  NotIntegral,
  NotAUnit,
  NotStable,
  ExtensionExhausted,
  Inconclusive,
  Internal
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void require_input(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorKind::Input, msg);
}

inline void invariant(bool ok, const std::string& msg) {
  if (!ok) fail(ErrorKind::Internal, msg);
}

}  // namespace dmiso
