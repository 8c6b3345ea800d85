#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace phylorel {

// Error families map 1:1 onto CLI exit codes.
enum class ErrorFamily {
  Internal = 1,      // programming errors, broken invariants
  Syntax = 2,        // unparseable or structurally malformed input
  Validation = 3,    // input parsed but violates a relation/metric law
  Realizability = 4, // valid-looking input that no tree can realize
};

// Single exception type carrying a stable machine-readable code plus a
// witness (taxa, class representatives, ...) for tests and diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, std::string code, const std::string& message,
        std::vector<std::string> witness = {})
      : std::runtime_error(code + ": " + message),
        family_(family),
        code_(std::move(code)),
        witness_(std::move(witness)) {}

  ErrorFamily family() const { return family_; }
  const std::string& code() const { return code_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  ErrorFamily family_;
  std::string code_;
  std::vector<std::string> witness_;
};

[[noreturn]] inline void throw_syntax(const std::string& code, const std::string& msg,
                                      std::vector<std::string> witness = {}) {
  throw Error(ErrorFamily::Syntax, code, msg, std::move(witness));
}

[[noreturn]] inline void throw_validation(const std::string& code, const std::string& msg,
                                          std::vector<std::string> witness = {}) {
  throw Error(ErrorFamily::Validation, code, msg, std::move(witness));
}

[[noreturn]] inline void throw_realizability(const std::string& code, const std::string& msg,
                                             std::vector<std::string> witness = {}) {
  throw Error(ErrorFamily::Realizability, code, msg, std::move(witness));
}

[[noreturn]] inline void throw_internal(const std::string& code, const std::string& msg) {
  throw Error(ErrorFamily::Internal, code, msg);
}

}  // namespace phylorel
