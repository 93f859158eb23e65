#pragma once

#include <stdexcept>
#include <string>

namespace taxsim {

/// Broad classes of failure. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Load,         // malformed or inconsistent input file
  Vocabulary,   // unknown word or concept
  Degenerate,   // model cannot answer (zero-frequency subsumers, empty model)
  NoPath,       // concepts share no ancestor
  Domain,       // argument outside the operation's domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace taxsim
