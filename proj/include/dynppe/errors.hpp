#pragma once

#include <stdexcept>
#include <string>

namespace dynppe {

// Classifies failures so callers (in particular the CLI) can map them to
// exit codes without string matching.
enum class ErrorKind {
  kParse,                  // malformed input file or stream
  kConfig,                 // invalid configuration or precondition
  kSequencing,             // out-of-order snapshot delta
  kDegenerateNode,         // push on a zero-degree node
  kDegenerateDenominator,  // per-event adjustment with d(u) - 1 == 0 and p(u) != 0
  kBudgetExceeded,         // work counter or iteration ceiling hit
  kUnsupportedEvent,       // e.g. a deletion fed to the insertion-only baseline
  kUnsupportedTopology,    // exact solver asked about a zero-degree source
  kCapExceeded,            // oracle size cap exceeded
  kDimensionMismatch,      // vectors of different dimension combined
  kStateAudit,             // internal consistency audit failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dynppe
