#pragma once

#include <iosfwd>
#include <string>

#include "fpg/error.hpp"
#include "fpgcli/io.hpp"

namespace fpg::cli {

/// Process exit codes shared by every command.
enum Exit : int {
  kOk = 0,
  kVerificationFailed = 1,
  kBoundExceeded = 2,
  kInvalidInput = 3,
};

struct Options {
  BoundsPatch bounds;  // command-line flags; override the file's "bounds"
  std::string output;  // empty: standard output
  std::string dot;     // empty: no DOT file
  bool json = false;   // verify: JSON report instead of text
  bool complete = false;  // graph: complete the coset table first
};

/// Each command writes its primary result to `out` (or Options::output) and
/// diagnostics to `err`, and returns an Exit code. Library errors are caught
/// and mapped; nothing throws.
int cmd_decompose(const std::string& system_path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_kurosh(const std::string& system_path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& system_path, const std::string& cert_path, const Options& opt, std::ostream& out,
               std::ostream& err);
int cmd_graph(const std::string& system_path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_normalform(const std::string& system_path, const std::string& word, const Options& opt, std::ostream& out,
                   std::ostream& err);
int cmd_member(const std::string& system_path, const std::string& word, const Options& opt, std::ostream& out,
               std::ostream& err);

/// Exit code for a library error kind.
int exit_code(ErrorKind kind);

}  // namespace fpg::cli
