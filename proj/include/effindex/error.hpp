#pragma once

#include <stdexcept>
#include <string>

namespace effindex {

enum class ErrorCode {
  invalid_input,
  series_too_short,
  degenerate_series,
  degenerate_path,
  embedding_failure,
  generation_failure,
  parse_error,
  empty_report,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code tells callers which
/// precondition failed without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace effindex
