#pragma once

#include <stdexcept>
#include <string>

namespace projconst {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PROJCONST_DEFINE_ERROR(Name)            \
  class Name : public Error {                   \
   public:                                      \
    using Error::Error;                         \
  }

PROJCONST_DEFINE_ERROR(ShapeError);
PROJCONST_DEFINE_ERROR(FieldError);
PROJCONST_DEFINE_ERROR(RankError);
PROJCONST_DEFINE_ERROR(ConvergenceError);
PROJCONST_DEFINE_ERROR(DomainError);
PROJCONST_DEFINE_ERROR(NotTightError);
PROJCONST_DEFINE_ERROR(NotParsevalError);
PROJCONST_DEFINE_ERROR(ZeroColumnError);
PROJCONST_DEFINE_ERROR(NotEtfError);
PROJCONST_DEFINE_ERROR(UnsupportedError);
PROJCONST_DEFINE_ERROR(NotTwoGraphError);
PROJCONST_DEFINE_ERROR(FactorizationError);
PROJCONST_DEFINE_ERROR(PrecisionError);
PROJCONST_DEFINE_ERROR(EmptyFrameError);
PROJCONST_DEFINE_ERROR(GuardrailError);

#undef PROJCONST_DEFINE_ERROR

/// Parse failure in one of the text formats; carries the 1-based line number.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace projconst
