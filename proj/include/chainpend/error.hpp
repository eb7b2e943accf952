#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chainpend {

enum class ErrorKind {
  NotSkew,
  Singular,
  NotSPD,
  NoConvergence,
  NoStabilizingSeed,
  DegenerateDirection,
  Uncontrollable,
  InvalidArgument,
  Parse,
  Validation,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotSPD: return "NotSPD";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NoStabilizingSeed: return "NoStabilizingSeed";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::Uncontrollable: return "Uncontrollable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Input problems (bad config, bad state) as opposed to numerical failures.
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::Parse || kind_ == ErrorKind::Validation ||
           kind_ == ErrorKind::InvalidArgument || kind_ == ErrorKind::Io;
  }

 private:
  ErrorKind kind_;
};

}  // namespace chainpend
