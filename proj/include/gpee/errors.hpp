#pragma once

#include <stdexcept>
#include <string>

namespace gpee {

enum class Errc {
  IoFailure,
  MalformedPgm,
  MaxvalUnsupported,
  DimensionMismatch,
  BitstreamOverrun,
  InvalidArgument,
  CapacityUnreachable,
  ImageTooSmall,
  ThresholdDeltaOverflow,
  MalformedStego,
  SolveFailed,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

}  // namespace gpee
