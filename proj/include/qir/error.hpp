#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qir {

/// Reason codes carried by every library error. The CLI prints them verbatim,
/// so the spelling of each name is part of the command-line contract.
enum class Errc {
  OutOfRange,
  NonPowerOfTwoDims,
  DimensionMismatch,
  RegisterOverflow,
  AllZeroImage,
  KeyMismatch,
  MalformedHeader,
  MalformedPayload,
  TruncatedPayload,
  UnsupportedMaxval,
  ColorSpaceMismatch,
  BadMagic,
  BadVersion,
  UnsupportedCompression,
  BadChecksum,
  MultiplicityMismatch,
  MalformedContainer,
  OracleTooLarge,
  Io,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qir
