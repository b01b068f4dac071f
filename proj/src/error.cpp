#include "qir/error.hpp"

namespace qir {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NonPowerOfTwoDims: return "NonPowerOfTwoDims";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RegisterOverflow: return "RegisterOverflow";
    case Errc::AllZeroImage: return "AllZeroImage";
    case Errc::KeyMismatch: return "KeyMismatch";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::MalformedPayload: return "MalformedPayload";
    case Errc::TruncatedPayload: return "TruncatedPayload";
    case Errc::UnsupportedMaxval: return "UnsupportedMaxval";
    case Errc::ColorSpaceMismatch: return "ColorSpaceMismatch";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadVersion: return "BadVersion";
    case Errc::UnsupportedCompression: return "UnsupportedCompression";
    case Errc::BadChecksum: return "BadChecksum";
    case Errc::MultiplicityMismatch: return "MultiplicityMismatch";
    case Errc::MalformedContainer: return "MalformedContainer";
    case Errc::OracleTooLarge: return "OracleTooLarge";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace qir
