#pragma once

namespace incoherent {

inline constexpr const char* kVersion = "0.1.0";

// Identifies the random stream: mt19937_64 engine, 53-bit uniform doubles
// ((x >> 11) * 2^-53), Gaussians by the Marsaglia polar method. Any change
// to this pipeline requires a new identifier.
inline constexpr const char* kGeneratorId = "mt19937_64/canonical53/polar-v1";

}  // namespace incoherent
