#pragma once

// Constants measured by tools/calibrate at a pinned seed and frozen here.
// Gates compare fresh measurements against them with the stated slack.

namespace lacuna::calibration {

inline constexpr unsigned long long kSeed = 20240611ULL;

// Largest John-Nirenberg constant int F / |U_0| over normalized random weights (eps = 0.05, p in {1, 1.5}).
inline constexpr double kJnConstant = 1.0;
// jn_ratio(a, 1, 2) over 1000 random weights: smallest, largest and mean value.
inline constexpr double kJnRatioMin = 0.0625;
inline constexpr double kJnRatioMax = 0.961593;
inline constexpr double kJnRatioMean = 0.168958;
// Largest CM,1 norm over 500 weights satisfying the Journe hypothesis with eps = 1/4.
inline constexpr double kJourneCm1 = 0.150193;
// |phi(c)| sqrt|R| for the reference transition packet.
inline constexpr double kEnvelopeCenter = 0.62831;

inline constexpr double kSlack = 0.05;

}  // namespace lacuna::calibration
