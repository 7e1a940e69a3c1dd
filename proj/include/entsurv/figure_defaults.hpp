// figure_defaults.hpp - parameter grids used to regenerate each figure panel
//
// Bump kFigureDefaultsVersion whenever a grid below changes; it is written
// into the header comment of every figure file.

#pragma once

#include <array>
#include <numbers>

namespace entsurv::run::figure_defaults {

inline constexpr int kFigureDefaultsVersion = 1;

struct Range {
    double lo;
    double hi;
    int points;
};

// 1: phase-flip negativity, theta = pi/2.
inline constexpr std::array<double, 4> kFig1Kappas{0.0, 0.25, 1.0, 4.0};
inline constexpr Range kFig1Tau{0.0, 5.0, 201};

// 2a: phase-flip survival time and bounds, theta = pi/2.
inline constexpr Range kFig2aKappa{0.02, 5.0, 250};

// 2b: phase-flip surface over (kappa, theta).
inline constexpr Range kFig2bKappa{0.05, 3.0, 60};
inline constexpr Range kFig2bTheta{0.0, std::numbers::pi / 2, 31};

// 3a: amplitude damping (N = 0), one curve per theta.
inline constexpr std::array<double, 5> kFig3aThetas{0.0, std::numbers::pi / 8, std::numbers::pi / 4,
                                                    3 * std::numbers::pi / 8, std::numbers::pi / 2};
inline constexpr Range kFig3aKappa{0.0, 3.0, 100};

// 3b-3d: generalized amplitude damping surfaces, one N per panel.
inline constexpr std::array<double, 3> kFig3SurfaceN{0.1, 1.0, 10.0};
inline constexpr Range kFig3Kappa{0.0, 3.0, 40};
inline constexpr Range kFig3Theta{0.0, std::numbers::pi / 2, 31};

// 4a/4c: Gaussian curves per theta for N = 0 / N = 1; 4b/4d: surfaces.
inline constexpr std::array<double, 2> kFig4N{0.0, 1.0};
inline constexpr std::array<double, 5> kFig4Thetas{0.0, std::numbers::pi / 8, std::numbers::pi / 4,
                                                   3 * std::numbers::pi / 8, std::numbers::pi / 2};
inline constexpr Range kFig4Kappa{0.0, 5.0, 100};
inline constexpr Range kFig4SurfaceKappa{0.0, 5.0, 40};
inline constexpr Range kFig4SurfaceTheta{0.0, std::numbers::pi / 2, 31};

// 5: kappa -> infinity asymptote on [0, pi/4).
inline constexpr std::array<double, 2> kFig5N{0.0, 1.0};
inline constexpr int kFig5ThetaPoints = 100;

} // namespace entsurv::run::figure_defaults
