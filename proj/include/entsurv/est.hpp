// est.hpp - entanglement survival time solver and parameter sweeps

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entsurv/lindblad.hpp"

namespace entsurv::est {

enum class EstStatus { Finite, Divergent, MaxHorizonExceeded };

std::string_view to_string(EstStatus status);

struct EstResult {
    EstStatus status = EstStatus::MaxHorizonExceeded;
    double t_ent = 0.0;      // survival time in units of 1/gamma, finite status only
    double t_rescaled = 0.0; // gamma * t_ent
    int iterations = 0;      // root-function evaluations
    double residual = 0.0;   // root function at t_ent (finite) or at the horizon
    std::string note;

    bool finite() const { return status == EstStatus::Finite; }
};

struct SolveOptions {
    // Search horizon in time units. Empty means default_horizon(gamma).
    std::optional<double> horizon;
    int bracket_points = 256;
    bool newton_polish = true;
};

// 50 / gamma, or EST_HORIZON / gamma when that variable holds a positive number.
double default_horizon(double gamma);

// Grid on (0, horizon] used to bracket the first crossing, geometric so that
// it is dense near t = 0.
std::vector<double> bracket_grid(double horizon, int points);

using RootFunction = std::function<double(double)>;

struct Crossing {
    bool found = false;
    double t = 0.0;
    double residual = 0.0;
    int iterations = 0;
    // Grid samples, kept for the divergence test when no crossing is found.
    std::vector<double> grid;
    std::vector<double> values;
};

/// First time where a root function that starts negative becomes
/// non-negative: grid bracketing, bisection to 1e-10 relative width, then
/// Newton polish with central differences.
Crossing first_crossing(const RootFunction& f, double horizon, const SolveOptions& options = {});

struct TailFit {
    int points = 0;
    double slope = 0.0;     // d log|f| / dt
    double intercept = 0.0;
    bool all_negative = false;

    // A negative tail decaying exponentially towards zero never crosses it.
    bool never_crosses() const { return points >= 3 && all_negative && slope < 0.0; }
};

// Log-linear fit of |f| over the last decade of the grid, ignoring samples
// below the noise floor.
TailFit fit_tail(std::span<const double> grid, std::span<const double> values, double horizon);

// Smallest partial-transpose eigenvalue of the Choi state of exp(t gen).
RootFunction min_pt_eigenvalue_function(const lindblad::SuperOp& gen);

/// Survival time of the semigroup exp(t gen).
///
/// Finite when the smallest partial-transpose eigenvalue of the Choi state
/// crosses zero before the horizon. Without a crossing the result is
/// Divergent only if the ESD criterion is inconclusive and the tail fit shows
/// a negative eigenvalue decaying towards zero; otherwise MaxHorizonExceeded.
/// gamma == 0 (purely unitary dynamics) is always Divergent.
EstResult solve_est(const lindblad::SuperOp& gen, double gamma, const SolveOptions& options = {});

// Converts a crossing search into a finite / max-horizon result.
EstResult result_from_crossing(const Crossing& crossing, double gamma);

struct SweepEntry {
    double kappa = 0.0;
    std::optional<EstResult> result;
    std::string error; // set when the point threw
};

using GeneratorFamily = std::function<lindblad::SuperOp(double kappa)>;

/// One solve per kappa. Points run on `workers` threads; the output is in
/// input order and does not depend on the worker count.
std::vector<SweepEntry> sweep(const GeneratorFamily& family, std::span<const double> kappas,
                              double gamma, const SolveOptions& options = {}, unsigned workers = 1);

/// Runs task(i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

} // namespace entsurv::est
