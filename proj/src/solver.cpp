// solver.cpp - first-crossing search, divergence certification, sweeps

#include "entsurv/est.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <thread>

#include "entsurv/entanglement.hpp"
#include "entsurv/errors.hpp"
#include "entsurv/tolerances.hpp"

namespace entsurv::est {

std::string_view to_string(EstStatus status) {
    switch (status) {
    case EstStatus::Finite:
        return "finite";
    case EstStatus::Divergent:
        return "divergent";
    case EstStatus::MaxHorizonExceeded:
        return "max-horizon-exceeded";
    }
    return "unknown";
}

double default_horizon(double gamma) {
    double rescaled = kTol.horizon_rescaled;
    if (const char* env = std::getenv("EST_HORIZON")) {
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end != env && value > 0.0 && std::isfinite(value)) {
            rescaled = value;
        }
    }
    return gamma > 0.0 ? rescaled / gamma : rescaled;
}

std::vector<double> bracket_grid(double horizon, int points) {
    if (points < 2 || !(horizon > 0.0)) {
        throw ContractError("bracket_grid: need at least two points and a positive horizon");
    }
    const double first = horizon * 1e-6;
    const double ratio = std::pow(horizon / first, 1.0 / (points - 1));
    std::vector<double> grid(static_cast<std::size_t>(points));
    double t = first;
    for (auto& g : grid) {
        g = t;
        t *= ratio;
    }
    grid.back() = horizon;
    return grid;
}

Crossing first_crossing(const RootFunction& f, double horizon, const SolveOptions& options) {
    Crossing out;
    out.grid = bracket_grid(horizon, options.bracket_points);
    out.values.reserve(out.grid.size());

    std::size_t hit = out.grid.size();
    for (std::size_t k = 0; k < out.grid.size(); ++k) {
        out.values.push_back(f(out.grid[k]));
        ++out.iterations;
        if (out.values.back() > kTol.crossing_floor) {
            hit = k;
            break;
        }
    }
    if (hit == out.grid.size()) {
        out.residual = out.values.back();
        return out;
    }

    // Walk back to the last strictly negative sample; the sign change sits
    // between it and its successor.
    double lo = 0.0;
    double hi = out.grid[hit];
    for (std::size_t k = hit; k-- > 0;) {
        if (out.values[k] < 0.0) {
            lo = out.grid[k];
            hi = out.grid[k + 1];
            break;
        }
    }

    while (hi - lo > kTol.bisection_relative * hi) {
        const double mid = 0.5 * (lo + hi);
        const double value = f(mid);
        ++out.iterations;
        if (value < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    double t = 0.5 * (lo + hi);
    double ft = f(t);
    ++out.iterations;
    if (options.newton_polish) {
        for (int iter = 0; iter < 8; ++iter) {
            const double h = kTol.newton_step_relative * t;
            const double slope = (f(t + h) - f(t - h)) / (2.0 * h);
            out.iterations += 2;
            if (!(std::abs(slope) > 0.0)) {
                break;
            }
            const double next = t - ft / slope;
            if (!(next > lo && next < hi)) {
                break;
            }
            const double fnext = f(next);
            ++out.iterations;
            if (std::abs(fnext) > std::abs(ft)) {
                break;
            }
            const double step = std::abs(next - t);
            t = next;
            ft = fnext;
            if (step <= 1e-15 * t) {
                break;
            }
        }
    }
    out.found = true;
    out.t = t;
    out.residual = ft;
    return out;
}

TailFit fit_tail(std::span<const double> grid, std::span<const double> values, double horizon) {
    TailFit fit;
    const std::size_t n = std::min(grid.size(), values.size());
    std::vector<std::size_t> picked;
    for (std::size_t k = 0; k < n; ++k) {
        if (grid[k] >= horizon / kTol.tail_decade && std::abs(values[k]) > kTol.crossing_floor) {
            picked.push_back(k);
        }
    }
    if (picked.size() < 3) {
        picked.clear();
        for (std::size_t k = n; k-- > 0 && picked.size() < 8;) {
            if (std::abs(values[k]) > kTol.crossing_floor) {
                picked.push_back(k);
            }
        }
    }
    fit.points = static_cast<int>(picked.size());
    if (picked.empty()) {
        return fit;
    }
    fit.all_negative = std::all_of(picked.begin(), picked.end(),
                                   [&](std::size_t k) { return values[k] < 0.0; });
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t k : picked) {
        const double y = std::log(std::abs(values[k]));
        st += grid[k];
        sy += y;
        stt += grid[k] * grid[k];
        sty += grid[k] * y;
    }
    const double m = static_cast<double>(picked.size());
    const double denom = m * stt - st * st;
    if (denom > 0.0) {
        fit.slope = (m * sty - st * sy) / denom;
        fit.intercept = (sy - fit.slope * st) / m;
    }
    return fit;
}

RootFunction min_pt_eigenvalue_function(const lindblad::SuperOp& gen) {
    auto propagator = std::make_shared<qmat::Propagator>(gen.matrix);
    const std::size_t d = gen.dim;
    return [propagator, d](double t) {
        return entanglement::min_pt_eigenvalue(entanglement::choi_unchecked(propagator->at(t), d));
    };
}

EstResult result_from_crossing(const Crossing& crossing, double gamma) {
    EstResult out;
    out.iterations = crossing.iterations;
    out.residual = crossing.residual;
    if (crossing.found) {
        out.status = EstStatus::Finite;
        out.t_ent = crossing.t;
        out.t_rescaled = gamma * crossing.t;
    } else {
        out.status = EstStatus::MaxHorizonExceeded;
        out.note = "no crossing before the horizon";
    }
    return out;
}

EstResult solve_est(const lindblad::SuperOp& gen, double gamma, const SolveOptions& options) {
    if (gen.dim != 2) {
        throw DimensionError("solve_est: PPT is an exact separability test only for qubits");
    }
    if (gamma == 0.0) {
        EstResult out;
        out.status = EstStatus::Divergent;
        out.note = "purely unitary dynamics never becomes entanglement breaking";
        return out;
    }
    if (!(gamma > 0.0)) {
        throw ContractError("solve_est: gamma must be non-negative");
    }
    const double horizon = options.horizon.value_or(default_horizon(gamma));
    const Crossing crossing = first_crossing(min_pt_eigenvalue_function(gen), horizon, options);
    EstResult out = result_from_crossing(crossing, gamma);
    if (crossing.found) {
        return out;
    }

    const entanglement::EsdReport esd = entanglement::esd_criterion(gen);
    if (esd.verdict == entanglement::EsdVerdict::FiniteCertified) {
        out.note = "stationary state is mixed, survival time is finite but beyond the horizon";
        return out;
    }
    const TailFit tail = fit_tail(crossing.grid, crossing.values, horizon);
    if (tail.never_crosses()) {
        out.status = EstStatus::Divergent;
        out.note = esd.reason + "; partial-transpose eigenvalue decays towards zero from below";
    } else {
        out.note = esd.reason + "; tail fit inconclusive";
    }
    return out;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task) {
    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            task(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) {
                    task(i);
                }
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
}

std::vector<SweepEntry> sweep(const GeneratorFamily& family, std::span<const double> kappas,
                              double gamma, const SolveOptions& options, unsigned workers) {
    if (kappas.empty()) {
        throw UsageError("sweep: empty kappa grid");
    }
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        if (!std::isfinite(kappas[i]) || (i > 0 && kappas[i] < kappas[i - 1])) {
            throw UsageError("sweep: kappa grid must be finite and ascending");
        }
    }
    std::vector<SweepEntry> out(kappas.size());
    parallel_for(kappas.size(), workers, [&](std::size_t i) {
        out[i].kappa = kappas[i];
        try {
            out[i].result = solve_est(family(kappas[i]), gamma, options);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

} // namespace entsurv::est
