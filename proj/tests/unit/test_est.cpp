#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "common.hpp"
#include "entsurv/errors.hpp"
#include "entsurv/est.hpp"
#include "entsurv/models.hpp"

using namespace entsurv;
using oracle::Mat;

namespace {

struct Case {
    const char* name;
    lindblad::SuperOp gen;
    double gamma;
};

std::vector<Case> catalog() {
    return {
        {"phase flip k=0.3", fixture::phase_flip(0.3), 1.0},
        {"phase flip k=1", fixture::phase_flip(1.0), 1.0},
        {"phase flip k=3, theta=1", fixture::phase_flip(3.0, 1.0), 1.0},
        {"phase flip k=0.6, gamma=2.5", fixture::phase_flip(0.6, fixture::kHalfPi, 2.5), 2.5},
        {"gad N=1", fixture::gad(1.0), 1.0},
        {"gad N=0.5 k=0.7", fixture::gad(0.5, 0.7, 1.1), 1.0},
        {"gad N=0 k=1", fixture::gad(0.0, 1.0), 1.0},
        {"depolarizing k=2", fixture::depolarizing(2.0), 1.0},
    };
}

double oracle_negativity(const Mat& gen, double t) { return oracle::negativity(oracle::expm(gen, t)); }

} // namespace

TEST_CASE("status names") {
    CHECK(est::to_string(est::EstStatus::Finite) == "finite");
    CHECK(est::to_string(est::EstStatus::Divergent) == "divergent");
    CHECK(est::to_string(est::EstStatus::MaxHorizonExceeded) == "max-horizon-exceeded");
}

TEST_CASE("bracket grid is geometric and ends at the horizon") {
    const auto grid = est::bracket_grid(50.0, 256);
    REQUIRE(grid.size() == 256);
    CHECK(grid.back() == doctest::Approx(50.0));
    CHECK(grid.front() > 0.0);
    CHECK(grid.front() < 1e-3);
    for (std::size_t i = 2; i < grid.size(); ++i) {
        CHECK(grid[i] / grid[i - 1] == doctest::Approx(grid[1] / grid[0]).epsilon(1e-9));
    }
}

TEST_CASE("reference values") {
    SUBCASE("depolarizing") {
        for (double kappa : {0.0, 1.0, 10.0}) {
            const auto r = est::solve_est(fixture::depolarizing(kappa), 1.0);
            REQUIRE(r.finite());
            CHECK(std::abs(r.t_rescaled - std::log(3.0)) < 1e-8);
        }
    }
    SUBCASE("undriven phase flip diverges") {
        const auto r = est::solve_est(fixture::phase_flip(0.0), 1.0);
        CHECK(r.status == est::EstStatus::Divergent);
    }
    SUBCASE("phase flip driven along z diverges") {
        for (double kappa : {0.5, 3.0}) {
            CHECK(est::solve_est(fixture::phase_flip(kappa, 0.0), 1.0).status == est::EstStatus::Divergent);
        }
    }
    SUBCASE("zero-temperature amplitude damping diverges") {
        CHECK(est::solve_est(fixture::gad(0.0), 1.0).status == est::EstStatus::Divergent);
    }
    SUBCASE("thermal amplitude damping") {
        const auto r = est::solve_est(fixture::gad(1.0), 1.0);
        REQUIRE(r.finite());
        CHECK(std::abs(r.t_rescaled - std::acosh(13.0 / 4) / 3) < 1e-9);
        // Independent grid-and-bisect root of the smallest PT eigenvalue.
        const auto root = oracle::first_root(
            [&](double t) { return oracle::min_pt_eigenvalue(oracle::expm(fixture::gad(1.0).matrix, t)); }, 1e-6,
            3.0);
        REQUIRE(root.has_value());
        CHECK(std::abs(r.t_rescaled - *root) < 1e-10);
    }
    SUBCASE("rescaling by gamma") {
        const double gamma = 3.0;
        const auto r = est::solve_est(fixture::depolarizing(0.5, gamma), gamma);
        REQUIRE(r.finite());
        CHECK(r.t_ent == doctest::Approx(std::log(3.0) / gamma).epsilon(1e-9));
        CHECK(std::abs(r.t_rescaled - gamma * r.t_ent) <= 1e-12 * r.t_rescaled);
    }
    SUBCASE("unitary dynamics diverge by construction") {
        lindblad::LindbladSpec spec = models::phase_flip_spec({1.0, 1.0, 0.0}, 1.0);
        spec.gamma = 0.0;
        spec.omega = 1.0;
        const auto r = est::solve_est(lindblad::build_generator(spec), 0.0);
        CHECK(r.status == est::EstStatus::Divergent);
    }
    SUBCASE("horizon too short for a certified finite time") {
        est::SolveOptions opts;
        opts.horizon = 5.0;
        const auto r = est::solve_est(fixture::phase_flip(0.02), 1.0, opts);
        CHECK(r.status == est::EstStatus::MaxHorizonExceeded);
    }
}

TEST_CASE("bracketing soundness and EB permanence") {
    for (const auto& c : catalog()) {
        CAPTURE(c.name);
        const auto r = est::solve_est(c.gen, c.gamma);
        REQUIRE(r.finite());
        const double t = r.t_ent;
        CHECK(oracle_negativity(c.gen.matrix, t * (1 - 1e-7)) > 0.0);
        CHECK(oracle_negativity(c.gen.matrix, t * (1 + 1e-7)) <= 1e-12);
        const double delta = 1e-6 / c.gamma;
        CHECK(oracle_negativity(c.gen.matrix, t - delta) > 0.0);
        CHECK(oracle_negativity(c.gen.matrix, t + delta) <= 1e-12);
        for (int k = 1; k <= 20; ++k) {
            const double tk = t + 4.0 * t * k / 20.0;
            CHECK(oracle_negativity(c.gen.matrix, tk) <= 1e-12);
        }
    }
}

TEST_CASE("bisection-only and Newton-polished roots agree") {
    est::SolveOptions plain;
    plain.newton_polish = false;
    for (const auto& c : catalog()) {
        CAPTURE(c.name);
        const auto polished = est::solve_est(c.gen, c.gamma);
        const auto bisected = est::solve_est(c.gen, c.gamma, plain);
        REQUIRE(polished.finite());
        REQUIRE(bisected.finite());
        CHECK(std::abs(polished.t_ent - bisected.t_ent) <= 1e-9 * polished.t_ent);
        CHECK(std::abs(polished.residual) <= std::abs(bisected.residual) + 1e-15);
    }
}

TEST_CASE("first_crossing on scalar functions") {
    const auto c = est::first_crossing([](double t) { return t * t - 2.0; }, 10.0);
    REQUIRE(c.found);
    CHECK(c.t == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
    // Touching zero from below at the noise floor is not a crossing.
    const auto none = est::first_crossing([](double t) { return -std::exp(-t); }, 10.0);
    CHECK_FALSE(none.found);
    CHECK(none.grid.size() == none.values.size());
    const auto tail = est::fit_tail(none.grid, none.values, 10.0);
    CHECK(tail.never_crosses());
    CHECK(tail.slope == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("end-to-end invariances") {
    std::mt19937_64 rng(61);
    const auto base_gen = fixture::phase_flip(0.8, 1.2);
    const auto base = est::solve_est(base_gen, 1.0);
    REQUIRE(base.finite());
    for (double q : {0.5, 2.0, 10.0}) {
        const auto r = est::solve_est(lindblad::scale(base_gen, q), 1.0);
        REQUIRE(r.finite());
        CHECK(std::abs(r.t_ent * q - base.t_ent) < 1e-8 * base.t_ent);
    }
    for (int trial = 0; trial < 10; ++trial) {
        const Mat u = oracle::random_unitary(rng, 2);
        const auto r = est::solve_est(lindblad::conjugate(base_gen, u), 1.0);
        REQUIRE(r.finite());
        CHECK(std::abs(r.t_ent - base.t_ent) < 1e-8 * base.t_ent);
    }
}

TEST_CASE("dimension check") {
    lindblad::SuperOp big;
    big.matrix = Mat::Zero(9, 9);
    big.dim = 3;
    CHECK_THROWS_AS(est::solve_est(big, 1.0), DimensionError);
}

TEST_CASE("default horizon honours EST_HORIZON") {
    ::unsetenv("EST_HORIZON");
    CHECK(est::default_horizon(2.0) == doctest::Approx(25.0));
    ::setenv("EST_HORIZON", "8", 1);
    CHECK(est::default_horizon(2.0) == doctest::Approx(4.0));
    ::setenv("EST_HORIZON", "nonsense", 1);
    CHECK(est::default_horizon(2.0) == doctest::Approx(25.0));
    ::unsetenv("EST_HORIZON");
}

TEST_CASE("sweep") {
    const std::vector<double> kappas = {0.0, 0.1, 0.3, 0.5, 1.0, 2.0, 5.0};
    const est::GeneratorFamily family = [](double k) { return fixture::phase_flip(k); };
    const auto serial = est::sweep(family, kappas, 1.0, {}, 1);
    const auto parallel = est::sweep(family, kappas, 1.0, {}, 4);
    REQUIRE(serial.size() == kappas.size());
    REQUIRE(parallel.size() == kappas.size());
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        CHECK(serial[i].kappa == kappas[i]);
        CHECK(parallel[i].kappa == kappas[i]);
        REQUIRE(serial[i].result.has_value());
        REQUIRE(parallel[i].result.has_value());
        CHECK(serial[i].result->status == parallel[i].result->status);
        CHECK(serial[i].result->t_ent == parallel[i].result->t_ent);
    }
    CHECK(serial[0].result->status == est::EstStatus::Divergent);

    SUBCASE("values for kappa >= 1/4 lie within the bounds") {
        const std::vector<double> ks = {1.0, 2.0, 5.0};
        for (const auto& e : est::sweep(family, ks, 1.0)) {
            REQUIRE(e.result.has_value());
            const auto b = models::pf_bounds(e.kappa);
            CHECK(e.result->t_rescaled >= b.lower - 1e-9);
            CHECK(e.result->t_rescaled <= b.upper + 1e-9);
        }
    }
    SUBCASE("depolarizing is constant") {
        const std::vector<double> ks = {0.0, 0.5, 3.0, 20.0};
        for (const auto& e :
             est::sweep([](double k) { return fixture::depolarizing(k); }, ks, 1.0, {}, 2)) {
            REQUIRE(e.result.has_value());
            CHECK(std::abs(e.result->t_rescaled - std::log(3.0)) < 1e-8);
        }
    }
    SUBCASE("driving along z diverges everywhere") {
        const std::vector<double> ks = {0.0, 0.5, 2.0};
        for (const auto& e : est::sweep([](double k) { return fixture::phase_flip(k, 0.0); }, ks, 1.0)) {
            REQUIRE(e.result.has_value());
            CHECK(e.result->status == est::EstStatus::Divergent);
        }
    }
    SUBCASE("per-point failures are captured") {
        const std::vector<double> ks = {0.5, 1.0, 1.5};
        const auto entries = est::sweep(
            [](double k) {
                if (k == 1.0) {
                    throw RangeError("boom");
                }
                return fixture::depolarizing(k);
            },
            ks, 1.0, {}, 3);
        CHECK(entries[0].result.has_value());
        CHECK_FALSE(entries[1].result.has_value());
        CHECK(entries[1].error.find("boom") != std::string::npos);
        CHECK(entries[2].result.has_value());
    }
    SUBCASE("bad grids") {
        const std::vector<double> empty;
        const std::vector<double> descending = {1.0, 0.5};
        CHECK_THROWS_AS(est::sweep(family, empty, 1.0), UsageError);
        CHECK_THROWS_AS(est::sweep(family, descending, 1.0), UsageError);
    }
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<int> hits(1000, 0);
    est::parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) {
        CHECK(h == 1);
    }
    CHECK_THROWS(est::parallel_for(10, 4, [](std::size_t i) {
        if (i == 7) {
            throw std::runtime_error("x");
        }
    }));
}
