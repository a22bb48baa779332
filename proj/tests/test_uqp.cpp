// SPDX-License-Identifier: Apache-2.0
//
// uber-radar: joint unimodular waveform and multi-IRS phase-shift design
// Copyright (C) 2026 the uber-radar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>
#include <numbers>

#include "test_helpers.hpp"
#include "uber/uqp.hpp"

using namespace uber;
using testutil::random_hermitian;
using testutil::random_psd;
using testutil::random_unimodular;

namespace
{
    double objective(const arma::cx_mat &g, const arma::cx_vec &s)
    {
        return std::real(arma::cdot(s, arma::cx_vec(g * s)));
    }
}

TEST_CASE("diagonal loading")
{
    std::mt19937_64 rng(7);

    // PSD input is returned unchanged
    const arma::cx_mat psd = random_psd(rng, 5);
    const auto [same, zero] = diagonal_load(psd);
    CHECK(zero == 0.0);
    CHECK(arma::norm(same - psd, "fro") == 0.0);

    // diag(1, -3) is shifted just past 3
    arma::cx_mat d(2, 2, arma::fill::zeros);
    d(0, 0) = 1.0, d(1, 1) = -3.0;
    const auto [loaded, lambda_m] = diagonal_load(d);
    CHECK(lambda_m == Catch::Approx(3.0).epsilon(1e-6));
    CHECK(lambda_m > 3.0);
    CHECK(std::real(loaded(0, 0)) == Catch::Approx(4.0).epsilon(1e-6));
    CHECK(hermitian_extreme_eigs(loaded).first >= 0.0);

    // the unimodular objective shifts by exactly lambda_m * n
    const arma::cx_mat g = random_hermitian(rng, 6);
    const auto [g_loaded, load] = diagonal_load(g);
    for (int i = 0; i < 20; ++i)
    {
        const arma::cx_vec s = random_unimodular(rng, 6);
        const double shift = objective(g_loaded, s) - objective(g, s);
        CHECK(shift == Catch::Approx(load * 6.0).epsilon(1e-10));
    }

    CHECK_THROWS_AS(diagonal_load(testutil::random_complex(rng, 4, 4)), std::invalid_argument);
}

TEST_CASE("pmli step")
{
    std::mt19937_64 rng(11);

    // the identity holds every unimodular point fixed
    const arma::cx_vec s = random_unimodular(rng, 8);
    CHECK(arma::norm(pmli_step(arma::eye<arma::cx_mat>(8, 8), s) - s, "inf") < 1e-15);

    // rank-1 u u^H: one step from any non-orthogonal start reaches a global
    // phase rotation of u with objective n^2
    const arma::uword n = 6;
    const arma::cx_vec u = random_unimodular(rng, n);
    const arma::cx_mat g = u * u.t();
    for (int i = 0; i < 10; ++i)
    {
        const arma::cx_vec start = random_unimodular(rng, n);
        if (std::abs(arma::cdot(u, start)) < 1e-6)
            continue;
        const arma::cx_vec next = pmli_step(g, start);
        CHECK(objective(g, next) == Catch::Approx(static_cast<double>(n * n)).epsilon(1e-10));
        // constant elementwise phase ratio against u
        const arma::cx_vec ratio = next / u;
        for (arma::uword k = 1; k < n; ++k)
            CHECK(std::abs(ratio[k] - ratio[0]) < 1e-10);
    }

    // never decreases the objective on PSD matrices
    for (int i = 0; i < 50; ++i)
    {
        const arma::uword m = testutil::uniform_index(rng, 2, 12);
        const arma::cx_mat p = random_psd(rng, m);
        const arma::cx_vec s0 = random_unimodular(rng, m);
        const arma::cx_vec s1 = pmli_step(p, s0);
        CHECK(objective(p, s1) >= objective(p, s0) * (1.0 - 1e-12) - 1e-12);
        CHECK(is_unimodular(s1, 1e-12));
    }
}

TEST_CASE("solver converges immediately on the identity")
{
    std::mt19937_64 rng(13);
    UqpProblem problem;
    problem.g = arma::eye<arma::cx_mat>(4, 4);
    problem.initial = random_unimodular(rng, 4);
    const UqpResult result = solve(problem);

    CHECK(result.objective_trace.front() == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(result.objective_trace.back() == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(result.loading_applied == 0.0);
    CHECK(result.iterations_used <= 3); // stall exit
    CHECK(arma::norm(result.solution - problem.initial, "inf") < 1e-14);
}

TEST_CASE("solver trace is monotone and respects the cap")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i)
    {
        UqpProblem problem;
        const arma::uword n = testutil::uniform_index(rng, 2, 24);
        problem.g = random_psd(rng, n);
        problem.initial = random_unimodular(rng, n);
        problem.max_iterations = 40;
        const UqpResult result = solve(problem);

        REQUIRE(result.objective_trace.size() == result.iterations_used + 1);
        CHECK(result.iterations_used <= 40);
        for (std::size_t t = 1; t < result.objective_trace.size(); ++t)
            CHECK(result.objective_trace[t] >=
                  result.objective_trace[t - 1] - 1e-10 * std::abs(result.objective_trace[t - 1]));
        CHECK(is_unimodular(result.solution, 1e-12));
    }
}

TEST_CASE("solver beats random probing")
{
    std::mt19937_64 rng(19);
    UqpProblem problem;
    problem.g = random_hermitian(rng, 4);
    problem.initial = random_unimodular(rng, 4);
    problem.max_iterations = 200;
    const UqpResult result = solve(problem);

    double best = -1e300;
    for (int i = 0; i < 10000; ++i)
        best = std::max(best, objective(problem.g, random_unimodular(rng, 4)));
    CHECK(result.objective_trace.back() >= best - 1e-9 * std::max(1.0, std::abs(best)));
}

TEST_CASE("solver dominates the exhaustive quadriphase optimum")
{
    // Exhaustive search over {1, j, -1, -j}^n lower-bounds the continuous
    // optimum; PMLI refined from the quantized argmax must end at least there.
    std::mt19937_64 rng(23);
    const cx alphabet[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};

    for (arma::uword n : {4, 6, 8})
    {
        const arma::cx_mat g = random_hermitian(rng, n);

        double best = -1e300;
        arma::cx_vec best_s(n);
        arma::cx_vec s(n);
        const std::size_t total = std::size_t(1) << (2 * n);
        for (std::size_t code = 0; code < total; ++code)
        {
            std::size_t c = code;
            for (arma::uword k = 0; k < n; ++k)
            {
                s[k] = alphabet[c & 3];
                c >>= 2;
            }
            const double val = objective(g, s);
            if (val > best)
            {
                best = val;
                best_s = s;
            }
        }

        double continuous = -1e300;
        for (const arma::cx_vec &start : {best_s, arma::cx_vec(n, arma::fill::ones), random_unimodular(rng, n)})
        {
            UqpProblem problem{g, start, 300, 1e-14};
            continuous = std::max(continuous, solve(problem).objective_trace.back());
        }
        CHECK(continuous >= best - 1e-9 * std::max(1.0, std::abs(best)));
    }
}

TEST_CASE("loading shifts the trace by exactly the loaded constant")
{
    std::mt19937_64 rng(29);
    const arma::uword n = 8;
    arma::cx_mat g = random_hermitian(rng, n);
    g.diag() -= 5.0; // force indefiniteness

    // fixed-length schedule: the stall heuristic scales with the objective
    // and would stop the two runs at different iterations
    UqpProblem problem{g, random_unimodular(rng, n), 40, 0.0};
    const UqpResult first = solve(problem);
    REQUIRE(first.loading_applied > 0.0);

    arma::cx_mat shifted = g;
    shifted.diag() += first.loading_applied;
    UqpProblem shifted_problem{shifted, problem.initial, 40, 0.0};
    const UqpResult second = solve(shifted_problem);
    CHECK(second.loading_applied == 0.0);

    // identical iterates, traces offset by loading * n
    CHECK(arma::norm(first.solution - second.solution, "inf") == 0.0);
    REQUIRE(first.objective_trace.size() == second.objective_trace.size());
    const double offset = first.loading_applied * static_cast<double>(n);
    for (std::size_t t = 0; t < first.objective_trace.size(); ++t)
        CHECK(second.objective_trace[t] - first.objective_trace[t] ==
              Catch::Approx(offset).epsilon(1e-10));
}

TEST_CASE("solver is deterministic")
{
    std::mt19937_64 rng(31);
    UqpProblem problem;
    problem.g = random_hermitian(rng, 12);
    problem.initial = random_unimodular(rng, 12);

    const UqpResult a = solve(problem);
    const UqpResult b = solve(problem);
    CHECK(arma::norm(a.solution - b.solution, "inf") == 0.0);
    REQUIRE(a.objective_trace.size() == b.objective_trace.size());
    for (std::size_t t = 0; t < a.objective_trace.size(); ++t)
        CHECK(a.objective_trace[t] == b.objective_trace[t]);
}

TEST_CASE("solver rejects malformed problems")
{
    std::mt19937_64 rng(37);
    UqpProblem problem;
    problem.g = random_hermitian(rng, 4);
    problem.initial = arma::cx_vec(3, arma::fill::ones);
    CHECK_THROWS_AS(solve(problem), std::invalid_argument);

    problem.initial = arma::cx_vec(4, arma::fill::ones);
    problem.initial[1] = cx(0.5, 0.0);
    CHECK_THROWS_AS(solve(problem), std::invalid_argument);
}
