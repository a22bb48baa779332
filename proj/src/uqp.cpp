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

#include "uber/uqp.hpp"

#include <cmath>
#include <stdexcept>

namespace uber
{

namespace
{
    void check_hermitian(const arma::cx_mat &g, const char *who)
    {
        if (!g.is_square())
            throw std::invalid_argument(std::string(who) + ": matrix must be square");
        const double scale = std::max(1.0, arma::norm(g, "fro"));
        if (arma::norm(g - g.t(), "fro") > 1e-10 * scale)
            throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
    }

    double objective(const arma::cx_mat &g, const arma::cx_vec &s)
    {
        return std::real(arma::cdot(s, g * s));
    }
}

std::pair<arma::cx_mat, double> diagonal_load(const arma::cx_mat &g)
{
    check_hermitian(g, "diagonal_load");

    const auto [lambda_min, lambda_max] = hermitian_extreme_eigs(g);
    (void)lambda_max;
    if (lambda_min >= 0.0)
        return {g, 0.0};

    const double loading = -lambda_min + 1e-9 * std::max(1.0, std::abs(lambda_min));
    arma::cx_mat loaded = g;
    loaded.diag() += loading;
    return {std::move(loaded), loading};
}

arma::cx_vec pmli_step(const arma::cx_mat &g_loaded, const arma::cx_vec &s)
{
    return unit_modulus_project(arma::cx_vec(g_loaded * s));
}

UqpResult solve(const UqpProblem &problem)
{
    check_hermitian(problem.g, "uqp::solve");
    if (problem.initial.n_elem != problem.g.n_rows)
        throw std::invalid_argument("uqp::solve: initial vector length mismatch");
    if (!is_unimodular(problem.initial))
        throw std::invalid_argument("uqp::solve: initial vector must be unit-modulus");

    auto [loaded, loading] = diagonal_load(problem.g);

    UqpResult result;
    result.loading_applied = loading;
    result.solution = problem.initial;
    result.objective_trace.reserve(problem.max_iterations + 1);
    result.objective_trace.push_back(objective(problem.g, result.solution));

    std::size_t stalled = 0;
    for (std::size_t t = 0; t < problem.max_iterations; ++t)
    {
        result.solution = pmli_step(loaded, result.solution);
        const double prev = result.objective_trace.back();
        const double obj = objective(problem.g, result.solution);
        result.objective_trace.push_back(obj);
        ++result.iterations_used;

        const double gain = obj - prev;
        stalled = (gain < problem.stall_tolerance * std::max(std::abs(prev), 1.0)) ? stalled + 1 : 0;
        if (stalled >= 3)
            break;
    }
    return result;
}

}
