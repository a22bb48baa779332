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

#ifndef uber_uqp_H
#define uber_uqp_H

#include <armadillo>
#include <cstddef>
#include <utility>
#include <vector>

#include "uber/linalg.hpp"

// Unimodular quadratic program, maximize s^H G s over all |s_i| = 1, solved
// with power-method-like iterations s <- exp(j arg(G s)). The iteration is
// monotone in the objective whenever G is positive semidefinite; indefinite
// matrices are diagonally loaded first, which shifts the objective by a
// constant and leaves the argmax unchanged.

namespace uber
{
    struct UqpProblem
    {
        arma::cx_mat g;                      // Hermitian
        arma::cx_vec initial;                // unit-modulus start
        std::size_t max_iterations = 100;    // iteration cap
        double stall_tolerance = 1e-12;      // relative gain that counts as progress
    };

    struct UqpResult
    {
        arma::cx_vec solution;
        std::vector<double> objective_trace; // unloaded s^H G s: initial value, then one per step
        std::size_t iterations_used = 0;
        double loading_applied = 0.0;        // lambda_m of the diagonal loading, 0 if G was PSD
    };

    // G + lambda_m I with lambda_m = -lambda_min + eps when G is indefinite
    // (eps = 1e-9 * max(1, |lambda_min|) keeps the loaded matrix PSD under
    // roundoff); returns (G, 0) unchanged when already PSD. Throws on
    // non-Hermitian input.
    std::pair<arma::cx_mat, double> diagonal_load(const arma::cx_mat &g);

    // One power-method-like iteration on a PSD matrix
    arma::cx_vec pmli_step(const arma::cx_mat &g_loaded, const arma::cx_vec &s);

    // Load once, then iterate up to max_iterations; exits early after the
    // relative objective gain stays below stall_tolerance for 3 consecutive
    // steps. Deterministic: identical inputs give bit-identical results.
    UqpResult solve(const UqpProblem &problem);
}

#endif
