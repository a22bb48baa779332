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

#ifndef uber_uber_H
#define uber_uber_H

#include <armadillo>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "uber/fisher.hpp"
#include "uber/scene.hpp"

// The alternating designer. Each outer iteration rebuilds the quartic
// operator T from the current waveform, refines the two phase-shift copies
// with penalty-coupled bi-quadratic PMLI updates, picks the better copy, and
// then applies PMLI step(s) to the waveform against the Gram operator built
// from the selected phases. The iterate path is computed on noise-free
// operators, so optimized designs are identical for every sigma^2 and the
// reported CRLB scales exactly linearly with it.

namespace uber
{
    struct UberConfig
    {
        std::size_t outer_iterations = 50;   // Gamma_1
        std::size_t inner_iterations = 20;   // Gamma_2
        double penalty = 0.1;                // eta, couples the two phase copies
        std::size_t waveform_steps = 1;      // PMLI steps on vec(X) per outer iteration

        arma::cx_mat initial_waveform;       // X^(0), unimodular, N_t x N
        arma::cx_vec initial_phase_1;        // nu_1^(0), stacked, unimodular
        arma::cx_vec initial_phase_2;        // nu_2^(0)

        // Early exit when the relative CRLB improvement stays below this for
        // 3 consecutive outer iterations; 0 disables (fixed Gamma_1 schedule).
        double outer_stall_tolerance = 0.0;
    };

    // Default initialization: zero phase shifts on every IRS element and a
    // waveform drawn from complex standard normals projected onto the unit
    // circle, deterministic per seed.
    UberConfig default_uber_config(const ChannelSet &channels, arma::uword n_samples, std::uint64_t seed);

    struct UberResult
    {
        arma::cx_mat waveform;               // X*
        arma::cx_vec phases;                 // nu*, stacked
        std::vector<double> fisher_trace;    // initial value + one per outer iteration
        std::vector<double> crlb_trace;      // 1/fisher_trace elementwise
        std::vector<double> pre_waveform_fisher;          // F(X^(t), nu^(t+1)) before the waveform step
        std::vector<std::vector<double>> inner_traces;    // surrogate g per inner step, per outer iteration
        std::size_t outer_iterations_used = 0;
    };

    // Penalty-augmented PSD matrix for one phase update:
    // Etil = lambda_M I - E (lambda_M = max eigenvalue of E), then
    // curly = [Etil, -eta nu_other; -eta nu_other^H, 2 eta L] and the returned
    // matrix is lambdahat_M I - curly with lambdahat_M its max eigenvalue.
    // Throws on non-Hermitian E.
    arma::cx_mat augmented_matrix(const arma::cx_mat &e, const arma::cx_vec &nu_other, double penalty);

    struct InnerResult
    {
        PhaseProfile nu1;
        PhaseProfile nu2;
        std::vector<double> trace;  // g(nu1, nu2) at entry, then after each double update
    };

    // Gamma_2 rounds of the coupled updates: nu_1 from the matrix built around
    // nu_2, then nu_2 from the matrix built around the refreshed nu_1. Only
    // the first L entries of the augmented product are projected; the appended
    // homogenizing 1 stays fixed.
    InnerResult beamformer_inner(const arma::cx_mat &t, const PhaseProfile &nu1, const PhaseProfile &nu2,
                                 double penalty, std::size_t steps);

    // The copy with the larger quartic Fisher value; ties go to nu1
    const PhaseProfile &select_profile(const PhaseProfile &nu1, const PhaseProfile &nu2, const arma::cx_mat &t);

    UberResult run_uber(const SceneConfig &scene, const ChannelSet &channels,
                        const arma::cx_vec &alpha, const UberConfig &cfg);
}

#endif
