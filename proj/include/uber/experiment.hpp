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

#ifndef uber_experiment_H
#define uber_experiment_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uber/scene.hpp"
#include "uber/uber.hpp"

// Experiment front-end: JSON experiment specs, seeded sweep orchestration,
// CSV emission and the randomized self-validation suite.
//
// Reproducibility contract: a sweep cell is (seed, sigma2, m_count). For each
// seed the reflectivities of the FULL IRS list are drawn first and truncated
// to the requested m_count, then the initial waveform is drawn from the same
// stream; sigma2 never touches the random stream or the iterate path, so rows
// with matched seeds differ only by the exact noise scaling.

namespace uber
{
    enum class SweepMode
    {
        sigma,      // grid of noise levels, final CRLB per (seed, sigma2, m_count)
        irs_count,  // prefix sizes of the IRS list at the scene's noise level
        trace       // single run, one row per outer iteration
    };

    struct ExperimentSpec
    {
        int schema_version = 1;
        SceneConfig scene;

        std::size_t outer_iterations = 50;  // Gamma_1
        std::size_t inner_iterations = 20;  // Gamma_2
        double penalty = 0.1;               // eta
        arma::uword n_samples = 8;          // N, waveform columns
        std::size_t waveform_steps = 1;

        SweepMode mode = SweepMode::trace;
        std::vector<double> sigma_values;      // sigma mode
        std::vector<arma::uword> m_counts;     // sigma (optional) and irs_count modes

        std::size_t n_seeds = 1;
        std::uint64_t base_seed = 1;

        void validate() const; // throws std::invalid_argument naming the violated invariant
    };

    // Parse and fully validate a spec; defaults are applied here
    // (d = d_m = lambda/2, eta = 0.1, Gamma_1 = 50, Gamma_2 = 20, N = 8).
    ExperimentSpec load_spec(const std::string &path);
    ExperimentSpec parse_spec(const std::string &json_text, const std::string &origin = "<string>");

    // Bundled templates: "fig1" (trace run of the reference three-IRS scene at
    // sigma^2 = 0.1) and "fig1a" (log sigma^2 grid with M in {1, 3}, 20 seeds).
    std::string spec_template(const std::string &name);

    struct ResultRow
    {
        std::uint64_t seed = 0;
        double sigma2 = 0.0;
        arma::uword m_count = 0;
        std::optional<std::size_t> outer_iter; // nullopt renders as "final"
        double fisher = 0.0;
        double crlb = 0.0;
        double wall_time_ms = 0.0;
    };

    std::vector<ResultRow> run_sigma_sweep(const ExperimentSpec &spec);
    std::vector<ResultRow> run_irs_count_sweep(const ExperimentSpec &spec);
    std::vector<ResultRow> run_trace(const ExperimentSpec &spec);
    std::vector<ResultRow> run_experiment(const ExperimentSpec &spec); // dispatch on spec.mode

    // UTF-8, '\n' line endings, shortest round-trip float formatting.
    // zero_timing writes 0 in the wall_time_ms column so that repeated runs
    // produce byte-identical files.
    void write_csv(const std::vector<ResultRow> &rows, const std::string &path, bool zero_timing = false);
    std::string render_csv(const std::vector<ResultRow> &rows, bool zero_timing = false);

    // Bounded worker pool over [0, count); worker count from UBER_WORKERS,
    // default = hardware concurrency. Rethrows the first worker exception.
    std::size_t worker_count();
    void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

    // ---- randomized property suite ------------------------------------------

    struct PropertyResult
    {
        std::string name;
        bool passed = false;
        double worst_error = 0.0;
        double tolerance = 0.0;
        std::string detail;
    };

    // Kronecker/vec/commutation identities and unit-modulus projection laws
    PropertyResult check_algebra_identities(std::size_t instances, std::uint64_t seed);
    // direct == waveform-quadratic == phase-quartic Fisher forms on random scenes;
    // inject_d_sign_flip corrupts one derivative block first (test fixture, must fail)
    PropertyResult check_form_equivalence(std::size_t instances, std::uint64_t seed, double tolerance,
                                          bool inject_d_sign_flip = false);
    // channel_derivative and the no-IRS derivative against central differences
    PropertyResult check_derivative_fd(std::size_t scenes, std::uint64_t seed, double tolerance);
    // non-decreasing PMLI objective traces on random PSD matrices
    PropertyResult check_pmli_monotonicity(std::size_t instances, std::uint64_t seed, arma::uword max_n);
    // PMLI final objective vs the best of `probes` random unimodular probes
    PropertyResult check_pmli_vs_probes(std::size_t problems, std::size_t probes, std::uint64_t seed,
                                        double required_rate);
    // Q1(nu1) nu2 == Q2(nu2) nu1 and the stacked-outer identity
    PropertyResult check_q_identity(std::size_t instances, std::uint64_t seed);
    // quadratic form of the penalty-augmented matrix vs its algebraic expansion
    PropertyResult check_penalty_expansion(std::size_t instances, std::uint64_t seed);
    // bi-quadratic kernel: nu1^H E(nu2) nu1 == g(nu1, nu2), symmetry, g(nu,nu) == F(nu)
    PropertyResult check_bi_quadratic(std::size_t instances, std::uint64_t seed);

    struct ValidationOptions
    {
        bool quick = false;
        bool inject_d_sign_flip = false; // test fixture: force a form-equivalence failure
    };

    struct ValidationReport
    {
        std::vector<PropertyResult> properties;
        bool all_passed() const;
    };

    ValidationReport validate(const ValidationOptions &options = {});
    std::string format_report(const ValidationReport &report);
}

#endif
