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

#include "uber/uber.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "uber/uqp.hpp"

namespace uber
{

namespace
{
    // g(nu1, nu2) = nu1^H E(nu2) nu1, real for Hermitian E
    double surrogate_value(const PhaseProfile &nu1, const arma::cx_mat &e_of_nu2)
    {
        return std::real(arma::cdot(nu1.stacked(), arma::cx_vec(e_of_nu2 * nu1.stacked())));
    }

    // One coupled phase update: project the first L entries of
    // augmented_matrix(E(nu_fixed), nu_fixed) * [nu; 1].
    arma::cx_vec phase_update(const arma::cx_mat &t, const PhaseProfile &nu_fixed,
                              const arma::cx_vec &nu, double penalty)
    {
        const arma::cx_mat e = e_matrix(nu_fixed, t);
        const arma::cx_mat augmented = augmented_matrix(e, nu_fixed.stacked(), penalty);

        arma::cx_vec bar(nu.n_elem + 1);
        bar.head(nu.n_elem) = nu;
        bar[nu.n_elem] = 1.0;

        const arma::cx_vec product = augmented * bar;
        return unit_modulus_project(arma::cx_vec(product.head(nu.n_elem)));
    }

    double waveform_objective(const arma::cx_mat &gram, const arma::cx_vec &s, double sigma2)
    {
        return (2.0 / sigma2) * std::real(arma::cdot(s, arma::cx_vec(gram * s)));
    }
}

UberConfig default_uber_config(const ChannelSet &channels, arma::uword n_samples, std::uint64_t seed)
{
    UberConfig cfg;
    const arma::uword total = channels.total_elements();
    cfg.initial_phase_1 = arma::cx_vec(total, arma::fill::ones);
    cfg.initial_phase_2 = arma::cx_vec(total, arma::fill::ones);

    // The reflectivity draw consumes the first M samples of the seed's stream;
    // the waveform starts right after it, so a (seed, scene) pair pins both.
    ComplexNormalSampler sampler(seed);
    sampler.vector(channels.irs_count());
    cfg.initial_waveform = unit_modulus_project(sampler.matrix(channels.n_tx, n_samples));
    return cfg;
}

arma::cx_mat augmented_matrix(const arma::cx_mat &e, const arma::cx_vec &nu_other, double penalty)
{
    if (!e.is_square() || e.n_rows != nu_other.n_elem)
        throw std::invalid_argument("augmented_matrix: E must be square with the profile's size");
    const double scale = std::max(1.0, arma::norm(e, "fro"));
    if (arma::norm(e - e.t(), "fro") > 1e-10 * scale)
        throw std::invalid_argument("augmented_matrix: E is not Hermitian");
    if (penalty < 0.0)
        throw std::invalid_argument("augmented_matrix: penalty must be >= 0");

    const arma::uword total = e.n_rows;
    const double lambda_max = hermitian_extreme_eigs(e).second;

    arma::cx_mat e_tilde = -e;
    e_tilde.diag() += lambda_max;

    arma::cx_mat curly(total + 1, total + 1);
    curly.submat(0, 0, total - 1, total - 1) = e_tilde;
    curly.submat(0, total, total - 1, total) = -penalty * nu_other;
    curly.submat(total, 0, total, total - 1) = -penalty * nu_other.t();
    curly(total, total) = 2.0 * penalty * static_cast<double>(total);

    const double lambda_hat = hermitian_extreme_eigs(curly).second;
    arma::cx_mat augmented = -curly;
    augmented.diag() += lambda_hat;
    return augmented;
}

InnerResult beamformer_inner(const arma::cx_mat &t, const PhaseProfile &nu1, const PhaseProfile &nu2,
                             double penalty, std::size_t steps)
{
    if (nu1.sizes() != nu2.sizes())
        throw std::invalid_argument("beamformer_inner: profiles have mismatched block sizes");

    InnerResult result{nu1, nu2, {}};
    result.trace.reserve(steps + 1);
    result.trace.push_back(surrogate_value(result.nu1, e_matrix(result.nu2, t)));

    for (std::size_t t2 = 0; t2 < steps; ++t2)
    {
        result.nu1 = result.nu1.with_stacked(phase_update(t, result.nu2, result.nu1.stacked(), penalty));
        result.nu2 = result.nu2.with_stacked(phase_update(t, result.nu1, result.nu2.stacked(), penalty));
        result.trace.push_back(surrogate_value(result.nu1, e_matrix(result.nu2, t)));
    }
    return result;
}

const PhaseProfile &select_profile(const PhaseProfile &nu1, const PhaseProfile &nu2, const arma::cx_mat &t)
{
    return fisher_quartic(nu2, t) > fisher_quartic(nu1, t) ? nu2 : nu1;
}

UberResult run_uber(const SceneConfig &scene, const ChannelSet &channels,
                    const arma::cx_vec &alpha, const UberConfig &cfg)
{
    const auto sizes = channels.irs_sizes();
    if (alpha.n_elem != channels.irs_count())
        throw std::invalid_argument("run_uber: reflectivity count does not match the channel set");
    if (cfg.initial_waveform.n_rows != channels.n_tx || cfg.initial_waveform.n_cols < 1)
        throw std::invalid_argument("run_uber: initial waveform must be N_t x N with N >= 1");
    if (!is_unimodular(cfg.initial_waveform))
        throw std::invalid_argument("run_uber: initial waveform must be unit-modulus");
    if (cfg.waveform_steps < 1)
        throw std::invalid_argument("run_uber: waveform_steps must be >= 1");
    if (cfg.penalty < 0.0)
        throw std::invalid_argument("run_uber: penalty must be >= 0");

    const double sigma2 = scene.noise_variance;
    const arma::uword n_samples = cfg.initial_waveform.n_cols;
    const ChannelOperators ops = build_d(channels);

    PhaseProfile nu1(cfg.initial_phase_1, sizes);
    PhaseProfile nu2(cfg.initial_phase_2, sizes);
    arma::cx_mat waveform = cfg.initial_waveform;

    // All operators below are noise-free; sigma^2 enters only when a Fisher
    // value is reported.
    arma::cx_mat t_op = build_t(ops, waveform, alpha);
    PhaseProfile nu = select_profile(nu1, nu2, t_op);

    UberResult result{waveform, nu.stacked(), {}, {}, {}, {}, 0};

    {
        const arma::cx_mat gram = waveform_gram(nu, alpha, channels, n_samples);
        const double f0 = waveform_objective(gram, arma::vectorise(waveform), sigma2);
        if (!(f0 > 0.0))
            throw std::runtime_error("run_uber: zero Fisher information at initialization (degenerate scene)");
        result.fisher_trace.push_back(f0);
        result.crlb_trace.push_back(1.0 / f0);
    }

    std::size_t stalled = 0;
    for (std::size_t t1 = 0; t1 < cfg.outer_iterations; ++t1)
    {
        t_op = build_t(ops, waveform, alpha);

        InnerResult inner = beamformer_inner(t_op, nu1, nu2, cfg.penalty, cfg.inner_iterations);
        nu1 = std::move(inner.nu1);
        nu2 = std::move(inner.nu2);

        // Keep the incumbent profile when neither refined copy beats it; the
        // recorded objective then never decreases across the phase step, and
        // the PMLI waveform step is monotone on its own.
        const PhaseProfile &candidate = select_profile(nu1, nu2, t_op);
        if (fisher_quartic(candidate, t_op) >= fisher_quartic(nu, t_op))
            nu = candidate;

        const arma::cx_mat gram = waveform_gram(nu, alpha, channels, n_samples);
        arma::cx_vec s = arma::vectorise(waveform);
        result.pre_waveform_fisher.push_back(waveform_objective(gram, s, sigma2));

        // The Gram operator is PSD by construction, no loading needed
        for (std::size_t k = 0; k < cfg.waveform_steps; ++k)
            s = pmli_step(gram, s);
        waveform = arma::reshape(s, channels.n_tx, n_samples);

        const double fisher = waveform_objective(gram, s, sigma2);
        result.fisher_trace.push_back(fisher);
        result.crlb_trace.push_back(1.0 / fisher);
        result.inner_traces.push_back(std::move(inner.trace));
        ++result.outer_iterations_used;

        if (cfg.outer_stall_tolerance > 0.0)
        {
            const std::size_t n = result.crlb_trace.size();
            const double gain = result.crlb_trace[n - 2] - result.crlb_trace[n - 1];
            stalled = (gain < cfg.outer_stall_tolerance * std::abs(result.crlb_trace[n - 2])) ? stalled + 1 : 0;
            if (stalled >= 3)
                break;
        }
    }

    result.waveform = std::move(waveform);
    result.phases = nu.stacked();
    return result;
}

}
