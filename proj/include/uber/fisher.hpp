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

#ifndef uber_fisher_H
#define uber_fisher_H

#include <armadillo>
#include <vector>

#include "uber/linalg.hpp"
#include "uber/scene.hpp"

// Fisher information of the line-of-sight DoA for the multi-IRS channel, in
// three algebraically equivalent forms:
//
//   direct     F = (2/sigma^2) * || Xt * Hdot * alpha ||^2
//              with Xt = X^T (x) I_Nr and Hdot = [vec(Hdot_1), ..., vec(Hdot_M)],
//   quadratic  F(X)  = vec(X)^H G vec(X),  G = (I_N (x) B)^H (I_N (x) B),
//              B = (sqrt(2)/sigma) unvec(Hdot * alpha)  — quadratic in the waveform,
//   quartic    F(nu) = nu^H Q1(nu)^H T Q1(nu) nu,  T = D^H P^H Z* P D
//              — quartic in the stacked phase shifts.
//
// The unscaled builders (no sigma^2 argument) drop the 2/sigma^2 prefactor.
// They are what the optimizer consumes: the prefactor never changes an argmax
// under unit-modulus projection, and keeping the iterate path free of sigma^2
// makes optimized designs exactly noise-level invariant.

namespace uber
{
    // Stacked unit-modulus phase shifts nu = [v_1; v_2; ...; v_M] with the
    // per-IRS block sizes. Entries are validated to be unit-modulus (1e-12).
    class PhaseProfile
    {
    public:
        PhaseProfile(arma::cx_vec stacked, std::vector<arma::uword> sizes);

        // All-ones profile (every element imposes zero phase shift)
        static PhaseProfile zero_phase(const std::vector<arma::uword> &sizes);

        const arma::cx_vec &stacked() const { return stacked_; }
        const std::vector<arma::uword> &sizes() const { return sizes_; }
        arma::uword irs_count() const { return static_cast<arma::uword>(sizes_.size()); }
        arma::uword total() const { return stacked_.n_elem; }
        arma::uword size_of(arma::uword m) const { return sizes_[m]; }
        arma::uword offset_of(arma::uword m) const { return offsets_[m]; }

        arma::cx_vec irs(arma::uword m) const;          // v_m
        arma::cx_mat phase_matrix(arma::uword m) const; // Diag(v_m)

        // Same profile with a new stacked vector (sizes preserved)
        PhaseProfile with_stacked(arma::cx_vec stacked) const;

    private:
        arma::cx_vec stacked_;
        std::vector<arma::uword> sizes_;
        std::vector<arma::uword> offsets_;
    };

    // Composite two-hop channel through IRS m,
    // H_m = H_ir,m Diag(v_m) b_m(theta_ti,m) b_m(theta_ti,m)^T Diag(v_m) H_ri,m
    arma::cx_mat composite_channel(const arma::cx_vec &v_m, const ChannelSet &channels, arma::uword m);

    // Derivative of H_m with respect to the LoS DoA (theta_ti,m = theta + theta_m,
    // so d/dtheta acts through sin(theta_ti,m) with rate cos(theta_ti,m))
    arma::cx_mat channel_derivative(const arma::cx_vec &v_m, const ChannelSet &channels, arma::uword m);

    // Hdot = [vec(Hdot_1), ..., vec(Hdot_M)], size NrNt x M
    arma::cx_mat stacked_channel_derivative(const PhaseProfile &nu, const ChannelSet &channels);

    // Direct Fisher information of the LoS DoA (always >= 0)
    double fisher_direct(const arma::cx_mat &waveform, const PhaseProfile &nu,
                         const arma::cx_vec &alpha, const ChannelSet &channels, double sigma2);

    // Gram matrix of the waveform-quadratic form, size NtN x NtN, PSD by
    // construction. The unscaled overload drops the 2/sigma^2 prefactor.
    arma::cx_mat waveform_gram(const PhaseProfile &nu, const arma::cx_vec &alpha,
                               const ChannelSet &channels, arma::uword n_samples);
    arma::cx_mat waveform_gram(const PhaseProfile &nu, const arma::cx_vec &alpha,
                               const ChannelSet &channels, double sigma2, arma::uword n_samples);

    // Phase-independent factors of the quartic form:
    //   D_m = b_m * [ (C_m^T diag(d) (x) C_m^T) + (C_m^T (x) C_m^T diag(d)) ]
    // with C_m = Diag(b_m(theta_ti,m)) H_ri,m and the derivative scalar b_m
    // folded in so that vec(Hdot_m) = D_m vec(v_m v_m^T) holds exactly.
    // Requires N_r = N_t (reciprocity), throws otherwise.
    struct ChannelOperators
    {
        std::vector<arma::cx_mat> d_blocks;     // D_m, NrNt x N_m^2
        arma::cx_mat d;                         // blockdiag(D_1, ..., D_M)
        arma::uvec commutation;                 // row map of P = commutation_matrix(NrNt, M)
        std::vector<arma::uword> irs_sizes;     // N_m per IRS
        arma::uword n_tx = 0;
        arma::uword n_rx = 0;
    };
    ChannelOperators build_d(const ChannelSet &channels);

    // T = D^H P^H Z* P D with Z = (Xt^T Xt* (x) alpha alpha^H); Hermitian PSD.
    // The sigma2 overload scales Z by 2/sigma^2 so that the quartic form equals
    // fisher_direct; the unscaled overload is the optimizer surrogate.
    arma::cx_mat build_t(const ChannelOperators &ops, const arma::cx_mat &waveform,
                         const arma::cx_vec &alpha);
    arma::cx_mat build_t(const ChannelOperators &ops, const arma::cx_mat &waveform,
                         const arma::cx_vec &alpha, double sigma2);
    arma::cx_mat build_t(const ChannelSet &channels, const arma::cx_mat &waveform,
                         const arma::cx_vec &alpha, double sigma2);

    // Dense selection matrices of the quartic-to-quadratic reductions:
    //   Q1(nu) = blockdiag(v_m (x) I_{N_m}),  Q2(nu) = blockdiag(I_{N_m} (x) v_m),
    // satisfying Q1(nu) nu = Q2(nu) nu = [vec(v_m v_m^T)]_m stacked.
    arma::cx_mat q1(const PhaseProfile &nu);
    arma::cx_mat q2(const PhaseProfile &nu);

    // Stacked [vec(v_m v_m^T)]_m = Q1(nu) nu, length sum(N_m^2)
    arma::cx_vec stacked_outer(const PhaseProfile &nu);

    // Structural products with Q1/Q2 that never form the dense matrices; used
    // by the inner-loop operators. a must have sum(N_m^2) columns resp. rows.
    arma::cx_mat apply_q1_right(const arma::cx_mat &a, const PhaseProfile &nu);      // a * Q1(nu)
    arma::cx_mat apply_q2_right(const arma::cx_mat &a, const PhaseProfile &nu);      // a * Q2(nu)
    arma::cx_mat apply_q1_conj_left(const arma::cx_mat &a, const PhaseProfile &nu);  // Q1(nu)^H * a
    arma::cx_mat apply_q2_conj_left(const arma::cx_mat &a, const PhaseProfile &nu);  // Q2(nu)^H * a

    // Quartic Fisher form nu^H Q1(nu)^H T Q1(nu) nu. The result must be real;
    // an imaginary residue above 1e-9 relative raises (broken T), the checked
    // real part is returned.
    double fisher_quartic(const PhaseProfile &nu, const arma::cx_mat &t);

    // Bi-quadratic kernel E(nu_fixed) = (G1(nu_fixed) + G2(nu_fixed))/2 with
    // G_i(nu) = Q_i(nu)^H T Q_i(nu); satisfies nu1^H E(nu2) nu1 = g(nu1, nu2)
    // for the symmetric bi-quadratic surrogate g.
    arma::cx_mat e_matrix(const PhaseProfile &nu_fixed, const arma::cx_mat &t);

    // d/dtheta of the LoS channel a_r(theta) a_t(theta)^T (requires N_r = N_t)
    arma::cx_mat los_channel_derivative(double doa, const SceneConfig &cfg);

    // LoS-only Fisher information with no IRS present,
    // F = (2 |alpha_rtr|^2 / sigma^2) ||Xt vec(Hdot_rtr)||^2
    double fisher_no_irs(const arma::cx_mat &waveform, double doa, cx alpha_rtr, const SceneConfig &cfg);

    // CRLB of an unbiased DoA estimator; throws std::domain_error for F <= 0
    double crlb(double fisher);
}

#endif
