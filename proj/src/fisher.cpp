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

#include "uber/fisher.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uber
{

namespace
{
    // j * (2*pi*d_m/lambda) * cos(theta_ti,m): rate of the steering-phase
    // argument sin(theta_ti,m) under a LoS DoA perturbation (theta_ti,m moves
    // one-to-one with theta, the offsets theta_m are fixed by the geometry).
    cx derivative_scalar(const IrsChannel &irs, double wavelength)
    {
        return cx(0.0, 2.0 * std::numbers::pi * irs.spacing / wavelength * std::cos(irs.angle_irs_target));
    }

    arma::vec index_ramp(arma::uword n)
    {
        return arma::regspace<arma::vec>(0.0, static_cast<double>(n) - 1.0);
    }

    void check_irs_index(const ChannelSet &channels, arma::uword m)
    {
        if (m >= channels.irs.size())
            throw std::invalid_argument("fisher: IRS index " + std::to_string(m) + " out of range");
    }

    void check_profile(const PhaseProfile &nu, const ChannelSet &channels)
    {
        if (nu.sizes() != channels.irs_sizes())
            throw std::invalid_argument("fisher: phase profile block sizes do not match the channel set");
    }

    arma::cx_mat x_tilde(const arma::cx_mat &waveform, arma::uword n_rx)
    {
        return arma::kron(arma::strans(waveform), arma::cx_mat(arma::eye<arma::cx_mat>(n_rx, n_rx)));
    }
}

PhaseProfile::PhaseProfile(arma::cx_vec stacked, std::vector<arma::uword> sizes)
    : stacked_(std::move(stacked)), sizes_(std::move(sizes))
{
    arma::uword total = 0;
    offsets_.reserve(sizes_.size());
    for (arma::uword s : sizes_)
    {
        if (s < 1)
            throw std::invalid_argument("PhaseProfile: block sizes must be >= 1");
        offsets_.push_back(total);
        total += s;
    }
    if (total != stacked_.n_elem)
        throw std::invalid_argument("PhaseProfile: stacked length " + std::to_string(stacked_.n_elem) +
                                    " does not match block-size total " + std::to_string(total));
    if (!is_unimodular(stacked_))
        throw std::invalid_argument("PhaseProfile: entries must be unit-modulus");
}

PhaseProfile PhaseProfile::zero_phase(const std::vector<arma::uword> &sizes)
{
    arma::uword total = 0;
    for (arma::uword s : sizes)
        total += s;
    return PhaseProfile(arma::cx_vec(total, arma::fill::ones), sizes);
}

arma::cx_vec PhaseProfile::irs(arma::uword m) const
{
    return stacked_.subvec(offsets_[m], offsets_[m] + sizes_[m] - 1);
}

arma::cx_mat PhaseProfile::phase_matrix(arma::uword m) const
{
    return arma::diagmat(irs(m));
}

PhaseProfile PhaseProfile::with_stacked(arma::cx_vec stacked) const
{
    return PhaseProfile(std::move(stacked), sizes_);
}

arma::cx_mat composite_channel(const arma::cx_vec &v_m, const ChannelSet &channels, arma::uword m)
{
    check_irs_index(channels, m);
    const IrsChannel &irs = channels.irs[m];
    if (v_m.n_elem != irs.n_elements)
        throw std::invalid_argument("composite_channel: phase vector length mismatch");

    const arma::cx_mat phi = arma::diagmat(v_m);
    const arma::cx_vec &b = irs.b_target;
    return irs.h_irs_radar * phi * (b * arma::strans(b)) * phi * irs.h_radar_irs;
}

arma::cx_mat channel_derivative(const arma::cx_vec &v_m, const ChannelSet &channels, arma::uword m)
{
    check_irs_index(channels, m);
    const IrsChannel &irs = channels.irs[m];
    if (v_m.n_elem != irs.n_elements)
        throw std::invalid_argument("channel_derivative: phase vector length mismatch");

    const arma::cx_mat phi = arma::diagmat(v_m);
    const arma::cx_vec &b = irs.b_target;
    const arma::cx_vec db = arma::conv_to<arma::cx_vec>::from(index_ramp(irs.n_elements)) % b;
    const arma::cx_mat inner = b * arma::strans(db) + db * arma::strans(b);
    return derivative_scalar(irs, channels.wavelength) * (irs.h_irs_radar * phi * inner * phi * irs.h_radar_irs);
}

arma::cx_mat stacked_channel_derivative(const PhaseProfile &nu, const ChannelSet &channels)
{
    check_profile(nu, channels);
    const arma::uword k = channels.n_rx * channels.n_tx;
    arma::cx_mat hdot(k, channels.irs_count());
    for (arma::uword m = 0; m < channels.irs_count(); ++m)
        hdot.col(m) = arma::vectorise(channel_derivative(nu.irs(m), channels, m));
    return hdot;
}

double fisher_direct(const arma::cx_mat &waveform, const PhaseProfile &nu,
                     const arma::cx_vec &alpha, const ChannelSet &channels, double sigma2)
{
    check_profile(nu, channels);
    if (waveform.n_rows != channels.n_tx)
        throw std::invalid_argument("fisher_direct: waveform has " + std::to_string(waveform.n_rows) +
                                    " rows, expected " + std::to_string(channels.n_tx));
    if (alpha.n_elem != channels.irs_count())
        throw std::invalid_argument("fisher_direct: reflectivity count mismatch");
    if (sigma2 <= 0.0)
        throw std::invalid_argument("fisher_direct: sigma2 must be > 0");

    const arma::cx_mat hdot = stacked_channel_derivative(nu, channels);
    const arma::cx_vec y = x_tilde(waveform, channels.n_rx) * (hdot * alpha);
    return (2.0 / sigma2) * std::real(arma::cdot(y, y));
}

arma::cx_mat waveform_gram(const PhaseProfile &nu, const arma::cx_vec &alpha,
                           const ChannelSet &channels, arma::uword n_samples)
{
    check_profile(nu, channels);
    if (alpha.n_elem != channels.irs_count())
        throw std::invalid_argument("waveform_gram: reflectivity count mismatch");

    const arma::cx_mat hdot = stacked_channel_derivative(nu, channels);
    const arma::cx_mat b = arma::reshape(arma::cx_vec(hdot * alpha), channels.n_rx, channels.n_tx);
    const arma::cx_mat ib = arma::kron(arma::cx_mat(arma::eye<arma::cx_mat>(n_samples, n_samples)), b);
    return ib.t() * ib;
}

arma::cx_mat waveform_gram(const PhaseProfile &nu, const arma::cx_vec &alpha,
                           const ChannelSet &channels, double sigma2, arma::uword n_samples)
{
    if (sigma2 <= 0.0)
        throw std::invalid_argument("waveform_gram: sigma2 must be > 0");
    return (2.0 / sigma2) * waveform_gram(nu, alpha, channels, n_samples);
}

ChannelOperators build_d(const ChannelSet &channels)
{
    if (channels.n_rx != channels.n_tx)
        throw std::invalid_argument("build_d: requires N_r = N_t (reciprocity), got " +
                                    std::to_string(channels.n_rx) + " and " + std::to_string(channels.n_tx));

    ChannelOperators ops;
    ops.n_tx = channels.n_tx;
    ops.n_rx = channels.n_rx;
    ops.irs_sizes = channels.irs_sizes();
    ops.d_blocks.reserve(channels.irs.size());

    for (const auto &irs : channels.irs)
    {
        const arma::cx_mat c_t = arma::strans(arma::cx_mat(arma::diagmat(irs.b_target) * irs.h_radar_irs));
        const arma::cx_mat ramp = arma::conv_to<arma::cx_mat>::from(arma::mat(arma::diagmat(index_ramp(irs.n_elements))));
        arma::cx_mat d_m = arma::kron(arma::cx_mat(c_t * ramp), c_t) + arma::kron(c_t, arma::cx_mat(c_t * ramp));
        d_m *= derivative_scalar(irs, channels.wavelength);
        ops.d_blocks.push_back(std::move(d_m));
    }
    ops.d = block_diag(ops.d_blocks);
    ops.commutation = commutation_permutation(channels.n_rx * channels.n_tx, channels.irs_count());
    return ops;
}

arma::cx_mat build_t(const ChannelOperators &ops, const arma::cx_mat &waveform,
                     const arma::cx_vec &alpha)
{
    const arma::uword m_count = static_cast<arma::uword>(ops.irs_sizes.size());
    if (alpha.n_elem != m_count)
        throw std::invalid_argument("build_t: reflectivity count mismatch");
    if (waveform.n_rows != ops.n_tx)
        throw std::invalid_argument("build_t: waveform has " + std::to_string(waveform.n_rows) +
                                    " rows, expected " + std::to_string(ops.n_tx));

    const arma::cx_mat xt = x_tilde(waveform, ops.n_rx);
    const arma::cx_mat z = arma::kron(arma::cx_mat(arma::strans(xt) * arma::conj(xt)),
                                      arma::cx_mat(alpha * alpha.t()));

    // P^H Z* P for the commutation matrix P is a symmetric index permutation
    const arma::cx_mat z_conj = arma::conj(z);
    const arma::cx_mat w = z_conj.submat(ops.commutation, ops.commutation);
    return ops.d.t() * w * ops.d;
}

arma::cx_mat build_t(const ChannelOperators &ops, const arma::cx_mat &waveform,
                     const arma::cx_vec &alpha, double sigma2)
{
    if (sigma2 <= 0.0)
        throw std::invalid_argument("build_t: sigma2 must be > 0");
    return (2.0 / sigma2) * build_t(ops, waveform, alpha);
}

arma::cx_mat build_t(const ChannelSet &channels, const arma::cx_mat &waveform,
                     const arma::cx_vec &alpha, double sigma2)
{
    return build_t(build_d(channels), waveform, alpha, sigma2);
}

arma::cx_mat q1(const PhaseProfile &nu)
{
    std::vector<arma::cx_mat> blocks;
    blocks.reserve(nu.irs_count());
    for (arma::uword m = 0; m < nu.irs_count(); ++m)
    {
        const arma::uword n_m = nu.size_of(m);
        blocks.push_back(arma::kron(arma::cx_mat(nu.irs(m)),
                                    arma::cx_mat(arma::eye<arma::cx_mat>(n_m, n_m))));
    }
    return block_diag(blocks);
}

arma::cx_mat q2(const PhaseProfile &nu)
{
    std::vector<arma::cx_mat> blocks;
    blocks.reserve(nu.irs_count());
    for (arma::uword m = 0; m < nu.irs_count(); ++m)
    {
        const arma::uword n_m = nu.size_of(m);
        blocks.push_back(arma::kron(arma::cx_mat(arma::eye<arma::cx_mat>(n_m, n_m)),
                                    arma::cx_mat(nu.irs(m))));
    }
    return block_diag(blocks);
}

arma::cx_vec stacked_outer(const PhaseProfile &nu)
{
    arma::uword total = 0;
    for (arma::uword m = 0; m < nu.irs_count(); ++m)
        total += nu.size_of(m) * nu.size_of(m);

    arma::cx_vec z(total);
    arma::uword off = 0;
    for (arma::uword m = 0; m < nu.irs_count(); ++m)
    {
        const arma::cx_vec v = nu.irs(m);
        z.subvec(off, off + v.n_elem * v.n_elem - 1) = arma::kron(v, v); // vec(v v^T)
        off += v.n_elem * v.n_elem;
    }
    return z;
}

namespace
{
    arma::uword squared_total(const PhaseProfile &nu)
    {
        arma::uword total = 0;
        for (arma::uword m = 0; m < nu.irs_count(); ++m)
            total += nu.size_of(m) * nu.size_of(m);
        return total;
    }
}

// Column (m, j) of Q1 holds v_m[a] at row a*N_m + j of block m.
arma::cx_mat apply_q1_right(const arma::cx_mat &a, const PhaseProfile &nu)
{
    if (a.n_cols != squared_total(nu))
        throw std::invalid_argument("apply_q1_right: column count mismatch");

    arma::cx_mat out(a.n_rows, nu.total(), arma::fill::zeros);
    arma::uword sq_off = 0;
    for (arma::uword m = 0; m < nu.irs_count(); ++m)
    {
        const arma::cx_vec v = nu.irs(m);
        const arma::uword n_m = v.n_elem;
        for (arma::uword j = 0; j < n_m; ++j)
        {
            arma::cx_vec col(a.n_rows, arma::fill::zeros);
            for (arma::uword idx = 0; idx < n_m; ++idx)
                col += v[idx] * a.col(sq_off + idx * n_m + j);
            out.col(nu.offset_of(m) + j) = col;
        }
        sq_off += n_m * n_m;
    }
    return out;
}

// Column (m, j) of Q2 is v_m placed at rows j*N_m ... j*N_m + N_m - 1 of block m.
arma::cx_mat apply_q2_right(const arma::cx_mat &a, const PhaseProfile &nu)
{
    if (a.n_cols != squared_total(nu))
        throw std::invalid_argument("apply_q2_right: column count mismatch");

    arma::cx_mat out(a.n_rows, nu.total(), arma::fill::zeros);
    arma::uword sq_off = 0;
    for (arma::uword m = 0; m < nu.irs_count(); ++m)
    {
        const arma::cx_vec v = nu.irs(m);
        const arma::uword n_m = v.n_elem;
        for (arma::uword j = 0; j < n_m; ++j)
            out.col(nu.offset_of(m) + j) = a.cols(sq_off + j * n_m, sq_off + j * n_m + n_m - 1) * v;
        sq_off += n_m * n_m;
    }
    return out;
}

arma::cx_mat apply_q1_conj_left(const arma::cx_mat &a, const PhaseProfile &nu)
{
    if (a.n_rows != squared_total(nu))
        throw std::invalid_argument("apply_q1_conj_left: row count mismatch");

    arma::cx_mat out(nu.total(), a.n_cols, arma::fill::zeros);
    arma::uword sq_off = 0;
    for (arma::uword m = 0; m < nu.irs_count(); ++m)
    {
        const arma::cx_vec v = nu.irs(m);
        const arma::uword n_m = v.n_elem;
        for (arma::uword j = 0; j < n_m; ++j)
        {
            arma::cx_mat row(1, a.n_cols, arma::fill::zeros);
            for (arma::uword idx = 0; idx < n_m; ++idx)
                row += std::conj(v[idx]) * a.row(sq_off + idx * n_m + j);
            out.row(nu.offset_of(m) + j) = row;
        }
        sq_off += n_m * n_m;
    }
    return out;
}

arma::cx_mat apply_q2_conj_left(const arma::cx_mat &a, const PhaseProfile &nu)
{
    if (a.n_rows != squared_total(nu))
        throw std::invalid_argument("apply_q2_conj_left: row count mismatch");

    arma::cx_mat out(nu.total(), a.n_cols, arma::fill::zeros);
    arma::uword sq_off = 0;
    for (arma::uword m = 0; m < nu.irs_count(); ++m)
    {
        const arma::cx_vec v = nu.irs(m);
        const arma::uword n_m = v.n_elem;
        for (arma::uword j = 0; j < n_m; ++j)
            out.row(nu.offset_of(m) + j) =
                arma::strans(arma::conv_to<arma::cx_colvec>::from(arma::conj(v))) *
                a.rows(sq_off + j * n_m, sq_off + j * n_m + n_m - 1);
        sq_off += n_m * n_m;
    }
    return out;
}

double fisher_quartic(const PhaseProfile &nu, const arma::cx_mat &t)
{
    if (t.n_rows != squared_total(nu) || !t.is_square())
        throw std::invalid_argument("fisher_quartic: T size does not match the profile");

    const arma::cx_vec z = stacked_outer(nu);
    const arma::cx_vec tz = t * z;
    const cx value = arma::cdot(z, tz);

    // Imaginary residue above tolerance signals a broken (non-Hermitian) T.
    const double scale = std::max(std::abs(value), 1e-12 * arma::norm(tz) * arma::norm(z));
    if (std::abs(value.imag()) > 1e-9 * scale)
        throw std::runtime_error("fisher_quartic: imaginary residue " + std::to_string(value.imag()) +
                                 " exceeds tolerance, T is not Hermitian");
    return value.real();
}

arma::cx_mat e_matrix(const PhaseProfile &nu_fixed, const arma::cx_mat &t)
{
    if (t.n_rows != squared_total(nu_fixed) || !t.is_square())
        throw std::invalid_argument("e_matrix: T size does not match the profile");

    const arma::cx_mat g1 = apply_q1_conj_left(apply_q1_right(t, nu_fixed), nu_fixed);
    const arma::cx_mat g2 = apply_q2_conj_left(apply_q2_right(t, nu_fixed), nu_fixed);
    return 0.5 * (g1 + g2);
}

arma::cx_mat los_channel_derivative(double doa, const SceneConfig &cfg)
{
    if (cfg.n_rx != cfg.n_tx)
        throw std::invalid_argument("los_channel_derivative: requires N_r = N_t");

    const arma::cx_vec a_r = steering(cfg.n_rx, cfg.radar_spacing, cfg.wavelength, doa);
    const arma::cx_vec a_t = steering(cfg.n_tx, cfg.radar_spacing, cfg.wavelength, doa);
    const arma::cx_vec ramp = arma::conv_to<arma::cx_vec>::from(index_ramp(cfg.n_rx));

    const cx rate = cx(0.0, 2.0 * std::numbers::pi * cfg.radar_spacing / cfg.wavelength * std::cos(doa));
    return rate * ((ramp % a_r) * arma::strans(a_t) + a_r * arma::strans(ramp % a_t));
}

double fisher_no_irs(const arma::cx_mat &waveform, double doa, cx alpha_rtr, const SceneConfig &cfg)
{
    if (waveform.n_rows != cfg.n_tx)
        throw std::invalid_argument("fisher_no_irs: waveform row count mismatch");

    const arma::cx_mat hdot = los_channel_derivative(doa, cfg);
    const arma::cx_vec y = x_tilde(waveform, cfg.n_rx) * arma::vectorise(hdot);
    return (2.0 * std::norm(alpha_rtr) / cfg.noise_variance) * std::real(arma::cdot(y, y));
}

double crlb(double fisher)
{
    if (!(fisher > 0.0))
        throw std::domain_error("crlb: Fisher information " + std::to_string(fisher) +
                                " is not positive (singular information)");
    return 1.0 / fisher;
}

}
