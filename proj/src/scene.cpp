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

#include "uber/scene.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uber
{

namespace
{
    bool coincident(const Point2 &a, const Point2 &b)
    {
        return a.x == b.x && a.y == b.y;
    }
}

void SceneConfig::validate() const
{
    if (wavelength <= 0.0)
        throw std::invalid_argument("scene: wavelength must be > 0");
    if (noise_variance <= 0.0)
        throw std::invalid_argument("scene: noise_variance must be > 0");
    if (n_tx < 1 || n_rx < 1)
        throw std::invalid_argument("scene: antenna counts must be >= 1");
    if (n_tx != n_rx)
        throw std::invalid_argument("scene: n_tx must equal n_rx (collocated array with reciprocity)");
    if (radar_spacing <= 0.0)
        throw std::invalid_argument("scene: radar_spacing must be > 0");
    if (irs_list.empty())
        throw std::invalid_argument("scene: irs_list must be non-empty");
    if (coincident(radar_position, target_position))
        throw std::invalid_argument("scene: target coincides with the radar");
    for (std::size_t m = 0; m < irs_list.size(); ++m)
    {
        const auto &irs = irs_list[m];
        if (irs.n_elements < 1)
            throw std::invalid_argument("scene: irs[" + std::to_string(m) + "].n_elements must be >= 1");
        if (irs.spacing <= 0.0)
            throw std::invalid_argument("scene: irs[" + std::to_string(m) + "].spacing must be > 0");
        if (coincident(irs.position, target_position))
            throw std::invalid_argument("scene: target coincides with irs[" + std::to_string(m) + "]");
        if (coincident(irs.position, radar_position))
            throw std::invalid_argument("scene: radar coincides with irs[" + std::to_string(m) + "]");
    }
    if (sampling_interval <= 0.0)
        throw std::invalid_argument("scene: sampling_interval must be > 0");
    if (speed_of_light <= 0.0)
        throw std::invalid_argument("scene: speed_of_light must be > 0");
}

double SceneConfig::radar_target_distance() const
{
    return std::hypot(target_position.x - radar_position.x, target_position.y - radar_position.y);
}

double SceneConfig::round_trip_delay() const
{
    return 2.0 * radar_target_distance() / speed_of_light;
}

std::vector<arma::uword> ChannelSet::irs_sizes() const
{
    std::vector<arma::uword> sizes;
    sizes.reserve(irs.size());
    for (const auto &c : irs)
        sizes.push_back(c.n_elements);
    return sizes;
}

arma::uword ChannelSet::total_elements() const
{
    arma::uword n = 0;
    for (const auto &c : irs)
        n += c.n_elements;
    return n;
}

double angle_from(const Point2 &reference, const Point2 &target)
{
    const double dx = target.x - reference.x;
    const double dy = target.y - reference.y;
    if (dx == 0.0 && dy == 0.0)
        throw std::invalid_argument("angle_from: coincident points");
    return std::atan2(dx, dy);
}

arma::cx_vec steering(arma::uword n, double spacing, double wavelength, double angle)
{
    if (n < 1)
        throw std::invalid_argument("steering: n must be >= 1");
    if (spacing <= 0.0 || wavelength <= 0.0)
        throw std::invalid_argument("steering: spacing and wavelength must be > 0");

    const double phase_step = 2.0 * std::numbers::pi / wavelength * spacing * std::sin(angle);
    arma::cx_vec v(n);
    for (arma::uword k = 0; k < n; ++k)
        v[k] = std::polar(1.0, phase_step * static_cast<double>(k));
    return v;
}

ChannelSet build_channels(const SceneConfig &cfg)
{
    cfg.validate();

    ChannelSet ch;
    ch.n_tx = cfg.n_tx;
    ch.n_rx = cfg.n_rx;
    ch.wavelength = cfg.wavelength;
    ch.doa_los = angle_from(cfg.radar_position, cfg.target_position);
    ch.a_tx_los = steering(cfg.n_tx, cfg.radar_spacing, cfg.wavelength, ch.doa_los);
    ch.a_rx_los = steering(cfg.n_rx, cfg.radar_spacing, cfg.wavelength, ch.doa_los);

    ch.irs.reserve(cfg.irs_list.size());
    for (const auto &irs : cfg.irs_list)
    {
        IrsChannel c;
        c.n_elements = irs.n_elements;
        c.spacing = irs.spacing;
        c.angle_radar_irs = angle_from(cfg.radar_position, irs.position);
        c.angle_irs_target = angle_from(irs.position, cfg.target_position);
        c.doa_offset = c.angle_irs_target - ch.doa_los;
        c.b_radar = steering(irs.n_elements, irs.spacing, cfg.wavelength, c.angle_radar_irs);
        c.b_target = steering(irs.n_elements, irs.spacing, cfg.wavelength, c.angle_irs_target);
        c.a_tx_irs = steering(cfg.n_tx, cfg.radar_spacing, cfg.wavelength, c.angle_radar_irs);
        c.h_radar_irs = c.b_radar * arma::strans(c.a_tx_irs);
        c.h_irs_radar = arma::strans(c.h_radar_irs); // reciprocity, exact by construction
        ch.irs.push_back(std::move(c));
    }
    return ch;
}

double ComplexNormalSampler::uniform01()
{
    // Top 53 bits of the 64-bit state word, exact dyadic rational in [0, 1)
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double ComplexNormalSampler::sample_real()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1], keeps the log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

cx ComplexNormalSampler::sample()
{
    const double g1 = sample_real();
    const double g2 = sample_real();
    return cx(g1, g2) / std::sqrt(2.0);
}

arma::cx_vec ComplexNormalSampler::vector(arma::uword n)
{
    arma::cx_vec v(n);
    for (arma::uword i = 0; i < n; ++i)
        v[i] = sample();
    return v;
}

arma::cx_mat ComplexNormalSampler::matrix(arma::uword n_rows, arma::uword n_cols)
{
    arma::cx_mat m(n_rows, n_cols);
    for (arma::uword c = 0; c < n_cols; ++c)
        for (arma::uword r = 0; r < n_rows; ++r)
            m(r, c) = sample();
    return m;
}

arma::cx_vec draw_reflectivities(arma::uword m_count, std::uint64_t seed)
{
    if (m_count < 1)
        throw std::invalid_argument("draw_reflectivities: m_count must be >= 1");
    ComplexNormalSampler sampler(seed);
    return sampler.vector(m_count);
}

}
