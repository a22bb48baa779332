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

#ifndef uber_scene_H
#define uber_scene_H

#include <armadillo>
#include <cstdint>
#include <vector>

#include "uber/linalg.hpp"

// 2-D scene description and the channel model derived from it.
//
// Geometry conventions (chosen once, used everywhere):
//   - every uniform linear array (radar and each IRS) lies along the x-axis,
//   - angles are measured from array broadside (+y axis): theta = atan2(dx, dy),
//   - an IRS "position" is the location of its first element; the remaining
//     elements extend along +x at the configured spacing,
//   - radar and IRS platforms are treated as points for angle computation
//     (far-field, one angle per link).

namespace uber
{
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;
    };

    struct IrsConfig
    {
        Point2 position;                 // first element of the ULA [m]
        arma::uword n_elements = 1;      // N_m
        double spacing = 0.0;            // d_m [m]; loaders default this to lambda/2
    };

    struct SceneConfig
    {
        Point2 radar_position;           // [m]
        Point2 target_position;          // [m]
        double wavelength = 0.0;         // lambda [m]
        arma::uword n_tx = 1;            // N_t
        arma::uword n_rx = 1;            // N_r (must equal N_t, reciprocity)
        double radar_spacing = 0.0;      // d [m]; loaders default this to lambda/2
        std::vector<IrsConfig> irs_list;
        double noise_variance = 1.0;     // sigma^2
        std::uint64_t seed = 0;

        // Metadata only: documents the round-trip delay tau_0 = 2*d_tr/c of the
        // range cell under study. No delay enters any computation (slow-time
        // samples are aligned on-grid).
        double sampling_interval = 1e-6; // T_s [s]
        double speed_of_light = 299792458.0;

        // Throws std::invalid_argument naming the violated invariant.
        void validate() const;

        double radar_target_distance() const; // d_tr [m]
        double round_trip_delay() const;      // tau_0 [s]
    };

    // Channels and derived angles for one IRS platform
    struct IrsChannel
    {
        arma::uword n_elements = 1;      // N_m
        double spacing = 0.0;            // d_m [m]
        double angle_radar_irs = 0.0;    // theta_ri,m, radar -> IRS_m [rad]
        double angle_irs_target = 0.0;   // theta_ti,m, IRS_m -> target [rad]
        double doa_offset = 0.0;         // theta_m = theta_ti,m - theta_tr [rad], known constant
        arma::cx_vec b_radar;            // b_m(theta_ri,m)
        arma::cx_vec b_target;           // b_m(theta_ti,m)
        arma::cx_vec a_tx_irs;           // a_t(theta_ri,m)
        arma::cx_mat h_radar_irs;        // H_ri,m = b_m(theta_ri,m) a_t^T(theta_ri,m), N_m x N_t
        arma::cx_mat h_irs_radar;        // H_ir,m = H_ri,m^T (reciprocity, exact), N_r x N_m
    };

    // Immutable after construction; shareable read-only across workers.
    struct ChannelSet
    {
        arma::uword n_tx = 1;
        arma::uword n_rx = 1;
        double wavelength = 0.0;
        double doa_los = 0.0;            // theta_tr [rad]
        arma::cx_vec a_tx_los;           // a_t(theta_tr)
        arma::cx_vec a_rx_los;           // a_r(theta_tr)
        std::vector<IrsChannel> irs;

        arma::uword irs_count() const { return static_cast<arma::uword>(irs.size()); }
        std::vector<arma::uword> irs_sizes() const;
        arma::uword total_elements() const; // sum of N_m over all IRS
    };

    // Angle of `target` as seen from `reference`, measured from the +y axis:
    // atan2(dx, dy) in (-pi, pi]. Throws on coincident points.
    double angle_from(const Point2 &reference, const Point2 &target);

    // ULA steering vector, entry k = exp(j * (2*pi/lambda) * spacing * k * sin(angle))
    arma::cx_vec steering(arma::uword n, double spacing, double wavelength, double angle);

    ChannelSet build_channels(const SceneConfig &cfg);

    // Deterministic standard-normal / circular-Gaussian sampler.
    // Algorithm (pinned for reproducibility): std::mt19937_64 drives uniforms
    // via the top-53-bit trick, converted with the Box-Muller transform.
    class ComplexNormalSampler
    {
    public:
        explicit ComplexNormalSampler(std::uint64_t seed) : rng_(seed) {}

        double sample_real();            // N(0, 1)
        cx sample();                     // CN(0, 1): (g1 + j*g2)/sqrt(2)
        arma::cx_vec vector(arma::uword n);
        arma::cx_mat matrix(arma::uword n_rows, arma::uword n_cols); // column-major fill

    private:
        double uniform01(); // [0, 1)
        std::mt19937_64 rng_;
        bool has_spare_ = false;
        double spare_ = 0.0;
    };

    // Swerling-0 complex reflectivities, alpha_k ~ CN(0,1), deterministic per seed
    arma::cx_vec draw_reflectivities(arma::uword m_count, std::uint64_t seed);
}

#endif
