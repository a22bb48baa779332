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

#ifndef uber_test_helpers_H
#define uber_test_helpers_H

#include <armadillo>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "uber/scene.hpp"

// Test-only utilities: deterministic input generators and oracles that are
// independent of the library paths they are used to check.

namespace testutil
{
    using uber::cx;

    inline double uniform01(std::mt19937_64 &rng)
    {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    inline double uniform(std::mt19937_64 &rng, double lo, double hi)
    {
        return lo + (hi - lo) * uniform01(rng);
    }

    inline arma::uword uniform_index(std::mt19937_64 &rng, arma::uword lo, arma::uword hi)
    {
        return lo + static_cast<arma::uword>(rng() % (hi - lo + 1));
    }

    inline arma::cx_vec random_unimodular(std::mt19937_64 &rng, arma::uword n)
    {
        arma::cx_vec v(n);
        for (arma::uword i = 0; i < n; ++i)
            v[i] = std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi));
        return v;
    }

    inline arma::cx_mat random_unimodular_matrix(std::mt19937_64 &rng, arma::uword n_rows, arma::uword n_cols)
    {
        return arma::reshape(arma::cx_mat(random_unimodular(rng, n_rows * n_cols)), n_rows, n_cols);
    }

    inline arma::cx_mat random_complex(std::mt19937_64 &rng, arma::uword n_rows, arma::uword n_cols)
    {
        uber::ComplexNormalSampler sampler(rng());
        return sampler.matrix(n_rows, n_cols);
    }

    inline arma::cx_vec random_complex_vec(std::mt19937_64 &rng, arma::uword n)
    {
        uber::ComplexNormalSampler sampler(rng());
        return sampler.vector(n);
    }

    inline arma::cx_mat random_hermitian(std::mt19937_64 &rng, arma::uword n)
    {
        const arma::cx_mat a = random_complex(rng, n, n);
        return 0.5 * (a + a.t());
    }

    inline arma::cx_mat random_psd(std::mt19937_64 &rng, arma::uword n)
    {
        const arma::cx_mat r = random_complex(rng, n, n);
        return r * r.t();
    }

    // The three-IRS reference scene: radar at the origin, target at
    // [5000, 5000] m, 8-element arrays, half-wavelength spacing.
    inline uber::SceneConfig reference_scene()
    {
        uber::SceneConfig s;
        s.radar_position = {0.0, 0.0};
        s.target_position = {5000.0, 5000.0};
        s.wavelength = 0.1;
        s.radar_spacing = 0.05;
        s.n_tx = s.n_rx = 8;
        s.noise_variance = 0.1;
        for (const auto &pos : {uber::Point2{500.0, 500.0}, uber::Point2{500.0, -800.0}, uber::Point2{300.0, 1300.0}})
            s.irs_list.push_back({pos, 8, 0.05});
        return s;
    }

    // Same geometry scaled down for fast tests
    inline uber::SceneConfig small_scene(arma::uword n_antennas = 3, arma::uword n_elements = 3,
                                         arma::uword m_count = 2)
    {
        uber::SceneConfig s = reference_scene();
        s.n_tx = s.n_rx = n_antennas;
        s.irs_list.resize(m_count);
        for (auto &irs : s.irs_list)
            irs.n_elements = n_elements;
        return s;
    }

    inline uber::SceneConfig random_small_scene(std::mt19937_64 &rng, bool nondegenerate_derivative = false)
    {
        uber::SceneConfig s;
        s.wavelength = 0.1;
        s.radar_spacing = 0.05;
        s.n_tx = s.n_rx = uniform_index(rng, 2, 4);
        s.noise_variance = uniform(rng, 0.05, 2.0);
        s.radar_position = {0.0, 0.0};
        const double target_angle = uniform(rng, -1.2, 1.2);
        const double target_range = uniform(rng, 3000.0, 8000.0);
        s.target_position = {target_range * std::sin(target_angle), target_range * std::cos(target_angle)};

        const arma::uword m_count = uniform_index(rng, 1, 3);
        for (arma::uword m = 0; m < m_count; ++m)
        {
            uber::IrsConfig irs;
            irs.n_elements = uniform_index(rng, 2, 3);
            irs.spacing = 0.05;
            for (int attempt = 0; attempt < 64; ++attempt)
            {
                const double a = uniform(rng, -1.3, 1.3);
                const double r = uniform(rng, 200.0, 1500.0);
                irs.position = {r * std::sin(a), r * std::cos(a)};
                if (!nondegenerate_derivative)
                    break;
                if (std::abs(std::cos(uber::angle_from(irs.position, s.target_position))) > 0.05)
                    break;
            }
            s.irs_list.push_back(irs);
        }
        return s;
    }

    // Channel set with every IRS-target angle moved by delta (the radar-IRS
    // legs are fixed geometry); rebuilds the target-side steering vectors.
    inline uber::ChannelSet perturb_target_doa(const uber::ChannelSet &ch, double delta)
    {
        uber::ChannelSet out = ch;
        out.doa_los += delta;
        for (auto &irs : out.irs)
        {
            irs.angle_irs_target += delta;
            irs.b_target = uber::steering(irs.n_elements, irs.spacing, ch.wavelength, irs.angle_irs_target);
        }
        return out;
    }

    // Determinant by hand-rolled LU with partial pivoting; no LAPACK involved.
    inline cx det_lu(arma::cx_mat a)
    {
        const arma::uword n = a.n_rows;
        cx det(1.0, 0.0);
        for (arma::uword k = 0; k < n; ++k)
        {
            arma::uword pivot = k;
            for (arma::uword i = k + 1; i < n; ++i)
                if (std::abs(a(i, k)) > std::abs(a(pivot, k)))
                    pivot = i;
            if (std::abs(a(pivot, k)) == 0.0)
                return cx(0.0, 0.0);
            if (pivot != k)
            {
                a.swap_rows(pivot, k);
                det = -det;
            }
            det *= a(k, k);
            for (arma::uword i = k + 1; i < n; ++i)
            {
                const cx f = a(i, k) / a(k, k);
                for (arma::uword j = k; j < n; ++j)
                    a(i, j) -= f * a(k, j);
            }
        }
        return det;
    }

    // Characteristic polynomial p(x) = det(A - x I), real for Hermitian A
    inline double charpoly_at(const arma::cx_mat &a, double x)
    {
        arma::cx_mat shifted = a;
        shifted.diag() -= cx(x, 0.0);
        return det_lu(shifted).real();
    }

    inline double bisect_root(const arma::cx_mat &a, double lo, double hi)
    {
        double f_lo = charpoly_at(a, lo);
        for (int it = 0; it < 200; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = charpoly_at(a, mid);
            if ((f_lo > 0.0) == (f_mid > 0.0))
                lo = mid, f_lo = f_mid;
            else
                hi = mid;
            if (hi - lo < 1e-13 * std::max(1.0, std::abs(lo)))
                break;
        }
        return 0.5 * (lo + hi);
    }

    // Extreme eigenvalues of a Hermitian matrix via sign changes of the
    // characteristic polynomial inside the Gershgorin interval.
    inline std::pair<double, double> extreme_eigs_charpoly(const arma::cx_mat &a)
    {
        const arma::uword n = a.n_rows;
        double lo = 1e300, hi = -1e300;
        for (arma::uword i = 0; i < n; ++i)
        {
            double radius = 0.0;
            for (arma::uword j = 0; j < n; ++j)
                if (j != i)
                    radius += std::abs(a(i, j));
            lo = std::min(lo, a(i, i).real() - radius);
            hi = std::max(hi, a(i, i).real() + radius);
        }
        const double pad = 1e-6 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
        lo -= pad, hi += pad;

        // p > 0 outside the spectrum for even n, (-1)^n handled by scanning for
        // the first sign change from each end
        const int steps = 4000;
        const double h = (hi - lo) / steps;

        double min_eig = lo;
        double prev = charpoly_at(a, lo);
        for (int s = 1; s <= steps; ++s)
        {
            const double x = lo + s * h;
            const double f = charpoly_at(a, x);
            if ((prev > 0.0) != (f > 0.0))
            {
                min_eig = bisect_root(a, x - h, x);
                break;
            }
            prev = f;
        }

        double max_eig = hi;
        prev = charpoly_at(a, hi);
        for (int s = 1; s <= steps; ++s)
        {
            const double x = hi - s * h;
            const double f = charpoly_at(a, x);
            if ((prev > 0.0) != (f > 0.0))
            {
                max_eig = bisect_root(a, x, x + h);
                break;
            }
            prev = f;
        }
        return {min_eig, max_eig};
    }
}

#endif
