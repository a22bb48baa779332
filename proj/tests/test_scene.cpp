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

#include <catch2/catch_amalgamated.hpp>
#include <numbers>

#include "test_helpers.hpp"
#include "uber/scene.hpp"

using namespace uber;

TEST_CASE("angles are measured from broadside")
{
    CHECK(angle_from({0, 0}, {0, 1000}) == 0.0);
    CHECK(angle_from({0, 0}, {5000, 5000}) == Catch::Approx(std::numbers::pi / 4).margin(1e-15));
    CHECK(angle_from({500, 500}, {5000, 5000}) == Catch::Approx(std::atan2(4500.0, 4500.0)).margin(1e-15));
    CHECK_THROWS_AS(angle_from({1, 2}, {1, 2}), std::invalid_argument);
}

TEST_CASE("steering vector entries follow the phase law")
{
    const double lambda = 0.1;

    const arma::cx_vec broadside = steering(4, lambda / 2, lambda, 0.0);
    for (arma::uword k = 0; k < 4; ++k)
        CHECK(std::abs(broadside[k] - cx(1, 0)) < 1e-15);

    const arma::cx_vec endfire = steering(2, lambda / 2, lambda, std::numbers::pi / 2);
    CHECK(std::abs(endfire[0] - cx(1, 0)) < 1e-15);
    CHECK(std::abs(endfire[1] - cx(-1, 0)) < 1e-12);

    const double theta = std::numbers::pi / 4;
    const arma::cx_vec v = steering(8, lambda / 2, lambda, theta);
    for (arma::uword k = 0; k < 8; ++k)
    {
        const cx expected = std::polar(1.0, std::numbers::pi * static_cast<double>(k) * std::sin(theta));
        CHECK(std::abs(v[k] - expected) < 1e-12);
    }
    CHECK(is_unimodular(v, 1e-15));
}

TEST_CASE("steering is invariant under common translation of the endpoints")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i)
    {
        const Point2 p{testutil::uniform(rng, -100.0, 100.0), testutil::uniform(rng, -100.0, 100.0)};
        const Point2 q{testutil::uniform(rng, 2000.0, 4000.0), testutil::uniform(rng, 2000.0, 4000.0)};
        const Point2 t{testutil::uniform(rng, -5000.0, 5000.0), testutil::uniform(rng, -5000.0, 5000.0)};
        const arma::cx_vec a = steering(6, 0.05, 0.1, angle_from(p, q));
        const arma::cx_vec b = steering(6, 0.05, 0.1, angle_from({p.x + t.x, p.y + t.y}, {q.x + t.x, q.y + t.y}));
        CHECK(arma::norm(a - b, "inf") < 1e-9);
    }
}

TEST_CASE("reference scene geometry")
{
    const SceneConfig cfg = testutil::reference_scene();
    const ChannelSet ch = build_channels(cfg);

    // radar->target and radar->first-IRS lie on the same 45-degree ray
    CHECK(ch.doa_los == Catch::Approx(std::numbers::pi / 4).margin(1e-15));
    CHECK(ch.irs[0].angle_radar_irs == Catch::Approx(std::numbers::pi / 4).margin(1e-15));

    // channel shapes and rank-1 structure
    for (const auto &irs : ch.irs)
    {
        REQUIRE(irs.h_radar_irs.n_rows == irs.n_elements);
        REQUIRE(irs.h_radar_irs.n_cols == cfg.n_tx);
        CHECK(arma::rank(irs.h_radar_irs) == 1);

        // reciprocity is exact
        CHECK(arma::norm(irs.h_irs_radar - arma::strans(irs.h_radar_irs), "fro") == 0.0);

        // every steering vector is unit-modulus
        CHECK(is_unimodular(irs.b_radar, 1e-12));
        CHECK(is_unimodular(irs.b_target, 1e-12));
        CHECK(is_unimodular(irs.a_tx_irs, 1e-12));
    }
    CHECK(is_unimodular(ch.a_tx_los, 1e-12));
    CHECK(is_unimodular(ch.a_rx_los, 1e-12));

    // stored DoA offsets reproduce the IRS-target angles
    for (const auto &irs : ch.irs)
        CHECK(irs.angle_irs_target == Catch::Approx(ch.doa_los + irs.doa_offset).margin(1e-12));

    // metadata: round-trip delay of the 5000*sqrt(2) m range cell
    CHECK(cfg.radar_target_distance() == Catch::Approx(5000.0 * std::numbers::sqrt2).margin(1e-6));
    CHECK(cfg.round_trip_delay() == Catch::Approx(2.0 * 5000.0 * std::numbers::sqrt2 / 299792458.0).margin(1e-12));
}

TEST_CASE("offsets are invariant under a common DoA perturbation")
{
    const ChannelSet ch = build_channels(testutil::reference_scene());
    const ChannelSet moved = testutil::perturb_target_doa(ch, 0.01);
    for (arma::uword m = 0; m < ch.irs_count(); ++m)
    {
        const double recomputed = moved.irs[m].angle_irs_target - moved.doa_los;
        CHECK(recomputed == Catch::Approx(ch.irs[m].doa_offset).margin(1e-12));
    }
}

TEST_CASE("scene validation names the violated invariant")
{
    SceneConfig cfg = testutil::reference_scene();
    cfg.n_rx = 4;
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("n_tx"));

    cfg = testutil::reference_scene();
    cfg.noise_variance = 0.0;
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("noise_variance"));

    cfg = testutil::reference_scene();
    cfg.irs_list.clear();
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("irs_list"));

    cfg = testutil::reference_scene();
    cfg.target_position = cfg.radar_position;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = testutil::reference_scene();
    cfg.irs_list[1].n_elements = 0;
    CHECK_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("n_elements"));
}

TEST_CASE("reflectivities are deterministic per seed")
{
    const arma::cx_vec a = draw_reflectivities(16, 42);
    const arma::cx_vec b = draw_reflectivities(16, 42);
    CHECK(arma::norm(a - b, "inf") == 0.0);

    const arma::cx_vec c = draw_reflectivities(16, 43);
    CHECK(arma::norm(a - c, "inf") > 0.0);
}

TEST_CASE("reflectivities match the unit circular-Gaussian law")
{
    const arma::uword n = 100000;
    const arma::cx_vec a = draw_reflectivities(n, 7);

    // E|alpha|^2 = 1
    double power = 0.0;
    cx mean(0.0, 0.0);
    for (arma::uword i = 0; i < n; ++i)
    {
        power += std::norm(a[i]);
        mean += a[i];
    }
    power /= static_cast<double>(n);
    mean /= static_cast<double>(n);
    CHECK(power == Catch::Approx(1.0).margin(0.02));
    CHECK(std::abs(mean) < 0.01);

    // the real and imaginary parts each carry half the power
    double re2 = 0.0;
    for (arma::uword i = 0; i < n; ++i)
        re2 += a[i].real() * a[i].real();
    CHECK(re2 / static_cast<double>(n) == Catch::Approx(0.5).margin(0.02));

    // |alpha|^2 is unit-mean exponential, so its sample variance is 1 as well
    double var = 0.0;
    for (arma::uword i = 0; i < n; ++i)
        var += (std::norm(a[i]) - power) * (std::norm(a[i]) - power);
    var /= static_cast<double>(n - 1);
    CHECK(var == Catch::Approx(1.0).margin(0.02));
}
