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

// Randomized self-validation of the algebraic identities the designer relies
// on. Every check draws its own instances from a deterministic stream, so a
// report is reproducible bit-for-bit on one platform.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "uber/experiment.hpp"
#include "uber/fisher.hpp"
#include "uber/uqp.hpp"

namespace uber
{

namespace
{
    double uniform01(std::mt19937_64 &rng)
    {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    double uniform(std::mt19937_64 &rng, double lo, double hi)
    {
        return lo + (hi - lo) * uniform01(rng);
    }

    arma::uword uniform_index(std::mt19937_64 &rng, arma::uword lo, arma::uword hi)
    {
        return lo + static_cast<arma::uword>(rng() % (hi - lo + 1));
    }

    arma::cx_mat random_complex(std::mt19937_64 &rng, arma::uword n_rows, arma::uword n_cols)
    {
        ComplexNormalSampler sampler(rng());
        return sampler.matrix(n_rows, n_cols);
    }

    arma::cx_vec random_unimodular(std::mt19937_64 &rng, arma::uword n)
    {
        arma::cx_vec v(n);
        for (arma::uword i = 0; i < n; ++i)
            v[i] = std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi));
        return v;
    }

    arma::cx_mat random_unimodular_matrix(std::mt19937_64 &rng, arma::uword n_rows, arma::uword n_cols)
    {
        return arma::reshape(arma::cx_mat(random_unimodular(rng, n_rows * n_cols)), n_rows, n_cols);
    }

    arma::cx_mat random_hermitian(std::mt19937_64 &rng, arma::uword n)
    {
        const arma::cx_mat a = random_complex(rng, n, n);
        return 0.5 * (a + a.t());
    }

    arma::cx_mat random_psd(std::mt19937_64 &rng, arma::uword n)
    {
        const arma::cx_mat r = random_complex(rng, n, n);
        return r * r.t();
    }

    // Random geometry at the reference dims of the small-instance suites:
    // N_t = N_r in [2,4], per-IRS N_m in [2,3], M in [1,3].
    SceneConfig random_scene(std::mt19937_64 &rng, bool well_conditioned_derivative)
    {
        SceneConfig s;
        s.wavelength = 0.1;
        s.radar_spacing = s.wavelength / 2.0;
        s.n_tx = s.n_rx = uniform_index(rng, 2, 4);
        s.noise_variance = uniform(rng, 0.05, 2.0);
        s.radar_position = {0.0, 0.0};

        const double target_angle = uniform(rng, -1.2, 1.2);
        const double target_range = uniform(rng, 3000.0, 8000.0);
        s.target_position = {target_range * std::sin(target_angle), target_range * std::cos(target_angle)};

        const arma::uword m_count = uniform_index(rng, 1, 3);
        for (arma::uword m = 0; m < m_count; ++m)
        {
            IrsConfig irs;
            irs.n_elements = uniform_index(rng, 2, 3);
            irs.spacing = s.wavelength / 2.0;
            for (int attempt = 0; attempt < 64; ++attempt)
            {
                const double a = uniform(rng, -1.3, 1.3);
                const double r = uniform(rng, 200.0, 1500.0);
                irs.position = {r * std::sin(a), r * std::cos(a)};
                if (!well_conditioned_derivative)
                    break;
                const double to_target = angle_from(irs.position, s.target_position);
                if (std::abs(std::cos(to_target)) > 0.05)
                    break;
            }
            s.irs_list.push_back(irs);
        }
        return s;
    }

    // Channel set with every IRS-target angle shifted by delta; the IRS-radar
    // legs are fixed by the geometry and do not move with the target DoA.
    ChannelSet perturb_target_doa(const ChannelSet &ch, double delta)
    {
        ChannelSet out = ch;
        out.doa_los += delta;
        for (auto &irs : out.irs)
        {
            irs.angle_irs_target += delta;
            irs.b_target = steering(irs.n_elements, irs.spacing, ch.wavelength, irs.angle_irs_target);
        }
        return out;
    }

    PhaseProfile random_profile(std::mt19937_64 &rng, const std::vector<arma::uword> &sizes)
    {
        arma::uword total = 0;
        for (arma::uword s : sizes)
            total += s;
        return PhaseProfile(random_unimodular(rng, total), sizes);
    }

    double relative(double error, double scale)
    {
        return error / std::max(scale, 1e-300);
    }

    PropertyResult make_result(std::string name, double worst, double tolerance, std::string detail)
    {
        PropertyResult r;
        r.name = std::move(name);
        r.worst_error = worst;
        r.tolerance = tolerance;
        r.passed = worst <= tolerance;
        r.detail = std::move(detail);
        return r;
    }
}

PropertyResult check_algebra_identities(std::size_t instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;

    for (std::size_t i = 0; i < instances; ++i)
    {
        const arma::uword p = uniform_index(rng, 2, 4);
        const arma::uword q = uniform_index(rng, 2, 4);
        const arma::uword r = uniform_index(rng, 2, 4);

        // Kronecker mixed product
        const arma::cx_mat a = random_complex(rng, p, q);
        const arma::cx_mat b = random_complex(rng, q, r);
        const arma::cx_mat c = random_complex(rng, r, p);
        const arma::cx_mat d = random_complex(rng, p, q);
        const arma::cx_mat lhs = kron(a, c) * kron(b, d);
        const arma::cx_mat rhs = kron(arma::cx_mat(a * b), arma::cx_mat(c * d));
        worst = std::max(worst, relative(arma::norm(lhs - rhs, "fro"), arma::norm(rhs, "fro")));

        // vec(u v^T) = v (x) u
        const arma::cx_vec u = random_complex(rng, p, 1);
        const arma::cx_vec v = random_complex(rng, q, 1);
        const arma::cx_vec vec_outer = vec(u * arma::strans(v));
        worst = std::max(worst, relative(arma::norm(vec_outer - arma::kron(v, u)), arma::norm(vec_outer)));

        // (X^T (x) I) vec(H) = vec(H X) = (I (x) H) vec(X)
        const arma::cx_mat h = random_complex(rng, p, q);
        const arma::cx_mat x = random_complex(rng, q, r);
        const arma::cx_vec via_xt = kron(arma::cx_mat(arma::strans(x)), arma::cx_mat(arma::eye<arma::cx_mat>(p, p))) * vec(h);
        const arma::cx_vec via_h = kron(arma::cx_mat(arma::eye<arma::cx_mat>(r, r)), h) * vec(x);
        const arma::cx_vec direct = vec(h * x);
        worst = std::max(worst, relative(arma::norm(via_xt - direct), arma::norm(direct)));
        worst = std::max(worst, relative(arma::norm(via_h - direct), arma::norm(direct)));

        // commutation: K vec(A) = vec(A^T) and K(p,q)^T = K(q,p)
        const arma::cx_mat k_pq = commutation_matrix(p, q);
        worst = std::max(worst, relative(arma::norm(arma::cx_vec(k_pq * vec(a)) - vec(arma::strans(a))),
                                         arma::norm(vec(a))));
        worst = std::max(worst, arma::norm(arma::cx_mat(arma::strans(k_pq) - commutation_matrix(q, p)), "fro"));

        // projection: idempotent, phase preserving
        const arma::cx_vec z = random_complex(rng, p * q, 1);
        const arma::cx_vec pz = unit_modulus_project(z);
        worst = std::max(worst, arma::norm(unit_modulus_project(pz) - pz, "inf"));
        for (arma::uword e = 0; e < z.n_elem; ++e)
            if (std::abs(z[e]) > 1e-12)
            {
                const double dphase = std::abs(std::arg(pz[e] * std::conj(z[e])));
                worst = std::max(worst, dphase);
            }

        // unvec round trip
        worst = std::max(worst, arma::norm(arma::cx_mat(unvec(vec(a), p, q) - a), "fro"));

        // block_diag of identical blocks equals kron(I, block)
        const arma::uword copies = uniform_index(rng, 1, 3);
        const std::vector<arma::cx_mat> blocks(copies, a);
        const arma::cx_mat bd = block_diag(blocks);
        const arma::cx_mat ki = kron(arma::cx_mat(arma::eye<arma::cx_mat>(copies, copies)), a);
        worst = std::max(worst, relative(arma::norm(bd - ki, "fro"), arma::norm(ki, "fro")));
    }
    return make_result("algebra identities", worst, 1e-10, std::to_string(instances) + " instances");
}

PropertyResult check_form_equivalence(std::size_t instances, std::uint64_t seed, double tolerance,
                                      bool inject_d_sign_flip)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;

    for (std::size_t i = 0; i < instances; ++i)
    {
        const SceneConfig scene = random_scene(rng, false);
        const ChannelSet channels = build_channels(scene);
        const arma::uword n_samples = uniform_index(rng, 4, 8);

        const arma::cx_mat waveform = random_unimodular_matrix(rng, scene.n_tx, n_samples);
        const PhaseProfile nu = random_profile(rng, channels.irs_sizes());
        ComplexNormalSampler alpha_sampler(rng());
        const arma::cx_vec alpha = alpha_sampler.vector(channels.irs_count());

        const double direct = fisher_direct(waveform, nu, alpha, channels, scene.noise_variance);

        const arma::cx_mat gram = waveform_gram(nu, alpha, channels, scene.noise_variance, n_samples);
        const arma::cx_vec s = arma::vectorise(waveform);
        const double quadratic = std::real(arma::cdot(s, arma::cx_vec(gram * s)));

        ChannelOperators ops = build_d(channels);
        if (inject_d_sign_flip)
        {
            ops.d_blocks[0] *= -1.0;
            ops.d = block_diag(ops.d_blocks);
        }
        const double quartic = fisher_quartic(nu, build_t(ops, waveform, alpha, scene.noise_variance));

        const double scale = std::max({std::abs(direct), std::abs(quadratic), std::abs(quartic)});
        worst = std::max(worst, relative(std::abs(direct - quadratic), scale));
        worst = std::max(worst, relative(std::abs(direct - quartic), scale));
    }
    return make_result("fisher form equivalence", worst, tolerance, std::to_string(instances) + " instances");
}

PropertyResult check_derivative_fd(std::size_t scenes, std::uint64_t seed, double tolerance)
{
    std::mt19937_64 rng(seed);
    const double h = 1e-7;
    double worst = 0.0;

    for (std::size_t i = 0; i < scenes; ++i)
    {
        const SceneConfig scene = random_scene(rng, true);
        const ChannelSet channels = build_channels(scene);
        const ChannelSet plus = perturb_target_doa(channels, h);
        const ChannelSet minus = perturb_target_doa(channels, -h);

        for (arma::uword m = 0; m < channels.irs_count(); ++m)
        {
            const arma::cx_vec v = random_unimodular(rng, channels.irs[m].n_elements);
            const arma::cx_mat analytic = channel_derivative(v, channels, m);
            const arma::cx_mat fd = (composite_channel(v, plus, m) - composite_channel(v, minus, m)) / (2.0 * h);
            const double norm_a = arma::norm(analytic, "fro");
            if (norm_a > 1e-12)
                worst = std::max(worst, arma::norm(analytic - fd, "fro") / norm_a);
        }

        // LoS-only derivative of a_r(theta) a_t(theta)^T
        const double theta = channels.doa_los;
        if (std::abs(std::cos(theta)) > 0.05)
        {
            const arma::cx_mat analytic = los_channel_derivative(theta, scene);
            auto los = [&](double t) {
                return arma::cx_mat(steering(scene.n_rx, scene.radar_spacing, scene.wavelength, t) *
                                    arma::strans(steering(scene.n_tx, scene.radar_spacing, scene.wavelength, t)));
            };
            const arma::cx_mat fd = (los(theta + h) - los(theta - h)) / (2.0 * h);
            worst = std::max(worst, arma::norm(analytic - fd, "fro") / arma::norm(analytic, "fro"));
        }
    }
    return make_result("derivative vs central differences", worst, tolerance,
                       std::to_string(scenes) + " scenes, step 1e-7 rad");
}

PropertyResult check_pmli_monotonicity(std::size_t instances, std::uint64_t seed, arma::uword max_n)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0; // largest relative per-step decrease

    for (std::size_t i = 0; i < instances; ++i)
    {
        const arma::uword n = uniform_index(rng, 2, max_n);
        UqpProblem problem;
        problem.g = random_psd(rng, n);
        problem.initial = random_unimodular(rng, n);
        problem.max_iterations = 50;
        const UqpResult result = solve(problem);

        for (std::size_t t = 1; t < result.objective_trace.size(); ++t)
        {
            const double prev = result.objective_trace[t - 1];
            const double drop = prev - result.objective_trace[t];
            worst = std::max(worst, relative(drop, std::abs(prev)));
        }
    }
    return make_result("pmli monotonicity", worst, 1e-10, std::to_string(instances) + " PSD instances");
}

PropertyResult check_pmli_vs_probes(std::size_t problems, std::size_t probes, std::uint64_t seed,
                                    double required_rate)
{
    std::mt19937_64 rng(seed);
    std::size_t wins = 0;

    for (std::size_t i = 0; i < problems; ++i)
    {
        const arma::uword n = uniform_index(rng, 2, 8);
        UqpProblem problem;
        problem.g = random_hermitian(rng, n); // indefinite allowed, solves load internally

        // start from the projected dominant eigenvector, the power-method
        // analogue of a warm start
        arma::vec eigval;
        arma::cx_mat eigvec;
        arma::eig_sym(eigval, eigvec, problem.g);
        problem.initial = unit_modulus_project(arma::cx_vec(eigvec.col(n - 1)));
        problem.max_iterations = 200;
        const UqpResult result = solve(problem);

        double best_probe = -1e300;
        for (std::size_t p = 0; p < probes; ++p)
        {
            const arma::cx_vec s = random_unimodular(rng, n);
            best_probe = std::max(best_probe, std::real(arma::cdot(s, arma::cx_vec(problem.g * s))));
        }
        if (result.objective_trace.back() >= best_probe - 1e-9 * std::max(1.0, std::abs(best_probe)))
            ++wins;
    }

    const double rate = static_cast<double>(wins) / static_cast<double>(problems);
    PropertyResult r;
    r.name = "pmli vs random probes";
    r.worst_error = 1.0 - rate;
    r.tolerance = 1.0 - required_rate;
    r.passed = rate >= required_rate;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%zu/%zu problems beat %zu probes", wins, problems, probes);
    r.detail = buf;
    return r;
}

PropertyResult check_q_identity(std::size_t instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;

    for (std::size_t i = 0; i < instances; ++i)
    {
        const arma::uword m_count = uniform_index(rng, 1, 3);
        std::vector<arma::uword> sizes;
        arma::uword sq_total = 0;
        for (arma::uword m = 0; m < m_count; ++m)
        {
            sizes.push_back(uniform_index(rng, 1, 4));
            sq_total += sizes.back() * sizes.back();
        }
        const PhaseProfile nu1 = random_profile(rng, sizes);
        const PhaseProfile nu2 = random_profile(rng, sizes);

        const arma::cx_mat q1_nu1 = q1(nu1);
        const arma::cx_mat q2_nu2 = q2(nu2);

        // Q1(nu1) nu2 = Q2(nu2) nu1
        const arma::cx_vec lhs = q1_nu1 * nu2.stacked();
        const arma::cx_vec rhs = q2_nu2 * nu1.stacked();
        worst = std::max(worst, relative(arma::norm(lhs - rhs), arma::norm(rhs)));

        // Q1(nu) nu = Q2(nu) nu = stacked vec(v_m v_m^T)
        const arma::cx_vec z = stacked_outer(nu1);
        worst = std::max(worst, relative(arma::norm(arma::cx_vec(q1_nu1 * nu1.stacked()) - z), arma::norm(z)));
        worst = std::max(worst, relative(arma::norm(arma::cx_vec(q1(nu2) * nu2.stacked()) - stacked_outer(nu2)),
                                         arma::norm(z)));

        // structural products agree with the dense matrices
        const arma::cx_mat a = random_complex(rng, sq_total, sq_total);
        worst = std::max(worst, relative(arma::norm(apply_q1_right(a, nu1) - a * q1_nu1, "fro"),
                                         arma::norm(a, "fro")));
        worst = std::max(worst, relative(arma::norm(apply_q2_right(a, nu2) - a * q2_nu2, "fro"),
                                         arma::norm(a, "fro")));
        worst = std::max(worst, relative(arma::norm(apply_q1_conj_left(a, nu1) - q1_nu1.t() * a, "fro"),
                                         arma::norm(a, "fro")));
        worst = std::max(worst, relative(arma::norm(apply_q2_conj_left(a, nu2) - q2_nu2.t() * a, "fro"),
                                         arma::norm(a, "fro")));
    }
    return make_result("q selection identities", worst, 1e-10, std::to_string(instances) + " instances");
}

PropertyResult check_penalty_expansion(std::size_t instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;

    for (std::size_t i = 0; i < instances; ++i)
    {
        const arma::uword n = uniform_index(rng, 2, 8);
        const arma::cx_mat e = random_hermitian(rng, n);
        const arma::cx_vec nu_i = random_unimodular(rng, n);
        const arma::cx_vec nu_j = random_unimodular(rng, n);
        const double penalty = uniform(rng, 0.0, 1.0);

        const arma::cx_mat augmented = augmented_matrix(e, nu_i, penalty);

        // recover lambda_hat from the known 2*eta*L corner of the inner matrix
        const double lambda_hat = std::real(augmented(n, n)) + 2.0 * penalty * static_cast<double>(n);

        arma::cx_vec bar(n + 1);
        bar.head(n) = nu_j;
        bar[n] = 1.0;
        const double quad_inner =
            lambda_hat * static_cast<double>(n + 1) - std::real(arma::cdot(bar, arma::cx_vec(augmented * bar)));

        const double lambda_max = hermitian_extreme_eigs(e).second;
        const double e_tilde_form =
            lambda_max * static_cast<double>(n) - std::real(arma::cdot(nu_j, arma::cx_vec(e * nu_j)));
        const double expected = e_tilde_form - 2.0 * penalty * std::real(arma::cdot(nu_i, nu_j)) +
                                2.0 * penalty * static_cast<double>(n);

        const double scale = std::max({std::abs(expected), std::abs(lambda_hat), 1.0});
        worst = std::max(worst, relative(std::abs(quad_inner - expected), scale));

        // the augmented matrix must be PSD
        const double min_eig = hermitian_extreme_eigs(augmented).first;
        worst = std::max(worst, relative(std::max(0.0, -min_eig), std::max(std::abs(lambda_hat), 1.0)));
    }
    return make_result("penalty augmentation expansion", worst, 1e-10, std::to_string(instances) + " instances");
}

PropertyResult check_bi_quadratic(std::size_t instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;

    for (std::size_t i = 0; i < instances; ++i)
    {
        const SceneConfig scene = random_scene(rng, false);
        const ChannelSet channels = build_channels(scene);
        const arma::uword n_samples = uniform_index(rng, 4, 6);
        const arma::cx_mat waveform = random_unimodular_matrix(rng, scene.n_tx, n_samples);
        ComplexNormalSampler alpha_sampler(rng());
        const arma::cx_vec alpha = alpha_sampler.vector(channels.irs_count());
        const arma::cx_mat t = build_t(channels, waveform, alpha, scene.noise_variance);

        const PhaseProfile nu1 = random_profile(rng, channels.irs_sizes());
        const PhaseProfile nu2 = random_profile(rng, channels.irs_sizes());

        // dense-sandwich surrogate, independent of the structural path in e_matrix
        auto g_dense = [&](const PhaseProfile &a, const PhaseProfile &b) {
            const arma::cx_mat g1_b = q1(b).t() * t * q1(b);
            const arma::cx_mat g1_a = q1(a).t() * t * q1(a);
            return 0.5 * (std::real(arma::cdot(a.stacked(), arma::cx_vec(g1_b * a.stacked()))) +
                          std::real(arma::cdot(b.stacked(), arma::cx_vec(g1_a * b.stacked()))));
        };

        const double g12 = g_dense(nu1, nu2);
        const double lhs = std::real(arma::cdot(nu1.stacked(), arma::cx_vec(e_matrix(nu2, t) * nu1.stacked())));
        const double swapped = std::real(arma::cdot(nu2.stacked(), arma::cx_vec(e_matrix(nu1, t) * nu2.stacked())));
        const double diag = std::real(arma::cdot(nu1.stacked(), arma::cx_vec(e_matrix(nu1, t) * nu1.stacked())));
        const double quartic = fisher_quartic(nu1, t);

        const double scale = std::max({std::abs(g12), std::abs(quartic), 1e-30});
        worst = std::max(worst, relative(std::abs(lhs - g12), scale));
        worst = std::max(worst, relative(std::abs(swapped - g12), scale));
        worst = std::max(worst, relative(std::abs(diag - quartic), scale));

        // E must be Hermitian
        const arma::cx_mat e = e_matrix(nu2, t);
        worst = std::max(worst, relative(arma::norm(e - e.t(), "fro"), arma::norm(e, "fro")));
    }
    return make_result("bi-quadratic kernel", worst, 1e-9, std::to_string(instances) + " instances");
}

bool ValidationReport::all_passed() const
{
    for (const auto &p : properties)
        if (!p.passed)
            return false;
    return true;
}

ValidationReport validate(const ValidationOptions &options)
{
    const std::size_t mul = options.quick ? 1 : 5;

    ValidationReport report;
    report.properties.push_back(check_algebra_identities(20 * mul, 101));
    report.properties.push_back(check_form_equivalence(40 * mul, 202, 1e-9, options.inject_d_sign_flip));
    report.properties.push_back(check_derivative_fd(10 * mul, 303, 1e-6));
    report.properties.push_back(check_pmli_monotonicity(20 * mul, 404, options.quick ? 16 : 32));
    report.properties.push_back(check_pmli_vs_probes(options.quick ? 100 : 200, options.quick ? 2000 : 10000, 505, 0.99));
    report.properties.push_back(check_q_identity(20 * mul, 606));
    report.properties.push_back(check_penalty_expansion(20 * mul, 707));
    report.properties.push_back(check_bi_quadratic(10 * mul, 808));
    return report;
}

std::string format_report(const ValidationReport &report)
{
    std::string out;
    for (const auto &p : report.properties)
    {
        char line[256];
        std::snprintf(line, sizeof(line), "[%s] %-36s worst %.3e (tol %.1e) %s\n",
                      p.passed ? "PASS" : "FAIL", p.name.c_str(), p.worst_error, p.tolerance,
                      p.detail.c_str());
        out += line;
    }
    out += report.all_passed() ? "all properties passed\n" : "PROPERTY FAILURES DETECTED\n";
    return out;
}

}
