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

#include "uber/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uber
{

arma::cx_mat kron(const arma::cx_mat &a, const arma::cx_mat &b)
{
    return arma::kron(a, b);
}

arma::cx_vec vec(const arma::cx_mat &a)
{
    return arma::vectorise(a);
}

arma::cx_mat unvec(const arma::cx_vec &c, arma::uword n_rows, arma::uword n_cols)
{
    if (c.n_elem != n_rows * n_cols)
        throw std::invalid_argument("unvec: vector of length " + std::to_string(c.n_elem) +
                                    " cannot be reshaped to " + std::to_string(n_rows) + "x" + std::to_string(n_cols));
    return arma::reshape(c, n_rows, n_cols);
}

arma::uvec commutation_permutation(arma::uword p, arma::uword q)
{
    // Column-major index (r, c) of a p-by-q matrix maps to (c, r) of the transpose
    arma::uvec map(p * q);
    for (arma::uword c = 0; c < q; ++c)
        for (arma::uword r = 0; r < p; ++r)
            map[r + c * p] = c + r * q;
    return map;
}

arma::cx_mat commutation_matrix(arma::uword p, arma::uword q)
{
    const arma::uvec map = commutation_permutation(p, q);
    arma::cx_mat k(p * q, p * q, arma::fill::zeros);
    for (arma::uword i = 0; i < map.n_elem; ++i)
        k(map[i], i) = 1.0;
    return k;
}

std::pair<double, double> hermitian_extreme_eigs(const arma::cx_mat &a)
{
    if (!a.is_square())
        throw std::invalid_argument("hermitian_extreme_eigs: matrix is " + std::to_string(a.n_rows) +
                                    "x" + std::to_string(a.n_cols) + ", expected square");

    const arma::cx_mat h = 0.5 * (a + a.t());
    arma::vec ev;
    if (!arma::eig_sym(ev, h))
        throw std::runtime_error("hermitian_extreme_eigs: eigendecomposition failed");
    return {ev.front(), ev.back()};
}

arma::cx_vec unit_modulus_project(const arma::cx_vec &z)
{
    arma::cx_vec out(z.n_elem);
    for (arma::uword i = 0; i < z.n_elem; ++i)
    {
        const double mag = std::abs(z[i]);
        out[i] = (mag == 0.0) ? cx(1.0, 0.0) : z[i] / mag;
    }
    return out;
}

arma::cx_mat unit_modulus_project(const arma::cx_mat &z)
{
    const arma::cx_vec p = unit_modulus_project(arma::cx_vec(arma::vectorise(z)));
    return arma::reshape(p, z.n_rows, z.n_cols);
}

arma::cx_mat block_diag(const std::vector<arma::cx_mat> &blocks)
{
    if (blocks.empty())
        throw std::invalid_argument("block_diag: empty block list");

    arma::uword rows = 0, cols = 0;
    for (const auto &b : blocks)
        rows += b.n_rows, cols += b.n_cols;

    arma::cx_mat out(rows, cols, arma::fill::zeros);
    arma::uword r = 0, c = 0;
    for (const auto &b : blocks)
    {
        if (b.n_rows > 0 && b.n_cols > 0)
            out.submat(r, c, r + b.n_rows - 1, c + b.n_cols - 1) = b;
        r += b.n_rows, c += b.n_cols;
    }
    return out;
}

bool is_unimodular(const arma::cx_vec &z, double tol)
{
    for (arma::uword i = 0; i < z.n_elem; ++i)
        if (std::abs(std::abs(z[i]) - 1.0) > tol)
            return false;
    return true;
}

bool is_unimodular(const arma::cx_mat &z, double tol)
{
    return is_unimodular(arma::cx_vec(arma::vectorise(z)), tol);
}

}
