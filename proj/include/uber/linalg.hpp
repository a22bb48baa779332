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

#ifndef uber_linalg_H
#define uber_linalg_H

#include <armadillo>
#include <complex>
#include <utility>
#include <vector>

// Dense complex linear-algebra primitives shared by all modules.
// Conventions fixed here and relied on everywhere else:
//   - vectorization is column-major (vec stacks columns top to bottom),
//   - commutation_matrix(p, q) satisfies K * vec(A) = vec(A^T) for p-by-q A,
//   - unit-modulus projection maps 0 to 1 (phase 0).

namespace uber
{
    using cx = std::complex<double>;

    // Kronecker product, block (i,j) of the result equals a(i,j) * b
    arma::cx_mat kron(const arma::cx_mat &a, const arma::cx_mat &b);

    // Column-major vectorization
    arma::cx_vec vec(const arma::cx_mat &a);

    // Inverse of vec; throws std::invalid_argument on a length mismatch
    arma::cx_mat unvec(const arma::cx_vec &c, arma::uword n_rows, arma::uword n_cols);

    // Permutation matrix K of size pq-by-pq with K * vec(A) = vec(A^T) for every p-by-q A
    arma::cx_mat commutation_matrix(arma::uword p, arma::uword q);

    // Row index map of the commutation matrix: K * e_i = e_{map[i]}.
    // Lets callers permute rows/columns directly instead of multiplying by K.
    arma::uvec commutation_permutation(arma::uword p, arma::uword q);

    // Smallest and largest eigenvalue of a Hermitian matrix.
    // The input is symmetrized as (a + a^H)/2 before solving; roundoff-level
    // asymmetry is expected from the operator stacks built on top of this.
    // Throws std::invalid_argument for non-square input.
    std::pair<double, double> hermitian_extreme_eigs(const arma::cx_mat &a);

    // Entrywise projection onto the complex unit circle, z -> z/|z|.
    // Zero entries map to 1 so that fixed-point iterations stay well defined.
    arma::cx_vec unit_modulus_project(const arma::cx_vec &z);
    arma::cx_mat unit_modulus_project(const arma::cx_mat &z);

    // Block-diagonal assembly; throws std::invalid_argument on an empty list
    arma::cx_mat block_diag(const std::vector<arma::cx_mat> &blocks);

    // True when every entry has modulus 1 within tol
    bool is_unimodular(const arma::cx_vec &z, double tol = 1e-12);
    bool is_unimodular(const arma::cx_mat &z, double tol = 1e-12);
}

#endif
