// Copyright 2026 The qrforecast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-side reference implementations, written independently of the library
// code paths they check: explicit index arithmetic instead of block
// expressions, Taylor series instead of eigendecompositions, and the standard
// <random> engines instead of the library generator.

#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracles {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Kronecker product via explicit four-index loops.
inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index ar = 0; ar < a.rows(); ++ar) {
    for (Eigen::Index ac = 0; ac < a.cols(); ++ac) {
      for (Eigen::Index br = 0; br < b.rows(); ++br) {
        for (Eigen::Index bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
        }
      }
    }
  }
  return out;
}

// Trace out the most-significant-bit subsystem of a 2^n x 2^n matrix by
// decomposing every basis index into (first bit, remaining bits).
inline CMat trace_out_first(const CMat& m) {
  const Eigen::Index dim = m.rows();
  const Eigen::Index half = dim / 2;
  CMat out = CMat::Zero(half, half);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const Eigen::Index r_first = r / half;
      const Eigen::Index c_first = c / half;
      if (r_first == c_first) {
        out(r % half, c % half) += m(r, c);
      }
    }
  }
  return out;
}

// Tr(a * b) accumulated elementwise, no matrix product.
inline Cplx trace_product(const CMat& a, const CMat& b) {
  Cplx acc(0.0, 0.0);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      acc += a(r, c) * b(c, r);
    }
  }
  return acc;
}

// e^{-i*h*tau} by scaling-and-squaring with a plain Taylor series; checks the
// eigendecomposition-based propagator without sharing any machinery with it.
inline CMat expm_minus_i(const CMat& h, double tau) {
  const Eigen::Index dim = h.rows();
  CMat a = Cplx(0.0, -tau) * h;
  int squarings = 0;
  double norm = a.cwiseAbs().sum();
  while (norm > 0.5) {
    a /= 2.0;
    norm /= 2.0;
    ++squarings;
  }
  CMat result = CMat::Identity(dim, dim);
  CMat term = CMat::Identity(dim, dim);
  for (int k = 1; k <= 24; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) {
    result = result * result;
  }
  return result;
}

// Random complex matrix with standard-normal real and imaginary parts.
inline CMat random_complex(Eigen::Index dim, std::mt19937& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMat out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      out(r, c) = Cplx(normal(gen), normal(gen));
    }
  }
  return out;
}

// Random density matrix: G*G^dag normalized to unit trace (Ginibre ensemble);
// Hermitian and positive semidefinite by construction.
inline CMat random_density(Eigen::Index dim, std::mt19937& gen) {
  const CMat g = random_complex(dim, gen);
  CMat rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

// Random Hermitian matrix (A + A^dag) / 2.
inline CMat random_hermitian(Eigen::Index dim, std::mt19937& gen) {
  const CMat a = random_complex(dim, gen);
  return (a + a.adjoint()) / 2.0;
}

}  // namespace oracles
