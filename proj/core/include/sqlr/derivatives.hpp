#pragma once

#include "sqlr/sieve_network.hpp"

#include <cstdint>
#include <vector>

namespace sqlr {

// Coefficients C_1..C_m of
//
//   sigmoid^(m)(z) = sum_a (-1)^(a-1) C_a s^a (1 - s)^(m+1-a),  s = sigmoid(z)
//
// from C_1^(1) = 1 and C_a^(m) = a C_a^(m-1) + (m+1-a) C_{a-1}^(m-1).
// These are the Eulerian numbers; they sum to m!. Throws
// std::invalid_argument for m == 0 and DegenerateError on uint64 overflow.
std::vector<std::uint64_t> sigmoid_deriv_coeffs(unsigned m);

// m-th derivative of the logistic sigmoid; m == 0 gives sigmoid(z).
double sigmoid_mth_deriv(double z, unsigned m);

// Multi-index partial derivative D^beta f(x) of the network,
//   sum_j alphas[j] * prod_i gammas(j,i)^beta[i] * sigmoid^(|beta|)(z_j).
// beta must have input_dim entries with |beta| >= 1.
double partial_derivative(const SieveNetwork& net,
                          const Eigen::Ref<const Vector>& x,
                          const std::vector<unsigned>& beta);

// V * M^m * m!, the uniform bound on |D^beta f| for |beta| = m over the
// sieve. Throws DegenerateError when the value overflows a double.
double sup_derivative_bound(const SieveNetwork& net, unsigned m);
double sup_derivative_bound(double v_budget, double m_budget, unsigned m);

// Empirical significance functional
//   (1/n) sum_i sum_{j in features} (d f / d x_j (X_i))^2.
// `features` are 0-based column indices; empty or out-of-range sets throw.
double phi_hat(const SieveNetwork& net, const Dataset& data,
               const std::vector<Index>& features);

}  // namespace sqlr
