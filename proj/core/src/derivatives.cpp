#include "sqlr/derivatives.hpp"

#include "sqlr/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sqlr {

std::vector<std::uint64_t> sigmoid_deriv_coeffs(unsigned m) {
  if (m == 0) throw std::invalid_argument("coefficient order must be >= 1");
  std::vector<std::uint64_t> prev{1};
  for (unsigned order = 2; order <= m; ++order) {
    // next[a-1] holds C_a^(order), a = 1..order.
    std::vector<std::uint64_t> next(order, 0);
    for (unsigned a = 1; a <= order; ++a) {
      const std::uint64_t same = a <= prev.size() ? prev[a - 1] : 0;
      const std::uint64_t lower = a >= 2 ? prev[a - 2] : 0;
      std::uint64_t t1 = 0;
      std::uint64_t t2 = 0;
      std::uint64_t sum = 0;
      if (__builtin_mul_overflow(static_cast<std::uint64_t>(a), same, &t1) ||
          __builtin_mul_overflow(static_cast<std::uint64_t>(order + 1 - a), lower, &t2) ||
          __builtin_add_overflow(t1, t2, &sum)) {
        throw DegenerateError("sigmoid derivative coefficients overflow at order " +
                              std::to_string(order));
      }
      next[a - 1] = sum;
    }
    prev = std::move(next);
  }
  return prev;
}

double sigmoid_mth_deriv(double z, unsigned m) {
  const double s = sigmoid(z);
  if (m == 0) return s;
  const double one_minus = sigmoid(-z);
  const auto coeffs = sigmoid_deriv_coeffs(m);
  double total = 0.0;
  for (unsigned a = 1; a <= m; ++a) {
    const double term = static_cast<double>(coeffs[a - 1]) * std::pow(s, a) *
                        std::pow(one_minus, static_cast<int>(m + 1 - a));
    total += (a % 2 == 1) ? term : -term;
  }
  return total;
}

double partial_derivative(const SieveNetwork& net,
                          const Eigen::Ref<const Vector>& x,
                          const std::vector<unsigned>& beta) {
  if (x.size() != net.input_dim()) throw DimensionError("point dimension mismatch");
  if (static_cast<Index>(beta.size()) != net.input_dim()) {
    throw DimensionError("multi-index dimension mismatch");
  }
  unsigned order = 0;
  for (unsigned b : beta) order += b;
  if (order == 0) throw std::invalid_argument("multi-index order must be >= 1");

  double total = 0.0;
  for (Index j = 0; j < net.width(); ++j) {
    double monomial = 1.0;
    for (Index i = 0; i < net.input_dim(); ++i) {
      const unsigned b = beta[static_cast<std::size_t>(i)];
      if (b > 0) monomial *= std::pow(net.gammas(j, i), static_cast<int>(b));
    }
    if (monomial == 0.0 || net.alphas[j] == 0.0) continue;
    const double z = net.gammas.row(j).dot(x) + net.gamma0s[j];
    total += net.alphas[j] * monomial * sigmoid_mth_deriv(z, order);
  }
  return total;
}

double sup_derivative_bound(double v_budget, double m_budget, unsigned m) {
  double factorial = 1.0;
  for (unsigned k = 2; k <= m; ++k) factorial *= static_cast<double>(k);
  const double bound = v_budget * std::pow(m_budget, static_cast<double>(m)) * factorial;
  if (!std::isfinite(bound)) {
    throw DegenerateError("derivative bound overflows at order " + std::to_string(m));
  }
  return bound;
}

double sup_derivative_bound(const SieveNetwork& net, unsigned m) {
  return sup_derivative_bound(net.v_budget, net.m_budget, m);
}

double phi_hat(const SieveNetwork& net, const Dataset& data,
               const std::vector<Index>& features) {
  if (features.empty()) throw std::invalid_argument("feature set is empty");
  if (net.input_dim() != data.d()) throw DimensionError("network/data dimension mismatch");
  for (Index f : features) {
    if (f < 0 || f >= data.d()) throw DimensionError("feature index out of range");
  }
  // d f / d x_k (x) = sum_j alpha_j gamma_jk s_j (1 - s_j)
  Matrix z = data.x() * net.gammas.transpose();
  z.rowwise() += net.gamma0s.transpose();
  const Matrix s = (1.0 + (-z.array()).exp()).inverse().matrix();
  const Matrix weighted =
      ((s.array() * (1.0 - s.array())).rowwise() * net.alphas.transpose().array()).matrix();
  double total = 0.0;
  for (Index f : features) {
    const Vector grad_f = weighted * net.gammas.col(f);
    total += grad_f.squaredNorm();
  }
  return total / static_cast<double>(data.n());
}

}  // namespace sqlr
