#pragma once

#include "sqlr/dataset.hpp"

namespace sqlr {

// One-hidden-layer sigmoid network
//
//   f(x) = alpha0 + sum_j alphas[j] * sigmoid(gammas.row(j) . x + gamma0s[j])
//
// living in the l1-constrained sieve
//
//   |alpha0| + sum_j |alphas[j]| <= v_budget
//   |gamma0s[j]| + sum_i |gammas(j, i)| <= m_budget   for every unit j.
//
// The fields are public; a network only satisfies the budget after
// project_constraints() (see is_feasible()).
struct SieveNetwork {
  SieveNetwork() = default;
  // All-zero network of width `width` on `input_dim` inputs. Throws
  // std::invalid_argument unless v_budget > 4, m_budget > 0, width >= 1 and
  // input_dim >= 1.
  SieveNetwork(Index input_dim, Index width, double v_budget, double m_budget);

  Index width() const { return alphas.size(); }
  Index input_dim() const { return gammas.cols(); }

  double output_l1() const;
  double unit_l1(Index unit) const;
  bool is_finite() const;
  bool is_feasible(double tol = 1e-12) const;

  double alpha0 = 0.0;
  Vector alphas;
  Matrix gammas;  // width x input_dim, one row per hidden unit
  Vector gamma0s;
  double v_budget = 1000.0;
  double m_budget = 1000.0;
};

// Partial derivatives of the squared-error loss, shaped like the network.
struct Gradient {
  double d_alpha0 = 0.0;
  Vector d_alphas;
  Matrix d_gammas;
  Vector d_gamma0s;
};

double sigmoid(double z);

double forward(const SieveNetwork& net, const Eigen::Ref<const Vector>& x);
// Network output at every row of `x`.
Vector predict(const SieveNetwork& net, const Matrix& x);

// Q_n(f) = (1/n) sum_i (y_i - f(x_i))^2
double mse(const SieveNetwork& net, const Dataset& data);
Gradient grad_mse(const SieveNetwork& net, const Dataset& data);

// Euclidean projection onto {w : ||w||_1 <= radius} by sort and soft
// threshold. Returns `v` unchanged when it is already inside the ball.
Vector project_l1(const Eigen::Ref<const Vector>& v, double radius);

// Projects (alpha0, alphas) onto the v_budget ball and each unit's
// (gamma0, gamma row) onto the m_budget ball.
SieveNetwork project_constraints(SieveNetwork net);

// Batched loss/gradient evaluation with reusable buffers for the training
// loop. Holds a reference to `x` and `y`; both must outlive it.
class LossEvaluator {
 public:
  LossEvaluator(const Matrix& x, const Vector& y);

  double loss(const SieveNetwork& net);
  double loss_and_gradient(const SieveNetwork& net, Gradient& grad);

 private:
  void forward_batch(const SieveNetwork& net);

  const Matrix& x_;
  const Vector& y_;
  Matrix hidden_;  // n x r activations
  Vector residual_;
};

}  // namespace sqlr
