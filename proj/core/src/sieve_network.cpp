#include "sqlr/sieve_network.hpp"

#include "sqlr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqlr {

namespace {

// Sequential sum so the feasibility check and the projection agree to the
// last bit.
double l1_norm(const Eigen::Ref<const Vector>& v) {
  double s = 0.0;
  for (Index i = 0; i < v.size(); ++i) s += std::abs(v[i]);
  return s;
}

double head_l1(double head, const Eigen::Ref<const Vector>& tail) {
  return std::abs(head) + l1_norm(tail);
}

void check_input(const SieveNetwork& net, Index cols) {
  if (net.input_dim() != cols) {
    throw DimensionError("network expects " + std::to_string(net.input_dim()) +
                         " inputs, got " + std::to_string(cols));
  }
}

}  // namespace

SieveNetwork::SieveNetwork(Index input_dim, Index width, double v, double m)
    : alphas(Vector::Zero(width)),
      gammas(Matrix::Zero(width, input_dim)),
      gamma0s(Vector::Zero(width)),
      v_budget(v),
      m_budget(m) {
  if (input_dim < 1) throw std::invalid_argument("input dimension must be >= 1");
  if (width < 1) throw std::invalid_argument("width must be >= 1");
  if (!(v > 4.0) || !std::isfinite(v)) {
    throw std::invalid_argument("output budget V must be finite and > 4");
  }
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw std::invalid_argument("hidden budget M must be finite and > 0");
  }
}

double SieveNetwork::output_l1() const { return head_l1(alpha0, alphas); }

double SieveNetwork::unit_l1(Index unit) const {
  return head_l1(gamma0s[unit], gammas.row(unit).transpose());
}

bool SieveNetwork::is_finite() const {
  return std::isfinite(alpha0) && alphas.allFinite() && gammas.allFinite() &&
         gamma0s.allFinite();
}

bool SieveNetwork::is_feasible(double tol) const {
  if (!is_finite()) return false;
  if (output_l1() > v_budget + tol) return false;
  for (Index j = 0; j < width(); ++j) {
    if (unit_l1(j) > m_budget + tol) return false;
  }
  return true;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double forward(const SieveNetwork& net, const Eigen::Ref<const Vector>& x) {
  check_input(net, x.size());
  double f = net.alpha0;
  for (Index j = 0; j < net.width(); ++j) {
    f += net.alphas[j] * sigmoid(net.gammas.row(j).dot(x) + net.gamma0s[j]);
  }
  return f;
}

Vector predict(const SieveNetwork& net, const Matrix& x) {
  check_input(net, x.cols());
  Matrix z = x * net.gammas.transpose();
  z.rowwise() += net.gamma0s.transpose();
  const Matrix h = (1.0 + (-z.array()).exp()).inverse().matrix();
  return (h * net.alphas).array() + net.alpha0;
}

double mse(const SieveNetwork& net, const Dataset& data) {
  LossEvaluator eval(data.x(), data.y());
  return eval.loss(net);
}

Gradient grad_mse(const SieveNetwork& net, const Dataset& data) {
  LossEvaluator eval(data.x(), data.y());
  Gradient g;
  eval.loss_and_gradient(net, g);
  return g;
}

Vector project_l1(const Eigen::Ref<const Vector>& v, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("projection radius must be finite and > 0");
  }
  if (!v.allFinite()) throw std::invalid_argument("cannot project non-finite vector");
  if (l1_norm(v) <= radius) return v;

  std::vector<double> mags(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(v[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());

  // Largest k with mags[k-1] > (sum of top k - radius) / k.
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    cumulative += mags[k];
    const double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (mags[k] > candidate) theta = candidate;
  }

  Vector w(v.size());
  auto shrink = [&](double t) {
    for (Index i = 0; i < v.size(); ++i) {
      const double m = std::max(std::abs(v[i]) - t, 0.0);
      w[i] = std::copysign(m, v[i]);
      if (m == 0.0) w[i] = 0.0;
    }
  };
  shrink(theta);
  // Rounding can leave the norm a few ulps above the radius.
  const double ulp = std::numeric_limits<double>::epsilon() * mags.front();
  for (int pass = 0; pass < 64; ++pass) {
    const double excess = l1_norm(w) - radius;
    if (excess <= 0.0) break;
    const auto active = (w.array() != 0.0).count();
    theta += std::max(excess / static_cast<double>(std::max<Index>(active, 1)), ulp);
    shrink(theta);
  }
  return w;
}

SieveNetwork project_constraints(SieveNetwork net) {
  if (!net.is_finite()) throw std::invalid_argument("network has non-finite weights");
  const Index r = net.width();
  if (net.output_l1() > net.v_budget) {
    Vector block(r + 1);
    block[0] = net.alpha0;
    block.tail(r) = net.alphas;
    const Vector p = project_l1(block, net.v_budget);
    net.alpha0 = p[0];
    net.alphas = p.tail(r);
  }
  const Index d = net.input_dim();
  for (Index j = 0; j < r; ++j) {
    if (net.unit_l1(j) <= net.m_budget) continue;
    Vector block(d + 1);
    block[0] = net.gamma0s[j];
    block.tail(d) = net.gammas.row(j).transpose();
    const Vector p = project_l1(block, net.m_budget);
    net.gamma0s[j] = p[0];
    net.gammas.row(j) = p.tail(d).transpose();
  }
  return net;
}

LossEvaluator::LossEvaluator(const Matrix& x, const Vector& y) : x_(x), y_(y) {
  if (x_.rows() == 0) throw DataError("empty dataset");
  if (x_.rows() != y_.size()) throw DimensionError("X and Y row counts differ");
}

void LossEvaluator::forward_batch(const SieveNetwork& net) {
  check_input(net, x_.cols());
  hidden_.noalias() = x_ * net.gammas.transpose();
  hidden_.rowwise() += net.gamma0s.transpose();
  hidden_ = (1.0 + (-hidden_.array()).exp()).inverse();
  residual_.noalias() = y_ - hidden_ * net.alphas;
  residual_.array() -= net.alpha0;
}

double LossEvaluator::loss(const SieveNetwork& net) {
  forward_batch(net);
  return residual_.squaredNorm() / static_cast<double>(x_.rows());
}

double LossEvaluator::loss_and_gradient(const SieveNetwork& net, Gradient& g) {
  forward_batch(net);
  const double n = static_cast<double>(x_.rows());
  const double scale = -2.0 / n;

  g.d_alpha0 = scale * residual_.sum();
  g.d_alphas.noalias() = scale * (hidden_.transpose() * residual_);

  // delta(i, j) = scale * e_i * alpha_j * h_ij (1 - h_ij); reuse hidden_.
  hidden_.array() *= (1.0 - hidden_.array());
  hidden_.array().colwise() *= residual_.array() * scale;
  hidden_.array().rowwise() *= net.alphas.transpose().array();

  g.d_gamma0s.noalias() = hidden_.colwise().sum().transpose();
  g.d_gammas.noalias() = hidden_.transpose() * x_;

  return residual_.squaredNorm() / n;
}

}  // namespace sqlr
