#pragma once

namespace sqlr {

// Probability in [0, 1].
class PValue {
 public:
  PValue() = default;
  // Throws std::invalid_argument when `value` is NaN or outside [0, 1] by more
  // than 1e-12; values within that slack are clamped.
  explicit PValue(double value);

  double value() const { return value_; }
  friend bool operator==(PValue, PValue) = default;

 private:
  double value_ = 1.0;
};

// ln Gamma(x), x > 0 (Lanczos, g = 7).
double log_gamma(double x);

// Regularized lower/upper incomplete gamma P(a, x), Q(a, x): series below
// x = a + 1, Lentz continued fraction above.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b) (Lentz continued fraction with the
// symmetry switch at x = (a + 1) / (a + b + 2)).
double incomplete_beta(double x, double a, double b);

// erfc(z) = Q(1/2, z^2) for z >= 0, 2 - erfc(-z) otherwise.
double erfc(double z);

// Survival function of chi-square with one degree of freedom.
// Throws std::invalid_argument for negative or NaN x.
PValue chisq1_sf(double x);

// Survival function of F(d1, d2). Throws std::invalid_argument for negative
// x or zero degrees of freedom.
PValue f_sf(double x, long long d1, long long d2);

}  // namespace sqlr
