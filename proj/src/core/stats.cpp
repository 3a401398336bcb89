#include "core/stats.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "core/errors.hpp"

namespace rednow {

double norm_pdf(double z) {
  static const double inv_sqrt_2pi = 0.3989422804014327;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double student_t_cdf(double t, int df) {
  if (df < 1) throw ValidationError("student_t_cdf: df must be >= 1");
  const boost::math::students_t_distribution<double> dist{double(df)};
  return boost::math::cdf(dist, t);
}

double mean(std::span<const double> x) {
  if (x.empty()) throw ValidationError("mean of empty sequence");
  double s = 0;
  for (double v : x) s += v;
  return s / double(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw ValidationError("variance needs at least 2 values");
  const double m = mean(x);
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return s / double(x.size() - 1);
}

double sd(std::span<const double> x) { return std::sqrt(variance(x)); }

double hac_variance(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw ValidationError("hac_variance needs at least 2 values");
  const double m = mean(x);

  auto autocov = [&](std::size_t lag) {
    double s = 0;
    for (std::size_t t = lag; t < n; ++t) s += (x[t] - m) * (x[t - lag] - m);
    return s / double(n);
  };

  const int max_lag = int(std::floor(4.0 * std::pow(double(n) / 100.0, 2.0 / 9.0)));
  double v = autocov(0);
  for (int l = 1; l <= max_lag && std::size_t(l) < n; ++l) {
    const double w = 1.0 - double(l) / double(max_lag + 1);
    v += 2.0 * w * autocov(std::size_t(l));
  }
  return v;
}

}  // namespace rednow
