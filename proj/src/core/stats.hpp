#pragma once

#include <span>

namespace rednow {

double norm_pdf(double z);
double norm_cdf(double z);

// CDF of Student's t with df degrees of freedom.
double student_t_cdf(double t, int df);

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // divisor n-1
double sd(std::span<const double> x);

// Long-run variance of x with a Bartlett kernel, truncation
// floor(4*(n/100)^(2/9)).
double hac_variance(std::span<const double> x);

}  // namespace rednow
