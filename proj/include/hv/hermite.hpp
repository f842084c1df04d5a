#pragma once

#include <span>
#include <vector>

namespace hv {

/// Gauss-Hermite rule for the weight exp(-x^2/2) on the real line.
struct QuadratureRule
{
  std::vector<double> nodes;    ///< strictly increasing, symmetric about 0
  std::vector<double> weights;  ///< positive, summing to sqrt(2 pi)
  int order = 0;
};

/// Probabilists' Hermite polynomial He_n(x) by upward recursion.
/// He_n is identically zero for n < 0.
double hermite_eval(int n, double x);

/// Fills out[k] = He_k(x) for k = 0 .. out.size()-1.
void hermite_eval_all(double x, std::span<double> out);

/// Largest root of He_n, n >= 1.
double greatest_zero(int n);

/// n-point Gauss-Hermite rule (Golub-Welsch on the Jacobi matrix).
QuadratureRule quadrature(int n);

}  // namespace hv
