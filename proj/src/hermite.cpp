#include "hv/hermite.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hv {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

// Symmetric tridiagonal Jacobi matrix of the He family: zero diagonal,
// off-diagonal sqrt(k). Its eigenvalues are the zeros of He_n.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> jacobi_eigen(int n, bool vectors)
{
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Jacobi eigensolver did not converge");
  return solver;
}

// Newton refinement of a zero of He_n, using He_n' = n He_{n-1}.
double newton_polish(int n, double x)
{
  for (int it = 0; it < 3; ++it) {
    double prev = 1.0, cur = x;
    for (int k = 1; k < n; ++k) {
      double next = x * cur - k * prev;
      prev = cur;
      cur = next;
    }
    const double deriv = n * prev;
    if (deriv == 0.0) break;
    const double step = cur / deriv;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

double hermite_eval(int n, double x)
{
  if (n < 0) return 0.0;
  if (n == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_eval_all(double x, std::span<double> out)
{
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k)
    out[k + 1] = x * out[k] - static_cast<double>(k) * out[k - 1];
}

double greatest_zero(int n)
{
  if (n < 1) throw std::invalid_argument("greatest_zero: n must be >= 1, got " + std::to_string(n));
  if (n == 1) return 0.0;
  const auto solver = jacobi_eigen(n, false);
  return newton_polish(n, solver.eigenvalues()[n - 1]);
}

QuadratureRule quadrature(int n)
{
  if (n < 1) throw std::invalid_argument("quadrature: n must be >= 1, got " + std::to_string(n));
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = kSqrt2Pi;
    return rule;
  }

  const auto solver = jacobi_eigen(n, false);
  for (int i = 0; i < n; ++i) rule.nodes[i] = newton_polish(n, solver.eigenvalues()[i]);
  // Enforce exact symmetry about the origin.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

  // Christoffel weights from the orthonormal recursion p_k = He_k / sqrt(k!).
  for (int i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    double prev = 0.0, cur = 1.0, sum = 1.0;
    for (int k = 0; k + 1 < n; ++k) {
      const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) / std::sqrt(k + 1.0);
      prev = cur;
      cur = next;
      sum += cur * cur;
    }
    rule.weights[i] = kSqrt2Pi / sum;
  }
  for (int i = 0; i < n / 2; ++i) {
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace hv
