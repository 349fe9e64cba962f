#pragma once

// Gauss-Jacobi rules for the weight (1-x)^a (1+x)^b on (-1, 1), built by
// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal
// recurrence matrix, weights come from the Christoffel function.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "symharm/specfun.hpp"

namespace symharm {

struct QuadratureRule {
  double alpha_w = 0.0;  // exponent on (1-x)
  double beta_w = 0.0;   // exponent on (1+x)
  std::vector<double> nodes;    // strictly increasing, inside (-1, 1)
  std::vector<double> weights;  // positive; sum equals the weight's mass
  double total_mass = 0.0;      // 2^{a+b+1} B(a+1, b+1)

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Q-point Gauss-Jacobi rule, exact for polynomials of degree <= 2Q-1.
inline QuadratureRule gauss_jacobi_rule(double alpha_w, double beta_w, int Q) {
  if (!(alpha_w > -1.0) || !(beta_w > -1.0))
    throw std::invalid_argument("gauss_jacobi_rule: exponents must be > -1");
  if (Q < 1) throw std::invalid_argument("gauss_jacobi_rule: Q must be >= 1");

  const double a = alpha_w, b = beta_w;
  const double mu0 =
      std::exp((a + b + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0));

  Eigen::VectorXd diag(Q);
  Eigen::VectorXd sub(Q > 1 ? Q - 1 : 1);
  diag(0) = (b - a) / (a + b + 2.0);
  for (int k = 1; k < Q; ++k) {
    const double t = 2.0 * k + a + b;
    diag(k) = (b * b - a * a) / (t * (t + 2.0));
    double bk;
    if (k == 1)
      bk = 4.0 * (a + 1.0) * (b + 1.0) /
           ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    else
      bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
           (t * t * (t + 1.0) * (t - 1.0));
    sub(k - 1) = std::sqrt(bk);
  }

  QuadratureRule rule;
  rule.alpha_w = a;
  rule.beta_w = b;
  rule.total_mass = mu0;
  rule.nodes.resize(Q);
  rule.weights.resize(Q);

  if (Q == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(Q - 1),
                            Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi_rule: tridiagonal eigensolve failed");
  for (int i = 0; i < Q; ++i) rule.nodes[i] = es.eigenvalues()(i);

  // Polish each node with two Newton steps on P_Q; the eigensolve is
  // backward stable but the weights want the roots to full precision.
  {
    std::vector<double> buf(static_cast<size_t>(Q) + 1);
    for (int i = 0; i < Q; ++i) {
      double x = rule.nodes[i];
      for (int it = 0; it < 2; ++it) {
        jacobi_all(a, b, Q, x, buf);
        const double pq = buf[static_cast<size_t>(Q)];
        const double pq1 = buf[static_cast<size_t>(Q) - 1];
        const double c = 2.0 * Q + a + b;
        const double dpq = (Q * (a - b - c * x) * pq +
                            2.0 * (Q + a) * (Q + b) * pq1) /
                           (c * (1.0 - x * x));
        const double dx = pq / dpq;
        if (!std::isfinite(dx)) break;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      rule.nodes[i] = x;
    }
  }

  // Weights via the Christoffel function: w_i = 1 / sum_k p_k(x_i)^2 with
  // p_k orthonormal. Recurrence: sqrt(b_{k+1}) p_{k+1} = (x - a_k) p_k -
  // sqrt(b_k) p_{k-1}.
  for (int i = 0; i < Q; ++i) {
    const double x = rule.nodes[i];
    double pm = 0.0;
    double pc = 1.0 / std::sqrt(mu0);
    double ssq = pc * pc;
    for (int k = 0; k + 1 < Q; ++k) {
      const double pn = ((x - diag(k)) * pc - (k > 0 ? sub(k - 1) : 0.0) * pm) /
                        sub(k);
      pm = pc;
      pc = pn;
      ssq += pc * pc;
    }
    rule.weights[i] = 1.0 / ssq;
  }
  return rule;
}

}  // namespace symharm
