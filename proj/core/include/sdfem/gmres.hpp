#pragma once

#include <vector>

#include "sdfem/csr.hpp"

namespace sdfem {

enum class Preconditioner { None, Jacobi };

struct GmresOptions {
  double tol = 1e-12;  // relative, against ||b||
  int restart = 50;
  int max_iters = 20000;  // total Arnoldi steps across restarts
  Preconditioner precond = Preconditioner::Jacobi;
  bool record_history = false;  // keep per-step least-squares residuals in stats
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;  // ||b - Ax|| / ||b||, recomputed from the returned x
  bool converged = false;
  int restarts = 0;
  bool breakdown = false;  // Arnoldi produced a zero vector before convergence
  std::vector<double> ls_residuals;  // only when record_history is set
};

struct GmresResult {
  std::vector<double> x;
  SolveStats stats;
};

// Restarted GMRES with optional diagonal preconditioning (applied from the
// right, so the iteration's residual is the residual of the original system).
// Orthogonalization is classical Gram-Schmidt with one reorthogonalization
// pass. On iteration exhaustion the best iterate seen at a cycle boundary is
// returned with converged=false.
GmresResult gmres(const CsrMatrix& a, const std::vector<double>& b,
                  const GmresOptions& opts = {});

} // namespace sdfem
