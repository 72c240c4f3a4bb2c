#pragma once

#include "qdist/sdp/problem.hpp"

namespace qdist::sdp {

/// Primal-dual path-following solve with Nesterov-Todd scaling, Mehrotra
/// predictor-corrector steps, dense Schur complement and Cholesky
/// factorization. Both the primal and the dual of the stated maximization
/// are assumed strictly feasible. Returns a solution for every status; the
/// caller decides whether non-optimal statuses are fatal.
SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});

}  // namespace qdist::sdp
