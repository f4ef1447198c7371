#pragma once

// Bijection solving over atom bins: log-space Sinkhorn, Hungarian
// discretization, a factorial brute-force oracle, and exhaustive search
// filtered by the net traversal.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlg/proof.hpp"
#include "tlg/proofnet.hpp"

namespace tlg {

using Matrix = Eigen::MatrixXd;

// Scores for one bin; values(r, c) scores linking rows[r] to cols[c].
struct ScoreMatrix {
  std::string atom;
  std::vector<int> rows;  // positive occurrence indices
  std::vector<int> cols;  // negative occurrence indices
  Matrix values;
};

struct SinkhornConfig {
  int iterations = 12;
  double temperature = 1.0;
  double epsilon = 1e-9;
};

// Log-space normalization: scale by 1/temperature, then alternate row and
// column log-sum-exp normalization `iterations` times. Returns the
// exponentiated matrix.
Matrix sinkhorn(const Matrix& m, const SinkhornConfig& cfg = {});
// Same result for each matrix; square matrices of equal size.
std::vector<Matrix> sinkhorn_batch(const std::vector<Matrix>& ms, const SinkhornConfig& cfg = {});

// Maximum-weight perfect assignment; among optimal assignments the
// lexicographically smallest (up to a 1e-9 tolerance on the optimum).
Assignment hungarian(const Matrix& m);

// Exact argmax over all n! permutations, lexicographically first on ties.
// Throws SizeError for n > 9.
Assignment brute_force_assignment(const Matrix& m);

double assignment_score(const Matrix& m, const Assignment& a);

// Per-bin hungarian(sinkhorn(values)); bins of size 1 are linked without
// scores. Throws MissingScores for a non-trivial bin without a matrix and
// SizeError when a matrix does not fit its bin.
Matching solve_bins(const ProofNetFrame& f, const std::vector<ScoreMatrix>& scores,
                    const SinkhornConfig& cfg = {}, bool parallel = false);

// Product of the bins' factorials.
double search_space(const ProofNetFrame& f);

struct ParseResult {
  Matching matching;
  Proof proof;
};

inline constexpr double kDefaultCap = 10080;

// Every matching whose net traverses to a checked proof, in lexicographic
// matching order (bins by atom name, rows ascending). Branches that already
// contain a cycle of links are pruned. Throws CapExceeded.
std::vector<ParseResult> exhaustive_parse(const ProofNetFrame& f, double cap = kDefaultCap);

}  // namespace tlg
