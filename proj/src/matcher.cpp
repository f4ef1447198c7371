#include "tlg/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <numeric>

#include "tlg/errors.hpp"

namespace tlg {

// ---------------------------------------------------------------------------
// Sinkhorn

namespace {

// Non-finite logits (masked entries) sit |log ε| below the smallest finite
// one; finite inputs are untouched.
Matrix scaled_logits(const Matrix& m, const SinkhornConfig& cfg) {
  Matrix l = m / cfg.temperature;
  if (l.allFinite()) return l;
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < l.size(); ++i)
    if (std::isfinite(l.data()[i])) lo = std::min(lo, l.data()[i]);
  if (!std::isfinite(lo)) lo = 0;
  double floor = lo + std::log(cfg.epsilon);
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    double& x = l.data()[i];
    if (std::isnan(x) || x < floor) x = floor;
    if (x == std::numeric_limits<double>::infinity()) x = std::numeric_limits<double>::max();
  }
  return l;
}

void normalize_rows(Matrix& l) {
  Eigen::VectorXd mx = l.rowwise().maxCoeff();
  l.colwise() -= mx;
  Eigen::VectorXd lse = l.array().exp().rowwise().sum().log().matrix();
  l.colwise() -= lse;
}

void normalize_cols(Matrix& l) {
  Eigen::RowVectorXd mx = l.colwise().maxCoeff();
  l.rowwise() -= mx;
  Eigen::RowVectorXd lse = l.array().exp().colwise().sum().log().matrix();
  l.rowwise() -= lse;
}

}  // namespace

Matrix sinkhorn(const Matrix& m, const SinkhornConfig& cfg) {
  if (m.rows() != m.cols()) throw SizeError("sinkhorn needs a square matrix");
  if (m.size() == 0) return m;
  Matrix l = scaled_logits(m, cfg);
  for (int it = 0; it < cfg.iterations; ++it) {
    normalize_rows(l);
    normalize_cols(l);
  }
  return l.array().exp().matrix();
}

std::vector<Matrix> sinkhorn_batch(const std::vector<Matrix>& ms, const SinkhornConfig& cfg) {
  std::vector<Matrix> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(sinkhorn(m, cfg));
  return out;
}

// ---------------------------------------------------------------------------
// Assignment

double assignment_score(const Matrix& m, const Assignment& a) {
  double s = 0;
  for (std::size_t r = 0; r < a.size(); ++r) s += m(static_cast<Eigen::Index>(r), a[r]);
  return s;
}

namespace {

// Shortest augmenting path on cost = -m. Fills the duals u (rows), v (cols)
// with u_i + v_j <= cost_ij, equality on the returned assignment.
Assignment solve_dual(const Matrix& m, std::vector<double>& u, std::vector<double>& v) {
  const int n = static_cast<int>(m.rows());
  const double inf = std::numeric_limits<double>::infinity();
  u.assign(n + 1, 0);
  v.assign(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);  // p[j]: row matched to col j (1-based)
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = -m(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  Assignment a(n);
  for (int j = 1; j <= n; ++j) a[p[j] - 1] = j - 1;
  return a;
}

}  // namespace

Assignment hungarian(const Matrix& m) {
  if (m.rows() != m.cols()) throw SizeError("hungarian needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return {};
  std::vector<double> u, v;
  Assignment match = solve_dual(m, u, v);

  // Every optimal assignment uses only tight edges of an optimal dual, so the
  // lexicographically first optimum is the first perfect matching of the
  // tight graph. Fix rows in order, rerouting the current matching along an
  // alternating path of tight edges when a smaller column is wanted.
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;
  auto tight = [&](int i, int j) { return -m(i, j) - u[i + 1] - v[j + 1] <= tol; };

  std::vector<int> owner(n);  // column -> row
  for (int i = 0; i < n; ++i) owner[match[i]] = i;
  std::vector<char> fixed_col(n, 0);

  // Alternating path from row `start` to column `target` among unfixed
  // rows/columns, avoiding row `banned`. Rewrites match/owner on success.
  std::vector<int> prev_col(n), seen_row(n);
  auto reroute = [&](int start, int target, int banned) {
    std::vector<int> queue{start};
    std::fill(seen_row.begin(), seen_row.end(), 0);
    std::fill(prev_col.begin(), prev_col.end(), -2);
    seen_row[start] = 1;
    std::vector<int> via(n, -1);  // row -> column that led to it
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int r = queue[qi];
      for (int c = 0; c < n; ++c) {
        if (fixed_col[c] || prev_col[c] != -2 || !tight(r, c)) continue;
        prev_col[c] = r;
        if (c == target) {
          int col = c;
          while (true) {
            int row = prev_col[col];
            int next = via[row];
            match[row] = col;
            owner[col] = row;
            if (row == start) return true;
            col = next;
          }
        }
        int nr = owner[c];
        if (nr == banned || seen_row[nr]) continue;
        seen_row[nr] = 1;
        via[nr] = c;
        queue.push_back(nr);
      }
    }
    return false;
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (fixed_col[j] || !tight(i, j)) continue;
      if (match[i] == j) break;
      // Give j to i: its current owner must reach i's old column.
      int displaced = owner[j];
      int freed = match[i];
      fixed_col[j] = 1;
      auto saved_match = match;
      auto saved_owner = owner;
      if (reroute(displaced, freed, i)) {
        match[i] = j;
        owner[j] = i;
        break;
      }
      match = std::move(saved_match);
      owner = std::move(saved_owner);
      fixed_col[j] = 0;
    }
    fixed_col[match[i]] = 1;
  }
  return match;
}

Assignment brute_force_assignment(const Matrix& m) {
  if (m.rows() != m.cols()) throw SizeError("assignment needs a square matrix");
  if (m.rows() > 9) throw SizeError("brute force is limited to n <= 9, got " +
                                    std::to_string(m.rows()));
  Assignment perm(static_cast<std::size_t>(m.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  Assignment best = perm;
  double best_score = assignment_score(m, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    double s = assignment_score(m, perm);
    if (s > best_score) {
      best_score = s;
      best = perm;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Bins

namespace {

// Reorders a score matrix onto the bin's row/column enumeration.
Matrix aligned(const ScoreMatrix& s, const Bin& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  if (s.values.rows() != n || s.values.cols() != n ||
      s.rows.size() != b.size() || s.cols.size() != b.size())
    throw SizeError("scores for " + b.atom + " are " + std::to_string(s.values.rows()) + "x" +
                    std::to_string(s.values.cols()) + ", bin has size " + std::to_string(n));
  auto position = [](const std::vector<int>& xs, int x) {
    auto it = std::find(xs.begin(), xs.end(), x);
    return it == xs.end() ? -1 : static_cast<int>(it - xs.begin());
  };
  Matrix out(n, n);
  std::vector<int> rpos, cpos;
  for (int r : s.rows) rpos.push_back(position(b.positives, r));
  for (int c : s.cols) cpos.push_back(position(b.negatives, c));
  auto is_perm = [&](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != static_cast<int>(i)) return false;
    return true;
  };
  if (!is_perm(rpos) || !is_perm(cpos))
    throw BijectionError("score indices for " + b.atom + " do not match the bin");
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out(rpos[r], cpos[c]) = s.values(r, c);
  return out;
}

}  // namespace

Matching solve_bins(const ProofNetFrame& f, const std::vector<ScoreMatrix>& scores,
                    const SinkhornConfig& cfg, bool parallel) {
  Matching result;
  std::map<std::size_t, std::vector<std::pair<std::string, Matrix>>> groups;
  auto all = bins(f);
  for (const auto& b : all) {
    if (b.positives.size() != b.negatives.size())
      throw BijectionError("bin " + b.atom + " is unbalanced");
    if (b.size() == 1) {
      result.per_atom[b.atom] = {0};
      continue;
    }
    auto it = std::find_if(scores.begin(), scores.end(),
                           [&](const ScoreMatrix& s) { return s.atom == b.atom; });
    if (it == scores.end()) throw MissingScores("no scores for bin " + b.atom);
    groups[b.size()].emplace_back(b.atom, aligned(*it, b));
  }

  using Solved = std::vector<std::pair<std::string, Assignment>>;
  auto solve_group = [&cfg](const std::vector<std::pair<std::string, Matrix>>& g) {
    std::vector<Matrix> ms;
    for (const auto& [_, m] : g) ms.push_back(m);
    auto soft = sinkhorn_batch(ms, cfg);
    Solved out;
    for (std::size_t k = 0; k < g.size(); ++k) out.emplace_back(g[k].first, hungarian(soft[k]));
    return out;
  };
  std::vector<Solved> solved;
  if (parallel) {
    std::vector<std::future<Solved>> jobs;
    for (const auto& [_, g] : groups)
      jobs.push_back(std::async(std::launch::async, solve_group, std::cref(g)));
    for (auto& j : jobs) solved.push_back(j.get());
  } else {
    for (const auto& [_, g] : groups) solved.push_back(solve_group(g));
  }
  for (auto& s : solved)
    for (auto& [atom, a] : s) result.per_atom[atom] = std::move(a);
  return result;
}

// ---------------------------------------------------------------------------
// Exhaustive search

double search_space(const ProofNetFrame& f) {
  double total = 1;
  for (const auto& b : bins(f))
    for (std::size_t k = 2; k <= b.size(); ++k) total *= static_cast<double>(k);
  return total;
}

namespace {

// Each phrase's head atom links to a negative owned by exactly one other
// tree. Those links must form a tree under the goal; a cycle among them
// survives every completion of the matching.
class Search {
 public:
  explicit Search(const ProofNetFrame& f) : frame_(f), all_(bins(f)) {
    const auto& nodes = f.nodes();
    owner_.assign(f.atoms().size(), kGoalSource);
    head_of_.assign(f.atoms().size(), -1);
    for (std::size_t i = 0; i < f.atoms().size(); ++i) owner_[i] = f.atoms()[i].source;
    for (int root : f.phrase_roots()) {
      if (root < 0) continue;
      int n = root;
      while (nodes[static_cast<std::size_t>(n)].kind != TypeKind::Atom) {
        const FrameNode& x = nodes[static_cast<std::size_t>(n)];
        n = x.kind == TypeKind::Arrow ? x.second : x.first;
      }
      const FrameNode& a = nodes[static_cast<std::size_t>(n)];
      head_of_[static_cast<std::size_t>(a.atom)] = a.source;
    }
    parent_.assign(f.sentence().phrases.size(), kUnset);
    for (const auto& b : all_) {
      current_[b.atom] = Assignment(b.size(), -1);
      taken_[b.atom] = std::vector<char>(b.size(), 0);
    }
  }

  std::vector<ParseResult> run() {
    descend(0, 0);
    return std::move(found_);
  }

 private:
  static constexpr int kUnset = -2;

  // Would phrase `p` having parent `q` close a cycle?
  bool closes_cycle(int p, int q) const {
    for (int x = q; x != kGoalSource && x != kUnset; x = parent_[static_cast<std::size_t>(x)])
      if (x == p) return true;
    return false;
  }

  void descend(std::size_t bin, std::size_t row) {
    if (bin == all_.size()) {
      accept();
      return;
    }
    const Bin& b = all_[bin];
    if (row == b.size()) {
      descend(bin + 1, 0);
      return;
    }
    int pos = b.positives[row];
    int phrase = head_of_[static_cast<std::size_t>(pos)];
    auto& taken = taken_[b.atom];
    for (std::size_t c = 0; c < b.size(); ++c) {
      if (taken[c]) continue;
      int neg = b.negatives[c];
      int q = owner_[static_cast<std::size_t>(neg)];
      if (phrase >= 0) {
        if (closes_cycle(phrase, q)) continue;
        parent_[static_cast<std::size_t>(phrase)] = q;
      }
      taken[c] = 1;
      current_[b.atom][row] = static_cast<int>(c);
      descend(bin, row + 1);
      taken[c] = 0;
      if (phrase >= 0) parent_[static_cast<std::size_t>(phrase)] = kUnset;
    }
  }

  void accept() {
    Matching m{current_};
    try {
      Proof p = traverse_to_proof(apply_matching(frame_, m));
      found_.push_back({std::move(m), std::move(p)});
    } catch (const Error&) {
      // rejected candidate
    }
  }

  const ProofNetFrame& frame_;
  std::vector<Bin> all_;
  std::vector<int> owner_;    // occurrence -> phrase index or goal
  std::vector<int> head_of_;  // positive occurrence -> phrase it heads, or -1
  std::vector<int> parent_;   // phrase -> tree consuming it
  std::map<std::string, Assignment> current_;
  std::map<std::string, std::vector<char>> taken_;
  std::vector<ParseResult> found_;
};

}  // namespace

std::vector<ParseResult> exhaustive_parse(const ProofNetFrame& f, double cap) {
  if (invariance_check(f)) return {};
  double space = search_space(f);
  if (space > cap) throw CapExceeded(space, cap);
  return Search(f).run();
}

}  // namespace tlg
