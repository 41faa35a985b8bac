#include "mwsolve/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mw {

bool PreferenceProfile::approves(int v, int a) const {
  if (kind != BallotKind::Approval) {
    // A linear voter "approves" only its top choice for the purposes of the
    // ApprovalBinary model; callers that need thresholds use the reduction.
    return rank(v, a) == 0;
  }
  if (m <= 64 && !approval_bit.empty()) {
    return (approval_bit[v] >> (a - 1)) & 1u;
  }
  const auto& b = ballots[v];
  return std::binary_search(b.begin(), b.end(), a);
}

int PreferenceProfile::rank(int v, int a) const { return rank_of[v][a]; }

void PreferenceProfile::finalize() {
  if (n < 1 || m < 1) throw std::invalid_argument("profile needs n >= 1, m >= 1");
  if (static_cast<int>(ballots.size()) != n + 1)
    throw std::invalid_argument("ballots must have n+1 rows (row 0 unused)");
  approval_bit.clear();
  rank_of.clear();
  if (kind == BallotKind::Approval) {
    if (m <= 64) approval_bit.assign(n + 1, 0);
    for (int v = 1; v <= n; ++v) {
      auto& b = ballots[v];
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(b.begin(), b.end()) != b.end())
        throw std::invalid_argument("duplicate alternative in approval ballot");
      for (int a : b) {
        if (a < 1 || a > m) throw std::invalid_argument("alternative id out of range");
        if (m <= 64) approval_bit[v] |= 1ull << (a - 1);
      }
    }
  } else {
    rank_of.assign(n + 1, {});
    for (int v = 1; v <= n; ++v) {
      const auto& b = ballots[v];
      if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("linear ballot is not a permutation of 1..m");
      std::vector<int> rk(m + 1, -1);
      for (int pos = 0; pos < m; ++pos) {
        int a = b[pos];
        if (a < 1 || a > m || rk[a] != -1)
          throw std::invalid_argument("linear ballot is not a permutation of 1..m");
        rk[a] = pos;
      }
      rank_of[v] = std::move(rk);
    }
  }
}

PreferenceProfile make_approval_profile(int n, int m,
                                        std::vector<std::vector<int>> sets) {
  PreferenceProfile p;
  p.kind = BallotKind::Approval;
  p.n = n;
  p.m = m;
  if (static_cast<int>(sets.size()) == n) sets.insert(sets.begin(), std::vector<int>{});
  p.ballots = std::move(sets);
  p.finalize();
  return p;
}

PreferenceProfile make_linear_profile(int n, int m,
                                      std::vector<std::vector<int>> orders) {
  PreferenceProfile p;
  p.kind = BallotKind::Linear;
  p.n = n;
  p.m = m;
  if (static_cast<int>(orders.size()) == n) orders.insert(orders.begin(), std::vector<int>{});
  p.ballots = std::move(orders);
  p.finalize();
  return p;
}

MisrepresentationModel default_model(const PreferenceProfile& p) {
  return p.kind == BallotKind::Approval ? MisrepresentationModel::ApprovalBinary
                                        : MisrepresentationModel::Borda;
}

int misrep(const PreferenceProfile& p, MisrepresentationModel model, int voter,
           int alternative) {
  if (voter < 1 || voter > p.n) throw std::out_of_range("voter id out of range");
  if (alternative < 1 || alternative > p.m)
    throw std::out_of_range("alternative id out of range");
  if (model == MisrepresentationModel::ApprovalBinary) {
    if (p.kind != BallotKind::Approval)
      throw std::logic_error("ApprovalBinary model needs approval ballots");
    return p.approves(voter, alternative) ? 0 : 1;
  }
  if (p.kind != BallotKind::Linear)
    throw std::logic_error("Borda model needs linear ballots");
  return p.rank(voter, alternative);
}

ValidationResult validate_solution(const PreferenceProfile& p,
                                   MisrepresentationModel model, int k,
                                   Rule rule, Objective objective,
                                   const Solution& s) {
  ValidationResult r;
  if (static_cast<int>(s.committee.size()) != k) {
    r.violation = "committee size " + std::to_string(s.committee.size()) +
                  " != k=" + std::to_string(k);
    return r;
  }
  std::vector<char> in_committee(p.m + 1, 0);
  for (int a : s.committee) {
    if (a < 1 || a > p.m) {
      r.violation = "committee member " + std::to_string(a) + " out of range";
      return r;
    }
    if (in_committee[a]) {
      r.violation = "duplicate committee member " + std::to_string(a);
      return r;
    }
    in_committee[a] = 1;
  }
  if (static_cast<int>(s.assignment.size()) != p.n + 1) {
    r.violation = "assignment must map every voter (size n+1, slot 0 unused)";
    return r;
  }
  std::vector<int> load(p.m + 1, 0);
  long long sum = 0, mx = 0;
  for (int v = 1; v <= p.n; ++v) {
    int a = s.assignment[v];
    if (a < 1 || a > p.m || !in_committee[a]) {
      r.violation = "voter " + std::to_string(v) + " assigned to non-member " +
                    std::to_string(a);
      return r;
    }
    ++load[a];
    long long rho = misrep(p, model, v, a);
    sum += rho;
    mx = std::max(mx, rho);
  }
  if (rule == Rule::Monroe) {
    int lo = p.n / k, hi = (p.n + k - 1) / k;
    int at_hi = 0;
    for (int a : s.committee) {
      if (load[a] < lo || load[a] > hi) {
        r.violation = "load " + std::to_string(load[a]) + " of member " +
                      std::to_string(a) + " outside [" + std::to_string(lo) +
                      "," + std::to_string(hi) + "]";
        return r;
      }
      if (load[a] == hi) ++at_hi;
    }
    if (p.n % k != 0 && at_hi != p.n % k) {
      r.violation = "exactly " + std::to_string(p.n % k) +
                    " members must have load ceil(n/k), found " +
                    std::to_string(at_hi);
      return r;
    }
  }
  long long recomputed = objective == Objective::Sum ? sum : mx;
  if (s.score != recomputed) {
    r.violation = "score " + std::to_string(s.score) +
                  " != recomputed " + std::to_string(recomputed);
    return r;
  }
  r.ok = true;
  r.score = recomputed;
  return r;
}

ProfileFormatError::ProfileFormatError(int line_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
      line(line_) {}

namespace {

// Reads the next non-comment line; returns false at EOF.
bool next_line(std::istream& in, std::string& out, int& lineno) {
  while (std::getline(in, out)) {
    ++lineno;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    if (!out.empty() && out[0] == '#') continue;
    return true;
  }
  return false;
}

std::vector<int> parse_ids(const std::string& line, int lineno) {
  std::vector<int> ids;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      ids.push_back(v);
    } catch (const std::exception&) {
      throw ProfileFormatError(lineno, "bad integer '" + tok + "'");
    }
  }
  return ids;
}

}  // namespace

PreferenceProfile parse_profile(std::istream& in) {
  int lineno = 0;
  std::string line;
  if (!next_line(in, line, lineno)) throw ProfileFormatError(lineno, "empty file");
  PreferenceProfile p;
  if (line == "approval")
    p.kind = BallotKind::Approval;
  else if (line == "linear")
    p.kind = BallotKind::Linear;
  else
    throw ProfileFormatError(lineno, "header must be 'approval' or 'linear'");
  if (!next_line(in, line, lineno))
    throw ProfileFormatError(lineno, "missing '<n> <m>' line");
  auto header = parse_ids(line, lineno);
  if (header.size() != 2 || header[0] < 1 || header[1] < 1)
    throw ProfileFormatError(lineno, "expected '<n> <m>' with n,m >= 1");
  p.n = header[0];
  p.m = header[1];
  p.ballots.assign(1, {});
  for (int v = 1; v <= p.n; ++v) {
    if (!next_line(in, line, lineno))
      throw ProfileFormatError(lineno, "missing ballot for voter " + std::to_string(v));
    auto ids = parse_ids(line, lineno);
    if (p.kind == BallotKind::Approval) {
      std::sort(ids.begin(), ids.end());
      if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw ProfileFormatError(lineno, "duplicate alternative id");
      for (int a : ids)
        if (a < 1 || a > p.m)
          throw ProfileFormatError(
              lineno, "alternative id " + std::to_string(a) + " > m=" +
                          std::to_string(p.m));
    } else {
      if (static_cast<int>(ids.size()) != p.m)
        throw ProfileFormatError(lineno, "linear ballot must list all m alternatives");
      std::vector<char> seen(p.m + 1, 0);
      for (int a : ids) {
        if (a < 1 || a > p.m)
          throw ProfileFormatError(
              lineno, "alternative id " + std::to_string(a) + " > m=" +
                          std::to_string(p.m));
        if (seen[a]) throw ProfileFormatError(lineno, "ballot is not a permutation");
        seen[a] = 1;
      }
    }
    p.ballots.push_back(std::move(ids));
  }
  p.finalize();
  return p;
}

PreferenceProfile load_profile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open profile file: " + path);
  return parse_profile(f);
}

void write_profile(std::ostream& out, const PreferenceProfile& p) {
  out << (p.kind == BallotKind::Approval ? "approval" : "linear") << "\n";
  out << p.n << " " << p.m << "\n";
  for (int v = 1; v <= p.n; ++v) {
    const auto& b = p.ballots[v];
    for (size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
    out << "\n";
  }
}

std::string profile_to_string(const PreferenceProfile& p) {
  std::ostringstream ss;
  write_profile(ss, p);
  return ss.str();
}

PreferenceProfile reduce_max_to_approval(const PreferenceProfile& linear,
                                         int beta) {
  if (linear.kind != BallotKind::Linear)
    throw std::logic_error("reduce_max_to_approval needs a linear profile");
  if (beta < 0 || beta > linear.m - 1)
    throw std::invalid_argument("beta out of [0, m-1]");
  PreferenceProfile p;
  p.kind = BallotKind::Approval;
  p.n = linear.n;
  p.m = linear.m;
  p.ballots.assign(1, {});
  for (int v = 1; v <= linear.n; ++v) {
    std::vector<int> approved(linear.ballots[v].begin(),
                              linear.ballots[v].begin() + beta + 1);
    p.ballots.push_back(std::move(approved));
  }
  p.finalize();
  return p;
}

Solution solve_max_via_reduction(
    const PreferenceProfile& linear, int k,
    const std::function<Solution(const PreferenceProfile&, int)>& solve_sum,
    ReductionStats* stats) {
  if (linear.kind != BallotKind::Linear)
    throw std::logic_error("solve_max_via_reduction needs a linear profile");
  // Feasible(beta) := optimal approval MW+ of the reduced profile is 0.
  // beta = m-1 is always feasible (every voter approves everything), so the
  // search space is never empty; find the smallest feasible beta.
  int lo = 0, hi = linear.m - 1;
  int calls = 0;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    Solution s = solve_sum(reduce_max_to_approval(linear, mid), k);
    ++calls;
    if (s.score == 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  Solution best = solve_sum(reduce_max_to_approval(linear, lo), k);
  ++calls;
  if (stats) stats->solver_calls = calls;
  Solution out;
  out.rule = best.rule;
  out.objective = Objective::Max;
  out.k = k;
  out.score = lo;
  out.committee = best.committee;
  out.assignment = best.assignment;
  return out;
}

}  // namespace mw
