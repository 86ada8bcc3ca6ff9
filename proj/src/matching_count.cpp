#include "hypermatch/matching_count.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hypermatch {

namespace {

// Edges whose l half-edges sit in l distinct vertices; others can never be matched.
std::vector<int> admissible_edges(const Hypergraph& g) {
  const auto& p = g.params();
  std::vector<int> out;
  std::vector<int> vs(p.l);
  for (std::int64_t e = 0; e < p.m; ++e) {
    for (std::int64_t j = 0; j < p.l; ++j) vs[j] = g.edge_vertex(e, j);
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) == vs.end()) out.push_back(static_cast<int>(e));
  }
  return out;
}

class MatchingSearch {
 public:
  MatchingSearch(const Hypergraph& g, const CountOptions& opt)
      : g_(g), l_(g.params().l), budget_(opt.node_budget), edges_(admissible_edges(g)),
        used_(g.params().vertices(), 0) {}

  std::vector<std::uint64_t> count() {
    counts_.assign(g_.params().m / g_.params().d + 1, 0);
    count_from(0, 0);
    return counts_;
  }

  int maximum() {
    best_ = 0;
    free_vertices_ = g_.params().vertices();
    max_from(0, 0);
    return best_;
  }

 private:
  void tick() {
    if (++nodes_ > budget_)
      throw BudgetExceeded("matching search exceeded node budget " + std::to_string(budget_));
  }

  bool fits(int e) const {
    for (std::int64_t j = 0; j < l_; ++j)
      if (used_[g_.edge_vertex(e, j)]) return false;
    return true;
  }

  void mark(int e, char on) {
    for (std::int64_t j = 0; j < l_; ++j) used_[g_.edge_vertex(e, j)] = on;
  }

  // One node per matching: the matching built so far is counted on entry.
  void count_from(std::size_t i, int size) {
    tick();
    ++counts_[size];
    for (std::size_t j = i; j < edges_.size(); ++j) {
      if (!fits(edges_[j])) continue;
      mark(edges_[j], 1);
      count_from(j + 1, size + 1);
      mark(edges_[j], 0);
    }
  }

  void max_from(std::size_t i, int size) {
    tick();
    best_ = std::max(best_, size);
    for (std::size_t j = i; j < edges_.size(); ++j) {
      auto bound = size + std::min<std::int64_t>(edges_.size() - j, free_vertices_ / l_);
      if (bound <= best_) return;
      if (!fits(edges_[j])) continue;
      mark(edges_[j], 1);
      free_vertices_ -= l_;
      max_from(j + 1, size + 1);
      free_vertices_ += l_;
      mark(edges_[j], 0);
    }
  }

  const Hypergraph& g_;
  std::int64_t l_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> edges_;
  std::vector<char> used_;
  std::vector<std::uint64_t> counts_;
  int best_ = 0;
  std::int64_t free_vertices_ = 0;
};

}  // namespace

std::vector<ExactInteger> count_by_size(const Hypergraph& g, const CountOptions& opt) {
  auto raw = MatchingSearch(g, opt).count();
  std::vector<ExactInteger> out;
  out.reserve(raw.size());
  for (auto c : raw) out.emplace_back(std::to_string(c));
  return out;
}

ExactInteger count_all_matchings(const Hypergraph& g, const CountOptions& opt) {
  ExactInteger z = 0;
  for (const auto& c : count_by_size(g, opt)) z += c;
  return z;
}

double evaluate_polynomial(const std::vector<ExactInteger>& coefficients, double x) {
  double acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
    acc = acc * x + it->get_d();
  return acc;
}

double log_evaluate_polynomial(const std::vector<ExactInteger>& coefficients, double x) {
  // log-sum-exp over the non-zero terms
  double top = -INFINITY;
  std::vector<double> terms;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (coefficients[k] == 0) continue;
    double t = static_cast<double>(log_abs(coefficients[k])) + k * std::log(x);
    terms.push_back(t);
    top = std::max(top, t);
  }
  double s = 0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

WeightedPartition weighted_partition(const Hypergraph& g, double x, const CountOptions& opt) {
  if (!(x > 0)) throw DomainError("weight x must be positive");
  WeightedPartition w;
  w.coefficients = count_by_size(g, opt);
  w.value = evaluate_polynomial(w.coefficients, x);
  return w;
}

int max_matching(const Hypergraph& g, const CountOptions& opt) {
  return MatchingSearch(g, opt).maximum();
}

namespace {

// Counts closed walks v0 -a1-> e1 -b1-> v1 -a2-> ... -bk-> v0 with distinct
// vertices and distinct edges; each k-cycle appears 2k times.
class CycleWalker {
 public:
  CycleWalker(const Hypergraph& g, int k) : g_(g), p_(g.params()), k_(k) {
    members_.assign(p_.vertices(), {});
    for (std::int64_t h = 0; h < p_.half_edges(); ++h) members_[g.vertex(h)].push_back(h);
    on_vertex_.assign(p_.vertices(), 0);
    on_edge_.assign(p_.m, 0);
  }

  std::int64_t walks() {
    std::int64_t total = 0;
    for (int v = 0; v < p_.vertices(); ++v) {
      start_ = v;
      on_vertex_[v] = 1;
      total += extend(v, -1, 1);
      on_vertex_[v] = 0;
    }
    return total;
  }

 private:
  std::int64_t extend(int v, std::int64_t arrived_by, int step) {
    std::int64_t total = 0;
    for (std::int64_t a : members_[v]) {
      if (a == arrived_by) continue;
      std::int64_t e = a / p_.l;
      if (on_edge_[e]) continue;
      on_edge_[e] = 1;
      for (std::int64_t j = 0; j < p_.l; ++j) {
        std::int64_t b = e * p_.l + j;
        if (b == a) continue;
        int w = g_.vertex(b);
        if (step == k_) {
          if (w == start_) ++total;
        } else if (!on_vertex_[w]) {
          on_vertex_[w] = 1;
          total += extend(w, b, step + 1);
          on_vertex_[w] = 0;
        }
      }
      on_edge_[e] = 0;
    }
    return total;
  }

  const Hypergraph& g_;
  const Params& p_;
  int k_;
  int start_ = 0;
  std::vector<std::vector<std::int64_t>> members_;
  std::vector<char> on_vertex_, on_edge_;
};

}  // namespace

CycleCensus cycle_census(const Hypergraph& g, int b) {
  if (b < 1) throw DomainError("cycle length bound must be >= 1");
  const auto& p = g.params();
  CycleCensus c;
  c.counts.assign(b, 0);

  // 1-cycles: unordered pairs of half-edges of one edge in one vertex.
  std::vector<int> vs(p.l);
  for (std::int64_t e = 0; e < p.m; ++e) {
    for (std::int64_t j = 0; j < p.l; ++j) vs[j] = g.edge_vertex(e, j);
    std::sort(vs.begin(), vs.end());
    for (std::size_t i = 0; i < vs.size();) {
      std::size_t r = i;
      while (r < vs.size() && vs[r] == vs[i]) ++r;
      std::int64_t n = r - i;
      c.counts[0] += n * (n - 1) / 2;
      i = r;
    }
  }

  for (int k = 2; k <= b; ++k) {
    auto w = CycleWalker(g, k).walks();
    c.counts[k - 1] = w / (2 * k);
  }
  return c;
}

}  // namespace hypermatch
