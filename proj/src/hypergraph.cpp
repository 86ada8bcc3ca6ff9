#include "hypermatch/hypergraph.hpp"

#include <algorithm>
#include <string>

namespace hypermatch {

Params make_params(std::int64_t m, std::int64_t d, std::int64_t l) {
  if (m < 1) throw DomainError("m must be >= 1");
  if (d < 2 || l < 2) throw DomainError("d and l must be >= 2");
  if ((l * m) % d != 0)
    throw DivisibilityError("d=" + std::to_string(d) + " does not divide l*m=" +
                            std::to_string(l * m));
  return Params{m, d, l};
}

std::int64_t hyperedge_of(const Params& p, std::int64_t half_edge) {
  if (half_edge < 0 || half_edge >= p.half_edges())
    throw IndexError("half-edge " + std::to_string(half_edge) + " out of range");
  return half_edge / p.l;
}

std::vector<int> canonical_labels(std::span<const int> vertex_of) {
  std::vector<int> out(vertex_of.size());
  std::vector<int> relabel;
  int next = 0;
  for (std::size_t i = 0; i < vertex_of.size(); ++i) {
    int v = vertex_of[i];
    if (v < 0) throw DomainError("negative vertex id");
    if (v >= static_cast<int>(relabel.size())) relabel.resize(v + 1, -1);
    if (relabel[v] < 0) relabel[v] = next++;
    out[i] = relabel[v];
  }
  return out;
}

bool validate(const Params& p, std::span<const int> vertex_of) {
  if (static_cast<std::int64_t>(vertex_of.size()) != p.half_edges()) return false;
  if (p.d < 2 || p.half_edges() % p.d != 0) return false;
  std::vector<std::int64_t> degree(p.vertices(), 0);
  for (int v : vertex_of) {
    if (v < 0 || v >= p.vertices()) return false;
    ++degree[v];
  }
  return std::all_of(degree.begin(), degree.end(),
                     [&](std::int64_t c) { return c == p.d; });
}

Hypergraph::Hypergraph(const Params& p, std::span<const int> vertex_of)
    : params_(p) {
  if (!validate(p, vertex_of))
    throw DomainError("vertex_of is not a (d,l)-regular configuration");
  vertex_of_ = canonical_labels(vertex_of);
}

bool validate(const Hypergraph& g) { return validate(g.params(), g.vertex_of()); }

Matching::Matching(std::vector<int> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool is_matching(const Hypergraph& g, const Matching& m) {
  const auto& p = g.params();
  std::vector<char> used(p.vertices(), 0);
  for (int e : m.edges()) {
    if (e < 0 || e >= p.m) throw IndexError("edge " + std::to_string(e) + " out of range");
    for (std::int64_t j = 0; j < p.l; ++j) {
      int v = g.edge_vertex(e, j);
      if (used[v]) return false;
      used[v] = 1;
    }
  }
  return true;
}

}  // namespace hypermatch
