#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypermatch/errors.hpp"

namespace hypermatch {

// Ensemble parameters: m hyperedges of size l, vertices of degree d.
struct Params {
  std::int64_t m = 0;
  std::int64_t d = 0;
  std::int64_t l = 0;

  std::int64_t half_edges() const { return l * m; }
  std::int64_t vertices() const { return l * m / d; }
  bool operator==(const Params&) const = default;
};

Params make_params(std::int64_t m, std::int64_t d, std::int64_t l);

std::int64_t hyperedge_of(const Params& p, std::int64_t half_edge);

// Relabel vertex ids by order of first appearance.
std::vector<int> canonical_labels(std::span<const int> vertex_of);

bool validate(const Params& p, std::span<const int> vertex_of);

// A configuration: half-edge i sits in vertex vertex_of[i]. Stored canonically,
// so two labelings of the same partition compare equal.
class Hypergraph {
 public:
  Hypergraph(const Params& p, std::span<const int> vertex_of);

  const Params& params() const { return params_; }
  const std::vector<int>& vertex_of() const { return vertex_of_; }
  int vertex(std::int64_t half_edge) const { return vertex_of_[half_edge]; }
  int edge_vertex(std::int64_t edge, std::int64_t slot) const {
    return vertex_of_[edge * params_.l + slot];
  }

  bool operator==(const Hypergraph&) const = default;

 private:
  Params params_;
  std::vector<int> vertex_of_;
};

bool validate(const Hypergraph& g);

class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<int> edges);

  const std::vector<int>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool operator==(const Matching&) const = default;

 private:
  std::vector<int> edges_;
};

bool is_matching(const Hypergraph& g, const Matching& m);

struct CycleCensus {
  std::vector<std::int64_t> counts;  // counts[k-1] = C_k
  int b() const { return static_cast<int>(counts.size()); }
  std::int64_t operator[](int k) const { return counts[k - 1]; }
};

}  // namespace hypermatch
