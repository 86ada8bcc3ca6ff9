#include "hypermatch/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hypermatch/rng.hpp"

namespace hypermatch {

ConfigurationCounts count_configurations(const Params& p) {
  const std::int64_t n = p.half_edges(), v = p.vertices();
  ExactInteger top = factorial(n), vfac = factorial(v);
  ConfigurationCounts c;
  c.paper_count = top / (power(p.d, v) * vfac);
  c.partition_count = top / (power(factorial(p.d).get_si(), v) * vfac);
  return c;
}

namespace {

class PartitionWalker {
 public:
  PartitionWalker(const Params& p, const std::function<void(const Hypergraph&)>& visit)
      : p_(p), visit_(visit), vertex_of_(p.half_edges(), -1), fill_(p.vertices(), 0) {}

  void run() { place(0, 0); }

 private:
  // Label half-edge h with an open vertex or the next fresh one, smallest label
  // first, so the labellings come out as increasing restricted growth strings.
  // Every partial labelling completes because the total capacity is exactly L.
  void place(std::int64_t h, int used) {
    if (h == p_.half_edges()) {
      visit_(Hypergraph(p_, vertex_of_));
      return;
    }
    const int top = used < p_.vertices() ? used : used - 1;
    for (int v = 0; v <= top; ++v) {
      if (fill_[v] == p_.d) continue;
      vertex_of_[h] = v;
      ++fill_[v];
      place(h + 1, v == used ? used + 1 : used);
      --fill_[v];
    }
    vertex_of_[h] = -1;
  }

  const Params& p_;
  const std::function<void(const Hypergraph&)>& visit_;
  std::vector<int> vertex_of_;
  std::vector<int> fill_;
};

}  // namespace

void for_each_configuration(const Params& p, const std::function<void(const Hypergraph&)>& visit,
                            std::uint64_t cap) {
  auto total = count_configurations(p).partition_count;
  if (total > ExactInteger(std::to_string(cap)))
    throw CapExceeded(total.get_str() + " configurations exceed enumeration cap " +
                      std::to_string(cap));
  PartitionWalker(p, visit).run();
}

std::vector<Hypergraph> enumerate_all(const Params& p, std::uint64_t cap) {
  std::vector<Hypergraph> out;
  for_each_configuration(p, [&](const Hypergraph& g) { out.push_back(g); }, cap);
  return out;
}

Hypergraph sample_uniform(const Params& p, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<int> perm(p.half_edges());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> vertex_of(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) vertex_of[perm[i]] = static_cast<int>(i / p.d);
  return Hypergraph(p, vertex_of);
}

std::pair<Hypergraph, Matching> sample_conditional_on_matching(const Params& p, std::int64_t k,
                                                               std::uint64_t seed) {
  if (k < 0 || k > p.m) throw RangeError("matching size out of range");
  const std::int64_t matched = p.l * k;
  if (matched * p.d > p.half_edges())
    throw InfeasibleError("no configuration has a matching of size " + std::to_string(k));

  Rng rng = make_rng(seed);
  std::vector<int> rest(p.half_edges() - matched);
  std::iota(rest.begin(), rest.end(), static_cast<int>(matched));
  std::shuffle(rest.begin(), rest.end(), rng);

  // Matched half-edge i takes the i-th run of d-1 shuffled partners; the
  // remainder is cut into d-blocks.
  std::vector<int> vertex_of(p.half_edges());
  std::size_t pos = 0;
  int id = 0;
  for (std::int64_t i = 0; i < matched; ++i, ++id) {
    vertex_of[i] = id;
    for (std::int64_t j = 1; j < p.d; ++j) vertex_of[rest[pos++]] = id;
  }
  for (std::size_t c = 0; pos < rest.size(); ++pos, ++c) {
    if (c == static_cast<std::size_t>(p.d)) c = 0, ++id;
    vertex_of[rest[pos]] = id;
  }

  std::vector<int> edges(k);
  std::iota(edges.begin(), edges.end(), 0);
  return {Hypergraph(p, vertex_of), Matching(std::move(edges))};
}

ExactRational prob_fixed_matching(const Params& p, std::int64_t k) {
  if (k < 0 || k * p.d > p.m)
    throw RangeError("matching size " + std::to_string(k) + " exceeds m/d");
  const std::int64_t lk = p.l * k;
  ExactRational q(falling_factorial(p.vertices(), lk) * power(p.d, lk),
                  falling_factorial(p.half_edges(), lk));
  q.canonicalize();
  return q;
}

ExactRational prob_fixed_matching(const Params& p, const ExactRational& beta) {
  return prob_fixed_matching(p, integral_index(p.m, beta));
}

}  // namespace hypermatch
