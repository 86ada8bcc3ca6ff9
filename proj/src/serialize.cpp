#include "hypermatch/serialize.hpp"

#include <sstream>

namespace hypermatch {

nlohmann::json to_json(const Hypergraph& g) {
  const auto& p = g.params();
  return {{"m", p.m}, {"d", p.d}, {"l", p.l}, {"vertex_of", g.vertex_of()}};
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    auto p = make_params(j.at("m").get<std::int64_t>(), j.at("d").get<std::int64_t>(),
                         j.at("l").get<std::int64_t>());
    auto v = j.at("vertex_of").get<std::vector<int>>();
    return Hypergraph(p, v);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad hypergraph json: ") + e.what());
  }
}

std::string to_text(const Hypergraph& g) {
  const auto& p = g.params();
  std::ostringstream out;
  out << p.m << ' ' << p.d << ' ' << p.l << " :";
  for (int v : g.vertex_of()) out << ' ' << v;
  return out.str();
}

Hypergraph hypergraph_from_text(const std::string& line) {
  std::istringstream in(line);
  std::int64_t m = 0, d = 0, l = 0;
  std::string colon;
  if (!(in >> m >> d >> l >> colon) || colon != ":")
    throw ParseError("expected 'm d l : v0 v1 ...'");
  auto p = make_params(m, d, l);
  std::vector<int> v;
  for (int x; in >> x;) v.push_back(x);
  if (!in.eof()) throw ParseError("non-integer vertex id");
  return Hypergraph(p, v);
}

}  // namespace hypermatch
