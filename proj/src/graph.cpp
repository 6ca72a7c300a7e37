#include "orthograph/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "orthograph/element_io.hpp"
#include "orthograph/pathfinder.hpp"
#include "orthograph/sampling.hpp"

namespace orthograph {

bool Orthograph::adjacent(std::size_t i, std::size_t j) const {
  const IndexPair key = std::minmax(i, j);
  return std::binary_search(edges.begin(), edges.end(), key);
}

std::vector<std::vector<std::size_t>> Orthograph::neighbours() const {
  std::vector<std::vector<std::size_t>> out(vertices.size());
  for (auto [i, j] : edges) {
    out[i].push_back(j);
    out[j].push_back(i);
  }
  for (auto& n : out) std::sort(n.begin(), n.end());
  return out;
}

bool operator==(const Orthograph& a, const Orthograph& b) {
  return a.shape == b.shape && a.sampled == b.sampled && a.vertices == b.vertices && a.edges == b.edges &&
         a.indeterminate == b.indeterminate && a.seed == b.seed && a.tol.proj == b.tol.proj &&
         a.tol.vec == b.tol.vec && a.tol.eig == b.tol.eig && a.tol.ker == b.tol.ker && a.tol.orth == b.tol.orth;
}

namespace {

// Adds the edge or tie-band record for vertices i, j of g.
void classify_pair(Orthograph& g, std::size_t i, std::size_t j) {
  const MutualDecision d = mutual_strong(g.vertices[i], g.vertices[j], g.tol);
  switch (d.outcome(g.tol)) {
    case Outcome::Orthogonal:
      g.edges.emplace_back(std::minmax(i, j));
      break;
    case Outcome::Indeterminate:
      g.indeterminate.emplace_back(std::minmax(i, j));
      break;
    case Outcome::NotOrthogonal:
      break;
  }
}

void normalize(Orthograph& g) {
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  std::sort(g.indeterminate.begin(), g.indeterminate.end());
  g.indeterminate.erase(std::unique(g.indeterminate.begin(), g.indeterminate.end()), g.indeterminate.end());
}

bool isolated_vertex(const Element& v, const Tolerances& tol) { return is_right_invertible(v, tol); }

}  // namespace

Orthograph build_graph(const std::vector<Element>& vertices, const Tolerances& tol) {
  Orthograph g;
  g.tol = tol;
  if (vertices.empty()) return g;
  g.shape = vertices.front().shape();
  for (const Element& v : vertices) {
    require_same_shape(vertices.front(), v);
    if (v.is_zero()) throw Error(ErrorKind::ZeroElement, "the zero element is not a vertex");
    const bool duplicate = std::any_of(g.vertices.begin(), g.vertices.end(),
                                       [&](const Element& w) { return projective_equal(v, w, tol); });
    if (!duplicate) g.vertices.push_back(v);
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) classify_pair(g, i, j);
  }
  g.sampled = g.size();
  normalize(g);
  return g;
}

IsolationReport classify_isolated(const std::vector<Element>& vertices, const Tolerances& tol) {
  IsolationReport r;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (isolated_vertex(vertices[i], tol)) {
      r.isolated.push_back(i);
      continue;
    }
    try {
      r.candidates.emplace_back(i, non_isolated_witness(vertices[i], tol));
    } catch (const Error&) {
      r.unresolved.push_back(i);
    }
  }
  return r;
}

int ComponentReport::max_distance_non_isolated(std::size_t limit) const {
  std::vector<std::size_t> members;
  for (std::size_t v = 0; v < std::min(limit, component_of.size()); ++v) {
    if (!std::binary_search(isolated.begin(), isolated.end(), v)) members.push_back(v);
  }
  int worst = 0;
  for (std::size_t i : members) {
    for (std::size_t j : members) {
      if (distances[i][j] == kUnreachable) return kUnreachable;
      worst = std::max(worst, distances[i][j]);
    }
  }
  return worst;
}

std::size_t ComponentReport::non_isolated_component_count() const {
  std::set<std::size_t> seen;
  for (std::size_t v = 0; v < component_of.size(); ++v) {
    if (!std::binary_search(isolated.begin(), isolated.end(), v)) seen.insert(component_of[v]);
  }
  return seen.size();
}

ComponentReport components_and_distances(const Orthograph& g) {
  ComponentReport r;
  const std::size_t n = g.size();
  const auto nb = g.neighbours();
  r.distances.assign(n, std::vector<int>(n, ComponentReport::kUnreachable));
  for (std::size_t s = 0; s < n; ++s) {
    auto& dist = r.distances[s];
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : nb[u]) {
        if (dist[w] == ComponentReport::kUnreachable) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  r.component_of.assign(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (r.component_of[s] != n) continue;
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n; ++v) {
      if (r.distances[s][v] != ComponentReport::kUnreachable) {
        r.component_of[v] = r.components.size();
        members.push_back(v);
      }
    }
    r.components.push_back(std::move(members));
  }
  r.eccentricity.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) r.eccentricity[v] = std::max(r.eccentricity[v], r.distances[v][w]);
  }
  for (const auto& c : r.components) {
    int d = 0;
    for (std::size_t v : c) d = std::max(d, r.eccentricity[v]);
    r.component_diameter.push_back(d);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (r.distances[i][j] > 0) ++r.histogram[r.distances[i][j]];
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (isolated_vertex(g.vertices[v], g.tol)) {
      r.isolated.push_back(v);
    } else if (nb[v].empty()) {
      r.unlinked.push_back(v);
    }
  }
  return r;
}

namespace {

std::vector<int> distances_from(const Orthograph& g, std::size_t source) {
  const auto nb = g.neighbours();
  std::vector<int> dist(g.size(), ComponentReport::kUnreachable);
  dist[source] = 0;
  std::deque<std::size_t> queue{source};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w : nb[u]) {
      if (dist[w] == ComponentReport::kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

Orthograph augment_with_paths(const Orthograph& g, const Tolerances& tol) {
  if (g.shape.is_small()) throw Error(ErrorKind::SmallAlgebra, g.shape.to_string() + " is excluded from path construction");
  Orthograph out = g;
  out.tol = tol;

  std::vector<std::size_t> members;
  for (std::size_t v = 0; v < out.sampled; ++v) {
    if (!isolated_vertex(out.vertices[v], tol)) members.push_back(v);
  }
  auto index_of = [&](const Element& e) -> std::size_t {
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (projective_equal(e, out.vertices[k], tol)) return k;
    }
    out.vertices.push_back(e);
    return out.size() - 1;
  };

  // Adding vertices and edges never increases a distance, so one pass over
  // the sampled pairs suffices.
  for (std::size_t a = 0; a < members.size(); ++a) {
    const std::size_t i = members[a];
    std::vector<int> dist = distances_from(out, i);
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const std::size_t j = members[b];
      if (dist[j] != ComponentReport::kUnreachable && dist[j] <= 4) continue;
      const OrthPath path = connect(out.vertices[i], out.vertices[j], tol);
      std::vector<std::size_t> ids{i};
      for (std::size_t k = 1; k + 1 < path.vertices.size(); ++k) ids.push_back(index_of(path.vertices[k]));
      ids.push_back(j);
      for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
        if (ids[k] == ids[k + 1]) continue;
        const IndexPair e = std::minmax(ids[k], ids[k + 1]);
        out.edges.push_back(e);
        std::erase(out.indeterminate, e);
      }
      normalize(out);
      dist = distances_from(out, i);
    }
  }
  return out;
}

std::vector<Element> sample_vertices(const AlgebraShape& shape, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t total = shape.total_dim();
  std::vector<Element> out;
  std::vector<Element> base;  // vertices that neighbours may be built from
  auto random_k = [&]() { return std::uniform_int_distribution<std::size_t>(1, total - 1)(rng); };
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t slot = i % 10;
    Element v = Element::zero(shape);
    if (total == 1 || slot == 9) {
      v = sample_element(shape, RankProfile::full(), rng);
    } else if (slot >= 7 && !base.empty()) {
      const Element& from = base[std::uniform_int_distribution<std::size_t>(0, base.size() - 1)(rng)];
      v = non_isolated_witness(from);
    } else if (slot >= 4 && slot < 7) {
      v = sample_element(shape, RankProfile::projection(random_k()), rng);
    } else {
      v = sample_element(shape, RankProfile::deficient(random_k()), rng);
    }
    if (slot < 7 && !is_right_invertible(v)) base.push_back(v);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

std::string dot_label(const AlgebraShape& shape) { return shape.to_string(); }

nlohmann::json pairs_json(const std::vector<IndexPair>& pairs) {
  nlohmann::json out = nlohmann::json::array();
  for (auto [i, j] : pairs) out.push_back({i, j});
  return out;
}

std::vector<IndexPair> pairs_from_json(const nlohmann::json& j, std::size_t n) {
  std::vector<IndexPair> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::ParseError, "pair must be [i, j]");
    const auto a = p[0].get<std::size_t>(), b = p[1].get<std::size_t>();
    if (a >= n || b >= n || a == b) throw Error(ErrorKind::ParseError, "pair index out of range");
    out.emplace_back(std::minmax(a, b));
  }
  return out;
}

}  // namespace

std::string export_dot(const Orthograph& g) {
  std::ostringstream os;
  os << "graph orthograph {\n";
  os << "  label=\"" << dot_label(g.shape) << "\";\n";
  os << "  node [shape=circle];\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    os << "  v" << v << " [label=\"" << v << "\"";
    if (isolated_vertex(g.vertices[v], g.tol)) os << ", shape=box, style=filled, fillcolor=gray80";
    os << "];\n";
  }
  for (auto [i, j] : g.edges) os << "  v" << i << " -- v" << j << ";\n";
  for (auto [i, j] : g.indeterminate) os << "  v" << i << " -- v" << j << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

std::string export_json(const Orthograph& g) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["shape"] = shape_to_json(g.shape);
  j["vertices"] = nlohmann::json::array();
  for (const Element& v : g.vertices) j["vertices"].push_back(to_json(v));
  j["sampled_vertices"] = g.sampled;
  j["edges"] = pairs_json(g.edges);
  j["indeterminate"] = pairs_json(g.indeterminate);
  nlohmann::json isolated = nlohmann::json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (isolated_vertex(g.vertices[v], g.tol)) isolated.push_back(v);
  }
  j["isolated"] = isolated;
  nlohmann::json prov;
  prov["seed"] = g.seed ? nlohmann::json(*g.seed) : nlohmann::json(nullptr);
  prov["tolerances"] = {{"proj", g.tol.proj}, {"vec", g.tol.vec}, {"eig", g.tol.eig},
                        {"ker", g.tol.ker},   {"orth", g.tol.orth}};
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

Orthograph import_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format_version").get<int>() != 1) throw Error(ErrorKind::ParseError, "unsupported format_version");
    Orthograph g;
    g.shape = shape_from_json(j.at("shape"));
    for (const auto& v : j.at("vertices")) {
      g.vertices.push_back(element_from_json(v));
      if (!(g.vertices.back().shape() == g.shape)) throw Error(ErrorKind::ParseError, "vertex shape differs from graph shape");
    }
    g.sampled = j.at("sampled_vertices").get<std::size_t>();
    if (g.sampled > g.size()) throw Error(ErrorKind::ParseError, "sampled_vertices exceeds vertex count");
    g.edges = pairs_from_json(j.at("edges"), g.size());
    g.indeterminate = pairs_from_json(j.at("indeterminate"), g.size());
    const auto& prov = j.at("provenance");
    if (!prov.at("seed").is_null()) g.seed = prov.at("seed").get<std::uint64_t>();
    const auto& t = prov.at("tolerances");
    g.tol.proj = t.at("proj").get<double>();
    g.tol.vec = t.at("vec").get<double>();
    g.tol.eig = t.at("eig").get<double>();
    g.tol.ker = t.at("ker").get<double>();
    g.tol.orth = t.at("orth").get<double>();
    g.tol.validate();
    normalize(g);
    return g;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string format_report(const Orthograph& g, const ComponentReport& r) {
  std::ostringstream os;
  os << "shape " << g.shape.to_string() << ": " << g.size() << " vertices, " << g.edges.size() << " edges, "
     << g.indeterminate.size() << " indeterminate pairs\n";
  os << "isolated (right invertible): " << r.isolated.size() << "\n";
  os << "non-invertible without sampled neighbour: " << r.unlinked.size() << "\n";
  os << "components: " << r.components.size() << " (" << r.non_isolated_component_count()
     << " containing non-isolated vertices)\n";
  for (std::size_t c = 0; c < r.components.size(); ++c) {
    if (r.components[c].size() < 2) continue;
    os << "  component " << c << ": " << r.components[c].size() << " vertices, observed diameter (upper bound) "
       << r.component_diameter[c] << "\n";
  }
  os << "observed distance (upper bound) histogram:\n";
  for (auto [d, count] : r.histogram) os << "  " << d << ": " << count << "\n";
  const int worst = r.max_distance_non_isolated(g.sampled);
  if (g.sampled < g.size()) os << "vertices added by path construction: " << g.size() - g.sampled << "\n";
  os << "max observed distance between sampled non-isolated vertices: "
     << (worst == ComponentReport::kUnreachable ? std::string("disconnected") : std::to_string(worst)) << "\n";
  return os.str();
}

}  // namespace orthograph
