#include "uavsched/precedence.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <sstream>

namespace uavsched {

namespace {

// Fixed-width bitset rows, one per node.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  void set(std::size_t row, std::size_t col) { bits_[row * words_ + col / 64] |= bit(col); }
  bool test(std::size_t row, std::size_t col) const {
    return (bits_[row * words_ + col / 64] & bit(col)) != 0;
  }
  void merge_into(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w) bits_[dst * words_ + w] |= bits_[src * words_ + w];
  }
  std::vector<std::size_t> row(std::size_t r) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < n_; ++c) {
      if (test(r, c)) out.push_back(c);
    }
    return out;
  }

 private:
  static std::uint64_t bit(std::size_t col) { return std::uint64_t{1} << (col % 64); }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// reach.test(u, v) iff v is reachable from u through >= 1 edge, following
// `next` adjacency. Requires a topological order of the same graph.
BitMatrix closure(const PrecedenceGraph& graph, const std::vector<std::size_t>& order,
                  bool forward) {
  BitMatrix reach(graph.size());
  auto visit = [&](std::size_t u) {
    auto next = forward ? graph.succs(u) : graph.preds(u);
    for (std::size_t v : next) {
      reach.set(u, v);
      reach.merge_into(u, v);
    }
  };
  if (forward) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) visit(*it);
  } else {
    for (std::size_t u : order) visit(u);
  }
  return reach;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const PrecedenceGraph& graph) {
  // Iterative Tarjan.
  const std::size_t n = graph.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto succ = graph.succs(f.node);
      if (f.next_edge < succ.size()) {
        std::size_t v = succ[f.next_edge++];
        if (index[v] == kUnvisited) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = true;
          frames.push_back({v, 0});
        } else if (on_stack[v]) {
          low[f.node] = std::min(low[f.node], index[v]);
        }
        continue;
      }
      std::size_t u = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[u]);
      if (low[u] == index[u]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != u);
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

const std::vector<TaskId> kNoPredecessors;

}  // namespace

PrecedenceGraph::PrecedenceGraph(std::vector<TaskId> nodes, std::vector<PrecedenceEdge> edges)
    : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i], i).second) {
      throw std::invalid_argument("duplicate task id " + std::to_string(nodes_[i]) +
                                  " in precedence graph");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  preds_.resize(nodes_.size());
  succs_.resize(nodes_.size());
  pred_ids_.resize(nodes_.size());
  for (const auto& e : edges) {
    auto p = index_.find(e.pred);
    auto s = index_.find(e.succ);
    if (p == index_.end() || s == index_.end()) {
      throw std::invalid_argument("precedence edge " + std::to_string(e.pred) + "->" +
                                  std::to_string(e.succ) + " references an unknown task");
    }
    succs_[p->second].push_back(s->second);
    preds_[s->second].push_back(p->second);
    pred_ids_[s->second].push_back(e.pred);
  }
  for (auto& v : preds_) std::sort(v.begin(), v.end());
  for (auto& v : succs_) std::sort(v.begin(), v.end());
  edges_ = std::move(edges);
}

std::optional<std::size_t> PrecedenceGraph::index_of(TaskId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<TaskId>& PrecedenceGraph::predecessors_of(TaskId id) const {
  auto idx = index_of(id);
  return idx ? pred_ids_[*idx] : kNoPredecessors;
}

bool PrecedenceGraph::has_edge(TaskId pred, TaskId succ) const {
  return std::binary_search(edges_.begin(), edges_.end(), PrecedenceEdge{pred, succ});
}

std::string PrecedenceViolation::describe() const {
  std::ostringstream os;
  if (kind == Kind::kCycle) {
    os << "cyclic precedence among tasks {";
    for (std::size_t i = 0; i < tasks.size(); ++i) os << (i ? ", " : "") << tasks[i];
    os << "}";
  } else {
    os << "redundant precedence edge " << tasks.at(0) << " -> " << tasks.at(1)
       << " (implied by a longer path)";
  }
  return os.str();
}

std::optional<std::vector<std::size_t>> topological_order(const PrecedenceGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<std::size_t> indegree(n);
  for (std::size_t u = 0; u < n; ++u) indegree[u] = graph.preds(u).size();
  auto by_id = [&](std::size_t a, std::size_t b) { return graph.nodes()[a] > graph.nodes()[b]; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_id)> ready(by_id);
  for (std::size_t u = 0; u < n; ++u) {
    if (indegree[u] == 0) ready.push(u);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t u = ready.top();
    ready.pop();
    order.push_back(u);
    for (std::size_t v : graph.succs(u)) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

std::vector<std::vector<std::size_t>> transitive_successors(const PrecedenceGraph& graph) {
  auto order = topological_order(graph);
  if (!order) throw std::invalid_argument("precedence graph is cyclic");
  BitMatrix reach = closure(graph, *order, /*forward=*/true);
  std::vector<std::vector<std::size_t>> out(graph.size());
  for (std::size_t u = 0; u < graph.size(); ++u) out[u] = reach.row(u);
  return out;
}

std::vector<std::vector<std::size_t>> transitive_predecessors(const PrecedenceGraph& graph) {
  auto order = topological_order(graph);
  if (!order) throw std::invalid_argument("precedence graph is cyclic");
  BitMatrix reach = closure(graph, *order, /*forward=*/false);
  std::vector<std::vector<std::size_t>> out(graph.size());
  for (std::size_t u = 0; u < graph.size(); ++u) out[u] = reach.row(u);
  return out;
}

std::vector<PrecedenceViolation> validate_precedence(const PrecedenceGraph& graph) {
  std::vector<PrecedenceViolation> out;
  const auto nodes = graph.nodes();

  for (auto& comp : strongly_connected_components(graph)) {
    bool cyclic = comp.size() > 1;
    if (!cyclic) {
      auto s = graph.succs(comp[0]);
      cyclic = std::binary_search(s.begin(), s.end(), comp[0]);
    }
    if (!cyclic) continue;
    PrecedenceViolation v{PrecedenceViolation::Kind::kCycle, {}};
    for (std::size_t u : comp) v.tasks.push_back(nodes[u]);
    std::sort(v.tasks.begin(), v.tasks.end());
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.tasks < b.tasks; });

  // Edge (u, w) is redundant when w is reachable from some other successor v
  // of u. Works on cyclic graphs as well, one BFS per node.
  const std::size_t n = graph.size();
  std::vector<std::size_t> seen(n, static_cast<std::size_t>(-1));
  for (std::size_t u = 0; u < n; ++u) {
    auto direct = graph.succs(u);
    if (direct.size() < 2) continue;
    for (std::size_t w : direct) {
      // Is w reachable from u without taking the edge u -> w first?
      std::vector<std::size_t> frontier;
      std::size_t stamp = u * n + w;
      for (std::size_t v : direct) {
        if (v != w && seen[v] != stamp) {
          seen[v] = stamp;
          frontier.push_back(v);
        }
      }
      bool found = false;
      while (!frontier.empty() && !found) {
        std::size_t x = frontier.back();
        frontier.pop_back();
        for (std::size_t y : graph.succs(x)) {
          if (y == w) {
            found = true;
            break;
          }
          if (seen[y] != stamp) {
            seen[y] = stamp;
            frontier.push_back(y);
          }
        }
      }
      if (found) {
        out.push_back({PrecedenceViolation::Kind::kRedundantEdge, {nodes[u], nodes[w]}});
      }
    }
  }
  return out;
}

PrecedenceGraph transitive_reduction(const PrecedenceGraph& graph) {
  auto order = topological_order(graph);
  if (!order) throw std::invalid_argument("cannot reduce a cyclic precedence graph");
  BitMatrix reach = closure(graph, *order, /*forward=*/true);
  const auto nodes = graph.nodes();
  std::vector<PrecedenceEdge> kept;
  for (std::size_t u = 0; u < graph.size(); ++u) {
    auto direct = graph.succs(u);
    for (std::size_t w : direct) {
      bool implied = std::any_of(direct.begin(), direct.end(), [&](std::size_t v) {
        return v != w && reach.test(v, w);
      });
      if (!implied) kept.push_back({nodes[u], nodes[w]});
    }
  }
  return PrecedenceGraph(std::vector<TaskId>(nodes.begin(), nodes.end()), std::move(kept));
}

}  // namespace uavsched
