#include "discodep/decoders.hpp"

#include <string>

#include "discodep/errors.hpp"

namespace discodep {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "eisner") return Algorithm::kEisner;
  if (name == "cle" || name == "chu-liu-edmonds") return Algorithm::kChuLiuEdmonds;
  throw UsageError("unknown decoder '" + std::string(name) + "' (expected eisner or cle)");
}

std::string_view to_string(Algorithm algo) {
  return algo == Algorithm::kEisner ? "eisner" : "cle";
}

namespace {

void require_nonempty(const ScoreSet& scores) {
  if (scores.n() < 1) throw ValidationError("cannot decode a document with no EDUs");
  scores.validate();
}

// Chart for first-order Eisner. "right" spans are headed at their left end,
// "left" spans at their right end.
class EisnerChart {
 public:
  explicit EisnerChart(const ScoreSet& scores)
      : s_(scores), w_(scores.width()),
        cl_(cells(), 0.0), cr_(cells(), 0.0), il_(cells(), kNegInf), ir_(cells(), kNegInf),
        bcl_(cells(), -1), bcr_(cells(), -1), bil_(cells(), -1), bir_(cells(), -1) {
    fill();
  }

  double complete_right(int s, int t) const { return cr_[at(s, t)]; }
  double complete_left(int s, int t) const { return cl_[at(s, t)]; }

  void read_complete_right(int s, int t, std::vector<int>& heads) const {
    if (s == t) return;
    const int r = bcr_[at(s, t)];
    read_incomplete_right(s, r, heads);
    read_complete_right(r, t, heads);
  }

  void read_complete_left(int s, int t, std::vector<int>& heads) const {
    if (s == t) return;
    const int r = bcl_[at(s, t)];
    read_complete_left(s, r, heads);
    read_incomplete_left(r, t, heads);
  }

 private:
  std::size_t cells() const { return static_cast<std::size_t>(w_) * w_; }
  std::size_t at(int s, int t) const { return static_cast<std::size_t>(s) * w_ + t; }

  void fill() {
    const int n = w_ - 1;
    for (int len = 1; len <= n; ++len) {
      for (int s = 0; s + len <= n; ++s) {
        const int t = s + len;
        // incomplete spans: s and t joined by an arc
        double best = kNegInf;
        int arg = -1;
        for (int r = s; r < t; ++r) {
          const double v = cr_[at(s, r)] + cl_[at(r + 1, t)];
          if (arg < 0 || v > best) {
            best = v;
            arg = r;
          }
        }
        ir_[at(s, t)] = best + s_.arc(s, t);
        bir_[at(s, t)] = arg;
        il_[at(s, t)] = s == 0 ? kNegInf : best + s_.arc(t, s);
        bil_[at(s, t)] = arg;

        best = kNegInf;
        arg = -1;
        for (int r = s; r < t; ++r) {
          const double v = cl_[at(s, r)] + il_[at(r, t)];
          if (arg < 0 || v > best) {
            best = v;
            arg = r;
          }
        }
        cl_[at(s, t)] = best;
        bcl_[at(s, t)] = arg;

        best = kNegInf;
        arg = -1;
        for (int r = s + 1; r <= t; ++r) {
          const double v = ir_[at(s, r)] + cr_[at(r, t)];
          if (arg < 0 || v > best) {
            best = v;
            arg = r;
          }
        }
        cr_[at(s, t)] = best;
        bcr_[at(s, t)] = arg;
      }
    }
  }

  void read_incomplete_right(int s, int t, std::vector<int>& heads) const {
    heads[t - 1] = s;
    const int r = bir_[at(s, t)];
    read_complete_right(s, r, heads);
    read_complete_left(r + 1, t, heads);
  }

  void read_incomplete_left(int s, int t, std::vector<int>& heads) const {
    heads[s - 1] = t;
    const int r = bil_[at(s, t)];
    read_complete_right(s, r, heads);
    read_complete_left(r + 1, t, heads);
  }

  const ScoreSet& s_;
  int w_;
  std::vector<double> cl_, cr_, il_, ir_;
  std::vector<int> bcl_, bcr_, bil_, bir_;
};

// Dense matrix form used by the contraction recursion: m nodes, node 0 root.
struct Graph {
  int m = 0;
  std::vector<double> w;  // w[h * m + d]
  double at(int h, int d) const { return w[static_cast<std::size_t>(h) * m + d]; }
  double& at(int h, int d) { return w[static_cast<std::size_t>(h) * m + d]; }
};

// Returns head[v] for v in 1..m-1 (head[0] = -1).
std::vector<int> max_arborescence(const Graph& g) {
  const int m = g.m;
  std::vector<int> head(m, -1);
  for (int d = 1; d < m; ++d) {
    double best = kNegInf;
    for (int h = 0; h < m; ++h) {
      if (h == d) continue;
      if (head[d] < 0 || g.at(h, d) > best) {
        best = g.at(h, d);
        head[d] = h;
      }
    }
  }

  // find a cycle, if any
  std::vector<int> mark(m, -1);
  std::vector<int> cycle;
  for (int start = 1; start < m && cycle.empty(); ++start) {
    int v = start;
    while (v > 0 && mark[v] < 0) {
      mark[v] = start;
      v = head[v];
    }
    if (v > 0 && mark[v] == start) {
      int u = v;
      do {
        cycle.push_back(u);
        u = head[u];
      } while (u != v);
    }
  }
  if (cycle.empty()) return head;

  std::vector<char> in_cycle(m, 0);
  for (int v : cycle) in_cycle[v] = 1;

  // contracted node ids: non-cycle nodes keep relative order, cycle node last
  std::vector<int> new_id(m, -1);
  std::vector<int> old_id;
  for (int v = 0; v < m; ++v) {
    if (!in_cycle[v]) {
      new_id[v] = static_cast<int>(old_id.size());
      old_id.push_back(v);
    }
  }
  const int c = static_cast<int>(old_id.size());
  Graph sub;
  sub.m = c + 1;
  sub.w.assign(static_cast<std::size_t>(sub.m) * sub.m, kNegInf);

  std::vector<int> enter_dep(sub.m, -1);   // cycle node entered from u
  std::vector<int> leave_head(sub.m, -1);  // cycle node heading v
  for (int u = 0; u < m; ++u) {
    if (in_cycle[u]) continue;
    for (int v = 1; v < m; ++v) {
      if (in_cycle[v] || u == v) continue;
      sub.at(new_id[u], new_id[v]) = g.at(u, v);
    }
    double best = kNegInf;
    for (int v : cycle) {
      const double gain = g.at(u, v) - g.at(head[v], v);
      if (enter_dep[new_id[u]] < 0 || gain > best) {
        best = gain;
        enter_dep[new_id[u]] = v;
      }
    }
    sub.at(new_id[u], c) = best;
  }
  for (int v = 1; v < m; ++v) {
    if (in_cycle[v]) continue;
    double best = kNegInf;
    for (int u = 0; u < m; ++u) {
      if (!in_cycle[u]) continue;
      if (leave_head[new_id[v]] < 0 || g.at(u, v) > best) {
        best = g.at(u, v);
        leave_head[new_id[v]] = u;
      }
    }
    sub.at(c, new_id[v]) = best;
  }

  const std::vector<int> sub_head = max_arborescence(sub);

  std::vector<int> out = head;  // cycle arcs survive except the broken one
  for (int v = 1; v < m; ++v) {
    if (in_cycle[v]) continue;
    const int h = sub_head[new_id[v]];
    out[v] = h == c ? leave_head[new_id[v]] : old_id[h];
  }
  const int entry = sub_head[c];
  out[enter_dep[entry]] = old_id[entry];
  return out;
}

DepTree cle_unconstrained(const ScoreSet& scores) {
  Graph g;
  g.m = scores.width();
  g.w = scores.arc_data();
  for (int v = 0; v < g.m; ++v) {
    g.at(v, v) = kNegInf;
    g.at(v, 0) = kNegInf;
  }
  const auto head = max_arborescence(g);
  return DepTree(std::vector<int>(head.begin() + 1, head.end()));
}

int root_children(const DepTree& tree) {
  int count = 0;
  for (int h : tree.heads) count += h == 0 ? 1 : 0;
  return count;
}

}  // namespace

DepTree eisner_decode(const ScoreSet& scores, const DecodeOptions& options) {
  require_nonempty(scores);
  const int n = scores.n();
  EisnerChart chart(scores);
  std::vector<int> heads(n, -1);
  if (!options.single_root) {
    chart.read_complete_right(0, n, heads);
    return DepTree(std::move(heads));
  }
  double best = kNegInf;
  int root_child = -1;
  for (int r = 1; r <= n; ++r) {
    const double v = scores.arc(0, r) + chart.complete_left(1, r) + chart.complete_right(r, n);
    if (root_child < 0 || v > best) {
      best = v;
      root_child = r;
    }
  }
  heads[root_child - 1] = 0;
  chart.read_complete_left(1, root_child, heads);
  chart.read_complete_right(root_child, n, heads);
  return DepTree(std::move(heads));
}

DepTree cle_decode(const ScoreSet& scores, const DecodeOptions& options) {
  require_nonempty(scores);
  DepTree tree = cle_unconstrained(scores);
  if (!options.single_root || root_children(tree) == 1) return tree;

  // Try every ROOT dependent with the other ROOT arcs removed.
  DepTree best_tree;
  double best = kNegInf;
  ScoreSet masked = scores;
  for (int r = 1; r <= scores.n(); ++r) {
    for (int d = 1; d <= scores.n(); ++d) masked.arc(0, d) = d == r ? scores.arc(0, d) : kNegInf;
    DepTree candidate = cle_unconstrained(masked);
    const double v = tree_score(candidate, scores);
    if (best_tree.size() == 0 || v > best) {
      best = v;
      best_tree = std::move(candidate);
    }
  }
  return best_tree;
}

DepTree decode(const ScoreSet& scores, Algorithm algo, const DecodeOptions& options) {
  return algo == Algorithm::kEisner ? eisner_decode(scores, options)
                                    : cle_decode(scores, options);
}

DepTree assign_labels(DepTree tree, const ScoreSet& scores) {
  if (!scores.has_labels()) throw ValidationError("assign_labels: ScoreSet has no label scores");
  if (tree.size() != scores.n()) {
    throw ValidationError("assign_labels: tree has " + std::to_string(tree.size()) +
                          " EDUs, scores have " + std::to_string(scores.n()));
  }
  const int num_labels = scores.num_labels();
  tree.labels.assign(tree.size(), {});
  for (int d = 1; d <= tree.size(); ++d) {
    const int h = tree.head(d);
    int arg = 0;
    for (int r = 1; r < num_labels; ++r) {
      if (scores.label(h, d, r) > scores.label(h, d, arg)) arg = r;
    }
    tree.labels[d - 1] = scores.label_inventory()[arg];
  }
  return tree;
}

}  // namespace discodep
