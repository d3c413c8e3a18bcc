#include "omegatrans/twoway2sst.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>

namespace omegatrans {

// ---------------------------------------------------------------------------
// MergingForest

std::size_t MergingForest::num_edges() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.parent >= 0; }));
}

bool MergingForest::is_leaf(std::size_t i) const {
  return std::none_of(nodes.begin(), nodes.end(),
                      [&](const Node& n) { return n.parent == static_cast<std::int32_t>(i); });
}

RegisterId MergingForest::register_of(std::size_t i) const {
  RegisterId r = 1;
  for (std::size_t j = 0; j < i; ++j)
    if (nodes[j].parent >= 0) ++r;
  return r;
}

std::optional<std::size_t> MergingForest::leaf(StateId q) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].label == q && nodes[i].parent >= 0) return i;
  return std::nullopt;
}

std::vector<std::pair<StateId, StateId>> MergingForest::runs() const {
  std::vector<std::pair<StateId, StateId>> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].parent < 0 || !is_leaf(i)) continue;
    auto j = static_cast<std::size_t>(nodes[i].parent);
    while (nodes[j].parent >= 0) j = static_cast<std::size_t>(nodes[j].parent);
    out.emplace_back(nodes[i].label, nodes[j].label);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RegisterId> MergingForest::path_registers(StateId q) const {
  std::vector<RegisterId> regs;
  auto i = leaf(q);
  if (!i) return regs;
  for (std::size_t j = *i; nodes[j].parent >= 0; j = static_cast<std::size_t>(nodes[j].parent))
    regs.push_back(register_of(j));
  return regs;
}

std::string to_string(const MergingForest& f, const Transducer& m) {
  std::vector<std::vector<std::size_t>> children(f.nodes.size());
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    if (f.nodes[i].parent < 0)
      roots.push_back(i);
    else
      children[static_cast<std::size_t>(f.nodes[i].parent)].push_back(i);
  }
  std::function<std::string(std::size_t)> show = [&](std::size_t i) {
    std::string s;
    if (f.nodes[i].label != kNoState) s += m.state_name(f.nodes[i].label);
    if (children[i].empty()) {
      if (!f.nodes[i].colors.empty()) {
        s += ':';
        for (std::size_t c = 0; c < f.nodes[i].colors.size(); ++c)
          s += (c ? "," : "") + std::to_string(f.nodes[i].colors[c]);
      }
      return s;
    }
    s += '(';
    for (std::size_t c = 0; c < children[i].size(); ++c) s += (c ? " " : "") + show(children[i][c]);
    return s + ')';
  };
  std::string s = "{";
  for (std::size_t r = 0; r < roots.size(); ++r) s += (r ? " " : "") + show(roots[r]);
  return s + "}";
}

namespace {

struct PreNode {
  StateId label = kNoState;
  std::int32_t parent = -1;
  ColorVector colors;
  Image image;  // contents of the edge to the parent
};

struct Canonical {
  MergingForest forest;
  std::vector<Image> images;  // by register; entry 0 (out) unused
};

Canonical canonicalize(const std::vector<PreNode>& pre) {
  const auto n = pre.size();
  std::vector<std::vector<std::size_t>> children(n);
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    if (pre[i].parent < 0)
      roots.push_back(i);
    else
      children[static_cast<std::size_t>(pre[i].parent)].push_back(i);
  }
  std::vector<StateId> min_leaf(n, std::numeric_limits<StateId>::max());
  std::function<StateId(std::size_t)> fill = [&](std::size_t i) {
    if (children[i].empty()) return min_leaf[i] = pre[i].label;
    for (auto c : children[i]) min_leaf[i] = std::min(min_leaf[i], fill(c));
    return min_leaf[i];
  };
  for (auto r : roots) fill(r);
  std::sort(roots.begin(), roots.end(),
            [&](std::size_t a, std::size_t b) { return pre[a].label < pre[b].label; });

  std::vector<std::size_t> order;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    auto& cs = children[i];
    std::sort(cs.begin(), cs.end(),
              [&](std::size_t a, std::size_t b) { return min_leaf[a] < min_leaf[b]; });
    for (auto c : cs) visit(c);
    order.push_back(i);
  };
  for (auto r : roots) visit(r);

  std::vector<std::int32_t> index(n);
  for (std::size_t k = 0; k < order.size(); ++k) index[order[k]] = static_cast<std::int32_t>(k);
  Canonical out;
  out.images.emplace_back();
  for (auto i : order) {
    MergingForest::Node node;
    node.parent = pre[i].parent < 0 ? -1 : index[static_cast<std::size_t>(pre[i].parent)];
    const bool leaf = children[i].empty();
    if (leaf || node.parent < 0) node.label = pre[i].label;
    if (leaf) node.colors = pre[i].colors;
    out.forest.nodes.push_back(std::move(node));
    if (pre[i].parent >= 0) out.images.push_back(pre[i].image);
  }
  return out;
}

Image letters(const Word& w) {
  Image img;
  for (Symbol s : w) img.push_back(Token::letter(s));
  return img;
}

void fold_min(std::optional<ColorVector>& acc, const ColorVector& c) {
  if (!acc) {
    acc = c;
    return;
  }
  for (std::size_t i = 0; i < c.size(); ++i) (*acc)[i] = std::min((*acc)[i], c[i]);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction steps

InitialState initial_state(const Transducer& m) {
  std::vector<PreNode> pre;
  std::map<StateId, std::int32_t> root_of;
  for (std::size_t pi = 0; pi < m.num_states(); ++pi) {
    const auto p = static_cast<StateId>(pi);
    if (m.is_forward(p)) continue;
    const Transition* t = m.find(p, kLeftEnd);
    // A right-right run into q0 would revisit the initial configuration.
    if (t == nullptr || t->target == m.initial()) continue;
    auto [it, fresh] = root_of.try_emplace(t->target, static_cast<std::int32_t>(pre.size()));
    if (fresh) pre.push_back({t->target, -1, {}, {}});
    pre.push_back({p, it->second, t->colors, letters(t->output)});
  }
  Canonical c = canonicalize(pre);
  InitialState init;
  init.state = {m.initial(), std::move(c.forest)};
  init.registers.resize(c.images.size());
  for (std::size_t r = 1; r < c.images.size(); ++r)
    for (const auto& tok : c.images[r]) init.registers[r].push_back(tok.value);
  return init;
}

TransitionGraph build_graph(const SstState& state, Symbol a, const Transducer& m) {
  const auto& f = state.forest;
  const auto N = f.nodes.size();
  const auto n = m.num_states();
  TransitionGraph g;
  g.old_nodes = N;
  g.succ.assign(N + n, -1);
  g.label.assign(N + n, {});
  g.new_edge_colors.assign(N + n, std::nullopt);

  RegisterId reg = 1;
  for (std::size_t i = 0; i < N; ++i) {
    if (f.nodes[i].parent < 0) continue;
    g.succ[i] = f.nodes[i].parent;
    g.label[i] = {Token::reg(reg++)};
  }
  auto connect = [&](std::size_t from, StateId p) {
    const Transition* t = m.find(p, a);
    if (t == nullptr) return;
    const StateId q = t->target;
    if (m.is_forward(q)) {
      g.succ[from] = static_cast<std::int32_t>(N + static_cast<std::size_t>(q));
    } else if (auto leaf = f.leaf(q)) {
      g.succ[from] = static_cast<std::int32_t>(*leaf);
    } else {
      return;
    }
    g.label[from] = letters(t->output);
    g.new_edge_colors[from] = t->colors;
  };
  for (std::size_t i = 0; i < N; ++i)
    if (f.nodes[i].parent < 0) connect(i, f.nodes[i].label);
  for (std::size_t pi = 0; pi < n; ++pi)
    if (!m.is_forward(static_cast<StateId>(pi))) connect(N + pi, static_cast<StateId>(pi));
  return g;
}

std::optional<SstStep> step(const SstState& state, Symbol a, const Transducer& m) {
  const auto& f = state.forest;
  const Transition* main = m.find(state.q, a);
  if (main == nullptr) return std::nullopt;
  const TransitionGraph g = build_graph(state, a, m);
  const auto N = g.old_nodes;
  const auto total = g.succ.size();

  auto is_old_leaf = [&](std::size_t x) { return x < N && f.nodes[x].parent >= 0 && f.is_leaf(x); };
  // Colors met when walking through x: a leaf's branch summary and the
  // transition behind a new edge.
  auto colors_at = [&](std::size_t x, std::optional<ColorVector>& acc) {
    if (is_old_leaf(x)) fold_min(acc, f.nodes[x].colors);
    if (g.new_edge_colors[x]) fold_min(acc, *g.new_edge_colors[x]);
  };

  SstStep result;
  Image out_image{Token::reg(0)};
  for (Symbol b : main->output) out_image.push_back(Token::letter(b));
  std::optional<ColorVector> colors = main->colors;
  StateId p = main->target;
  if (!m.is_forward(p)) {
    const auto start = f.leaf(p);
    if (!start) return std::nullopt;
    std::vector<bool> seen(total, false);
    std::size_t x = *start;
    while (g.succ[x] >= 0) {
      if (seen[x]) return std::nullopt;  // the run loops
      seen[x] = true;
      colors_at(x, colors);
      out_image.insert(out_image.end(), g.label[x].begin(), g.label[x].end());
      x = static_cast<std::size_t>(g.succ[x]);
    }
    if (x < N) return std::nullopt;  // stopped at an old root
    p = static_cast<StateId>(x - N);
  }
  result.colors = *colors;
  const std::size_t dead_root = N + static_cast<std::size_t>(p);

  // Nodes on a path from a fresh backward leaf to a fresh forward root other
  // than the main run's; a path that cycles never reaches a sink.
  std::vector<bool> keep(total, false);
  std::vector<std::optional<ColorVector>> leaf_colors(total);
  for (std::size_t pi = 0; pi < m.num_states(); ++pi) {
    if (m.is_forward(static_cast<StateId>(pi))) continue;
    const std::size_t b = N + pi;
    std::vector<std::size_t> path;
    std::vector<bool> seen(total, false);
    std::size_t x = b;
    bool cycles = false;
    while (true) {
      if (seen[x]) {
        cycles = true;
        break;
      }
      seen[x] = true;
      path.push_back(x);
      if (g.succ[x] < 0) break;
      x = static_cast<std::size_t>(g.succ[x]);
    }
    if (cycles || path.size() < 2 || x < N || x == dead_root) continue;
    if (!m.is_forward(static_cast<StateId>(x - N))) continue;
    std::optional<ColorVector> c;
    for (auto y : path) {
      keep[y] = true;
      colors_at(y, c);
    }
    leaf_colors[b] = c;
  }

  // Contract unary internal nodes.
  std::vector<int> kept_children(total, 0);
  for (std::size_t x = 0; x < total; ++x)
    if (keep[x] && g.succ[x] >= 0) ++kept_children[static_cast<std::size_t>(g.succ[x])];
  auto survives = [&](std::size_t x) {
    return keep[x] && (g.succ[x] < 0 || kept_children[x] != 1);
  };
  std::vector<std::int32_t> pre_index(total, -1);
  std::vector<PreNode> pre;
  for (std::size_t x = 0; x < total; ++x) {
    if (!survives(x)) continue;
    pre_index[x] = static_cast<std::int32_t>(pre.size());
    PreNode node;
    if (x >= N) node.label = static_cast<StateId>(x - N);
    if (leaf_colors[x]) node.colors = *leaf_colors[x];
    pre.push_back(std::move(node));
  }
  for (std::size_t x = 0; x < total; ++x) {
    if (!survives(x) || g.succ[x] < 0) continue;
    auto& node = pre[static_cast<std::size_t>(pre_index[x])];
    std::size_t y = x;
    do {
      node.image.insert(node.image.end(), g.label[y].begin(), g.label[y].end());
      y = static_cast<std::size_t>(g.succ[y]);
    } while (!survives(y));
    node.parent = pre_index[y];
  }

  Canonical c = canonicalize(pre);
  result.next = {p, std::move(c.forest)};
  const std::size_t regs = std::max(c.images.size(), 1 + f.num_edges());
  result.update = resized({}, regs);
  result.update.images[0] = std::move(out_image);
  for (std::size_t r = 1; r < c.images.size(); ++r) result.update.images[r] = std::move(c.images[r]);
  return result;
}

// ---------------------------------------------------------------------------
// Exploration

SstConstruction two_way_to_sst_detailed(const Transducer& m, const TwoWayToSstOptions& options) {
  if (!validate_deterministic(m)) throw NotDeterministic("input machine is not deterministic");
  if (m.initial() == kNoState || !m.is_forward(m.initial()))
    throw InvalidMachine("input machine needs a forward initial state");
  for (const auto& t : m.transitions())
    if (t.letter == kLeftEnd && (m.is_forward(t.source) || !m.is_forward(t.target)))
      throw InvalidMachine("endmarker transitions must go from a backward to a forward state");

  SstConstruction out;
  const InitialState init = initial_state(m);
  out.initial_registers = init.registers;
  const bool synthetic = std::any_of(init.registers.begin(), init.registers.end(),
                                     [](const Word& w) { return !w.empty(); });

  struct Edge {
    std::size_t from;
    Symbol letter;
    std::size_t to;
    Substitution update;
    ColorVector colors;
  };
  std::vector<Edge> edges;
  std::map<SstState, std::size_t> ids;
  std::queue<std::size_t> work;
  auto note = [&](const MergingForest& f) {
    out.max_nodes = std::max(out.max_nodes, f.nodes.size());
    out.max_edges = std::max(out.max_edges, f.num_edges());
  };
  auto intern = [&](const SstState& s) {
    auto [it, fresh] = ids.try_emplace(s, out.states.size());
    if (fresh) {
      if (out.states.size() >= options.max_states)
        throw StateExplosion("SST construction exceeded " + std::to_string(options.max_states) +
                             " states");
      out.states.push_back(s);
      note(s.forest);
      work.push(it->second);
    }
    return it->second;
  };

  const auto letters_n = static_cast<Symbol>(m.input_alphabet().size());
  if (synthetic) {
    // Stand-in for (q0, F0) whose moves also write the initial register contents.
    out.states.push_back(init.state);
    note(init.state.forest);
    Substitution fill = resized({}, init.registers.size());
    fill.images[0] = {Token::reg(0)};  // out starts empty either way
    for (std::size_t r = 1; r < init.registers.size(); ++r)
      fill.images[r] = letters(init.registers[r]);
    for (Symbol a = 0; a < letters_n; ++a) {
      auto s = step(init.state, a, m);
      if (!s) continue;
      const auto n = std::max(s->update.images.size(), fill.images.size());
      auto update = then(resized(fill, n), resized(s->update, n));
      edges.push_back({0, a, intern(s->next), std::move(update), s->colors});
    }
  } else {
    intern(init.state);
  }

  while (!work.empty()) {
    const auto id = work.front();
    work.pop();
    const SstState state = out.states[id];
    for (Symbol a = 0; a < letters_n; ++a) {
      auto s = step(state, a, m);
      if (!s) continue;
      edges.push_back({id, a, intern(s->next), std::move(s->update), s->colors});
    }
  }

  std::vector<std::string> registers{"out"};
  for (std::size_t r = 1; r <= out.max_edges; ++r) registers.push_back("r" + std::to_string(r));
  CopylessSst sst(m.input_alphabet(), m.output_alphabet(), m.colorings(), m.color_bound(),
                  registers, 0);
  for (std::size_t i = 0; i < out.states.size(); ++i) {
    const auto& s = out.states[i];
    std::string name = (synthetic && i == 0) ? "init" : m.state_name(s.q) + " " + to_string(s.forest, m);
    sst.add_state(std::move(name));
  }
  sst.set_initial(0);
  for (auto& e : edges)
    sst.add_transition(static_cast<StateId>(e.from), e.letter, static_cast<StateId>(e.to),
                       resized(std::move(e.update), registers.size()), std::move(e.colors));
  out.initial_registers.resize(registers.size());
  out.sst = std::move(sst);
  return out;
}

CopylessSst two_way_to_sst(const Transducer& m, const TwoWayToSstOptions& options) {
  return two_way_to_sst_detailed(m, options).sst;
}

}  // namespace omegatrans
