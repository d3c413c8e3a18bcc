// Deterministic two-way parity transducer to copyless parity SST.
//
// After reading a prefix w, the SST state holds the state in which the main
// run first leaves w to the right, plus a merging forest: one tree per exit
// state of the right-right runs on w, leaves being their entry states. Each
// forest edge owns a register holding the output of that stretch of run.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omegatrans/core.hpp"

namespace omegatrans {

/// Canonical merging forest. Nodes are stored in post-order; trees are
/// ordered by root label and siblings by the smallest leaf label below them.
/// The edge from a non-root node to its parent owns register 1 + (rank of
/// the node among non-root nodes); register 0 is out.
struct MergingForest {
  struct Node {
    StateId label = kNoState;  // leaves and roots only
    std::int32_t parent = -1;
    ColorVector colors;  // leaves only: minimum over the whole branch

    friend bool operator==(const Node&, const Node&) = default;
    friend auto operator<=>(const Node& a, const Node& b) {
      if (a.label != b.label) return a.label <=> b.label;
      if (a.parent != b.parent) return a.parent <=> b.parent;
      return a.colors <=> b.colors;
    }
  };
  std::vector<Node> nodes;

  std::size_t num_edges() const;
  bool is_leaf(std::size_t i) const;
  /// Register of the edge above node i (i must not be a root).
  RegisterId register_of(std::size_t i) const;
  /// Node index of the leaf labelled q, if any.
  std::optional<std::size_t> leaf(StateId q) const;

  /// (entry state, exit state) of every leaf-to-root path.
  std::vector<std::pair<StateId, StateId>> runs() const;
  /// Registers along the path from the leaf labelled q to its root.
  std::vector<RegisterId> path_registers(StateId q) const;

  friend bool operator==(const MergingForest&, const MergingForest&) = default;
  friend auto operator<=>(const MergingForest& a, const MergingForest& b) {
    return a.nodes <=> b.nodes;
  }
};

struct SstState {
  StateId q = kNoState;  // forward state of the main run
  MergingForest forest;

  friend bool operator==(const SstState&, const SstState&) = default;
  friend auto operator<=>(const SstState& a, const SstState& b) {
    if (a.q != b.q) return a.q <=> b.q;
    return a.forest <=> b.forest;
  }
};

std::string to_string(const MergingForest& f, const Transducer& machine);

/// (q0, F0) and the initial register contents (indexed by register).
struct InitialState {
  SstState state;
  std::vector<Word> registers;
};
InitialState initial_state(const Transducer& machine);

/// The graph G built from a forest on one letter. Nodes 0..N-1 are the
/// forest's, node N+q is the fresh copy of state q. succ is -1 for sinks.
struct TransitionGraph {
  std::size_t old_nodes = 0;
  std::vector<std::int32_t> succ;
  std::vector<Image> label;  // label of the edge leaving each node
  std::vector<std::optional<ColorVector>> new_edge_colors;
};
TransitionGraph build_graph(const SstState& state, Symbol a, const Transducer& machine);

struct SstStep {
  SstState next;
  Substitution update;  // sized 1 + max(edges before, edges after)
  ColorVector colors;
};
/// One SST move, or nullopt where the main run dies or loops.
std::optional<SstStep> step(const SstState& state, Symbol a, const Transducer& machine);

struct TwoWayToSstOptions {
  std::size_t max_states = 1000000;
};

struct SstConstruction {
  CopylessSst sst;
  /// Abstract state behind each SST state. With initialised registers the
  /// SST starts in an extra state that stands for (q0, F0) before the
  /// registers are filled; it is recorded with that same value.
  std::vector<SstState> states;
  std::vector<Word> initial_registers;
  std::size_t max_nodes = 0;
  std::size_t max_edges = 0;
};

/// Throws NotDeterministic, InvalidMachine, or StateExplosion.
SstConstruction two_way_to_sst_detailed(const Transducer& machine,
                                        const TwoWayToSstOptions& options = {});
CopylessSst two_way_to_sst(const Transducer& machine, const TwoWayToSstOptions& options = {});

}  // namespace omegatrans
