// wsalign/fst.h
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Weighted finite-state transducers over the tropical semiring.
//
// Weights are costs (negated log probabilities): combination along a path is
// addition, choice between paths is min, so the shortest path is the most
// probable one. A graph is built with AddState/AddArc/SetStart/SetFinal and
// then frozen; every algorithm in this header only accepts frozen graphs,
// and frozen graphs are immutable values that can be read concurrently.

#ifndef WSALIGN_FST_H_
#define WSALIGN_FST_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsalign/common.h"

namespace wsalign {

// Tropical semiring weight. Zero() (+inf) is "no path", One() (0) is the
// neutral cost. Valid costs are non-negative or +inf.
struct Weight {
  double cost = kInfiniteCost;

  static Weight Zero() { return Weight{kInfiniteCost}; }
  static Weight One() { return Weight{0.0}; }

  bool IsZero() const { return cost == kInfiniteCost; }
  friend bool operator==(const Weight& a, const Weight& b) = default;
};

// x (+) y = min(x, y)
inline Weight Plus(Weight a, Weight b) { return {a.cost < b.cost ? a.cost : b.cost}; }
// x (*) y = x + y
inline Weight Times(Weight a, Weight b) { return {a.cost + b.cost}; }

struct Arc {
  Label ilabel = kEpsilon;   // consumed label; kEpsilon consumes nothing
  Label olabel = kEpsilon;   // emitted label
  Weight weight = Weight::One();
  StateId next = kNoState;
  // Free annotation channel, not part of the weighted relation. Composition
  // propagates it (the right operand wins when both sides carry one). The
  // graph builders use it to tag arcs with 1-based source word indices.
  int32_t aux = 0;
};

class Fst {
 public:
  Fst() = default;

  // -- construction (unfrozen only) --
  StateId AddState();
  StateId AddStates(int n);  // adds n states, returns the first id
  void SetStart(StateId s);
  void SetFinal(StateId s, Weight w = Weight::One());
  void AddArc(StateId src, const Arc& arc);
  // Declared label universes (number of real tokens; 0 = unchecked).
  // Compose verifies that a.OutputSpace() matches b.InputSpace().
  void SetTokenSpaces(int32_t input_space, int32_t output_space);

  // Validates the graph and marks it immutable: a start state exists, every
  // arc target is a valid state, no weight is negative or NaN.
  void Freeze();
  bool IsFrozen() const { return frozen_; }

  // -- read access --
  StateId Start() const { return start_; }
  int32_t NumStates() const { return static_cast<int32_t>(arcs_.size()); }
  int64_t NumArcs() const;
  std::span<const Arc> Arcs(StateId s) const { return arcs_[s]; }
  bool IsFinal(StateId s) const { return !final_[s].IsZero(); }
  Weight Final(StateId s) const { return final_[s]; }  // Zero() if non-final
  int32_t NumFinals() const;
  int32_t InputSpace() const { return input_space_; }
  int32_t OutputSpace() const { return output_space_; }

  // Returns a copy with every arc and final cost multiplied by factor >= 0.
  Fst ScaledCosts(double factor) const;

  // -- AT&T-style text serialization (debugging, golden tests) --
  //
  // One arc per line: "src dst ilabel olabel cost"; after all arcs, one line
  // per final state: "state cost". Fields are space separated; costs use the
  // shortest round-trip decimal form, +inf prints as "inf". The start state
  // is the source of the first arc line; a graph with no arcs at all must
  // consist of final states only, and its start is the first final line.
  // The aux channel is not serialized.
  std::string ToText() const;
  static Fst FromText(std::string_view text);

 private:
  void CheckMutable() const;

  std::vector<std::vector<Arc>> arcs_;
  std::vector<Weight> final_;
  StateId start_ = kNoState;
  bool frozen_ = false;
  int32_t input_space_ = 0;
  int32_t output_space_ = 0;
};

// A start-to-final path. arcs[i].next is the source of arcs[i+1];
// total_cost is the arc-cost sum plus the final weight of the last state.
struct Path {
  StateId start = kNoState;
  std::vector<Arc> arcs;
  Weight total_cost = Weight::Zero();

  // Input/output label sequences with epsilons dropped.
  std::vector<Label> InputLabels() const;
  std::vector<Label> OutputLabels() const;
};

// Filtered composition: the result accepts { (x, z) : exists y with (x,y) in
// a and (y,z) in b }, and the cost of each pair is the minimal combined path
// cost. Epsilon output arcs in a and epsilon input arcs in b are handled
// with the standard three-state epsilon filter, so matching epsilon runs do
// not multiply into redundant composite paths.
//
// Throws Error if an input is unfrozen or the declared token spaces differ.
Fst Compose(const Fst& a, const Fst& b);

// Removes states that are not on any start-to-final path. The language and
// all path costs are unchanged. When nothing survives, the result is a
// single non-final start state (NumFinals() == 0), the canonical empty
// language.
Fst Trim(const Fst& f);

// Minimal-cost accepting path. Costs must be non-negative (guaranteed by
// Freeze). Ties are broken toward the lexicographically smallest sequence of
// arc indices, counting a final stop as smaller than any arc, so results are
// reproducible across runs and platforms. Arcs and final weights at +inf are
// treated as absent. Throws InfeasibleError when no accepting path exists.
Path ShortestPath(const Fst& f);

}  // namespace wsalign

#endif  // WSALIGN_FST_H_
