// fst.cc
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

#include "wsalign/fst.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace wsalign {

namespace {

void CheckFrozen(const Fst& f, const char* op) {
  if (!f.IsFrozen()) throw Error(std::string(op) + ": input graph is not frozen");
}

// Shortest round-trip decimal form; infinity prints as "inf".
std::string CostToString(double cost) {
  if (std::isinf(cost)) return "inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), cost);
  return std::string(buf, res.ptr);
}

}  // namespace

StateId Fst::AddState() {
  CheckMutable();
  arcs_.emplace_back();
  final_.push_back(Weight::Zero());
  return static_cast<StateId>(arcs_.size()) - 1;
}

StateId Fst::AddStates(int n) {
  StateId first = static_cast<StateId>(arcs_.size());
  for (int i = 0; i < n; ++i) AddState();
  return first;
}

void Fst::SetStart(StateId s) {
  CheckMutable();
  if (s < 0 || s >= NumStates()) throw Error("SetStart: invalid state id");
  start_ = s;
}

void Fst::SetFinal(StateId s, Weight w) {
  CheckMutable();
  if (s < 0 || s >= NumStates()) throw Error("SetFinal: invalid state id");
  final_[s] = w;
}

void Fst::AddArc(StateId src, const Arc& arc) {
  CheckMutable();
  if (src < 0 || src >= NumStates()) throw Error("AddArc: invalid source state");
  arcs_[src].push_back(arc);
}

void Fst::SetTokenSpaces(int32_t input_space, int32_t output_space) {
  CheckMutable();
  input_space_ = input_space;
  output_space_ = output_space;
}

void Fst::CheckMutable() const {
  if (frozen_) throw Error("attempt to mutate a frozen graph");
}

void Fst::Freeze() {
  if (frozen_) return;
  if (start_ == kNoState) throw Error("Freeze: graph has no start state");
  const StateId n = NumStates();
  for (StateId s = 0; s < n; ++s) {
    for (const Arc& a : arcs_[s]) {
      if (a.next < 0 || a.next >= n)
        throw Error("Freeze: arc from state " + std::to_string(s) +
                    " references invalid state " + std::to_string(a.next));
      if (std::isnan(a.weight.cost) || a.weight.cost < 0.0)
        throw Error("Freeze: arc cost must be >= 0 or +inf");
      if (a.ilabel < 0 || a.olabel < 0) throw Error("Freeze: negative label");
    }
    if (std::isnan(final_[s].cost) || final_[s].cost < 0.0)
      throw Error("Freeze: final cost must be >= 0 or +inf");
    arcs_[s].shrink_to_fit();
  }
  frozen_ = true;
}

int64_t Fst::NumArcs() const {
  int64_t n = 0;
  for (const auto& v : arcs_) n += static_cast<int64_t>(v.size());
  return n;
}

int32_t Fst::NumFinals() const {
  int32_t n = 0;
  for (const Weight& w : final_)
    if (!w.IsZero()) ++n;
  return n;
}

Fst Fst::ScaledCosts(double factor) const {
  if (factor < 0.0 || std::isnan(factor)) throw Error("ScaledCosts: factor must be >= 0");
  Fst out;
  out.AddStates(NumStates());
  out.SetStart(start_);
  out.SetTokenSpaces(input_space_, output_space_);
  for (StateId s = 0; s < NumStates(); ++s) {
    for (Arc a : arcs_[s]) {
      a.weight.cost *= factor;
      out.AddArc(s, a);
    }
    if (!final_[s].IsZero()) out.SetFinal(s, Weight{final_[s].cost * factor});
  }
  if (frozen_) out.Freeze();
  return out;
}

std::string Fst::ToText() const {
  std::ostringstream os;
  auto write_state_arcs = [&](StateId s) {
    for (const Arc& a : arcs_[s])
      os << s << ' ' << a.next << ' ' << a.ilabel << ' ' << a.olabel << ' '
         << CostToString(a.weight.cost) << '\n';
  };
  // The start state's arcs come first: the reader recovers the start from
  // the first line.
  if (start_ != kNoState) write_state_arcs(start_);
  for (StateId s = 0; s < NumStates(); ++s)
    if (s != start_) write_state_arcs(s);
  if (start_ != kNoState && IsFinal(start_))
    os << start_ << ' ' << CostToString(final_[start_].cost) << '\n';
  for (StateId s = 0; s < NumStates(); ++s)
    if (s != start_ && IsFinal(s)) os << s << ' ' << CostToString(final_[s].cost) << '\n';
  return os.str();
}

Fst Fst::FromText(std::string_view text) {
  Fst out;
  auto ensure_state = [&](long long s) {
    if (s < 0) throw FormatError("FromText: negative state id");
    while (out.NumStates() <= s) out.AddState();
    return static_cast<StateId>(s);
  };
  auto parse_cost = [](const std::string& tok) {
    if (tok == "inf" || tok == "Infinity") return kInfiniteCost;
    try {
      size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw FormatError("FromText: bad cost '" + tok + "'");
      return v;
    } catch (const std::logic_error&) {
      throw FormatError("FromText: bad cost '" + tok + "'");
    }
  };
  auto parse_int = [](const std::string& tok) -> long long {
    try {
      size_t pos = 0;
      long long v = std::stoll(tok, &pos);
      if (pos != tok.size()) throw FormatError("FromText: bad integer '" + tok + "'");
      return v;
    } catch (const std::logic_error&) {
      throw FormatError("FromText: bad integer '" + tok + "'");
    }
  };
  std::istringstream is{std::string(text)};
  std::string line;
  bool have_start = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() == 5) {
      StateId src = ensure_state(parse_int(tok[0]));
      StateId dst = ensure_state(parse_int(tok[1]));
      Arc a;
      a.ilabel = static_cast<Label>(parse_int(tok[2]));
      a.olabel = static_cast<Label>(parse_int(tok[3]));
      a.weight = Weight{parse_cost(tok[4])};
      a.next = dst;
      out.AddArc(src, a);
      if (!have_start) {
        out.SetStart(src);
        have_start = true;
      }
    } else if (tok.size() == 2) {
      StateId s = ensure_state(parse_int(tok[0]));
      out.SetFinal(s, Weight{parse_cost(tok[1])});
      if (!have_start) {
        out.SetStart(s);
        have_start = true;
      }
    } else {
      throw FormatError("FromText: line " + std::to_string(lineno) +
                        ": expected 5 fields (arc) or 2 (final)");
    }
  }
  if (!have_start) throw FormatError("FromText: empty graph description");
  out.Freeze();
  return out;
}

std::vector<Label> Path::InputLabels() const {
  std::vector<Label> out;
  for (const Arc& a : arcs)
    if (a.ilabel != kEpsilon) out.push_back(a.ilabel);
  return out;
}

std::vector<Label> Path::OutputLabels() const {
  std::vector<Label> out;
  for (const Arc& a : arcs)
    if (a.olabel != kEpsilon) out.push_back(a.olabel);
  return out;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

namespace {

// Composite states are (a_state, b_state, filter). The filter implements the
// standard epsilon-sequencing automaton: state 0 after a real match or a
// simultaneous epsilon step, 1 inside a run of a-only epsilon moves, 2 inside
// a run of b-only epsilon moves. a-only moves are forbidden from 2 and b-only
// moves from 1, so exactly one interleaving of independent epsilon runs
// survives and the relation is preserved.
struct CompositeKey {
  uint64_t packed;
  bool operator==(const CompositeKey&) const = default;
};

struct CompositeKeyHash {
  size_t operator()(const CompositeKey& k) const {
    uint64_t x = k.packed * 0x9e3779b97f4a7c15ull;
    x ^= x >> 29;
    return static_cast<size_t>(x);
  }
};

// Per-state index of b's arcs grouped by ilabel, epsilon arcs listed apart.
struct BSideIndex {
  std::unordered_map<Label, std::vector<int32_t>> by_label;
  std::vector<int32_t> eps;
};

}  // namespace

Fst Compose(const Fst& a, const Fst& b) {
  CheckFrozen(a, "Compose");
  CheckFrozen(b, "Compose");
  if (a.OutputSpace() != 0 && b.InputSpace() != 0 && a.OutputSpace() != b.InputSpace())
    throw Error("Compose: token space mismatch (" + std::to_string(a.OutputSpace()) +
                " vs " + std::to_string(b.InputSpace()) + ")");

  std::vector<BSideIndex> bindex(b.NumStates());
  std::vector<bool> bindexed(b.NumStates(), false);
  auto b_arcs_of = [&](StateId s) -> const BSideIndex& {
    if (!bindexed[s]) {
      BSideIndex& idx = bindex[s];
      auto arcs = b.Arcs(s);
      for (int32_t i = 0; i < static_cast<int32_t>(arcs.size()); ++i) {
        if (arcs[i].ilabel == kEpsilon)
          idx.eps.push_back(i);
        else
          idx.by_label[arcs[i].ilabel].push_back(i);
      }
      bindexed[s] = true;
    }
    return bindex[s];
  };

  const uint64_t nb = static_cast<uint64_t>(b.NumStates());
  auto pack = [nb](StateId sa, StateId sb, int filter) {
    return CompositeKey{(static_cast<uint64_t>(sa) * nb + static_cast<uint64_t>(sb)) * 3 +
                        static_cast<uint64_t>(filter)};
  };

  Fst out;
  out.SetTokenSpaces(a.InputSpace(), b.OutputSpace());
  std::unordered_map<CompositeKey, StateId, CompositeKeyHash> ids;
  std::deque<std::tuple<StateId, StateId, int>> queue;
  auto state_of = [&](StateId sa, StateId sb, int filter) {
    CompositeKey key = pack(sa, sb, filter);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId id = out.AddState();
    ids.emplace(key, id);
    queue.emplace_back(sa, sb, filter);
    Weight wa = a.Final(sa), wb = b.Final(sb);
    if (!wa.IsZero() && !wb.IsZero()) out.SetFinal(id, Times(wa, wb));
    return id;
  };

  StateId start = state_of(a.Start(), b.Start(), 0);
  out.SetStart(start);

  auto combine_aux = [](int32_t aa, int32_t ba) { return ba != 0 ? ba : aa; };

  while (!queue.empty()) {
    auto [sa, sb, filter] = queue.front();
    queue.pop_front();
    StateId src = ids.at(pack(sa, sb, filter));
    const BSideIndex& bidx = b_arcs_of(sb);
    auto barcs = b.Arcs(sb);
    for (const Arc& arc_a : a.Arcs(sa)) {
      if (arc_a.olabel != kEpsilon) {
        // Real match on arc_a.olabel.
        auto it = bidx.by_label.find(arc_a.olabel);
        if (it == bidx.by_label.end()) continue;
        for (int32_t bi : it->second) {
          const Arc& arc_b = barcs[bi];
          out.AddArc(src, Arc{arc_a.ilabel, arc_b.olabel, Times(arc_a.weight, arc_b.weight),
                              state_of(arc_a.next, arc_b.next, 0),
                              combine_aux(arc_a.aux, arc_b.aux)});
        }
      } else {
        // a-only epsilon move.
        if (filter != 2)
          out.AddArc(src, Arc{arc_a.ilabel, kEpsilon, arc_a.weight,
                              state_of(arc_a.next, sb, 1), arc_a.aux});
        // Simultaneous epsilon step, only from the neutral filter state.
        if (filter == 0) {
          for (int32_t bi : bidx.eps) {
            const Arc& arc_b = barcs[bi];
            out.AddArc(src, Arc{arc_a.ilabel, arc_b.olabel, Times(arc_a.weight, arc_b.weight),
                                state_of(arc_a.next, arc_b.next, 0),
                                combine_aux(arc_a.aux, arc_b.aux)});
          }
        }
      }
    }
    if (filter != 1) {
      // b-only epsilon moves.
      for (int32_t bi : bidx.eps) {
        const Arc& arc_b = barcs[bi];
        out.AddArc(src, Arc{kEpsilon, arc_b.olabel, arc_b.weight,
                            state_of(sa, arc_b.next, 2), arc_b.aux});
      }
    }
  }
  out.Freeze();
  return out;
}

// ---------------------------------------------------------------------------
// Trim
// ---------------------------------------------------------------------------

Fst Trim(const Fst& f) {
  CheckFrozen(f, "Trim");
  const StateId n = f.NumStates();
  std::vector<bool> fwd(n, false);
  std::deque<StateId> queue;
  fwd[f.Start()] = true;
  queue.push_back(f.Start());
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (const Arc& a : f.Arcs(s))
      if (!fwd[a.next]) {
        fwd[a.next] = true;
        queue.push_back(a.next);
      }
  }
  std::vector<std::vector<StateId>> rev(n);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : f.Arcs(s)) rev[a.next].push_back(s);
  std::vector<bool> bwd(n, false);
  for (StateId s = 0; s < n; ++s)
    if (f.IsFinal(s) && fwd[s]) {
      bwd[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId p : rev[s])
      if (!bwd[p]) {
        bwd[p] = true;
        queue.push_back(p);
      }
  }

  std::vector<StateId> remap(n, kNoState);
  StateId kept = 0;
  for (StateId s = 0; s < n; ++s)
    if (fwd[s] && bwd[s]) remap[s] = kept++;
  Fst out;
  if (kept == 0 || remap[f.Start()] == kNoState) {
    // Empty language. Return an empty, unfrozen-start placeholder graph:
    // a single non-final start state keeps the result freezable.
    out.SetTokenSpaces(f.InputSpace(), f.OutputSpace());
    StateId s = out.AddState();
    out.SetStart(s);
    out.Freeze();
    return out;
  }
  out.SetTokenSpaces(f.InputSpace(), f.OutputSpace());
  out.AddStates(kept);
  out.SetStart(remap[f.Start()]);
  for (StateId s = 0; s < n; ++s) {
    if (remap[s] == kNoState) continue;
    for (const Arc& a : f.Arcs(s)) {
      if (remap[a.next] == kNoState) continue;
      Arc copy = a;
      copy.next = remap[a.next];
      out.AddArc(remap[s], copy);
    }
    if (f.IsFinal(s)) out.SetFinal(remap[s], f.Final(s));
  }
  out.Freeze();
  return out;
}

// ---------------------------------------------------------------------------
// Shortest path
// ---------------------------------------------------------------------------

Path ShortestPath(const Fst& f) {
  CheckFrozen(f, "ShortestPath");
  const StateId n = f.NumStates();

  // Backward Dijkstra over reversed arcs: g[s] = minimal cost from s to an
  // accepting stop, including the final weight.
  struct RevArc {
    StateId src;
    double cost;
  };
  std::vector<std::vector<RevArc>> rev(n);
  for (StateId s = 0; s < n; ++s)
    for (const Arc& a : f.Arcs(s))
      if (!std::isinf(a.weight.cost)) rev[a.next].push_back({s, a.weight.cost});

  std::vector<double> g(n, kInfiniteCost);
  using QItem = std::pair<double, StateId>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;
  for (StateId s = 0; s < n; ++s) {
    double fc = f.Final(s).cost;
    if (!std::isinf(fc)) {
      g[s] = fc;
      pq.emplace(fc, s);
    }
  }
  while (!pq.empty()) {
    auto [d, s] = pq.top();
    pq.pop();
    if (d > g[s]) continue;
    for (const RevArc& r : rev[s]) {
      double cand = r.cost + d;
      if (cand < g[r.src]) {
        g[r.src] = cand;
        pq.emplace(cand, r.src);
      }
    }
  }

  if (std::isinf(g[f.Start()]))
    throw InfeasibleError("ShortestPath: no accepting path (empty language)");

  // Forward extraction of the lexicographically smallest arc-index sequence
  // among minimal-cost paths. Stopping at a final state ties ahead of any
  // arc. Equality tests are exact: g was assigned from the same expressions.
  Path path;
  path.start = f.Start();
  StateId s = f.Start();
  const int64_t step_limit = 16 + 10 * static_cast<int64_t>(n);
  int64_t steps = 0;
  double acc = 0.0;
  for (;;) {
    if (f.Final(s).cost == g[s]) break;
    bool advanced = false;
    auto arcs = f.Arcs(s);
    for (const Arc& a : arcs) {
      if (std::isinf(a.weight.cost)) continue;
      if (a.weight.cost + g[a.next] == g[s]) {
        path.arcs.push_back(a);
        acc += a.weight.cost;
        s = a.next;
        advanced = true;
        break;
      }
    }
    if (!advanced) throw Error("ShortestPath: extraction failed (inconsistent costs)");
    if (++steps > step_limit)
      throw Error("ShortestPath: path extraction did not terminate (zero-cost cycle)");
  }
  path.total_cost = Weight{acc + f.Final(s).cost};
  return path;
}

}  // namespace wsalign
