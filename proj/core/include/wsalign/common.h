// wsalign/common.h
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

#ifndef WSALIGN_COMMON_H_
#define WSALIGN_COMMON_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wsalign {

// Token ids are shared between graphs, transcripts and emission matrices.
// Id 0 is reserved for epsilon (the non-consuming label) everywhere; real
// tokens are numbered from 1.
using Label = int32_t;
using StateId = int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr StateId kNoState = -1;

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed files, malformed inputs, violated preconditions on user data.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& msg) : Error(msg) {}
};

// A graph has no accepting path: the transcript cannot be realized in the
// available frames, or a composition produced the empty language.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& msg) : Error(msg) {}
};

// 64-bit FNV-1a. Used to derive per-utterance RNG seeds from string ids so
// corpus generation is deterministic under any worker schedule.
inline uint64_t Fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. fn must be safe to
// call concurrently for distinct i. workers <= 1 runs inline.
void ParallelFor(int n, int workers, const std::function<void(int)>& fn);

// log(sum(exp(x))) over a span, stable for large negative values.
double LogSumExp(std::span<const float> values);

// Levenshtein distance between two token sequences.
int EditDistance(std::span<const Label> a, std::span<const Label> b);

}  // namespace wsalign

#endif  // WSALIGN_COMMON_H_
