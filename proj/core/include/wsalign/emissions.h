// wsalign/emissions.h
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

#ifndef WSALIGN_EMISSIONS_H_
#define WSALIGN_EMISSIONS_H_

#include <string>
#include <vector>

#include "wsalign/common.h"

namespace wsalign {

// T x N frame-level phone log-posteriors, row-major. Column j holds token
// id j+1. Every row must be a proper posterior: logsumexp(row) == 0 within
// kRowTolerance (Renormalize() repairs rows that drift further).
class LogProbMatrix {
 public:
  static constexpr double kRowTolerance = 1e-3;

  LogProbMatrix() = default;
  LogProbMatrix(int32_t num_frames, int32_t num_tokens, double frame_shift_ms = 10.0);

  int32_t NumFrames() const { return num_frames_; }
  int32_t NumTokens() const { return num_tokens_; }
  double frame_shift_ms() const { return frame_shift_ms_; }
  void set_frame_shift_ms(double ms) { frame_shift_ms_ = ms; }

  double At(int32_t frame, Label token) const {
    return values_[static_cast<size_t>(frame) * num_tokens_ + (token - 1)];
  }
  void Set(int32_t frame, Label token, double log_prob) {
    values_[static_cast<size_t>(frame) * num_tokens_ + (token - 1)] = static_cast<float>(log_prob);
  }
  std::span<const float> Row(int32_t frame) const {
    return {values_.data() + static_cast<size_t>(frame) * num_tokens_,
            static_cast<size_t>(num_tokens_)};
  }
  std::span<float> MutableRow(int32_t frame) {
    return {values_.data() + static_cast<size_t>(frame) * num_tokens_,
            static_cast<size_t>(num_tokens_)};
  }

  // Token id with the largest log-probability in a frame.
  Label ArgMax(int32_t frame) const;

  // Throws FormatError if any row's logsumexp is off zero by more than
  // kRowTolerance, or dimensions are degenerate.
  void Validate() const;
  // Shifts every row so it sums to one exactly (up to rounding).
  void Renormalize();

  // Binary "EMIS" container: magic "EMIS", then u32 num_frames, u32
  // num_tokens, u32 frame shift in microseconds, then num_frames*num_tokens
  // little-endian f32 log-probabilities, row-major.
  void Write(const std::string& path) const;
  static LogProbMatrix Read(const std::string& path, bool renormalize = false);

 private:
  int32_t num_frames_ = 0;
  int32_t num_tokens_ = 0;
  double frame_shift_ms_ = 10.0;
  std::vector<float> values_;
};

}  // namespace wsalign

#endif  // WSALIGN_EMISSIONS_H_
