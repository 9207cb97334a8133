// wsalign/vocab.h
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

#ifndef WSALIGN_VOCAB_H_
#define WSALIGN_VOCAB_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "wsalign/common.h"

namespace wsalign {

// Disfluency event classes carried on the epsilon arcs of the modified
// transcript graph. Ids live just above the phone table (NumTokens()+1..+3)
// so they can never collide with a token id.
enum class EventKind { kWordRepeat, kWordDelete, kPartWordRepeat };

const char* EventKindName(EventKind kind);
EventKind EventKindFromName(const std::string& name);

// Phone token table. Line i of the vocabulary file defines token id i+1
// (id 0 stays reserved for epsilon). The reserved symbols [SIL], [UNK] and
// [PAD] must be present. The CTC blank is identified with [SIL]: the
// reference acoustic frontend is a frame classifier without a separate
// blank output, silence plays that role.
class PhoneVocab {
 public:
  static PhoneVocab FromSymbols(std::vector<std::string> symbols);
  static PhoneVocab FromFile(const std::string& path);
  // The 39 CMU phones plus [SIL], [UNK], [PAD]: 42 tokens.
  static PhoneVocab Cmu();

  void WriteFile(const std::string& path) const;

  int32_t NumTokens() const { return static_cast<int32_t>(symbols_.size()); }
  Label Find(const std::string& symbol) const;       // throws FormatError
  bool Contains(const std::string& symbol) const;
  const std::string& Name(Label id) const;           // token or event id

  Label sil_id() const { return sil_id_; }
  Label unk_id() const { return unk_id_; }
  Label pad_id() const { return pad_id_; }
  Label blank_id() const { return sil_id_; }

  // True for alignable speech tokens: everything except [SIL] and [PAD]
  // ([UNK] is a real model output and stays alignable).
  bool IsPhone(Label id) const;

  Label EventId(EventKind kind) const;
  bool IsEventId(Label id) const;
  EventKind EventOf(Label id) const;

  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> index_;
  Label sil_id_ = kEpsilon;
  Label unk_id_ = kEpsilon;
  Label pad_id_ = kEpsilon;
};

// A word-grouped phone-id sequence: the approximate transcription to align.
// Tokens must be alignable phones (no [SIL]/[PAD], no event ids).
struct PhoneTranscript {
  std::vector<std::vector<Label>> words;

  // Text form: phones separated by spaces, words by " | ",
  // e.g. "D AA N T | AE S K".
  static PhoneTranscript Parse(const std::string& line, const PhoneVocab& vocab);
  std::string ToString(const PhoneVocab& vocab) const;

  void Validate(const PhoneVocab& vocab) const;  // throws FormatError

  std::vector<Label> Flat() const;
  int32_t NumPhones() const;
  int32_t NumWords() const { return static_cast<int32_t>(words.size()); }
};

// Collapses a frame-label sequence the CTC way: merge repeats, then drop
// blanks. Repeats separated by a blank survive as distinct tokens.
std::vector<Label> CtcCollapse(std::span<const Label> frames, Label blank);

}  // namespace wsalign

#endif  // WSALIGN_VOCAB_H_
