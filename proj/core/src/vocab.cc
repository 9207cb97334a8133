// vocab.cc
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

#include "wsalign/vocab.h"

#include <fstream>
#include <sstream>

namespace wsalign {

namespace {
constexpr const char* kSil = "[SIL]";
constexpr const char* kUnk = "[UNK]";
constexpr const char* kPad = "[PAD]";

const char* const kCmuPhones[] = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH",
    "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH", "K",
    "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH",
    "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};
}  // namespace

const char* EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kWordRepeat:
      return "WORD_REPEAT";
    case EventKind::kWordDelete:
      return "WORD_DELETE";
    case EventKind::kPartWordRepeat:
      return "PART_WORD_REPEAT";
  }
  return "?";
}

EventKind EventKindFromName(const std::string& name) {
  if (name == "WORD_REPEAT") return EventKind::kWordRepeat;
  if (name == "WORD_DELETE") return EventKind::kWordDelete;
  if (name == "PART_WORD_REPEAT") return EventKind::kPartWordRepeat;
  throw FormatError("unknown event kind: " + name);
}

PhoneVocab PhoneVocab::FromSymbols(std::vector<std::string> symbols) {
  PhoneVocab v;
  v.symbols_ = std::move(symbols);
  for (size_t i = 0; i < v.symbols_.size(); ++i) {
    const std::string& s = v.symbols_[i];
    if (s.empty()) throw FormatError("vocabulary: empty symbol at line " + std::to_string(i + 1));
    auto [it, inserted] = v.index_.emplace(s, static_cast<Label>(i + 1));
    if (!inserted) throw FormatError("vocabulary: duplicate symbol " + s);
  }
  auto find_or_zero = [&](const char* s) -> Label {
    auto it = v.index_.find(s);
    return it == v.index_.end() ? kEpsilon : it->second;
  };
  v.sil_id_ = find_or_zero(kSil);
  v.unk_id_ = find_or_zero(kUnk);
  v.pad_id_ = find_or_zero(kPad);
  if (v.sil_id_ == kEpsilon || v.unk_id_ == kEpsilon || v.pad_id_ == kEpsilon)
    throw FormatError("vocabulary must contain the reserved symbols [SIL], [UNK], [PAD]");
  return v;
}

PhoneVocab PhoneVocab::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open vocabulary file: " + path);
  std::vector<std::string> symbols;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // Trim surrounding spaces; a blank line is a format error unless trailing.
    std::istringstream ls(line);
    std::string tok, extra;
    if (!(ls >> tok)) {
      if (in.peek() == EOF) break;
      throw FormatError("vocabulary: blank line in " + path);
    }
    if (ls >> extra) throw FormatError("vocabulary: one symbol per line expected in " + path);
    symbols.push_back(tok);
  }
  return FromSymbols(std::move(symbols));
}

PhoneVocab PhoneVocab::Cmu() {
  std::vector<std::string> symbols(std::begin(kCmuPhones), std::end(kCmuPhones));
  symbols.push_back(kSil);
  symbols.push_back(kUnk);
  symbols.push_back(kPad);
  return FromSymbols(std::move(symbols));
}

void PhoneVocab::WriteFile(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write vocabulary file: " + path);
  for (const std::string& s : symbols_) out << s << '\n';
}

Label PhoneVocab::Find(const std::string& symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) throw FormatError("unknown phone symbol: " + symbol);
  return it->second;
}

bool PhoneVocab::Contains(const std::string& symbol) const {
  return index_.count(symbol) != 0;
}

const std::string& PhoneVocab::Name(Label id) const {
  if (id >= 1 && id <= NumTokens()) return symbols_[id - 1];
  if (IsEventId(id)) {
    static const std::string names[] = {"WORD_REPEAT", "WORD_DELETE", "PART_WORD_REPEAT"};
    return names[id - NumTokens() - 1];
  }
  throw Error("PhoneVocab::Name: id out of range: " + std::to_string(id));
}

bool PhoneVocab::IsPhone(Label id) const {
  return id >= 1 && id <= NumTokens() && id != sil_id_ && id != pad_id_;
}

Label PhoneVocab::EventId(EventKind kind) const {
  return NumTokens() + 1 + static_cast<Label>(kind);
}

bool PhoneVocab::IsEventId(Label id) const {
  return id > NumTokens() && id <= NumTokens() + 3;
}

EventKind PhoneVocab::EventOf(Label id) const {
  if (!IsEventId(id)) throw Error("EventOf: not an event id: " + std::to_string(id));
  return static_cast<EventKind>(id - NumTokens() - 1);
}

PhoneTranscript PhoneTranscript::Parse(const std::string& line, const PhoneVocab& vocab) {
  PhoneTranscript y;
  std::vector<Label> word;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok == "|") {
      if (word.empty()) throw FormatError("transcript: empty word in '" + line + "'");
      y.words.push_back(std::move(word));
      word.clear();
    } else {
      word.push_back(vocab.Find(tok));
    }
  }
  if (!word.empty()) y.words.push_back(std::move(word));
  y.Validate(vocab);
  return y;
}

std::string PhoneTranscript::ToString(const PhoneVocab& vocab) const {
  std::ostringstream os;
  for (size_t w = 0; w < words.size(); ++w) {
    if (w) os << " | ";
    for (size_t i = 0; i < words[w].size(); ++i) {
      if (i) os << ' ';
      os << vocab.Name(words[w][i]);
    }
  }
  return os.str();
}

void PhoneTranscript::Validate(const PhoneVocab& vocab) const {
  if (words.empty()) throw FormatError("transcript has no words");
  for (const auto& word : words) {
    if (word.empty()) throw FormatError("transcript contains an empty word");
    for (Label p : word)
      if (!vocab.IsPhone(p))
        throw FormatError("transcript token is not an alignable phone: id " + std::to_string(p));
  }
}

std::vector<Label> PhoneTranscript::Flat() const {
  std::vector<Label> flat;
  for (const auto& word : words) flat.insert(flat.end(), word.begin(), word.end());
  return flat;
}

int32_t PhoneTranscript::NumPhones() const {
  int32_t n = 0;
  for (const auto& word : words) n += static_cast<int32_t>(word.size());
  return n;
}

std::vector<Label> CtcCollapse(std::span<const Label> frames, Label blank) {
  std::vector<Label> out;
  Label prev = kEpsilon;
  for (Label l : frames) {
    if (l != prev && l != blank) out.push_back(l);
    prev = l;
  }
  return out;
}

}  // namespace wsalign
