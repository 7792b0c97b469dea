// Copyright 2026 The osu Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osu/frames.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "osu/error.h"

namespace osu {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

void RstripSpaces(std::string& s) {
  while (!s.empty() && IsSpace(s.back())) s.pop_back();
}

// Removes the last whitespace-delimited word of `s` (ignoring trailing
// whitespace) and returns it; `s` keeps the whitespace in front of the word.
std::string PopLastWord(std::string& s) {
  std::string probe = s;
  RstripSpaces(probe);
  size_t start = probe.size();
  while (start > 0 && !IsSpace(probe[start - 1])) --start;
  std::string word = probe.substr(start);
  s = probe.substr(0, start);
  return word;
}

std::string PeekLastWord(const std::string& s) {
  std::string copy = s;
  return PopLastWord(copy);
}

// Collapses whitespace runs, drops spaces before punctuation and
// uppercases the first letter.
std::string Tidy(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (IsSpace(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      continue;
    }
    if ((c == '.' || c == ',' || c == ';' || c == ':' || c == '!' ||
         c == '?') &&
        !out.empty() && out.back() == ' ') {
      out.pop_back();
    }
    out.push_back(c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  for (char& c : out) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    }
  }
  return out;
}

std::vector<std::string> SplitRoles(std::string_view field) {
  std::vector<std::string> roles;
  size_t pos = 0;
  while (true) {
    size_t comma = field.find(',', pos);
    std::string_view part = field.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    roles.emplace_back(Trim(part));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return roles;
}

std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.emplace_back(line.substr(pos));
      break;
    }
    out.emplace_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return out;
}

void CheckRoles(const std::string& verb, const std::vector<std::string>& roles) {
  if (roles.empty() || static_cast<int>(roles.size()) > kMaxRoles) {
    throw Error(ErrorKind::kSchema,
                "frame '" + verb + "' must have 1.." +
                    std::to_string(kMaxRoles) + " roles, has " +
                    std::to_string(roles.size()));
  }
  std::set<std::string> seen;
  for (const auto& r : roles) {
    if (r.empty()) {
      throw Error(ErrorKind::kSchema, "frame '" + verb + "' has an empty role");
    }
    if (!seen.insert(r).second) {
      throw Error(ErrorKind::kSchema,
                  "frame '" + verb + "' repeats role '" + r + "'");
    }
  }
}

template <typename Fn>
void ForEachRecord(std::istream& source, Fn&& fn) {
  std::string line;
  int line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    try {
      fn(std::string_view(line), line_no);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

std::vector<TemplatePiece> ParseTemplate(std::string_view text,
                                         const std::vector<std::string>& roles) {
  std::vector<TemplatePiece> pieces;
  std::string literal;
  std::set<std::string> used;
  bool seen_droppable = false;

  auto flush_literal = [&] {
    if (!literal.empty()) {
      TemplatePiece p;
      p.text = std::move(literal);
      pieces.push_back(std::move(p));
      literal.clear();
    }
  };

  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool tilde_slot = c == '~' && i + 1 < text.size() && text[i + 1] == '{';
    if (c == '}') throw ParseError("unmatched '}' in template");
    if (c != '{' && !tilde_slot) {
      literal.push_back(c);
      continue;
    }
    if (tilde_slot) ++i;
    const size_t close = text.find('}', i + 1);
    if (close == std::string_view::npos) {
      throw ParseError("unterminated slot in template");
    }
    std::string role(Trim(text.substr(i + 1, close - i - 1)));
    if (role.empty() || role.find('{') != std::string::npos) {
      throw ParseError("malformed slot in template");
    }
    i = close;

    if (std::find(roles.begin(), roles.end(), role) == roles.end()) {
      throw Error(ErrorKind::kSchema,
                  "template slot names unknown role '" + role + "'");
    }
    if (!used.insert(role).second) {
      throw Error(ErrorKind::kSchema,
                  "role '" + role + "' appears in more than one slot");
    }

    TemplateSlot slot;
    slot.role = role;
    slot.droppable = tilde_slot;
    if (!tilde_slot && seen_droppable) {
      throw Error(ErrorKind::kSchema, "slot '" + role +
                                          "' follows a droppable trailing "
                                          "group");
    }
    seen_droppable = seen_droppable || tilde_slot;

    const std::string last = Lower(PeekLastWord(literal));
    if (last == "a" || last == "an") {
      PopLastWord(literal);
      slot.article = ArticleMode::kAdaptive;
    } else if (last == "the") {
      slot.article = ArticleMode::kFixed;
      slot.article_text = PopLastWord(literal);
    }
    if (tilde_slot) {
      std::string lead = PopLastWord(literal);
      if (lead.empty()) {
        throw Error(ErrorKind::kSchema, "droppable slot '" + role +
                                            "' has no preposition in front");
      }
      slot.lead = lead + " ";
    }
    flush_literal();
    TemplatePiece p;
    p.is_slot = true;
    p.slot = std::move(slot);
    pieces.push_back(std::move(p));
  }
  flush_literal();

  for (const auto& r : roles) {
    if (!used.count(r)) {
      throw Error(ErrorKind::kSchema, "template has no slot for role '" + r + "'");
    }
  }
  return pieces;
}

VerbFrame MakeFrame(std::string verb, std::vector<std::string> roles,
                    std::string template_text) {
  if (verb.empty()) throw Error(ErrorKind::kSchema, "empty verb");
  CheckRoles(verb, roles);
  VerbFrame frame;
  frame.pieces = ParseTemplate(template_text, roles);
  frame.verb = std::move(verb);
  frame.roles = std::move(roles);
  frame.template_text = std::move(template_text);
  return frame;
}

void FrameLexicon::AddFrame(VerbFrame frame) {
  if (frames_.count(frame.verb)) {
    throw Error(ErrorKind::kSchema, "duplicate verb '" + frame.verb + "'");
  }
  std::string key = frame.verb;
  frames_.emplace(std::move(key), std::move(frame));
}

void FrameLexicon::AddNoun(std::string noun_id, std::string display) {
  if (noun_display_.count(noun_id)) {
    throw Error(ErrorKind::kSchema, "duplicate noun id '" + noun_id + "'");
  }
  noun_display_.emplace(std::move(noun_id), std::move(display));
}

bool FrameLexicon::Contains(std::string_view verb) const {
  return frames_.find(verb) != frames_.end();
}

const VerbFrame& FrameLexicon::Frame(std::string_view verb) const {
  auto it = frames_.find(verb);
  if (it == frames_.end()) {
    throw Error(ErrorKind::kNotFound,
                "unknown verb '" + std::string(verb) + "'");
  }
  return it->second;
}

std::string FrameLexicon::Display(std::string_view noun_id) const {
  auto it = noun_display_.find(noun_id);
  return it == noun_display_.end() ? std::string(noun_id) : it->second;
}

FrameLexicon LoadLexicon(std::istream& source) {
  FrameLexicon lexicon;
  ForEachRecord(source, [&](std::string_view line, int line_no) {
    auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected 3 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::string verb(Trim(fields[0]));
    if (verb.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty verb",
                       line_no);
    }
    try {
      lexicon.AddFrame(
          MakeFrame(verb, SplitRoles(fields[1]), std::string(Trim(fields[2]))));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                       line_no);
    }
  });
  return lexicon;
}

void LoadNounTable(std::istream& source, FrameLexicon& lexicon) {
  ForEachRecord(source, [&](std::string_view line, int line_no) {
    auto fields = SplitTabs(line);
    if (fields.size() != 2 || Trim(fields[0]).empty()) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected 'noun_id<TAB>display'",
                       line_no);
    }
    lexicon.AddNoun(std::string(Trim(fields[0])), std::string(Trim(fields[1])));
  });
}

FrameLexicon LoadLexiconFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kNotFound, "cannot open lexicon " + path);
  return LoadLexicon(in);
}

void LoadNounTableFile(const std::string& path, FrameLexicon& lexicon) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kNotFound, "cannot open noun table " + path);
  LoadNounTable(in, lexicon);
}

const std::vector<std::string>& RolesOf(const FrameLexicon& lexicon,
                                        std::string_view verb) {
  return lexicon.Frame(verb).roles;
}

std::string_view IndefiniteArticle(std::string_view word) {
  word = Trim(word);
  if (word.empty()) return "a";
  switch (std::tolower(static_cast<unsigned char>(word.front()))) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return "an";
    default:
      return "a";
  }
}

std::string RenderCaption(const FrameLexicon& lexicon, std::string_view verb,
                          const RoleNouns& nouns) {
  const VerbFrame& frame = lexicon.Frame(verb);
  for (const auto& [role, noun] : nouns) {
    if (std::find(frame.roles.begin(), frame.roles.end(), role) ==
        frame.roles.end()) {
      throw Error(ErrorKind::kSchema, "role '" + role + "' is not in frame '" +
                                          frame.verb + "'");
    }
  }

  std::string raw;
  for (const auto& piece : frame.pieces) {
    if (!piece.is_slot) {
      raw += piece.text;
      continue;
    }
    const TemplateSlot& slot = piece.slot;
    auto it = nouns.find(slot.role);
    const bool blank = it == nouns.end() || IsBlankNoun(it->second);
    if (blank && slot.droppable) continue;
    const std::string display =
        blank ? Lower(slot.role) : lexicon.Display(it->second);

    raw += slot.lead;
    switch (slot.article) {
      case ArticleMode::kAdaptive:
        raw += IndefiniteArticle(display);
        raw += ' ';
        break;
      case ArticleMode::kFixed:
        raw += Lower(slot.article_text);
        raw += ' ';
        break;
      case ArticleMode::kNone:
        break;
    }
    raw += display;
  }
  return Tidy(raw);
}

std::string RenderCaption(const FrameLexicon& lexicon,
                          const GroundedSituation& situation) {
  RoleNouns nouns;
  for (const auto& e : situation.entries) nouns[e.role] = e.noun;
  return RenderCaption(lexicon, situation.verb, nouns);
}

std::vector<Violation> ValidateSituation(const FrameLexicon& lexicon,
                                         const GroundedSituation& situation) {
  std::vector<Violation> out;
  if (static_cast<int>(situation.entries.size()) > kMaxRoles) {
    out.push_back({ViolationKind::kTooManyRoles, "",
                   "role count exceeds " + std::to_string(kMaxRoles) + " (" +
                       std::to_string(situation.entries.size()) + ")"});
  }
  for (const auto& e : situation.entries) {
    if (e.box && !IsValidBox(*e.box)) {
      out.push_back({ViolationKind::kInvalidBox, e.role,
                     "invalid box for role '" + e.role + "': " +
                         BoxProblem(*e.box)});
    }
  }
  if (!lexicon.Contains(situation.verb)) {
    out.push_back({ViolationKind::kUnknownVerb, "",
                   "unknown verb '" + situation.verb + "'"});
    return out;
  }
  const VerbFrame& frame = lexicon.Frame(situation.verb);
  std::set<std::string> seen;
  for (const auto& e : situation.entries) {
    if (!seen.insert(e.role).second) {
      out.push_back({ViolationKind::kDuplicateRole, e.role,
                     "role '" + e.role + "' given more than once"});
    }
    if (std::find(frame.roles.begin(), frame.roles.end(), e.role) ==
        frame.roles.end()) {
      out.push_back({ViolationKind::kRoleNotInFrame, e.role,
                     "role not in frame: '" + e.role + "'"});
    }
  }
  for (const auto& r : frame.roles) {
    if (!seen.count(r)) {
      out.push_back(
          {ViolationKind::kMissingRole, r, "missing role '" + r + "'"});
    }
  }
  return out;
}

}  // namespace osu
