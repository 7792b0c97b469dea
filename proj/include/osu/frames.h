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

// Verb-frame lexicon and caption rendering.
//
// Lexicon files are UTF-8, one record per line:
//
//   verb <TAB> role1,role2,... <TAB> template
//
// A template slot is written {RoleName}. An "a" or "an" directly in front of
// a slot is an adaptive article and is re-chosen from the filler's display
// string; "the" is kept verbatim. A slot written ~{RoleName} closes a
// droppable trailing group: when its noun is blank the slot, its article and
// the preposition in front of them are omitted. Blank lines and lines
// starting with '#' are ignored.
//
// Noun tables are one `noun_id <TAB> display` pair per line.

#ifndef OSU_FRAMES_H_
#define OSU_FRAMES_H_

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "osu/situation.h"

namespace osu {

enum class ArticleMode { kNone, kAdaptive, kFixed };

struct TemplateSlot {
  std::string role;
  ArticleMode article = ArticleMode::kNone;
  std::string article_text;  // only for kFixed
  bool droppable = false;
  std::string lead;  // preposition (plus its trailing space) of a droppable group
};

// A template is a sequence of literal text and slots.
struct TemplatePiece {
  bool is_slot = false;
  std::string text;  // literal text when !is_slot
  TemplateSlot slot;
};

struct VerbFrame {
  std::string verb;
  std::vector<std::string> roles;
  std::string template_text;  // as written in the lexicon
  std::vector<TemplatePiece> pieces;
};

class FrameLexicon {
 public:
  // Throws Error(kSchema) on duplicate verbs or inconsistent templates.
  void AddFrame(VerbFrame frame);
  // Throws Error(kSchema) on a duplicate noun id.
  void AddNoun(std::string noun_id, std::string display);

  bool Contains(std::string_view verb) const;
  // Throws Error(kNotFound) for unknown verbs.
  const VerbFrame& Frame(std::string_view verb) const;
  // Display string for a noun id; the raw id when unmapped.
  std::string Display(std::string_view noun_id) const;

  const std::map<std::string, VerbFrame, std::less<>>& frames() const {
    return frames_;
  }
  const std::map<std::string, std::string, std::less<>>& nouns() const {
    return noun_display_;
  }
  bool empty() const { return frames_.empty(); }
  size_t size() const { return frames_.size(); }

 private:
  std::map<std::string, VerbFrame, std::less<>> frames_;
  std::map<std::string, std::string, std::less<>> noun_display_;
};

// Parses one template against a role list. Throws ParseError on unbalanced
// braces and Error(kSchema) when slots and roles disagree.
std::vector<TemplatePiece> ParseTemplate(std::string_view text,
                                         const std::vector<std::string>& roles);

// Builds a frame from its parts, validating every invariant.
VerbFrame MakeFrame(std::string verb, std::vector<std::string> roles,
                    std::string template_text);

FrameLexicon LoadLexicon(std::istream& source);
void LoadNounTable(std::istream& source, FrameLexicon& lexicon);

// Convenience wrappers that open files; Error(kNotFound) when unreadable.
FrameLexicon LoadLexiconFile(const std::string& path);
void LoadNounTableFile(const std::string& path, FrameLexicon& lexicon);

const std::vector<std::string>& RolesOf(const FrameLexicon& lexicon,
                                        std::string_view verb);

// role -> noun id (or kBlankNoun). Roles missing from the map render blank.
using RoleNouns = std::map<std::string, std::string, std::less<>>;

std::string RenderCaption(const FrameLexicon& lexicon, std::string_view verb,
                          const RoleNouns& nouns);
std::string RenderCaption(const FrameLexicon& lexicon,
                          const GroundedSituation& situation);

// "an" when the word starts with a vowel letter (case-insensitive), else "a".
std::string_view IndefiniteArticle(std::string_view word);

enum class ViolationKind {
  kUnknownVerb,
  kRoleNotInFrame,
  kMissingRole,
  kDuplicateRole,
  kTooManyRoles,
  kInvalidBox,
};

struct Violation {
  ViolationKind kind;
  std::string role;  // empty when not role specific
  std::string message;
};

// Empty when the situation matches its frame exactly.
std::vector<Violation> ValidateSituation(const FrameLexicon& lexicon,
                                         const GroundedSituation& situation);

}  // namespace osu

#endif  // OSU_FRAMES_H_
