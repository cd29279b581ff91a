// Copyright 2026 The Transplantc Authors
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

#include "transplant/printer.hpp"

#include <algorithm>

#include "transplant/errors.hpp"

namespace transplant {

namespace {

bool noSpaceBefore(const std::string& t) {
  return t == ";" || t == "," || t == ")" || t == "]" || t == "(" ||
         t == "[" || t == "++" || t == "--";
}

bool noSpaceAfter(const std::string& t) {
  return t == "(" || t == "[";
}

class TokenWriter {
 public:
  void write(const Token& t) {
    if (t.kind == TokKind::Comment) return;
    if (t.kind == TokKind::Directive) {
      breakLine();
      out_ += t.text;
      breakLine();
      prev_.clear();
      return;
    }
    if (!atLineStart_ && !prev_.empty() && !noSpaceBefore(t.text) &&
        !noSpaceAfter(prev_))
      out_ += ' ';
    out_ += t.text;
    atLineStart_ = false;
    prev_ = t.text;
    if (t.is("(")) ++parenDepth_;
    if (t.is(")")) --parenDepth_;
    if (multiline_ &&
        ((t.is(";") && parenDepth_ == 0) || t.is("{") || t.is("}")))
      breakLine();
  }

  void breakLine() {
    if (!out_.empty() && out_.back() != '\n') out_ += '\n';
    atLineStart_ = true;
    prev_.clear();
  }

  void setMultiline(bool m) { multiline_ = m; }

  std::string take() {
    if (!out_.empty() && out_.back() != '\n' && multiline_) out_ += '\n';
    return std::move(out_);
  }

 private:
  std::string out_;
  std::string prev_;
  bool atLineStart_ = true;
  bool multiline_ = true;
  int parenDepth_ = 0;
};

void normalizeElementInto(const Element& e, TokenWriter* w) {
  if (e.kind == ElementKind::ConditionalBlock) {
    Token guard;
    guard.kind = TokKind::Directive;
    guard.text = std::string(e.condNegated ? "#ifndef " : "#ifdef ") + e.condIdent;
    w->write(guard);
    for (const auto& c : e.thenElements) normalizeElementInto(c, w);
    if (!e.elseElements.empty() || e.guardElse.end > e.guardElse.begin) {
      Token el;
      el.kind = TokKind::Directive;
      el.text = "#else";
      w->write(el);
      for (const auto& c : e.elseElements) normalizeElementInto(c, w);
    }
    Token end;
    end.kind = TokKind::Directive;
    end.text = "#endif";
    w->write(end);
    return;
  }
  for (const auto& t : e.tokens) w->write(t);
  w->breakLine();
}

}  // namespace

std::string print(const Ast& ast) { return ast.text; }

std::string span_text(const std::string& fileText, const Span& span) {
  return fileText.substr(span.begin, span.end - span.begin);
}

std::string delete_element(const Ast& ast, std::size_t index) {
  const Element& e = ast.elements.at(index);
  std::size_t begin = e.span.begin;
  std::size_t end = e.span.end;
  const std::string& text = ast.text;
  if (end < text.size() && text[end] == '\n') ++end;
  // One trailing blank line goes with the element.
  std::size_t p = end;
  while (p < text.size() && (text[p] == ' ' || text[p] == '\t')) ++p;
  if (p < text.size() && text[p] == '\n') end = p + 1;
  return text.substr(0, begin) + text.substr(end);
}

std::string insert_element_at_end(const Ast& ast,
                                  const std::string& elementText) {
  std::string out = ast.text;
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += '\n';
  out += elementText;
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out;
}

std::string normalize(const Element& element) {
  TokenWriter w;
  normalizeElementInto(element, &w);
  return w.take();
}

std::string normalize_tokens(const std::vector<Token>& tokens) {
  TokenWriter w;
  for (const auto& t : tokens) w.write(t);
  return w.take();
}

std::string join_tokens(const std::vector<Token>& tokens) {
  TokenWriter w;
  w.setMultiline(false);
  for (const auto& t : tokens) w.write(t);
  return w.take();
}

std::string rename_identifiers(
    const std::string& code, const std::map<std::string, std::string>& renames) {
  auto toks = lex("<mem>", code);
  std::string out = code;
  for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
    if (it->kind != TokKind::Ident) continue;
    auto found = renames.find(it->text);
    if (found == renames.end()) continue;
    out.replace(it->begin, it->end - it->begin, found->second);
  }
  return out;
}

std::string apply_edits(const std::string& text, std::vector<TextEdit> edits) {
  std::sort(edits.begin(), edits.end(),
            [](const TextEdit& a, const TextEdit& b) { return a.begin < b.begin; });
  for (std::size_t i = 1; i < edits.size(); ++i)
    if (edits[i].begin < edits[i - 1].end)
      throw Error("overlapping text edits");
  std::string out;
  std::size_t cursor = 0;
  for (const auto& e : edits) {
    out += text.substr(cursor, e.begin - cursor);
    out += e.replacement;
    cursor = e.end;
  }
  out += text.substr(cursor);
  return out;
}

}  // namespace transplant
