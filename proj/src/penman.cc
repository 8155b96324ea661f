// Copyright 2026 The AMRText Authors.
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

#include "amrtext/penman.h"

#include <cctype>
#include <map>
#include <set>
#include <vector>

#include "amrtext/error.h"

namespace amrtext {
namespace {

enum class TokenKind { kOpen, kClose, kSlash, kRole, kString, kSymbol, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

bool IsDelimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
         c == ')' || c == '"' || c == '/';
}

// Removes a trailing alignment marker such as `~e.12` or `~e.3,4`.
std::string StripAlignment(const std::string &symbol) {
  std::size_t tilde = symbol.find('~');
  if (tilde == std::string::npos || tilde == 0) return symbol;
  std::size_t i = tilde + 1;
  while (i < symbol.size() && std::isalpha(static_cast<unsigned char>(symbol[i]))) ++i;
  if (i < symbol.size() && symbol[i] == '.') ++i;
  if (i == symbol.size()) return symbol;
  for (; i < symbol.size(); ++i) {
    char c = symbol[i];
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != ',') return symbol;
  }
  return symbol.substr(0, tilde);
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Tokenize() {
    std::vector<Token> tokens;
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size()) break;
      int line = line_, column = column_;
      char c = text_[pos_];
      if (c == '(') {
        Advance();
        tokens.push_back({TokenKind::kOpen, "(", line, column});
      } else if (c == ')') {
        Advance();
        tokens.push_back({TokenKind::kClose, ")", line, column});
      } else if (c == '/') {
        Advance();
        tokens.push_back({TokenKind::kSlash, "/", line, column});
      } else if (c == '"') {
        tokens.push_back({TokenKind::kString, ReadString(line, column), line,
                          column});
      } else if (c == ':') {
        std::string role = StripAlignment(ReadSymbol());
        if (role.size() < 2) throw PenmanError("empty role", line, column);
        tokens.push_back({TokenKind::kRole, role.substr(1), line, column});
      } else {
        tokens.push_back(
            {TokenKind::kSymbol, StripAlignment(ReadSymbol()), line, column});
      }
    }
    tokens.push_back({TokenKind::kEnd, "", line_, column_});
    return tokens;
  }

 private:
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      Advance();
    }
  }

  std::string ReadSymbol() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !IsDelimiter(text_[pos_])) Advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  // Reads a quoted string including its quotes, keeping escapes verbatim.
  std::string ReadString(int line, int column) {
    std::size_t start = pos_;
    Advance();
    while (true) {
      if (pos_ >= text_.size()) {
        throw PenmanError("unterminated string", line, column);
      }
      char c = text_[pos_];
      Advance();
      if (c == '\\' && pos_ < text_.size()) {
        Advance();
      } else if (c == '"') {
        break;
      }
    }
    std::string value(text_.substr(start, pos_ - start));
    // Alignment markers may follow the closing quote.
    if (pos_ < text_.size() && text_[pos_] == '~') ReadSymbol();
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool LooksLikeVariable(const std::string &symbol) {
  if (symbol.empty() || !std::islower(static_cast<unsigned char>(symbol[0]))) {
    return false;
  }
  for (std::size_t i = 1; i < symbol.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(symbol[i]))) return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  AmrGraph Parse() {
    if (Peek().kind == TokenKind::kEnd) {
      throw PenmanError("empty input", Peek().line, Peek().column);
    }
    ParseNode();
    if (Peek().kind != TokenKind::kEnd) {
      throw PenmanError("unexpected '" + Peek().text + "' after graph",
                        Peek().line, Peek().column);
    }
    ResolveSymbols();
    return std::move(graph_);
  }

 private:
  // A symbol target whose role (reference or constant) is decided once all
  // variables are known.
  struct PendingSymbol {
    std::size_t edge;
    Token token;
  };

  const Token &Peek() const { return tokens_[pos_]; }
  Token Next() { return tokens_[pos_++]; }

  Token Expect(TokenKind kind, const char *what) {
    const Token &token = Peek();
    if (token.kind != kind) {
      std::string found =
          token.kind == TokenKind::kEnd ? "end of input" : "'" + token.text + "'";
      throw PenmanError(std::string("expected ") + what + ", found " + found,
                        token.line, token.column);
    }
    return Next();
  }

  std::string ParseNode() {
    Expect(TokenKind::kOpen, "'('");
    Token variable = Expect(TokenKind::kSymbol, "variable");
    if (!defined_.insert(variable.text).second) {
      throw PenmanError("duplicate definition of variable '" + variable.text +
                            "'",
                        variable.line, variable.column);
    }
    if (graph_.root.empty()) graph_.root = variable.text;
    Expect(TokenKind::kSlash, "'/'");
    const Token &concept_token = Peek();
    if (concept_token.kind != TokenKind::kSymbol &&
        concept_token.kind != TokenKind::kString) {
      Expect(TokenKind::kSymbol, "concept");
    }
    graph_.instances.push_back({variable.text, Next().text});

    while (Peek().kind != TokenKind::kClose) {
      Token role = Expect(TokenKind::kRole, "role or ')'");
      std::size_t index = graph_.edges.size();
      graph_.edges.push_back({variable.text, role.text, "", false});
      const Token &target = Peek();
      switch (target.kind) {
        case TokenKind::kOpen: {
          std::string child = ParseNode();
          graph_.edges[index].target = child;
          break;
        }
        case TokenKind::kString:
          graph_.edges[index].target = Next().text;
          graph_.edges[index].constant = true;
          break;
        case TokenKind::kSymbol:
          pending_.push_back({index, Next()});
          break;
        default:
          throw PenmanError("missing value for role :" + role.text,
                            target.line, target.column);
      }
    }
    Next();
    return variable.text;
  }

  void ResolveSymbols() {
    for (const PendingSymbol &pending : pending_) {
      Edge &edge = graph_.edges[pending.edge];
      edge.target = pending.token.text;
      if (defined_.count(edge.target)) continue;
      if (LooksLikeVariable(edge.target)) {
        throw PenmanError("reference to undefined variable '" + edge.target +
                              "'",
                          pending.token.line, pending.token.column);
      }
      edge.constant = true;
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  AmrGraph graph_;
  std::set<std::string> defined_;
  std::vector<PendingSymbol> pending_;
};

class Writer : public GraphVisitor {
 public:
  explicit Writer(const SerializeOptions &options) : options_(options) {}

  void EnterNode(const std::string &role, const std::string &variable,
                 const std::string &concept_label, bool first_visit) override {
    if (!role.empty()) StartRole(role);
    if (first_visit) {
      out_ += "(" + variable + " / " + concept_label;
      ++depth_;
    } else {
      out_ += variable;
    }
  }

  void ExitNode(const std::string &, bool first_visit) override {
    if (first_visit) {
      out_ += ")";
      --depth_;
    }
  }

  void Constant(const std::string &role, const std::string &value) override {
    StartRole(role);
    out_ += value;
  }

  std::string Take() { return std::move(out_); }

 private:
  void StartRole(const std::string &role) {
    if (options_.indent) {
      out_ += "\n" + std::string(4 * depth_, ' ');
    } else {
      out_ += " ";
    }
    out_ += ":" + role + " ";
  }

  const SerializeOptions &options_;
  std::string out_;
  int depth_ = 0;
};

}  // namespace

AmrGraph ParsePenman(std::string_view text) {
  return Parser(Lexer(text).Tokenize()).Parse();
}

std::string SerializePenman(const AmrGraph &graph,
                            const SerializeOptions &options) {
  Writer writer(options);
  WalkDepthFirst(graph, writer);
  return writer.Take();
}

}  // namespace amrtext
