#include "rbg/macros.hpp"

#include <map>
#include <set>
#include <string>

#include "rbg/errors.hpp"

namespace rbg {

bool is_reserved_section(std::string_view name) {
  return name == "players" || name == "pieces" || name == "variables" || name == "board" ||
         name == "rules";
}

namespace {

struct MacroDefinition {
  std::string name;
  std::vector<std::string> parameters;
  std::vector<Token> body;
  SourcePosition position;
};

bool opens_group(const Token& t) {
  return t.kind == TokenKind::symbol &&
         (t.text == "(" || t.text == "[" || t.text == "{" || t.text == "{?" || t.text == "{!" ||
          t.text == "{$" || t.text == "[$");
}

bool closes_group(const Token& t) {
  return t.kind == TokenKind::symbol && (t.text == ")" || t.text == "]" || t.text == "}");
}

class Expander {
 public:
  explicit Expander(std::map<std::string, MacroDefinition> macros) : macros_(std::move(macros)) {}

  void expand(const std::vector<Token>& input, std::vector<Token>& out) {
    std::size_t i = 0;
    while (i < input.size()) {
      const Token& token = input[i];
      if (!token.is_identifier()) {
        out.push_back(token);
        ++i;
        continue;
      }
      auto it = macros_.find(token.text);
      if (it == macros_.end()) {
        reject_unknown_call(input, i);
        out.push_back(token);
        ++i;
        continue;
      }
      const MacroDefinition& macro = it->second;
      std::vector<std::vector<Token>> arguments;
      ++i;
      if (!macro.parameters.empty()) {
        i = collect_arguments(input, i, token, arguments);
        if (arguments.size() != macro.parameters.size()) {
          throw MacroError(MacroError::Kind::arity_mismatch, token.position,
                           "macro '" + macro.name + "' expects " +
                               std::to_string(macro.parameters.size()) + " argument(s), got " +
                               std::to_string(arguments.size()));
        }
      }
      std::vector<Token> substituted;
      substituted.reserve(macro.body.size());
      for (const Token& b : macro.body) {
        bool replaced = false;
        if (b.is_identifier()) {
          for (std::size_t p = 0; p < macro.parameters.size(); ++p) {
            if (macro.parameters[p] == b.text) {
              substituted.insert(substituted.end(), arguments[p].begin(), arguments[p].end());
              replaced = true;
              break;
            }
          }
        }
        if (!replaced) substituted.push_back(b);
      }
      int& active = active_[macro.name];
      if (++active > kMacroRecursionLimit) {
        throw MacroError(MacroError::Kind::recursion_limit, token.position,
                         "macro '" + macro.name + "' nests deeper than " +
                             std::to_string(kMacroRecursionLimit) + " expansions");
      }
      expand(substituted, out);
      --active;
    }
  }

 private:
  // `name(a; b)` where name is not a macro cannot be a regular expression
  // because `;` never appears in rules; report it as an unknown macro.
  static void reject_unknown_call(const std::vector<Token>& input, std::size_t i) {
    if (i + 1 >= input.size() || !input[i + 1].is_symbol("(")) return;
    int depth = 0;
    for (std::size_t j = i + 1; j < input.size(); ++j) {
      if (opens_group(input[j])) {
        ++depth;
      } else if (closes_group(input[j])) {
        if (--depth == 0) return;
      } else if (depth == 1 && input[j].is_symbol(";")) {
        throw MacroError(MacroError::Kind::unknown_macro, input[i].position,
                         "unknown macro '" + input[i].text + "'");
      }
    }
  }

  static std::size_t collect_arguments(const std::vector<Token>& input, std::size_t i,
                                       const Token& call, std::vector<std::vector<Token>>& args) {
    if (i >= input.size() || !input[i].is_symbol("(")) {
      throw MacroError(MacroError::Kind::arity_mismatch, call.position,
                       "macro '" + call.text + "' requires arguments");
    }
    int depth = 1;
    args.emplace_back();
    for (++i; i < input.size(); ++i) {
      const Token& t = input[i];
      if (opens_group(t)) {
        ++depth;
      } else if (closes_group(t)) {
        if (--depth == 0) return i + 1;
      } else if (depth == 1 && t.is_symbol(";")) {
        args.emplace_back();
        continue;
      }
      args.back().push_back(t);
    }
    throw MacroError(MacroError::Kind::malformed, call.position,
                     "unterminated argument list of macro '" + call.text + "'");
  }

  std::map<std::string, MacroDefinition> macros_;
  std::map<std::string, int> active_;
};

}  // namespace

std::vector<Token> expand_macros(const std::vector<Token>& tokens) {
  if (!tokens.empty() && tokens.front().kind != TokenKind::section_keyword) {
    throw MacroError(MacroError::Kind::malformed, tokens.front().position,
                     "expected a section or macro definition");
  }
  std::map<std::string, MacroDefinition> macros;
  struct Section {
    Token keyword;
    Token equals;
    std::vector<Token> body;
  };
  std::vector<Section> sections;
  std::set<std::string> seen_sections;

  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& keyword = tokens[i++];
    const std::string name = keyword.text.substr(1);
    std::vector<std::string> parameters;
    if (i < tokens.size() && tokens[i].is_symbol("(")) {
      if (is_reserved_section(name)) {
        throw MacroError(MacroError::Kind::malformed, keyword.position,
                         "section '" + keyword.text + "' takes no parameters");
      }
      ++i;
      while (true) {
        if (i >= tokens.size() || !tokens[i].is_identifier()) {
          throw MacroError(MacroError::Kind::malformed, keyword.position,
                           "expected a parameter name in '" + keyword.text + "'");
        }
        for (const std::string& p : parameters) {
          if (p == tokens[i].text) {
            throw MacroError(MacroError::Kind::duplicate_definition, tokens[i].position,
                             "duplicate parameter '" + p + "'");
          }
        }
        parameters.push_back(tokens[i++].text);
        if (i < tokens.size() && tokens[i].is_symbol(";")) {
          ++i;
          continue;
        }
        if (i < tokens.size() && tokens[i].is_symbol(")")) {
          ++i;
          break;
        }
        throw MacroError(MacroError::Kind::malformed, keyword.position,
                         "expected ';' or ')' in parameter list of '" + keyword.text + "'");
      }
    }
    if (i >= tokens.size() || !tokens[i].is_symbol("=")) {
      throw MacroError(MacroError::Kind::malformed, keyword.position,
                       "expected '=' after '" + keyword.text + "'");
    }
    const Token equals = tokens[i++];
    std::vector<Token> body;
    while (i < tokens.size() && tokens[i].kind != TokenKind::section_keyword) {
      body.push_back(tokens[i++]);
    }
    if (is_reserved_section(name)) {
      if (!seen_sections.insert(name).second) {
        throw MacroError(MacroError::Kind::duplicate_definition, keyword.position,
                         "duplicate section '" + keyword.text + "'");
      }
      sections.push_back({keyword, equals, std::move(body)});
    } else {
      if (macros.count(name) != 0) {
        throw MacroError(MacroError::Kind::duplicate_definition, keyword.position,
                         "duplicate macro '" + name + "'");
      }
      macros.emplace(name, MacroDefinition{name, std::move(parameters), std::move(body),
                                           keyword.position});
    }
  }

  Expander expander(std::move(macros));
  std::vector<Token> out;
  for (const Section& section : sections) {
    out.push_back(section.keyword);
    out.push_back(section.equals);
    expander.expand(section.body, out);
  }
  return out;
}

}  // namespace rbg
