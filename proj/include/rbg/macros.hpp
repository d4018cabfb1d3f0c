#pragma once

#include <string_view>
#include <vector>

#include "rbg/lexer.hpp"

namespace rbg {

/// Maximum nesting depth of expansions of one macro name. Deeper nesting is
/// treated as a macro cycle.
inline constexpr int kMacroRecursionLimit = 64;

/// True for the section names that survive expansion: players, pieces,
/// variables, board and rules.
bool is_reserved_section(std::string_view keyword_without_hash);

/// Expands every macro invocation and removes macro definitions. The result
/// holds only the reserved sections, each as `#name = <expanded body>`, in
/// source order. Arguments are separated by `;` and substituted textually.
std::vector<Token> expand_macros(const std::vector<Token>& tokens);

}  // namespace rbg
