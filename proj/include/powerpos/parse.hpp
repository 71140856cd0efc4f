#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

#include "powerpos/polynomial.hpp"

namespace powerpos {

/// Parses and expands a polynomial expression.
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' nonneg-int)?
///   base   := int ('/' posint)? | var | '(' expr ')'
///   var    := 'x' posint | 's' posint
///
/// Variables are numbered from 1 and must not exceed nvars; one expression
/// uses a single variable letter. Whitespace is insignificant. Throws
/// ParseError carrying the byte offset of the problem.
Polynomial parse(std::string_view text, std::size_t nvars);

/// Largest variable index mentioned in the text (at least 1).
std::size_t infer_nvars(std::string_view text);

/// Canonical graded-lex text, e.g. "x1^2 + 2*x1*x2 + x2^2"; "0" for zero.
/// parse(serialize(p), p.nvars()) == p.
std::string serialize(const Polynomial& p, char var = 'x');

/// {"nvars": n, "terms": [{"exp": [...], "coef": "num/den"}, ...]}
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace powerpos
