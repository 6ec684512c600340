// JSON serialization of polynomials and ghost polynomials, and the prefix
// expression language read by the command-line tool.
//
// Grammar:
//   expr   := number | atom | '(' op expr+ ')'
//   op     := '+' | '-' | '*' | '^'          ('^' takes an expr and a nonnegative integer)
//   atom   := 'a[' n '][' i '][' j ']'       matrix entry, all indices 1-based
//           | 'p[' n '][' k ']'              fiber coordinate of copy n
//           | 'J[' k ']'                     moment component J_k
//           | 'lambda' | 'i'
//   number := integer | integer '/' integer
// Whitespace separates tokens; '(- x)' negates.
#pragma once

#include "lgq/brst.hpp"

#include <stdexcept>

namespace lgq {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

PhasePoly parse_expression(const std::string& text, int N);

nlohmann::json series_to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);
nlohmann::json phasepoly_to_json(const PhasePoly& f);
PhasePoly phasepoly_from_json(const nlohmann::json& j);
nlohmann::json vec_to_json(const Vec& v);

}  // namespace lgq
