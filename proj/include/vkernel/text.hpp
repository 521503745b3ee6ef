#pragma once

#include <optional>
#include <string>

#include "vkernel/form.hpp"

namespace vk {

/// Declared dimensions for parsing; indices are validated against them.
struct Dims {
    int n = 1;
    int m = 1;
};

/// Result of parsing the shared grammar: a homogeneous exterior form.
/// Degree 0 carries a plain expression. Mixed degrees are a syntax error.
///
/// Grammar: infix + - * / ^ with the usual precedence, function calls
/// sin/cos/exp/log, rational literals 3/4, coordinates x1 y2 z1_2 z1_2_3,
/// covectors dx1 dy2 dz1_2; ^ between forms of positive degree is the wedge.
struct ParsedForm {
    int degree = 0;  // 0 for empty (zero) results
    DiffForm::Terms terms;  // strictly increasing tuples, canonical coefficients

    bool is_scalar() const { return terms.empty() || degree == 0; }
    Expr scalar() const;  // degree 0 only
    /// Zero results adopt required_degree when given.
    DiffForm to_form(JetSpace space, int required_degree = -1) const;
};

ParsedForm parse_form(const std::string& text, const Dims& dims);
Expr parse_expr(const std::string& text, const Dims& dims);

/// Semicolon-separated polynomial components in x coordinates.
PolyMap parse_polymap(const std::string& text, const Dims& dims);

/// Deterministic rendering; parse(print(v)) normalizes back to v.
std::string print_expr(const Expr& e);
std::string print_form(const DiffForm& f);
std::string print_tuple(const CovectorTuple& t);

}  // namespace vk
