#pragma once

#include <string>
#include <vector>

#include "adjoints/fieldtower.hpp"
#include "adjoints/laurent.hpp"
#include "adjoints/multipoly.hpp"

namespace adjoints {

// Shared expression grammar: rational literals, symbols, + - * / ^ with
// integer exponents, parentheses. No implicit multiplication. Series
// additionally accept a trailing O(t^N) precision marker.

// Polynomial over the given variables; division only by constants, variable
// exponents must be nonnegative.
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& variables);

// Element of a field tower (full height); full field arithmetic.
TowerElem parse_tower_elem(const std::string& text, const TowerPtr& tower);

// Truncated Laurent series in t with tower-element coefficients.
TruncLaurent parse_series(const std::string& text, const TowerPtr& tower);

// Monic univariate polynomial in `gen` with coefficients in `tower`
// (ascending coefficient list), as used for extension minimal polynomials.
std::vector<TowerElem> parse_minpoly(const std::string& text, const TowerPtr& tower,
                                     const std::string& gen);

}  // namespace adjoints
