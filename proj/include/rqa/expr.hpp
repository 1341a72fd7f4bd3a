#ifndef RQA_EXPR_HPP
#define RQA_EXPR_HPP

#include <string>

#include "rqa/diff_form.hpp"
#include "rqa/weyl.hpp"

namespace rqa {

/// Textual expression grammar shared by the CLI: variables by name, h,
/// integers, + - * ^, parentheses, differentials dx1 (or d(expr)) and
/// wedges dx1^dx2.  Parse errors carry the offending position.
TruncPoly parse_poly(const std::string& src, const RingPtr& ring);

/// A differential form of degree 0, 1 or 2.
DiffForm parse_form(const std::string& src, const RingPtr& ring);

/// Element of the reduced Weyl algebra; products keep their written order.
WeylElement parse_weyl(const std::string& src, const WeylPtr& W);

}  // namespace rqa

#endif
