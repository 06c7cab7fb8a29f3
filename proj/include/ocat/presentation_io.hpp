// Textual operad-presentation format:
//   gen <name> <arity>
//   rel <signed sum of trees in prefix notation>, e.g.
//   rel (b (b 1 2) 3) - (b (b 1 3) 2) - (b 1 (b 2 3))
// Rational coefficients may prefix a tree, as in  rel 2/3 (b 1 2) + (b 2 1).
// Whitespace-insensitive; lines starting with '#' are comments.
#pragma once

#include <string>

#include "ocat/operad.hpp"

namespace ocat {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

OperadPresentation parse_presentation(const std::string& text, const std::string& name);

// Parses a signed sum of trees against an existing presentation's generators;
// used for selecting mu elements from the command line.
TreePoly parse_tree_poly(const std::string& text, const OperadPresentation& pres);

}  // namespace ocat
