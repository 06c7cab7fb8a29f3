// Text serialization of truncated modules: per-arity dimensions, symmetric
// generator matrices, and action matrices keyed by the canonical encoding of
// Cat O basis morphisms (the map as a digit string plus label indices).
// Rational entries are written as p/q.
#pragma once

#include <iosfwd>
#include <string>

#include "ocat/module.hpp"

namespace ocat {

std::string module_save(ModulePtr f);
ModulePtr module_load(const std::string& text, CatPtr cat);

}  // namespace ocat
