#pragma once

#include <optional>
#include <string>

#include "folbridge/term.hpp"

namespace folbridge {

/// Keywords and builtin identifiers that cannot name user declarations.
bool is_reserved_word(const std::string& name);

/// [A-Za-z_][A-Za-z0-9_']*
bool is_valid_identifier(const std::string& name);

/// Prefix name of a builtin operator, e.g. `int_add`, `orb`, `eqb`.
const char* prim_identifier(PrimOp op);
std::optional<PrimOp> prim_from_identifier(const std::string& name);

}  // namespace folbridge
