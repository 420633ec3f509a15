#pragma once

#include <span>
#include <string>
#include <string_view>

#include "synco/algebra.hpp"

namespace synco {

struct NamedAlgebra {
  std::string name;
  FiniteAlgebra algebra;
};

// Text format:
//   algebra <name>
//   size <n>
//   op <name> <arity>
//   <n^arity entries, whitespace separated, lexicographic argument order,
//    first argument most significant>
//   ... further op blocks ...
// '#' starts a comment running to end of line.
NamedAlgebra parse_alg_text(std::string_view text, std::string_view origin);
NamedAlgebra read_alg_file(const std::string& path);

// Deterministic writer for the same format; labels, when given, are emitted
// as a comment line.
std::string write_alg_text(const NamedAlgebra& na, std::span<const std::string> labels = {});

}  // namespace synco
