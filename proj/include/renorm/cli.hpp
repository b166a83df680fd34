#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "renorm/combinatorics.hpp"
#include "renorm/plane.hpp"

namespace renorm::cli {

// Runs one invocation (args excludes the program name). Returns the exit
// code: 0 success, 1 domain error or failed check, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a+bi", "a-bi", "a", "bi" or "feigenbaum:d" (the superstable parameter s_d).
Complex parse_complex(const std::string& text);

// feigenbaum | rabbit | tune:a/b,c/d | file.json | explicit "p:a/b:c/d;p:a/b:c/d".
// Named and tuned towers are built to `depth` levels.
RenormCombinatorics parse_tower(const std::string& desc, std::size_t depth);

}  // namespace renorm::cli
