#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nestpow/complex_eval.hpp"

namespace nestpow {

// Runs one command line (without the program name). Returns the exit status:
// 0 on success, 2 for malformed expressions or unbound symbols, 1 otherwise.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a", "bi", "a+bi", "a-bi", "i", "-i"; nullopt when malformed.
std::optional<Complex> parse_complex(std::string_view text);

}  // namespace nestpow
