#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dglab/field.hpp"

namespace dglab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Signed sum of terms "c sin m", "c cos m" or constants, e.g. "-sin+0.1sin2", "1 - cos",
// "0.5*cos 3". Coefficient defaults to 1, mode to 1. Throws InputError on malformed text.
RealCircleField parse_init(const std::string& text);

// "a:h:b" inclusive grid, or a comma list.
std::vector<double> parse_grid(const std::string& text);

// key=value lines; '#' starts a comment. Throws InputError on a line without '='.
std::map<std::string, std::string> parse_config(std::istream& is);

// Relative paths land under $DG_LAB_OUT when it is set.
std::filesystem::path resolve_output_dir(const std::string& out);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace dglab::cli
