#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cellgroup/instance.hpp"

namespace cellgroup {

// Line-oriented instance text:
//
//   # comment
//   machines 4
//   part 1
//   route 3 4
//   route 2 4
//   part 2
//   ...
//
// Parts are numbered 1, 2, ... in order; routes are numbered globally in
// file order; machine indices on a route line are 1-based and strictly
// ascending. Syntax problems throw SyntaxError with the offending line;
// structural problems surface from validate_instance().
RawInstance parse_raw_instance(std::string_view text);
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

std::string write_instance(const Instance& instance);

}  // namespace cellgroup
