#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ridet/elman.hpp"
#include "ridet/windows.hpp"

namespace ridet {

/// JSON document carrying topology, seed, initial context value, and the
/// row-major weight arrays (see the README for the exact field names).
std::string network_to_json(const ElmanNetwork& net);
ElmanNetwork network_from_json(std::string_view text);  // throws ParseError

std::string bounds_to_json(const NormalizationBounds& bounds);
NormalizationBounds bounds_from_json(std::string_view text);  // throws ParseError

/// Whole-file helpers; read throws ParseError when the file cannot be
/// opened, write throws std::runtime_error.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ridet
