// Reading and writing codes: Sloane one-number-per-line files, plain "x y z"
// rows, JSON, and OFF meshes.
#pragma once

#include "spcover/catalog.hpp"
#include "spcover/spherical_code.hpp"

#include <string>
#include <string_view>

namespace spcover {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class CodeFormat { Auto, Sloane, Xyz, Json, Off };

/// Accepts "sloane", "xyz", "json", "off" and (for parsing) "auto".
CodeFormat parse_format_name(std::string_view name);

/// Auto: JSON when the first non-blank character is '{' or '['; Sloane when
/// every line holds one number; xyz otherwise. Points must be unit-norm
/// within 1e-6 and are then normalized.
SphericalCode parse_code(std::string_view text, CodeFormat hint = CodeFormat::Auto);

SphericalCode read_code_file(const std::string& path, CodeFormat hint = CodeFormat::Auto);

/// Coordinates at 17 significant digits. OFF lists the Delaunay facets
/// (none for a code on one great circle).
std::string emit_code(const SphericalCode& code, CodeFormat format);

/// JSON for a catalog entry: provenance, stated values and coordinates.
std::string emit_entry_json(const CatalogEntry& entry, const SphericalCode& code);

/// Each cap boundary at the given angular radius as a closed polyline:
/// "cap k" header, then `segments + 1` rows of x y z, blank line between caps.
std::string emit_circles(const SphericalCode& code, double angular_radius, int segments = 64);

/// %.17g with negative zero printed as 0.
std::string format_coord(double v);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace spcover
