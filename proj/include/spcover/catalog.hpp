// Catalog of minimal-covering configurations: constructions, stated
// heights/radii with their minimal polynomials, and verification.
#pragma once

#include "spcover/algebra.hpp"
#include "spcover/spherical_code.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spcover {

class NotInCatalog : public Error {
 public:
  using Error::Error;
};

enum class Status { PutativeGlobal, LocalMinimum, NeedsInvestigation, NewLowerValue, Unresolved };

const char* to_string(Status s);

/// How the code is constructed.
enum class Construction { Radicals, PolynomialRoots, Decimals, Coordinates, Numeric };

const char* to_string(Construction c);

/// A printed number: its text, its 64-bit value and, when given, the integer
/// polynomial it is a root of.
struct StatedValue {
  std::string text;  // decimal or closed form as printed (typos resolved)
  double value = 0.0;
  std::optional<IntPolynomial> polynomial;
};

struct Parameter {
  std::string name;
  StatedValue value;
};

struct CatalogEntry {
  std::size_t n = 0;
  Status status = Status::Unresolved;
  Construction construction = Construction::Radicals;
  std::string scheme_id;  // "generic" when no symmetry scheme is declared
  std::vector<Parameter> parameters;
  std::optional<StatedValue> stated_height;
  std::optional<StatedValue> stated_radius;
  int source_digits = 0;  // significant digits printed for the stated values
  double table_radius_deg = 0.0;                 // computed column of the cross-check table
  std::optional<double> reference_radius_deg;    // earlier published value
  bool coplanar_cells = true;                    // measured, see verify_entry
  std::vector<std::string> notes;                // typo resolutions
};

/// Catalog sizes, ascending.
const std::vector<std::size_t>& catalog_sizes();

/// Throws NotInCatalog for sizes without an entry.
const CatalogEntry& catalog_entry(std::size_t n);

/// Polynomial parameters are refined with refine_root before use.
SphericalCode build_code(const CatalogEntry& entry);

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::size_t n = 0;
  std::vector<Check> checks;
  bool passed() const;
};

/// Tolerance on the covering radius, in degrees, against the recorded table column.
double radius_tolerance_deg(const CatalogEntry& entry);

VerificationReport verify_entry(const CatalogEntry& entry, double tol = 1e-10);

struct CrossCheckRow {
  std::size_t n = 0;
  std::optional<double> reference_deg;
  double table_deg = 0.0;
  double computed_deg = 0.0;
  Status status = Status::Unresolved;
};

std::vector<CrossCheckRow> cross_check_table();

/// Largest plane-fit deviation over all Voronoi cells of a full-rank code.
double max_cell_deviation(const SphericalCode& code);

}  // namespace spcover
