#pragma once

#include <optional>
#include <string>

#include <divfree/classify.hpp>
#include <divfree/intertwiner.hpp>

namespace divfree {

// Canonical JSON text for every value the tools exchange.  Writers are
// byte-deterministic: fixed key order, two-space indentation, scalars as
// reduced "p" / "p/q" strings, grades as integer arrays.  Parsers throw
// ParseError on malformed input and DimensionError on rank conflicts.

std::string to_json(const GroupElement& g);
std::string to_json(const WittElement& u);
std::string to_json(const GroupAlgebraElement& f);
std::string to_json(const ModuleSpec& spec);
std::string to_json(const ModuleVector& v);
std::string to_json(const ActionTable& t);
std::string to_json(const AxiomReport& r);
std::string to_json(const SpanCheckReport& r);
std::string to_json(const IntertwinerResult& r);
std::string to_json(const FitResult& r);

GroupElement group_element_from_json(const std::string& text);
WittElement witt_from_json(const std::string& text);
GroupAlgebraElement group_algebra_from_json(const std::string& text);
ModuleSpec module_spec_from_json(const std::string& text);
ModuleVector module_vector_from_json(const std::string& text);
ActionTable action_table_from_json(const std::string& text);

// Comma-separated grade coordinates for command-line flags: "1,0,-2".
GroupElement grade_from_csv(const std::string& text);

// Tool configuration.  The pairing matrix must be invertible; radius >= 1.
struct Config {
  std::size_t rank = 3;
  Pairing pairing = Pairing::identity(3);
  int default_radius = 2;
  std::string output;  // default output path for export; empty means stdout
};

std::string to_json(const Config& c);
Config config_from_json(const std::string& text);

// Resolves the configuration: an explicitly given path wins, then the
// DIVFREE_CONFIG environment variable, then ./divfree.json when present,
// then built-in defaults (rank 3, identity pairing, radius 2).
Config load_config(const std::optional<std::string>& explicit_path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Structure constants [e_i, e_j] = sum_k c e_k over the windowed basis of the
// divergence-free subalgebra, ordered lexicographically by grade and then by
// basis index within the grade.  Both formats are byte-deterministic; CSV
// columns are i, j, k, c.
std::string export_structure_constants_json(const Space& W, int radius);
std::string export_structure_constants_csv(const Space& W, int radius);

}  // namespace divfree
