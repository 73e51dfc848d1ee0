#pragma once

#include <string>

#include <json.hpp>

#include "normctl/algebra.hpp"
#include "normctl/bounds.hpp"
#include "normctl/cases.hpp"
#include "normctl/inversion.hpp"
#include "normctl/visibility.hpp"

namespace normctl {

using ojson = nlohmann::ordered_json;

// Shortest-exact decimal rendering of a double (printf %.17g, C locale).
// Used for CSV cells so byte-identical reruns do not depend on stream state.
std::string format_g17(double v);

// Element wire format:
//   {"type": "torus_poly", "coeffs": [[k, re, im], ...]}   (k ascending)
//   {"type": "matrix", "n": n, "entries": [re, im, ...]}   (row-major)
ojson element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const ojson& j);

// Reads a JSON element file. Unreadable file or malformed content raises
// ConfigError (the CLI maps it to the usage exit code).
AlgebraElement load_element(const std::string& path);

// Writes pretty-printed JSON with a trailing newline; empty path writes to
// stdout.
void save_json(const std::string& path, const ojson& j);
void save_text(const std::string& path, const std::string& text);

// "c1" or "approx" (approximation pair with its default weight). Unknown
// names raise ConfigError.
AlgebraPair pair_from_name(const std::string& name);

ojson to_json(const DiffNormCertificate& cert);
ojson to_json(const InverseReport& rep);
ojson to_json(const BoundReport& rep);
ojson to_json(const VisibilityEstimate& est);
ojson to_json(const QuotientRuleReport& rep);
ojson to_json(const AnFamilyRow& row);
ojson to_json(const BaskakovReport& rep);
ojson to_json(const SunReport& rep);

}  // namespace normctl
