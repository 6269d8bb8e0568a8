#pragma once

#include <iosfwd>

#include "json.hpp"
#include "plb/bounds.hpp"
#include "plb/curves.hpp"
#include "plb/mesh.hpp"
#include "plb/quadrature.hpp"
#include "plb/verify.hpp"

namespace plb {

using Json = nlohmann::ordered_json;

// Reports round-trip exactly: every real is written with 17 significant
// digits, +-inf as the strings "inf"/"-inf", and log-space quantities carry
// their natural log next to the base-10 value shown to readers.

Json to_json(const Magnitude& m);
Magnitude magnitude_from_json(const Json& j);

Json to_json(const Alpha& a);
Alpha alpha_from_json(const Json& j);

Json to_json(const BoundReport& r);
BoundReport bound_report_from_json(const Json& j);

Json to_json(const VerificationReport& r);
VerificationReport verification_report_from_json(const Json& j);

Json to_json(const CurveMetrics& m);
Json to_json(const NormEstimate& e);

/// "x,y" header then one %.17g row per vertex.
void write_curve_csv(std::ostream& os, const PolygonalCurve& curve);
PolygonalCurve read_curve_csv(std::istream& is);

/// Closed polygon in an SVG whose viewBox pads the bounding box by 5%.
void write_curve_svg(std::ostream& os, const PolygonalCurve& curve);

void write_mesh_off(std::ostream& os, const Mesh& mesh);
Mesh read_mesh_off(std::istream& is);

/// x with 17 significant digits; "inf" / "-inf" / "nan".
std::string format_real(double x);

}  // namespace plb
