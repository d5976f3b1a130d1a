#pragma once
/** \file
 * \brief Surface description files (JSON syntax).
 *
 *   {
 *     "name": "catenoid",
 *     "psi1": [[0,0],[1,0]],                       polynomial, ascending [re, im]
 *     "psi2": {"num": [[-1,0]], "den": [[0,0],[1,0]]}   or "f": <rational>
 *     "dh":   {"num": [[1,0]], "den": [[0,0],[1,0]]},
 *     "domain": {"kind": "plane-minus-points", "punctures": [[0,0]]},
 *     "complete": "asserted",
 *     "loops": [{"circle": {"center": [0,0], "radius": 1}}, {"polyline": [[1,0],[0,1],[1,0]]}],
 *     "grid": {"kind": "polar", "center": [0,0], "r": [0.5,2], "t": [0,6.28], "n": [17,9]},
 *     "targets": [[0,0], "inf"]
 *   }
 *
 * Numbers may stand for real values, "inf" for the point at infinity.
 * Unknown fields are rejected with their JSON path.
 */

#include "stasurf/weierstrass.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace stasurf {

struct SurfaceConfig {
    std::string name;
    WeierstrassData data;
    bool complete_asserted = false;
    std::vector<Contour> loops;
    std::optional<Grid> grid;
    std::vector<ExtendedComplex> targets;
    nlohmann::ordered_json source; ///< the parsed document, echoed in reports
};

/// Throws ParseError with a location ("<origin>: /path: message").
SurfaceConfig parse_config(const nlohmann::ordered_json& doc, const std::string& origin = "config");
SurfaceConfig parse_config_text(const std::string& text, const std::string& origin = "config");
SurfaceConfig load_config(const std::filesystem::path& path);

cplx parse_complex(const nlohmann::ordered_json& j, const std::string& where);
ExtendedComplex parse_point(const nlohmann::ordered_json& j, const std::string& where);
Polynomial parse_polynomial(const nlohmann::ordered_json& j, const std::string& where);
RationalFunction parse_rational(const nlohmann::ordered_json& j, const std::string& where);
Domain parse_domain(const nlohmann::ordered_json& j, const std::string& where);
Grid parse_grid(const nlohmann::ordered_json& j, const std::string& where);
Contour parse_loop(const nlohmann::ordered_json& j, const std::string& where);

/// "1", "-0.5+2i", "i", "-i", "3e-2-1.5i", "inf".
ExtendedComplex parse_point_literal(const std::string& s);
/// Comma-separated point literals.
std::vector<ExtendedComplex> parse_point_list(const std::string& s);
/// "NxM": N nodes along the inner index, M along the outer.
std::pair<int, int> parse_grid_size(const std::string& s);

nlohmann::ordered_json to_json(cplx z);
nlohmann::ordered_json to_json(const ExtendedComplex& z);
nlohmann::ordered_json to_json(const Polynomial& p);
nlohmann::ordered_json to_json(const RationalFunction& f);
nlohmann::ordered_json to_json(const Domain& d);
nlohmann::ordered_json to_json(const Grid& g);
nlohmann::ordered_json to_json(const Contour& c);

/// -0 and non-finite values are normalized so reports stay byte-stable.
double clean(double v);

} // namespace stasurf
