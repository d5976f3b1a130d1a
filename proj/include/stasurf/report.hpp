#pragma once
// JSON views of the check and audit results.

#include "stasurf/config.hpp"
#include "stasurf/efset.hpp"
#include "stasurf/mesh.hpp"
#include "stasurf/valuedist.hpp"

namespace stasurf {

nlohmann::ordered_json to_json(const RegularityReport& r);
nlohmann::ordered_json to_json(const PeriodReport& r);
nlohmann::ordered_json to_json(const EfSet& e);
nlohmann::ordered_json to_json(const AdmissibilityReport& a);
nlohmann::ordered_json to_json(const DegeneracyClass& c);
nlohmann::ordered_json to_json(const RamificationReport& r);
nlohmann::ordered_json to_json(const RamiAudit& a);
nlohmann::ordered_json to_json(const TheoremAAudit& a);
nlohmann::ordered_json to_json(const DefectReport& d);
nlohmann::ordered_json to_json(const SharedValueReport& s);
nlohmann::ordered_json to_json(const TheoremBAudit& b);
nlohmann::ordered_json to_json(const NegCurvatureReport& r);
nlohmann::ordered_json to_json(const AuxMetricReport& r);
nlohmann::ordered_json to_json(const MeshAudit& a);
nlohmann::ordered_json to_json(const std::vector<SkippedNode>& s);
nlohmann::ordered_json to_json(const Mesh& m); ///< samples as a JSON array

} // namespace stasurf
