#pragma once
// Shipped example surfaces with the outcomes they are known to have.

#include "stasurf/analysis.hpp"
#include "stasurf/valuedist.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace stasurf {

struct GalleryExpectation {
    Verdict regularity = Verdict::Pass;
    Verdict periods = Verdict::Pass;
    std::optional<EfKind> ef_kind;
    std::optional<ExtendedCount> ef_count;
    std::optional<DegeneracyType> klass;
    std::optional<double> class_parameter;
    std::optional<Verdict> theorem_a;
    /// +1: psi2 = -1/psi1 (x4 constant); -1: psi2 = 1/psi1 (x3 constant).
    int embedding = 0;
    int exit_code = kExitOk;
};

struct GalleryEntry {
    std::string name;
    std::string description;
    nlohmann::ordered_json config;
    GalleryExpectation expect;

    SurfaceConfig parsed() const { return parse_config(config, "gallery:" + name); }
};

const std::vector<GalleryEntry>& gallery();
const GalleryEntry& gallery_entry(const std::string& name);

struct ShippedProbe {
    std::string name;
    NegCurvatureProbeConfig config;
};

/// The dtau^2 configurations run by `gallery run`.
std::vector<ShippedProbe> shipped_probes();

/// Mismatches between an analyze report and the entry's expectation.
std::vector<std::string> check_expectation(const GalleryEntry& e, const RunResult& r);

struct GalleryRun {
    std::vector<std::string> problems;
    int exit_code = kExitOk;
};

/// Writes <name>.report.json, <name>.csv, <name>.obj for every entry and
/// probe-<name>.json for every probe into dir, plus gallery.json.
GalleryRun run_gallery(const std::filesystem::path& dir, Exec exec = Exec::Parallel);

} // namespace stasurf
