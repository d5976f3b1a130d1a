#pragma once
/** \file
 * \brief The analyze / sample / share pipelines behind the command line.
 *
 * Exit codes: 0 every verdict acceptable, 1 a verdict failed, 2 malformed or
 * inapplicable input, 3 numeric failure.
 */

#include "stasurf/config.hpp"
#include "stasurf/mesh.hpp"

#include <array>
#include <optional>

namespace stasurf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

struct RunOptions {
    std::optional<std::pair<int, int>> grid_size;   ///< --grid NxM
    std::optional<std::array<double, 4>> window;    ///< --domain-window u0,u1,v0,v1
    std::optional<std::vector<Contour>> loops;      ///< --loops
    std::optional<std::vector<ExtendedComplex>> targets;
    std::optional<double> tol;                      ///< period residual tolerance
    bool count_omitted = false;                     ///< share: count values omitted by both
    Exec exec = Exec::Parallel;
};

/// Grid of the config with the command-line overrides; a rectangle
/// [-1, 1]^2 with 21 x 21 nodes when neither gives one.
Grid effective_grid(const SurfaceConfig& cfg, const RunOptions& opt);

struct RunResult {
    nlohmann::ordered_json report;
    int exit_code = kExitOk;
};

/// Exceptions from the library propagate; see exit_code_for.
RunResult analyze(const SurfaceConfig& cfg, const RunOptions& opt = {});
RunResult share(const SurfaceConfig& a, const SurfaceConfig& b, const RunOptions& opt = {});

struct SampleResult {
    Mesh mesh;
    std::vector<std::string> warnings;
};

SampleResult sample(const SurfaceConfig& cfg, const RunOptions& opt = {});

/// Maps an in-flight exception to an exit code (ParseError, DomainError and
/// invalid_argument -> 2, NumericError -> 3).
int exit_code_for(const std::exception& e);

/// "u0,u1,v0,v1"
std::array<double, 4> parse_window(const std::string& s);

} // namespace stasurf
