#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/error_metrics.hpp"
#include "core/timestepper.hpp"
#include "core/upwind.hpp"

namespace bsfv {

/// Spatial discretizations the driver can run.
enum class SchemeKind { MpfaUp1, MpfaUp2, FittedUp1, FittedUp2 };

std::string scheme_name(SchemeKind scheme);
SchemeKind parse_scheme(const std::string& name);

enum class GridKind { Uniform, Graded };

///// Complete description of one experiment: market/model constants, domain,
/// discretization choices, and the grid sizes to sweep.
struct ExperimentConfig {
    SchemeKind scheme = SchemeKind::MpfaUp1;
    std::vector<int> n_values = {50};
    double x_max = 300.0;
    double y_max = 300.0;
    ModelParams params{0.3, 0.3, 0.5, 0.1, 100.0, 1.0 / 6.0};
    double theta = 0.5;
    double dtau = 0.01;
    GridKind grid_kind = GridKind::Uniform;
    double grade_focus = 100.0;
    double grade_strength = 0.0;
    ConvectionOptions convection;
    AnalyticVariant variant = kDefaultAnalyticVariant;
    bool zero_axis_boundary = false;
    std::uint64_t seed = 20260816; // reserved for randomized utilities

    void validate() const;
};

/// Built-in configurations of the published experiments
/// (table1..table5, fig1..fig3).
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Apply one key=value assignment; unknown keys or malformed values are
/// rejected with the field name in the message.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Parse a flat key=value configuration text. '#' starts a comment; blank
/// lines are ignored; assignments apply top to bottom, and a
/// "preset=<name>" line resets the config to that preset before later
/// overrides.
ExperimentConfig parse_config_text(const std::string& text);

struct SingleRunResult {
    ErrorReport report;
    GridFunction numeric;
    GridFunction analytic;
    TensorGrid grid;
};

TensorGrid build_experiment_grid(const ExperimentConfig& config, int n);

/// The full spatial flux operator of the chosen scheme.
AssemblyParts assemble_scheme(const TensorGrid& grid, const ModelParams& params,
                              SchemeKind scheme, const ConvectionOptions& convection);

/// Run one grid size end to end and compare with the closed form.
SingleRunResult run_single(const ExperimentConfig& config, int n);

/// One CSV row per configured grid size, columns
/// scheme,N,theta,dtau,rel_l2,max_abs,seconds. Byte-identical across runs
/// except for the seconds column (wall-clock measurement).
void run_experiment_csv(const ExperimentConfig& config, std::ostream& out);

/// "x y numeric analytic" rows over all cell centers, row-major.
void dump_surface(const ExperimentConfig& config, int n, std::ostream& out);

/// "row col value" triples of the semi-discrete system operator.
void dump_sparsity(const ExperimentConfig& config, int n, std::ostream& out);

} // namespace bsfv
