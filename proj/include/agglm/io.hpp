#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "agglm/asymptotics.hpp"
#include "agglm/classifier.hpp"
#include "agglm/model.hpp"
#include "agglm/simulate.hpp"
#include "agglm/spectral.hpp"

namespace agglm::io {

using nlohmann::json;

struct ConfigInvalid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// 17 significant digits; round-trips any double.
std::string fmt17(double x);

// --- model (de)serialization ------------------------------------------------

json to_json(const ShapeFn& s);
ShapeFn shape_from_json(const json& j);

json to_json(const PoleGroupSpec& g);
PoleGroupSpec group_from_json(const json& j, Flavor flavor);

json to_json(const InnovationScheme& s);
InnovationScheme innovation_from_json(const json& j);

json to_json(const ModelSpec& m);
ModelSpec model_from_json(const json& j);

// --- experiment config ------------------------------------------------------

enum class Task { Classify, Spectra, Simulate, LemmaCheck, PhaseDiagram };

std::string task_name(Task t);

struct ExperimentConfig {
    int schema = 1;
    Task task = Task::Classify;
    ModelSpec model;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool force = false;

    struct {
        int grid_points = 4096;
        MixtureMethod method = MixtureMethod::Quadrature;
        long mc_draws = 100000;
    } spectra;

    struct {
        int N = 100;
        long T = 4096;
        double step = 0.05;
        bool keep_members = false;
    } simulate;

    struct {
        int which = 1;  // lemma number 1..4
        double d = 0.5, n = 2.0, alpha = 0.5;
        int theta0_case = 1;
        double theta0 = 0.0, tau0 = 0.0;
        ShapeFn phi = ShapeFn::constant();
        ShapeFn psi = ShapeFn::constant();
        std::pair<double, double> support = {-10.0, 10.0};
    } lemma;

    struct {
        double d_lo = -1.0, d_hi = 2.0;
        int nd = 41;
        double b_lo = -1.0, b_hi = 1.0;
        int nb = 41;
        bool boundary = false;  // theta0 in {0, pi}: the translated diagram
        bool svg = false;
    } phase;
};

json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const json& j);

// Named experiment presets; throws ConfigInvalid for an unknown name.
json preset_config(const std::string& name);
std::vector<std::string> preset_names();

// --- reports ----------------------------------------------------------------

json to_json(const LMReport& r);
std::string report_table(const LMReport& r);  // fixed-width text table
std::string summary_line(const LMReport& r);  // "exists=true lm=true alpha=0.5@0"

json to_json(const AsymptoticFit& f);
std::string fit_csv(const AsymptoticFit& f);

std::string curve_csv(const SpectralCurve& c);
json curve_meta(const SpectralCurve& c);

std::string phase_csv(const std::vector<SweepCell>& cells);

// --- artifact persistence ---------------------------------------------------

std::string sha256_hex(const std::string& bytes);

// Writes bytes and records (relative path, hash, size) for the manifest.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path dir);

    void write(const std::string& rel_path, const std::string& bytes);
    void write_json(const std::string& rel_path, const json& j);

    // manifest.json: config copy, version, timings, per-file hashes
    void finalize(const json& config, double elapsed_seconds);

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    json entries_ = json::array();
};

void write_panel_run(ArtifactWriter& w, const PanelRun& run, const json& config,
                     bool keep_members);

// --- optional SVG renderers -------------------------------------------------

std::string svg_line(const SpectralCurve& c, int width = 800, int height = 480);
std::string svg_heatmap(const std::vector<SweepCell>& cells, int nd, int nb,
                        int cell_px = 10);

std::string version();

}  // namespace agglm::io
