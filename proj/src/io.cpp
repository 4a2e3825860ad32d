#include "agglm/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace agglm::io {

namespace fs = std::filesystem;

std::string version() { return "agg 1.0"; }

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

json params_json(const std::vector<double>& p) {
    json a = json::array();
    for (double v : p) a.push_back(v);
    return a;
}

std::vector<double> params_from(const json& j) {
    std::vector<double> p;
    for (const auto& v : j) p.push_back(v.get<double>());
    return p;
}

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw ConfigInvalid("config." + path + ": " + what);
}

}  // namespace

// --- shape functions --------------------------------------------------------

json to_json(const ShapeFn& s) {
    return {{"preset", ShapeFn::preset_name(s.preset())},
            {"params", params_json(s.params())}};
}

ShapeFn shape_from_json(const json& j) {
    std::string name = j.value("preset", "constant");
    std::vector<double> p =
        j.contains("params") ? params_from(j["params"]) : std::vector<double>{};
    try {
        if (name == "constant") return ShapeFn::constant(p.empty() ? 1.0 : p[0]);
        if (name == "indicator") {
            if (p.size() != 2) bad("shape", "indicator needs params [a, b]");
            return ShapeFn::indicator(p[0], p[1]);
        }
        if (name == "exp-decay") return ShapeFn::exp_decay(p.empty() ? 1.0 : p[0]);
        if (name == "polynomial") return ShapeFn::polynomial(p);
        if (name == "two-exponent") {
            if (p.empty()) bad("shape", "two-exponent needs params [gamma]");
            return ShapeFn::two_exponent(p[0]);
        }
    } catch (const std::invalid_argument& e) {
        bad("shape", e.what());
    }
    bad("shape.preset", "unknown preset '" + name + "'");
}

// --- pole groups ------------------------------------------------------------

json to_json(const PoleGroupSpec& g) {
    json j;
    j["kind"] = is_complex_pair(g.kind) ? "complex-pair" : "real";
    j["multiplicity"] = g.multiplicity;
    j["d"] = g.radial.d();
    j["phi"] = to_json(g.radial.phi());
    if (is_complex_pair(g.kind)) {
        j["beta"] = g.angular.beta();
        j["center"] = g.angular.x0();
        j["psi"] = to_json(g.angular.psi());
        auto [lo, hi] = g.angular.support();
        j["support"] = {lo, hi};
    } else if (g.kind == GroupKind::RealDiscrete) {
        j["sign"] = g.center_angle() == 0.0 ? 1 : -1;
    }
    return j;
}

PoleGroupSpec group_from_json(const json& j, Flavor flavor) {
    std::string kind = j.value("kind", "real");
    int m = j.value("multiplicity", 1);
    if (m < 1) bad("groups.multiplicity", "must be >= 1");
    if (!j.contains("d")) bad("groups.d", "missing");
    ShapeFn phi =
        j.contains("phi") ? shape_from_json(j["phi"]) : ShapeFn::constant();
    RadialLaw radial(flavor, j["d"].get<double>(), phi);

    if (kind == "real") {
        if (flavor == Flavor::Continuous)
            return PoleGroupSpec::real_continuous(m, radial);
        return PoleGroupSpec::real_discrete(j.value("sign", 1), m, radial);
    }
    if (kind != "complex-pair") bad("groups.kind", "unknown kind '" + kind + "'");
    if (!j.contains("beta") || !j.contains("center"))
        bad("groups", "complex-pair needs beta and center");
    ShapeFn psi =
        j.contains("psi") ? shape_from_json(j["psi"]) : ShapeFn::constant();
    std::optional<std::pair<double, double>> support;
    if (j.contains("support"))
        support = std::pair<double, double>{j["support"][0], j["support"][1]};
    AngularLaw angular(j["beta"].get<double>(), j["center"].get<double>(), psi,
                       support);
    if (flavor == Flavor::Continuous)
        return PoleGroupSpec::complex_continuous(m, radial, angular);
    return PoleGroupSpec::complex_discrete(m, radial, angular);
}

// --- innovation schemes -----------------------------------------------------

json to_json(const InnovationScheme& s) {
    using K = InnovationScheme::Kind;
    json j;
    j["kind"] = s.kind == K::Common       ? "common"
                : s.kind == K::Independent ? "independent"
                                           : "interactive";
    if (s.kind == K::Interactive) {
        using C = InnovationScheme::ChiPreset;
        j["chi"] = s.chi_preset == C::Geometric ? "geometric"
                   : s.chi_preset == C::Power   ? "power"
                                                : "log-decay";
        j["chi_param"] = s.chi_param;
        if (s.b_n_override != 0) j["b_n"] = s.b_n_override;
    }
    return j;
}

InnovationScheme innovation_from_json(const json& j) {
    std::string kind = j.value("kind", "independent");
    if (kind == "independent") return InnovationScheme::independent();
    if (kind == "common") return InnovationScheme::common();
    if (kind != "interactive") bad("innovation.kind", "unknown '" + kind + "'");
    std::string chi = j.value("chi", "geometric");
    using C = InnovationScheme::ChiPreset;
    C preset = chi == "geometric"  ? C::Geometric
               : chi == "power"    ? C::Power
               : chi == "log-decay" ? C::LogDecay
                                    : (bad("innovation.chi", "unknown '" + chi + "'"),
                                       C::Geometric);
    return InnovationScheme::interactive(preset, j.value("chi_param", 0.5),
                                         j.value("b_n", 0.0));
}

// --- models -----------------------------------------------------------------

json to_json(const ModelSpec& m) {
    json groups = json::array();
    for (const auto& g : m.groups) groups.push_back(to_json(g));
    return {{"flavor", m.flavor == Flavor::Discrete ? "discrete" : "continuous"},
            {"sigma", m.sigma},
            {"innovation", to_json(m.innovation)},
            {"groups", groups}};
}

ModelSpec model_from_json(const json& j) {
    ModelSpec m;
    std::string flavor = j.value("flavor", "discrete");
    if (flavor == "discrete")
        m.flavor = Flavor::Discrete;
    else if (flavor == "continuous")
        m.flavor = Flavor::Continuous;
    else
        bad("model.flavor", "unknown '" + flavor + "'");
    m.sigma = j.value("sigma", 1.0);
    if (j.contains("innovation")) m.innovation = innovation_from_json(j["innovation"]);
    if (!j.contains("groups") || !j["groups"].is_array() || j["groups"].empty())
        bad("model.groups", "missing or empty");
    for (const auto& g : j["groups"]) m.groups.push_back(group_from_json(g, m.flavor));
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        bad("model", e.what());
    }
    return m;
}

// --- experiment configs -----------------------------------------------------

std::string task_name(Task t) {
    switch (t) {
        case Task::Classify: return "classify";
        case Task::Spectra: return "spectra";
        case Task::Simulate: return "simulate";
        case Task::LemmaCheck: return "lemma-check";
        case Task::PhaseDiagram: return "phase-diagram";
    }
    return "?";
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["schema"] = c.schema;
    j["task"] = task_name(c.task);
    j["model"] = to_json(c.model);
    if (!c.out_dir.empty()) j["out"] = c.out_dir;
    if (c.has_seed) j["seed"] = c.seed;
    if (c.force) j["force"] = true;
    j["spectra"] = {{"grid_points", c.spectra.grid_points},
                    {"method", c.spectra.method == MixtureMethod::Quadrature
                                   ? "quadrature"
                                   : "monte-carlo"},
                    {"mc_draws", c.spectra.mc_draws}};
    j["simulate"] = {{"N", c.simulate.N},
                     {"T", c.simulate.T},
                     {"step", c.simulate.step},
                     {"keep_members", c.simulate.keep_members}};
    j["lemma"] = {{"which", c.lemma.which},
                  {"d", c.lemma.d},
                  {"n", c.lemma.n},
                  {"alpha", c.lemma.alpha},
                  {"theta0_case", c.lemma.theta0_case},
                  {"theta0", c.lemma.theta0},
                  {"tau0", c.lemma.tau0},
                  {"phi", to_json(c.lemma.phi)},
                  {"psi", to_json(c.lemma.psi)},
                  {"support", {c.lemma.support.first, c.lemma.support.second}}};
    j["phase"] = {{"d_lo", c.phase.d_lo}, {"d_hi", c.phase.d_hi},
                  {"nd", c.phase.nd},     {"b_lo", c.phase.b_lo},
                  {"b_hi", c.phase.b_hi}, {"nb", c.phase.nb},
                  {"boundary", c.phase.boundary}, {"svg", c.phase.svg}};
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.schema = j.value("schema", 1);
    if (c.schema != 1) bad("schema", "unsupported schema version");
    std::string task = j.value("task", "classify");
    if (task == "classify")
        c.task = Task::Classify;
    else if (task == "spectra")
        c.task = Task::Spectra;
    else if (task == "simulate")
        c.task = Task::Simulate;
    else if (task == "lemma-check")
        c.task = Task::LemmaCheck;
    else if (task == "phase-diagram")
        c.task = Task::PhaseDiagram;
    else
        bad("task", "unknown task '" + task + "'");
    if (!j.contains("model")) bad("model", "missing");
    c.model = model_from_json(j["model"]);
    c.out_dir = j.value("out", "");
    if (j.contains("seed")) {
        c.seed = j["seed"].get<std::uint64_t>();
        c.has_seed = true;
    }
    c.force = j.value("force", false);
    if (c.task == Task::Simulate && !c.has_seed)
        bad("seed", "simulate tasks require an explicit seed");

    if (j.contains("spectra")) {
        const json& s = j["spectra"];
        c.spectra.grid_points = s.value("grid_points", 4096);
        if (c.spectra.grid_points < 16) bad("spectra.grid_points", "too few nodes");
        std::string method = s.value("method", "quadrature");
        if (method == "quadrature")
            c.spectra.method = MixtureMethod::Quadrature;
        else if (method == "monte-carlo")
            c.spectra.method = MixtureMethod::MonteCarlo;
        else
            bad("spectra.method", "unknown '" + method + "'");
        c.spectra.mc_draws = s.value("mc_draws", 100000L);
    }
    if (j.contains("simulate")) {
        const json& s = j["simulate"];
        c.simulate.N = s.value("N", 100);
        c.simulate.T = s.value("T", 4096L);
        c.simulate.step = s.value("step", 0.05);
        c.simulate.keep_members = s.value("keep_members", false);
        if (c.simulate.N < 1) bad("simulate.N", "must be >= 1");
        if (c.simulate.T < 1) bad("simulate.T", "must be >= 1");
        if (!(c.simulate.step > 0)) bad("simulate.step", "must be > 0");
    }
    if (j.contains("lemma")) {
        const json& s = j["lemma"];
        c.lemma.which = s.value("which", 1);
        if (c.lemma.which < 1 || c.lemma.which > 4)
            bad("lemma.which", "must be 1..4");
        c.lemma.d = s.value("d", 0.5);
        c.lemma.n = s.value("n", 2.0);
        c.lemma.alpha = s.value("alpha", 0.5);
        c.lemma.theta0_case = s.value("theta0_case", 1);
        if (c.lemma.theta0_case < 1 || c.lemma.theta0_case > 3)
            bad("lemma.theta0_case", "must be 1..3");
        c.lemma.theta0 = s.value("theta0", 0.0);
        c.lemma.tau0 = s.value("tau0", 0.0);
        if (s.contains("phi")) c.lemma.phi = shape_from_json(s["phi"]);
        if (s.contains("psi")) c.lemma.psi = shape_from_json(s["psi"]);
        if (s.contains("support"))
            c.lemma.support = {s["support"][0], s["support"][1]};
    }
    if (j.contains("phase")) {
        const json& s = j["phase"];
        c.phase.d_lo = s.value("d_lo", -1.0);
        c.phase.d_hi = s.value("d_hi", 2.0);
        c.phase.nd = s.value("nd", 41);
        c.phase.b_lo = s.value("b_lo", -1.0);
        c.phase.b_hi = s.value("b_hi", 1.0);
        c.phase.nb = s.value("nb", 41);
        c.phase.boundary = s.value("boundary", false);
        c.phase.svg = s.value("svg", false);
        if (c.phase.nd < 1 || c.phase.nb < 1) bad("phase", "grid sizes must be >= 1");
    }
    return c;
}

// --- presets ----------------------------------------------------------------

namespace {

constexpr double kPi = 3.14159265358979323846;

json ar1_model(double d, const char* innovation) {
    return {{"flavor", "discrete"},
            {"sigma", 1.0},
            {"innovation", {{"kind", innovation}}},
            {"groups",
             json::array({{{"kind", "real"}, {"sign", 1}, {"multiplicity", 1},
                           {"d", d}}})}};
}

json ar2_complex_model(double d, double beta, double theta0) {
    return {{"flavor", "discrete"},
            {"sigma", 1.0},
            {"innovation", {{"kind", "independent"}}},
            {"groups",
             json::array({{{"kind", "complex-pair"}, {"multiplicity", 1},
                           {"d", d}, {"beta", beta}, {"center", theta0}}})}};
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"ar1-independent", "ar2-complex-pair", "ou-corollary1",
            "disappearance-figure1", "figure2"};
}

json preset_config(const std::string& name) {
    if (name == "ar1-independent")
        return {{"schema", 1}, {"task", "classify"}, {"model", ar1_model(0.5, "independent")}};
    if (name == "ar2-complex-pair")
        return {{"schema", 1},
                {"task", "classify"},
                {"model", ar2_complex_model(0.5, 0.9, kPi / 3.0)}};
    if (name == "ou-corollary1") {
        json model = {{"flavor", "continuous"},
                      {"sigma", 1.0},
                      {"innovation", {{"kind", "independent"}}},
                      {"groups",
                       json::array({{{"kind", "real"}, {"multiplicity", 1}, {"d", 0.5},
                                     {"phi", {{"preset", "exp-decay"}, {"params", {1.0}}}}},
                                    {{"kind", "complex-pair"}, {"multiplicity", 1},
                                     {"d", 0.5}, {"beta", 1.0}, {"center", 3.0},
                                     {"phi", {{"preset", "exp-decay"}, {"params", {1.0}}}},
                                     {"support", {-10.0, 10.0}}}})}};
        return {{"schema", 1}, {"task", "classify"}, {"model", model}};
    }
    if (name == "disappearance-figure1" || name == "figure2") {
        bool boundary = name == "figure2";
        return {{"schema", 1},
                {"task", "phase-diagram"},
                {"model", ar2_complex_model(0.5, 0.9, boundary ? 0.0 : kPi / 3.0)},
                {"phase",
                 {{"d_lo", -1.0}, {"d_hi", 2.0}, {"nd", 41},
                  {"b_lo", -1.0}, {"b_hi", 1.0}, {"nb", 41},
                  {"boundary", boundary}}}};
    }
    throw ConfigInvalid("unknown preset '" + name + "'");
}

// --- reports ----------------------------------------------------------------

json to_json(const LMReport& r) {
    json sing = json::array();
    for (const auto& s : r.singularities)
        sing.push_back({{"frequency", s.frequency},
                        {"alpha", s.alpha},
                        {"source_group", s.source_group}});
    json regimes = json::array();
    for (const auto& g : r.regime_inputs)
        regimes.push_back({{"d", g.d}, {"beta", g.beta}, {"center", g.center},
                           {"m", g.m}, {"n", g.n}});
    json j = {{"exists", r.exists},
              {"condition", r.condition},
              {"long_memory", r.long_memory},
              {"existence_numeric_check", r.existence_numeric_check},
              {"singularities", sing},
              {"regime_inputs", regimes}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string summary_line(const LMReport& r) {
    std::string s = "exists=";
    s += r.exists ? "true" : "false";
    s += " lm=";
    s += r.long_memory ? "true" : "false";
    char buf[64];
    for (const auto& sg : r.singularities) {
        std::snprintf(buf, sizeof(buf), " alpha=%g@%g", sg.alpha, sg.frequency);
        s += buf;
    }
    return s;
}

std::string report_table(const LMReport& r) {
    std::ostringstream os;
    char line[160];
    os << "verdict\n";
    std::snprintf(line, sizeof(line), "  %-12s %s\n", "exists", r.exists ? "yes" : "no");
    os << line;
    std::snprintf(line, sizeof(line), "  %-12s %s\n", "long memory",
                  r.long_memory ? "yes" : "no");
    os << line;
    std::snprintf(line, sizeof(line), "  %-12s %s\n", "condition", r.condition.c_str());
    os << line;
    if (!r.note.empty()) {
        std::snprintf(line, sizeof(line), "  %-12s %s\n", "note", r.note.c_str());
        os << line;
    }
    if (!r.singularities.empty()) {
        os << "singularities\n";
        std::snprintf(line, sizeof(line), "  %10s %10s %6s\n", "frequency", "alpha",
                      "group");
        os << line;
        for (const auto& s : r.singularities) {
            std::snprintf(line, sizeof(line), "  %10.6f %10.6f %6d\n", s.frequency,
                          s.alpha, s.source_group);
            os << line;
        }
    }
    os << "groups\n";
    char hdr[160];
    std::snprintf(hdr, sizeof(hdr), "  %8s %8s %10s %4s %4s\n", "d", "beta", "center",
                  "m", "n");
    os << hdr;
    for (const auto& g : r.regime_inputs) {
        std::snprintf(line, sizeof(line), "  %8.4f %8.4f %10.6f %4d %4d\n", g.d,
                      g.beta, g.center, g.m, g.n);
        os << line;
    }
    return os.str();
}

json to_json(const AsymptoticFit& f) {
    return {{"target", f.target},
            {"fitted_exponent", f.fitted_exponent},
            {"predicted_exponent", f.predicted_exponent},
            {"fitted_constant", f.fitted_constant},
            {"predicted_constant", f.predicted_constant},
            {"ratio_drift", f.ratio_drift},
            {"local_slopes", f.local_slopes},
            {"exponent_ok",
             std::abs(f.fitted_exponent - f.predicted_exponent) < 0.03},
            {"constant_ok",
             f.predicted_constant == 0.0 ||
                 std::abs(f.fitted_constant / f.predicted_constant - 1.0) < 0.05}};
}

std::string fit_csv(const AsymptoticFit& f) {
    std::string s = "offset,value\n";
    for (size_t i = 0; i < f.offsets.size(); ++i)
        s += fmt17(f.offsets[i]) + "," + fmt17(f.values[i]) + "\n";
    return s;
}

std::string curve_csv(const SpectralCurve& c) {
    bool se = !c.stderrs.empty();
    std::string s = se ? "frequency,value,stderr\n" : "frequency,value\n";
    for (size_t i = 0; i < c.grid.size(); ++i) {
        s += fmt17(c.grid[i]) + "," + fmt17(c.values[i]);
        if (se) s += "," + fmt17(c.stderrs[i]);
        s += "\n";
    }
    return s;
}

json curve_meta(const SpectralCurve& c) {
    return {{"domain", c.domain == Flavor::Discrete ? "discrete" : "continuous"},
            {"nodes", c.grid.size()},
            {"singular_frequencies", c.singular_frequencies},
            {"refinement_level", c.refinement_level},
            {"has_stderr", !c.stderrs.empty()},
            {"complex", !c.cvalues.empty()}};
}

std::string phase_csv(const std::vector<SweepCell>& cells) {
    std::string s = "d,beta,region,alpha\n";
    for (const auto& c : cells)
        s += fmt17(c.d) + "," + fmt17(c.beta) + "," + std::to_string(c.region) +
             "," + fmt17(c.alpha) + "\n";
    return s;
}

// --- artifact persistence ---------------------------------------------------

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

ArtifactWriter::ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

void ArtifactWriter::write(const std::string& rel_path, const std::string& bytes) {
    fs::path p = dir_ / rel_path;
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.close();
    entries_.push_back({{"path", rel_path},
                        {"sha256", sha256_hex(bytes)},
                        {"bytes", bytes.size()}});
}

void ArtifactWriter::write_json(const std::string& rel_path, const json& j) {
    write(rel_path, j.dump(2) + "\n");
}

void ArtifactWriter::finalize(const json& config, double elapsed_seconds) {
    json manifest = {{"version", version()},
                     {"config", config},
                     {"elapsed_seconds", elapsed_seconds},
                     {"outputs", entries_}};
    fs::path p = dir_ / "manifest.json";
    std::ofstream f(p, std::ios::binary);
    std::string bytes = manifest.dump(2) + "\n";
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_panel_run(ArtifactWriter& w, const PanelRun& run, const json& config,
                     bool keep_members) {
    json run_config = config;
    run_config["seed"] = run.seed;
    run_config["run"] = {{"N", run.N},       {"T", run.T},
                         {"step", run.step}, {"b_n", run.b_n},
                         {"burn_in", run.burn_in}};
    w.write_json("config.json", run_config);

    std::string agg = "t,value\n";
    for (size_t t = 0; t < run.aggregate.size(); ++t)
        agg += fmt17(t * run.step) + "," + fmt17(run.aggregate[t]) + "\n";
    w.write("aggregate.csv", agg);

    if (keep_members && !run.members.empty()) {
        std::string mem = "t";
        for (size_t i = 0; i < run.members.size(); ++i)
            mem += ",member" + std::to_string(i);
        mem += "\n";
        for (size_t t = 0; t < run.members[0].size(); ++t) {
            mem += fmt17(t * run.step);
            for (const auto& m : run.members) mem += "," + fmt17(m[t]);
            mem += "\n";
        }
        w.write("members.csv", mem);
    }
}

// --- SVG renderers ----------------------------------------------------------

std::string svg_line(const SpectralCurve& c, int width, int height) {
    double xmin = c.grid.front(), xmax = c.grid.back();
    double ymin = 0.0, ymax = 0.0;
    for (double v : c.values)
        if (std::isfinite(v)) ymax = std::max(ymax, v);
    if (ymax <= ymin) ymax = 1.0;
    const int ml = 50, mb = 30, mt = 10, mr = 10;
    double sx = (width - ml - mr) / (xmax - xmin);
    double sy = (height - mt - mb) / (ymax - ymin);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<polyline fill=\"none\" stroke=\"#2060a0\" stroke-width=\"1\" points=\"";
    char pt[64];
    for (size_t i = 0; i < c.grid.size(); ++i) {
        double v = std::min(c.values[i], ymax);
        if (!std::isfinite(v)) continue;
        std::snprintf(pt, sizeof(pt), "%.2f,%.2f ", ml + (c.grid[i] - xmin) * sx,
                      height - mb - (v - ymin) * sy);
        os << pt;
    }
    os << "\"/>\n<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
       << width - mr << "\" y2=\"" << height - mb
       << "\" stroke=\"black\"/>\n<line x1=\"" << ml << "\" y1=\"" << mt
       << "\" x2=\"" << ml << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    char lbl[192];
    std::snprintf(lbl, sizeof(lbl),
                  "<text x=\"%d\" y=\"%d\" font-size=\"11\">%.3g</text>\n"
                  "<text x=\"%d\" y=\"%d\" font-size=\"11\">%.3g</text>\n",
                  ml, height - 8, xmin, width - mr - 30, height - 8, xmax);
    os << lbl;
    std::snprintf(lbl, sizeof(lbl), "<text x=\"4\" y=\"%d\" font-size=\"11\">%.3g</text>\n",
                  mt + 10, ymax);
    os << lbl << "</svg>\n";
    return os.str();
}

std::string svg_heatmap(const std::vector<SweepCell>& cells, int nd, int nb,
                        int cell_px) {
    const char* fill[3] = {"#bbbbbb", "#4878b0", "#c0392b"};
    int width = nb * cell_px, height = nd * cell_px;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\">\n";
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nb; ++j) {
            const auto& c = cells[static_cast<size_t>(i) * nb + j];
            os << "<rect x=\"" << j * cell_px << "\" y=\"" << (nd - 1 - i) * cell_px
               << "\" width=\"" << cell_px << "\" height=\"" << cell_px
               << "\" fill=\"" << fill[c.region] << "\"/>\n";
        }
    os << "</svg>\n";
    return os.str();
}

}  // namespace agglm::io
