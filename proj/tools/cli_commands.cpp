#include "cli_commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "orlicz/io.hpp"
#include "orlicz/orlicz.hpp"

namespace orlicz::cli {

using nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExperimentConfig, command, family, sequence, objective, center, radius,
                                                epsilon, delta_lo, eps_hi, dims, step, half_width, seed, tail_tol,
                                                move_tol, norm_tol, wpmc_tol, budget, ks, levels, samples, probe, p,
                                                k_max, scale_from, scale_to, mode, xbar, weights_file, out_json,
                                                out_csv)

json to_json(const ExperimentConfig& c)
{
    json j;
    nlohmann::to_json(j, c);
    return j;
}

ExperimentConfig config_from_json(const json& j)
{
    if (!j.is_object()) throw DomainError("config must be a JSON object");
    const json known = to_json(ExperimentConfig{});
    for (const auto& [key, value] : j.items())
        if (!known.contains(key)) throw DomainError("unknown config key '" + key + "'");
    try {
        return j.get<ExperimentConfig>();
    } catch (const json::exception& e) {
        throw DomainError(std::string("bad config value: ") + e.what());
    }
}

void validate(const ExperimentConfig& c)
{
    for (double tol : {c.tail_tol, c.move_tol, c.norm_tol, c.wpmc_tol})
        if (!(tol > 0.0)) throw DomainError("tolerances must be positive");
    if (!(c.radius > 0.0)) throw DomainError("radius must be positive");
    if (!(c.step > 0.0)) throw DomainError("grid step must be positive");
    if (!(c.half_width >= 0.0)) throw DomainError("half-width must be non-negative");
    if (c.dims < 1) throw DomainError("dims must be at least 1");
    if (c.budget < 1) throw DomainError("budget must be at least 1");
    if (c.samples < 1) throw DomainError("samples must be at least 1");
    for (int k : c.ks)
        if (k < 1) throw DomainError("k values must be positive");
}

namespace {

struct Outcome {
    json result;
    int code = kOk;
    std::string status = "ok";
    std::string csv;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open '" + path + "' for writing");
    os << text;
    if (!os) throw DomainError("write to '" + path + "' failed");
}

json read_json_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw DomainError("cannot read '" + path + "'");
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw DomainError("'" + path + "' is not valid JSON: " + e.what());
    }
}

GridOracle make_grid(const ExperimentConfig& c)
{
    return GridOracle(GridSpec::cube(c.dims, c.step, c.half_width > 0.0 ? c.half_width : c.radius));
}

PerturbOptions solver_options(const ExperimentConfig& c)
{
    PerturbOptions o;
    o.tail_tol = c.tail_tol;
    o.move_tol = c.move_tol;
    o.budget = c.budget;
    return o;
}

std::string history_csv(const SolveReport& r)
{
    std::ostringstream os;
    os << "#schema=1\nstep,eps,delta,tail_index,value,moved,tail_proxy,sublevel_size\n";
    for (const auto& h : r.history)
        os << h.step << ',' << io::csv_real(h.eps) << ',' << io::csv_real(h.delta) << ',' << h.tail_index << ','
           << io::csv_real(h.value) << ',' << io::csv_real(h.moved) << ',' << io::csv_real(h.tail_proxy) << ','
           << h.sublevel_size << '\n';
    return os.str();
}

Outcome cmd_norm(const ExperimentConfig& c)
{
    const auto m = parse_family(c.family);
    const auto x = parse_sequence(c.sequence);
    Outcome o;
    const double norm = luxemburg_norm(m, x, c.norm_tol), mod = modular(m, x);
    o.result = {{"sequence", format_sequence(x)}, {"norm", io::real(norm)}, {"modular", io::real(mod)}};
    std::ostringstream csv;
    csv << "#schema=1\nnorm,modular\n" << io::csv_real(norm) << ',' << io::csv_real(mod) << '\n';
    o.csv = csv.str();
    return o;
}

Outcome cmd_delta2(const ExperimentConfig& c)
{
    const auto status = check_delta2_at_zero(parse_family(c.family));
    Outcome o;
    o.result = io::to_json(status);
    o.status = status.holds ? "holds" : "fails";
    std::ostringstream csv;
    csv << "#schema=1\nt,ratio\n";
    for (const auto& [t, r] : status.estimate.ratio_table) csv << io::csv_real(t) << ',' << io::csv_real(r) << '\n';
    o.csv = csv.str();
    return o;
}

Outcome cmd_solve(const ExperimentConfig& c)
{
    const auto m = parse_family(c.family);
    const auto f = objectives::by_name(c.objective, m, c.radius, parse_sequence(c.center));
    auto oracle = make_grid(c);
    const auto rep = perturb_minimize(f, m, c.epsilon, oracle, solver_options(c));
    Outcome o;
    o.result = io::to_json(rep);
    o.result["objective"] = f.description;
    o.csv = history_csv(rep);
    if (!rep.converged) {
        o.code = kInconclusive;
        o.status = "not-converged";
    }
    return o;
}

Outcome cmd_support(const ExperimentConfig& c)
{
    const auto m = parse_family(c.family);
    const auto f = objectives::by_name(c.objective, m, c.radius, parse_sequence(c.center));
    auto oracle = make_grid(c);
    const auto rep = support_from_below(f, m, c.delta_lo, c.eps_hi, oracle, solver_options(c));
    Outcome o;
    o.result = io::to_json(rep);
    o.result["objective"] = f.description;
    o.csv = history_csv(rep.inner);
    if (!rep.inner.converged) {
        o.code = kInconclusive;
        o.status = "not-converged";
    }
    return o;
}

Outcome cmd_wellposed(const ExperimentConfig& c)
{
    const auto m = parse_family(c.family);
    const auto f = objectives::by_name(c.objective, m, c.radius, parse_sequence(c.center));
    const bool delta2 = check_delta2_at_zero(m).holds;

    SamplerSpec spec;
    spec.seed = c.seed;
    spec.count = c.samples;
    std::vector<int> ks = c.ks;
    if (!delta2) {
        // random samples rarely find the long flat vectors on which σ is small
        if (ks.empty()) ks = {20, 50, 100, 200, 400};
        for (int k : ks) spec.extra.push_back(non_delta2_witness(m, k).point);
    }
    std::vector<double> levels = c.levels;
    if (levels.empty())
        levels = delta2 ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4, 1e-5} : std::vector<double>{1e-1, 5e-2, 2e-2, 1e-2};

    WpmcThresholds th;
    th.tol = c.wpmc_tol;
    const auto rep = wpmc_diagnose([&](const SparseSequence& x) { return f(x); }, m, c.radius, levels, spec, th);
    Outcome o;
    o.result = io::to_json(rep);
    o.result["objective"] = f.description;
    o.result["injected_witnesses"] = delta2 ? json::array() : json(ks);
    o.status = to_string(rep.verdict);
    if (rep.verdict == WpmcVerdict::Inconclusive) o.code = kInconclusive;
    std::ostringstream csv;
    io::write_csv(csv, rep);
    o.csv = csv.str();
    return o;
}

Outcome cmd_witness(const ExperimentConfig& c)
{
    const auto m = parse_family(c.family);
    const std::vector<int> ks = c.ks.empty() ? std::vector<int>{5, 10, 20, 50} : c.ks;
    std::vector<Witness> ws;
    json arr = json::array();
    for (int k : ks) {
        ws.push_back(non_delta2_witness(m, k));
        arr.push_back(io::to_json(ws.back()));
    }
    Outcome o;
    o.result = {{"witnesses", arr}};
    std::ostringstream csv;
    io::write_csv(csv, ws);
    o.csv = csv.str();
    return o;
}

CoordinateMode parse_mode(const std::string& s)
{
    if (s == "zero") return CoordinateMode::Zero;
    if (s == "nonzero") return CoordinateMode::Nonzero;
    if (s == "both") return CoordinateMode::Both;
    throw DomainError("unknown probe mode '" + s + "' (expected zero, nonzero or both)");
}

Outcome cmd_probe(const ExperimentConfig& c)
{
    const auto m = parse_family(c.family);
    if (c.scale_to > c.scale_from) throw DomainError("scale_to must not exceed scale_from");
    const auto scales = decade_scales(c.scale_from, c.scale_to);
    ProbeReport rep;
    if (c.probe == "l1") {
        PerturbationWeights a = PerturbationWeights::constant(1.0);
        SparseSequence xbar = parse_sequence(c.xbar);
        if (!c.weights_file.empty()) {
            json j = read_json_file(c.weights_file);
            if (j.contains("result")) j = j.at("result");
            if (c.xbar.empty() && j.contains("point")) xbar = parse_sequence(j.at("point").get<std::string>());
            if (j.contains("weights")) j = j.at("weights");
            try {
                a = io::weights_from_json(j);
            } catch (const json::exception& e) {
                throw DomainError("'" + c.weights_file + "' holds no weights: " + e.what());
            }
        }
        rep = probe_l1(m, a, xbar, scales);
    } else if (c.probe == "p-growth") {
        rep = probe_p_growth(m, c.p, c.k_max);
    } else if (c.probe == "second-derivative") {
        rep = probe_second_derivative(m, scales, parse_mode(c.mode));
    } else {
        throw DomainError("unknown probe '" + c.probe + "' (expected l1, p-growth or second-derivative)");
    }
    Outcome o;
    o.result = io::to_json(rep);
    o.status = to_string(rep.verdict);
    if (rep.verdict == ProbeVerdict::Inconclusive) o.code = kInconclusive;
    std::ostringstream csv;
    io::write_csv(csv, rep);
    o.csv = csv.str();
    return o;
}

Outcome cmd_classify(const ExperimentConfig& c)
{
    const auto cls = classify_space(parse_family(c.family));
    Outcome o;
    o.result = io::to_json(cls);
    o.status = cls.applicable ? "applicable" : "inapplicable";
    std::ostringstream csv;
    csv << "#schema=1\nexclusion\n";
    for (const auto& e : cls.exclusions) csv << e << '\n';
    o.csv = csv.str();
    return o;
}

Outcome dispatch(const ExperimentConfig& c)
{
    if (c.command == "norm") return cmd_norm(c);
    if (c.command == "delta2") return cmd_delta2(c);
    if (c.command == "solve") return cmd_solve(c);
    if (c.command == "support") return cmd_support(c);
    if (c.command == "wellposed") return cmd_wellposed(c);
    if (c.command == "witness") return cmd_witness(c);
    if (c.command == "probe") return cmd_probe(c);
    if (c.command == "classify") return cmd_classify(c);
    throw DomainError("unknown command '" + c.command + "'");
}

// --config is read before the flags are parsed, so any flag given on the
// command line lands on top of the file's values.
std::string find_config_path(const std::vector<std::string>& args)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    ExperimentConfig cfg;
    std::string config_path;
    try {
        config_path = find_config_path(args);
        if (!config_path.empty()) cfg = config_from_json(read_json_file(config_path));
        if (const char* env = std::getenv("ORLICZ_SEED")) {
            try {
                std::size_t used = 0;
                const std::string s = env;
                cfg.seed = std::stoull(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
            } catch (const std::logic_error&) {
                throw DomainError(std::string("ORLICZ_SEED is not an unsigned integer: ") + env);
            }
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    CLI::App app{"Numerical experiments in Orlicz sequence spaces"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", config_path, "JSON config file; flags override its fields");
    app.add_option("--family", cfg.family, "power:P[:SCALE] or non-delta2");
    app.add_option("--objective", cfg.objective, "objective name");
    app.add_option("--center", cfg.center, "sequence literal used by dist and dist2");
    app.add_option("-K,--radius", cfg.radius, "working ball radius K");
    app.add_option("--epsilon", cfg.epsilon, "perturbation size for solve");
    app.add_option("--delta-lo", cfg.delta_lo, "lower weight bound for support");
    app.add_option("--eps-hi", cfg.eps_hi, "upper weight bound for support");
    app.add_option("--dims", cfg.dims, "grid truncation dimension");
    app.add_option("--step", cfg.step, "grid step");
    app.add_option("--half-width", cfg.half_width, "grid half-width (0 = radius)");
    app.add_option("--seed", cfg.seed, "sampler seed");
    app.add_option("--tail-tol", cfg.tail_tol);
    app.add_option("--move-tol", cfg.move_tol);
    app.add_option("--norm-tol", cfg.norm_tol);
    app.add_option("--wpmc-tol", cfg.wpmc_tol);
    app.add_option("--budget", cfg.budget, "solver iteration budget");
    app.add_option("--k", cfg.ks, "witness indices")->delimiter(',');
    app.add_option("--levels", cfg.levels, "strictly decreasing sublevel heights")->delimiter(',');
    app.add_option("--samples", cfg.samples, "random sample count");
    app.add_option("--probe", cfg.probe, "l1, p-growth or second-derivative");
    app.add_option("-p", cfg.p, "growth exponent for p-growth");
    app.add_option("--k-max", cfg.k_max);
    app.add_option("--scale-from", cfg.scale_from, "largest probe scale 10^from");
    app.add_option("--scale-to", cfg.scale_to, "smallest probe scale 10^to");
    app.add_option("--mode", cfg.mode, "zero, nonzero or both");
    app.add_option("--xbar", cfg.xbar, "probe base point");
    app.add_option("--weights", cfg.weights_file, "JSON file with weights (a support report works)");
    app.add_option("-o,--out", cfg.out_json, "also write the report here");
    app.add_option("--csv", cfg.out_csv, "write the CSV table here");

    auto* norm = app.add_subcommand("norm", "Luxemburg norm and modular of a sequence");
    norm->add_option("family", cfg.family);
    norm->add_option("x", cfg.sequence, "sequence literal i:v,...");
    app.add_option("--x", cfg.sequence, "sequence literal i:v,...");
    for (const char* name : {"delta2", "classify"}) app.add_subcommand(name)->add_option("family", cfg.family);
    app.add_subcommand("solve", "perturbed minimisation on a grid");
    app.add_subcommand("support", "support from below with weights in [delta_lo, eps_hi]");
    app.add_subcommand("wellposed", "sublevel-set diagnostics");
    app.add_subcommand("witness", "non-delta2 witness vectors")->add_option("family", cfg.family);
    app.add_subcommand("probe", "smoothness obstruction probes");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        validate(cfg);
        const Outcome o = dispatch(cfg);
        json report = {{"command", cfg.command},
                       {"config", to_json(cfg)},
                       {"result", o.result},
                       {"status", o.status},
                       {"exit_code", o.code}};
        const std::string text = report.dump(2) + "\n";
        out << text;
        if (!cfg.out_json.empty()) write_file(cfg.out_json, text);
        if (!cfg.out_csv.empty()) write_file(cfg.out_csv, o.csv);
        return o.code;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
}

} // namespace orlicz::cli
