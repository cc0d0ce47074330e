#include "commands.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "digest.hpp"
#include "jsonw.hpp"

#include "erw/dp.hpp"
#include "erw/engine.hpp"
#include "erw/enumerate.hpp"
#include "erw/errors.hpp"
#include "erw/formulas.hpp"
#include "erw/gof.hpp"
#include "erw/laws.hpp"
#include "erw/moments.hpp"
#include "erw/version.hpp"

namespace erw::cli {

namespace {

namespace engine = erw::engine;
namespace oracle = erw::oracle;
namespace analytic = erw::analytic;
namespace stats = erw::stats;

// ------------------------------------------------------------ grammar bits

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() || !text.empty()) out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, const char* what) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

struct Run {
    MemorySpec spec = MemorySpec::full();
    WalkParams params;
};

Run build_run(const CommonOptions& c) {
    Run run;
    run.spec = MemorySpec::parse(c.model);
    run.params.p = c.p;
    run.params.r = c.r.value_or(c.p);  // the r = p convention unless told otherwise
    run.params.start = parse_start(c.start);
    require_valid(run.params, run.spec, c.strict);
    return run;
}

StatisticSpec parse_statistic(const std::string& text, const Run& run,
                              const std::string& centering_flag) {
    if (text == "raw") return StatisticSpec::raw();
    if (text == "over-n") return StatisticSpec::over_n();
    if (text.rfind("clt:", 0) == 0 || text == "auto") {
        std::string mode = text == "auto" ? centering_flag : text.substr(4);
        if (mode == "auto")
            mode = analytic::default_centering(run.spec) == StatisticSpec::Centering::random
                       ? "random"
                       : "none";
        StatisticSpec::Centering centering;
        if (mode == "none")
            centering = StatisticSpec::Centering::none;
        else if (mode == "fixed")
            centering = StatisticSpec::Centering::fixed;
        else if (mode == "random")
            centering = StatisticSpec::Centering::random;
        else
            throw std::invalid_argument("--stat clt: mode must be fixed, random or none");
        try {
            return analytic::clt_limit_law(run.spec, run.params, centering).stat;
        } catch (const NoFormulaError&) {
            if (centering != StatisticSpec::Centering::none) throw;
            return StatisticSpec::clt_none();  // mechanical sqrt(n) normalization
        }
    }
    throw std::invalid_argument("--stat must be raw, over-n or clt:(fixed|random|none), got '" +
                                text + "'");
}

engine::RecordMode parse_record(const std::string& text) {
    if (text == "none") return engine::RecordMode::none;
    if (text == "checkpoints") return engine::RecordMode::checkpoints;
    if (text == "full") return engine::RecordMode::full;
    throw std::invalid_argument("--record must be none, checkpoints or full");
}

std::vector<long> parse_checkpoints(const std::string& text) {
    std::vector<long> out;
    if (text.empty()) return out;
    for (const auto& tok : split(text, ','))
        out.push_back(static_cast<long>(parse_number(tok, "checkpoint")));
    return out;
}

// --------------------------------------------------------------- file I/O

std::string iso_now() {
    char buf[32];
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("short write to '" + path + "'");
}

void echo_common(JsonWriter& w, const Run& run, const CommonOptions& c) {
    w.key("model").value(run.spec.name());
    w.key("p").value(run.params.p);
    w.key("r").value(run.params.r);
    w.key("start").begin_array();
    for (int s : run.params.start) w.value(s);
    w.end_array();
    w.key("strict").value(c.strict);
}

// canonical parameter echo -> digest embedded in the payload
std::string params_digest(const std::string& echo_json) { return fnv1a64_hex(echo_json); }

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::vector<std::string>& argv, const std::string& echo_json,
                    const std::string& payload) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchema);
    w.key("kind").value("manifest");
    w.key("tool_version").value(kVersion);
    w.key("created").value(iso_now());
    w.key("command").value(command);
    w.key("argv").begin_array();
    for (const auto& a : argv) w.value(a);
    w.end_array();
    w.key("params_digest").value(params_digest(echo_json));
    w.key("outputs").begin_array();
    w.begin_object();
    w.key("file").value(out_path);
    w.key("fnv1a64").value(fnv1a64_hex(payload));
    w.end_object();
    w.end_array();
    w.end_object();
    write_file(out_path + ".manifest.json", std::move(w).take() + "\n");
}

// ---------------------------------------------------------------- simulate

std::string simulate_echo(const Run& run, const CommonOptions& c, const SimulateOptions& opt) {
    JsonWriter w;
    w.begin_object();
    echo_common(w, run, c);
    w.key("n").value(opt.n);
    w.key("paths").value(opt.paths);
    w.key("seed").value(opt.seed);
    w.key("stat").value(opt.stat);
    w.key("mult").value(opt.mult);
    w.key("mult_seed").value(opt.mult_seed);
    w.key("record").value(opt.record);
    w.key("checkpoints").value(opt.checkpoints);
    w.end_object();
    return std::move(w).take();
}

std::string ensemble_json(const engine::EnsemblePMF& ens, const std::string& digest) {
    const auto s = ens.summary();
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchema);
    w.key("kind").value("ensemble");
    w.key("manifest_digest").value(digest);
    w.key("meta").begin_object();
    w.key("model").value(ens.meta.spec.name());
    w.key("p").value(ens.meta.params.p);
    w.key("r").value(ens.meta.params.r);
    w.key("start").begin_array();
    for (int v : ens.meta.params.start) w.value(v);
    w.end_array();
    w.key("n").value(ens.meta.n);
    w.key("paths").value(ens.meta.paths);
    w.key("seed").value(ens.meta.seed);
    w.key("statistic").value(ens.meta.stat.name());
    if (ens.meta.multiplier) {
        w.key("multiplier").begin_array();
        for (const auto& a : ens.meta.multiplier->atoms) {
            w.begin_array();
            w.value(a.value);
            w.value(a.weight);
            w.end_array();
        }
        w.end_array();
        w.key("multiplier_seed").value(ens.meta.multiplier_seed);
    } else {
        w.key("multiplier").null();
    }
    w.end_object();
    w.key("summary").begin_object();
    w.key("mean").value(s.mean);
    w.key("variance").value(s.variance);
    w.key("min").value(s.min);
    w.key("max").value(s.max);
    w.end_object();
    if (!ens.checkpoint_ns.empty()) {
        w.key("checkpoint_ns").begin_array();
        for (long c : ens.checkpoint_ns) w.value(c);
        w.end_array();
        w.key("checkpoints").begin_array();
        for (double v : ens.checkpoint_values) w.value(v);
        w.end_array();
    }
    if (!ens.path_values.empty()) {
        w.key("path_values").begin_array();
        for (auto v : ens.path_values) w.value(static_cast<int>(v));
        w.end_array();
    }
    w.key("sample").begin_array();
    for (double v : ens.sample) w.value(v);
    w.end_array();
    w.end_object();
    std::string out = std::move(w).take();
    out += '\n';
    return out;
}

std::string ensemble_csv(const engine::EnsemblePMF& ens, const std::string& digest) {
    std::string out = "# manifest_digest=" + digest + "\nindex,value\n";
    for (size_t i = 0; i < ens.sample.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(ens.sample[i]);
        out += '\n';
    }
    return out;
}

// ------------------------------------------------------------------- exact

std::string exact_echo(const Run& run, const CommonOptions& c, const ExactOptions& opt) {
    JsonWriter w;
    w.begin_object();
    echo_common(w, run, c);
    w.key("n").value(opt.n);
    w.key("method").value(opt.method);
    w.key("max_moment").value(opt.max_moment);
    w.end_object();
    return std::move(w).take();
}

std::string pmf_json(const oracle::ExactPMF& pmf, const Run& run, const std::string& method,
                     const std::string& digest) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchema);
    w.key("kind").value("pmf");
    w.key("manifest_digest").value(digest);
    w.key("model").value(run.spec.name());
    w.key("p").value(run.params.p);
    w.key("r").value(run.params.r);
    w.key("conditioning");
    if (run.params.fixed_start()) {
        w.begin_array();
        for (int s : run.params.start) w.value(s);
        w.end_array();
    } else {
        w.value("random");
    }
    w.key("method").value(method);
    w.key("n").value(pmf.n);
    w.key("mean").value(pmf.mean());
    w.key("variance").value(pmf.variance());
    w.key("mass").value(pmf.total_mass());
    w.key("support").begin_array();
    for (long t : pmf.support) w.value(t);
    w.end_array();
    w.key("probs").begin_array();
    for (double q : pmf.probs) w.value(q);
    w.end_array();
    w.end_object();
    return std::move(w).take() + "\n";
}

std::string pmf_csv(const oracle::ExactPMF& pmf, const std::string& digest) {
    std::string out = "# manifest_digest=" + digest + "\nt,probability\n";
    for (size_t i = 0; i < pmf.support.size(); ++i) {
        out += std::to_string(pmf.support[i]);
        out += ',';
        out += format_double(pmf.probs[i]);
        out += '\n';
    }
    return out;
}

std::string moments_json(const oracle::MomentTable& table, const Run& run,
                         const std::string& digest) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchema);
    w.key("kind").value("moments");
    w.key("manifest_digest").value(digest);
    w.key("model").value(run.spec.name());
    w.key("p").value(run.params.p);
    w.key("r").value(run.params.r);
    w.key("conditioning");
    if (run.params.fixed_start()) {
        w.begin_array();
        for (int s : run.params.start) w.value(s);
        w.end_array();
    } else {
        w.value("random");
    }
    w.key("n").value(table.n);
    w.key("max_power").value(table.max_power);
    w.key("powers").begin_array();
    for (int a = 0; a <= table.max_power; ++a) w.value(table.moment(a));
    w.end_array();
    w.key("variance").value(table.central_second());
    if (!table.window.empty()) {
        w.key("window").begin_array();
        for (long idx : table.window) w.value(idx);
        w.end_array();
        w.key("mixed").begin_array();
        for (int a = 0; a <= table.max_power; ++a) {
            for (size_t mask = 1; mask < table.mask_count(); ++mask) {
                w.begin_object();
                w.key("power").value(a);
                w.key("mask").value(static_cast<long>(mask));
                w.key("value").value(table.mixed(a, static_cast<unsigned>(mask)));
                w.end_object();
            }
        }
        w.end_array();
    }
    w.end_object();
    return std::move(w).take() + "\n";
}

std::string moments_csv(const oracle::MomentTable& table, const std::string& digest) {
    std::string out = "# manifest_digest=" + digest + "\npower,value\n";
    for (int a = 0; a <= table.max_power; ++a) {
        out += std::to_string(a);
        out += ',';
        out += format_double(table.moment(a));
        out += '\n';
    }
    return out;
}

// ------------------------------------------------------------------- laws

void law_json(JsonWriter& w, const analytic::LimitLaw& law) {
    w.begin_object();
    w.key("atoms").begin_array();
    for (const auto& a : law.atoms) {
        w.begin_object();
        w.key("location").value(a.location);
        w.key("weight").value(a.weight);
        w.end_object();
    }
    w.end_array();
    w.key("gaussians").begin_array();
    for (const auto& g : law.gaussians) {
        w.begin_object();
        w.key("mean").value(g.mean);
        w.key("variance").value(g.variance);
        w.key("weight").value(g.weight);
        w.end_object();
    }
    w.end_array();
    w.key("mean").value(law.mean());
    w.key("variance").value(law.variance());
    w.end_object();
}

void stat_json(JsonWriter& w, const StatisticSpec& stat) {
    w.begin_object();
    w.key("name").value(stat.name());
    w.key("scale").value(stat.scale == StatisticSpec::Scale::sqrt_n ? "sqrt_n"
                                                                    : "sqrt_n_log_n");
    w.key("fixed_slope").value(stat.fixed_slope);
    w.key("coeff").value(stat.coeff);
    w.key("prefix_len").value(stat.prefix_len);
    w.end_object();
}

std::string gof_json(const stats::GofReport& rep, const std::string& extra_detail) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchema);
    w.key("kind").value("gof");
    w.key("test").value(rep.test);
    w.key("statistic").value(rep.statistic);
    w.key("p_value");
    if (rep.p_value)
        w.value(*rep.p_value);
    else
        w.null();
    w.key("alpha").value(rep.alpha);
    w.key("sample_size").value(rep.sample_size);
    w.key("law").value(rep.law);
    w.key("pass").value(rep.pass);
    w.key("detail").value(rep.detail + (extra_detail.empty() ? "" : "; " + extra_detail));
    w.end_object();
    return std::move(w).take() + "\n";
}

void emit(const std::string& out, const std::string& payload) {
    if (out.empty())
        std::cout << payload;
    else
        write_file(out, payload);
}

}  // namespace

StepMultiplier parse_multiplier(const std::string& text) {
    StepMultiplier mult;
    for (const auto& tok : split(text, ',')) {
        const auto pos = tok.find(':');
        if (pos == std::string::npos)
            throw std::invalid_argument("--mult expects v:w,v:w,... got '" + text + "'");
        mult.atoms.push_back({parse_number(tok.substr(0, pos), "multiplier value"),
                              parse_number(tok.substr(pos + 1), "multiplier weight")});
    }
    mult.require_valid();
    return mult;
}

std::vector<int> parse_start(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    for (const auto& tok : split(text, ',')) {
        if (tok == "+1" || tok == "1")
            out.push_back(1);
        else if (tok == "-1")
            out.push_back(-1);
        else
            throw std::invalid_argument("--start entries must be +1 or -1, got '" + tok + "'");
    }
    return out;
}

int cmd_simulate(const SimulateOptions& opt, const std::vector<std::string>& argv) {
    const auto run = build_run(opt.common);
    if (opt.out.empty()) throw std::invalid_argument("simulate requires --out");
    if (opt.format != "json" && opt.format != "csv")
        throw std::invalid_argument("--format must be json or csv");
    const auto stat = parse_statistic(opt.stat, run, "auto");

    engine::EnsembleOptions eopt;
    eopt.record = parse_record(opt.record);
    eopt.checkpoints = parse_checkpoints(opt.checkpoints);
    if (!eopt.checkpoints.empty() && eopt.record == engine::RecordMode::none)
        eopt.record = engine::RecordMode::checkpoints;

    auto ens = engine::simulate_ensemble(run.spec, run.params, opt.n, opt.paths, opt.seed, stat,
                                         eopt);
    if (!opt.mult.empty()) {
        const auto mult = parse_multiplier(opt.mult);
        const std::uint64_t mseed = opt.mult_seed ? opt.mult_seed : opt.seed + 1;
        ens = engine::apply_multiplier(ens, mult, mseed);
    }

    const auto echo = simulate_echo(run, opt.common, opt);
    const auto digest = params_digest(echo);
    const auto payload =
        opt.format == "json" ? ensemble_json(ens, digest) : ensemble_csv(ens, digest);
    write_file(opt.out, payload);
    write_manifest(opt.out, "simulate", argv, echo, payload);
    return kExitOk;
}

int cmd_exact(const ExactOptions& opt, const std::vector<std::string>& argv) {
    const auto run = build_run(opt.common);
    if (opt.out.empty()) throw std::invalid_argument("exact requires --out");
    if (opt.format != "json" && opt.format != "csv")
        throw std::invalid_argument("--format must be json or csv");

    const auto echo = exact_echo(run, opt.common, opt);
    const auto digest = params_digest(echo);
    std::string payload;
    if (opt.method == "enum") {
        const auto pmf = oracle::enumerate(run.spec, run.params, opt.n);
        payload = opt.format == "json" ? pmf_json(pmf, run, "enum", digest)
                                       : pmf_csv(pmf, digest);
    } else if (opt.method == "dp") {
        const auto pmf = oracle::dp_distribution(run.spec, run.params, opt.n);
        payload =
            opt.format == "json" ? pmf_json(pmf, run, "dp", digest) : pmf_csv(pmf, digest);
    } else if (opt.method == "moments") {
        if (run.spec.kind() == MemorySpec::Kind::Full)
            throw CapabilityError(
                "exact --method moments does not accept the full model here; use "
                "--method enum (n <= 24) for the unbounded window");
        const auto table = oracle::exact_moments(run.spec, run.params, opt.n, opt.max_moment);
        payload = opt.format == "json" ? moments_json(table, run, digest)
                                       : moments_csv(table, digest);
    } else {
        throw std::invalid_argument("--method must be enum, dp or moments");
    }
    write_file(opt.out, payload);
    write_manifest(opt.out, "exact", argv, echo, payload);
    return kExitOk;
}

int cmd_predict(const PredictOptions& opt, const std::vector<std::string>& argv) {
    const auto run = build_run(opt.common);
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(kSchema);
    w.key("kind").value("prediction");
    w.key("quantity").value(opt.quantity);
    echo_common(w, run, opt.common);

    if (opt.quantity == "mean" || opt.quantity == "variance") {
        if (opt.n < 1) throw std::invalid_argument("predict " + opt.quantity + " needs --n");
        const auto result = opt.quantity == "mean"
                                ? analytic::mean_formula(run.spec, run.params, opt.n)
                                : analytic::variance_formula(run.spec, run.params, opt.n);
        w.key("n").value(opt.n);
        w.key("value").value(result.value);
        w.key("exact").value(result.exact);
        w.key("law").value(result.law);
    } else if (opt.quantity == "lln-law") {
        const auto law = analytic::lln_limit_law(run.spec, run.params);
        w.key("statistic").value("over-n");
        w.key("law_descriptor").value(law.describe());
        w.key("law");
        law_json(w, law);
    } else if (opt.quantity == "clt-law") {
        StatisticSpec::Centering mode;
        if (opt.centering == "auto")
            mode = analytic::default_centering(run.spec);
        else if (opt.centering == "none")
            mode = StatisticSpec::Centering::none;
        else if (opt.centering == "fixed")
            mode = StatisticSpec::Centering::fixed;
        else if (opt.centering == "random")
            mode = StatisticSpec::Centering::random;
        else
            throw std::invalid_argument("--centering must be auto, none, fixed or random");
        analytic::CltOptions copt;
        copt.skipfirst_printed_variant = opt.skipfirst_printed_variance;
        const auto recipe = analytic::clt_limit_law(run.spec, run.params, mode, copt);
        w.key("law_descriptor").value(recipe.descriptor);
        w.key("statistic");
        stat_json(w, recipe.stat);
        w.key("law");
        law_json(w, recipe.law);
    } else {
        throw std::invalid_argument(
            "--quantity must be mean, variance, lln-law or clt-law");
    }
    w.end_object();
    const std::string payload = std::move(w).take() + "\n";
    emit(opt.out, payload);
    if (!opt.out.empty()) {
        JsonWriter echo;
        echo.begin_object();
        echo_common(echo, run, opt.common);
        echo.key("quantity").value(opt.quantity);
        echo.key("n").value(opt.n);
        echo.end_object();
        write_manifest(opt.out, "predict", argv, std::move(echo).take(), payload);
    }
    return kExitOk;
}

int cmd_verify(const VerifyOptions& opt, const std::vector<std::string>& argv) {
    auto run = build_run(opt.common);
    if (opt.n < 1 || opt.paths < 1) throw std::invalid_argument("verify needs --n and --paths");
    std::optional<StepMultiplier> mult;
    if (!opt.mult.empty()) {
        mult = parse_multiplier(opt.mult);
        if (!run.params.fixed_start()) run.params.start = {1};  // R scales the +1-start walk
    }

    stats::GofReport report;
    std::string wiring;

    if (opt.test == "ks") {
        const auto stat = parse_statistic(opt.stat == "auto" ? "auto" : opt.stat, run,
                                          opt.centering);
        analytic::LimitLaw law;
        if (stat.kind == StatisticSpec::Kind::clt) {
            const auto recipe =
                analytic::clt_limit_law(run.spec, run.params, stat.centering);
            law = recipe.law;
            wiring = recipe.descriptor;
        } else {
            // drift statistics have discrete limits; hand the atom law to the
            // KS test so it can point at the atoms test
            law = analytic::lln_limit_law(run.spec, run.params);
            wiring = law.describe();
        }
        if (mult) law = analytic::scale_mixture(law, *mult);
        auto ens = engine::simulate_ensemble(run.spec, run.params, opt.n, opt.paths, opt.seed,
                                             stat);
        if (mult)
            ens = engine::apply_multiplier(ens, *mult,
                                           opt.mult_seed ? opt.mult_seed : opt.seed + 1);
        report = stats::ks_test(ens.sample, law, opt.alpha);
    } else if (opt.test == "atoms") {
        auto law = analytic::lln_limit_law(run.spec, run.params);
        if (mult) law = analytic::scale_mixture(law, *mult);
        wiring = law.describe();
        const auto ens = engine::simulate_ensemble(run.spec, run.params, opt.n, opt.paths,
                                                   opt.seed, StatisticSpec::over_n());
        if (mult)
            throw std::invalid_argument("verify --test atoms does not take a multiplier");
        stats::AtomTestOptions aopt;
        if (opt.eps > 0.0) {
            aopt.epsilon = opt.eps;
        } else {
            double branch_sd = 1.5;
            try {
                const auto recipe = analytic::clt_limit_law(
                    run.spec, run.params, analytic::default_centering(run.spec));
                double vmax = 0.0;
                for (const auto& g : recipe.law.gaussians)
                    vmax = std::max(vmax, g.variance);
                if (vmax > 0.0) branch_sd = std::sqrt(vmax);
            } catch (const NoFormulaError&) {
            }
            aopt.epsilon = stats::suggest_atom_epsilon(law, branch_sd, opt.n);
        }
        report = stats::atom_cluster_test(ens.sample, law, aopt, opt.alpha);
    } else if (opt.test == "moments") {
        if (mult)
            throw std::invalid_argument("verify --test moments does not take a multiplier");
        const auto mean_pred = analytic::mean_formula(run.spec, run.params, opt.n);
        const auto var_pred = analytic::variance_formula(run.spec, run.params, opt.n);
        const auto ens = engine::simulate_ensemble(run.spec, run.params, opt.n, opt.paths,
                                                   opt.seed, StatisticSpec::raw());
        const auto s = ens.summary();
        const double se_mean = std::sqrt(s.variance / static_cast<double>(opt.paths));
        const double se_var =
            s.variance * std::sqrt(2.0 / static_cast<double>(opt.paths - 1));
        const auto mean_rep = stats::moment_check(s.mean, mean_pred.value, opt.rel_tol, 0.0,
                                                  se_mean);
        const auto var_rep =
            stats::moment_check(s.variance, var_pred.value, opt.rel_tol, 0.0, se_var);
        report = mean_rep;
        report.test = "moments";
        report.law = mean_pred.law + " / " + var_pred.law;
        report.sample_size = opt.paths;
        report.alpha = opt.alpha;
        report.pass = mean_rep.pass && var_rep.pass;
        report.detail = "mean: " + mean_rep.detail + "; variance: " + var_rep.detail;
    } else {
        throw std::invalid_argument("--test must be ks, atoms or moments");
    }

    const std::string payload = gof_json(report, wiring);
    emit(opt.out, payload);
    if (!opt.out.empty()) {
        JsonWriter echo;
        echo.begin_object();
        echo_common(echo, run, opt.common);
        echo.key("test").value(opt.test);
        echo.key("n").value(opt.n);
        echo.key("paths").value(opt.paths);
        echo.key("seed").value(opt.seed);
        echo.key("alpha").value(opt.alpha);
        echo.end_object();
        write_manifest(opt.out, "verify", argv, std::move(echo).take(), payload);
    }
    return report.pass ? kExitOk : kExitStatFail;
}

int cmd_sweep(const SweepOptions& opt, const std::vector<std::string>& argv) {
    if (opt.param != "p") throw std::invalid_argument("--param: only 'p' sweeps are supported");
    if (opt.steps < 1) throw std::invalid_argument("--steps must be >= 1");
    if (opt.from > opt.to) throw std::invalid_argument("--from must not exceed --to");
    if (opt.steps == 1 && opt.from != opt.to)
        throw std::invalid_argument("a single-step sweep needs --from == --to");
    if (opt.n < 2 || opt.paths < 2) throw std::invalid_argument("sweep needs --n and --paths");
    if (opt.out.empty()) throw std::invalid_argument("sweep requires --out");
    const auto base = build_run(opt.common);

    JsonWriter echo;
    echo.begin_object();
    echo_common(echo, base, opt.common);
    echo.key("param").value(opt.param);
    echo.key("from").value(opt.from);
    echo.key("to").value(opt.to);
    echo.key("steps").value(opt.steps);
    echo.key("n").value(opt.n);
    echo.key("paths").value(opt.paths);
    echo.key("seed").value(opt.seed);
    echo.end_object();
    const std::string echo_json = std::move(echo).take();
    const auto digest = params_digest(echo_json);

    std::string csv = "# manifest_digest=" + digest +
                      "\np,var_exponent,mean_over_n,var_over_n,var_at_n\n";
    for (long i = 0; i < opt.steps; ++i) {
        const double p = opt.steps == 1 ? opt.from
                                        : opt.from + (opt.to - opt.from) *
                                                         static_cast<double>(i) /
                                                         static_cast<double>(opt.steps - 1);
        auto run = base;
        run.params.p = p;
        if (!opt.common.r) run.params.r = p;
        engine::EnsembleOptions eopt;
        eopt.record = engine::RecordMode::checkpoints;
        const auto ens = engine::simulate_ensemble(run.spec, run.params, opt.n, opt.paths,
                                                   opt.seed, StatisticSpec::raw(), eopt);
        // empirical scaling exponent: least-squares slope of log2 Var(T_cp)
        // over log2 cp, upper half of the geometric checkpoints
        const size_t cp = ens.checkpoint_ns.size();
        std::vector<double> lx, ly;
        for (size_t j = 0; j < cp; ++j) {
            if (ens.checkpoint_ns[j] * 16 < opt.n) continue;
            double mean = 0.0;
            for (size_t i2 = 0; i2 < ens.sample.size(); ++i2)
                mean += ens.checkpoint_values[i2 * cp + j];
            mean /= static_cast<double>(ens.sample.size());
            double var = 0.0;
            for (size_t i2 = 0; i2 < ens.sample.size(); ++i2) {
                const double d = ens.checkpoint_values[i2 * cp + j] - mean;
                var += d * d;
            }
            var /= static_cast<double>(ens.sample.size() - 1);
            if (var <= 0.0) continue;
            lx.push_back(std::log2(static_cast<double>(ens.checkpoint_ns[j])));
            ly.push_back(std::log2(var));
        }
        double slope = 0.0;
        if (lx.size() >= 2) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (size_t j = 0; j < lx.size(); ++j) {
                sx += lx[j];
                sy += ly[j];
                sxx += lx[j] * lx[j];
                sxy += lx[j] * ly[j];
            }
            const double denom = lx.size() * sxx - sx * sx;
            slope = (lx.size() * sxy - sx * sy) / denom;
        }
        const auto s = ens.summary();
        const double nn = static_cast<double>(opt.n);
        csv += format_double(p) + "," + format_double(slope) + "," +
               format_double(s.mean / nn) + "," + format_double(s.variance / nn) + "," +
               format_double(s.variance) + "\n";
    }
    write_file(opt.out, csv);
    write_manifest(opt.out, "sweep", argv, echo_json, csv);
    return kExitOk;
}

int cmd_replay(const ReplayOptions& opt) {
    std::ifstream f(opt.manifest);
    if (!f) throw std::invalid_argument("cannot open manifest '" + opt.manifest + "'");
    nlohmann::json manifest;
    try {
        f >> manifest;
    } catch (const std::exception& e) {
        throw std::invalid_argument("manifest parse error: " + std::string(e.what()));
    }
    if (!manifest.contains("argv") || !manifest.contains("outputs"))
        throw std::invalid_argument("manifest lacks argv/outputs fields");

    std::vector<std::string> argv = manifest["argv"].get<std::vector<std::string>>();
    bool replaced = false;
    for (size_t i = 0; i + 1 < argv.size(); ++i) {
        if (argv[i] == "--out") {
            argv[i + 1] = opt.out;
            replaced = true;
        }
    }
    if (!replaced) throw std::invalid_argument("manifest argv carries no --out to re-target");

    extern int dispatch(const std::vector<std::string>& argv);  // defined in main.cpp
    const int rc = dispatch(argv);
    if (rc != kExitOk) return rc;

    std::ifstream produced(opt.out, std::ios::binary);
    std::stringstream buf;
    buf << produced.rdbuf();
    const std::string new_digest = fnv1a64_hex(buf.str());
    const std::string old_digest = manifest["outputs"][0]["fnv1a64"].get<std::string>();
    if (new_digest != old_digest) {
        std::cerr << "replay mismatch: payload digest " << new_digest
                  << " differs from manifest " << old_digest << "\n";
        return kExitStatFail;
    }
    std::cout << "replay ok: " << opt.out << " matches digest " << old_digest << "\n";
    return kExitOk;
}

}  // namespace erw::cli
