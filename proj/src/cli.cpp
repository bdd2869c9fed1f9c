#include "ctinfo/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ctinfo/distspec.hpp"
#include "ctinfo/divergences.hpp"
#include "ctinfo/entropy.hpp"
#include "ctinfo/fisher.hpp"
#include "ctinfo/gini.hpp"
#include "ctinfo/output.hpp"
#include "ctinfo/sim.hpp"
#include "ctinfo/verify.hpp"

namespace ctinfo {

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNonConvergence = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CTINFO_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<std::size_t> parse_count_list(const std::string& s) {
    std::vector<std::size_t> out;
    for (double v : parse_number_list(s)) out.push_back(static_cast<std::size_t>(v));
    return out;
}

std::map<std::string, double> parse_kv(const std::string& s) {
    std::map<std::string, double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("expected k=v in '" + item + "'");
        out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return out;
}

std::vector<double> read_one_column_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file '" + path + "'");
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        char* stop = nullptr;
        const double v = std::strtod(line.c_str(), &stop);
        if (stop == line.c_str()) continue;  // header or junk line
        out.push_back(v);
    }
    return out;
}

const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "?";
}

const char* fisher_method_name(FisherMethod m) {
    switch (m) {
        case FisherMethod::closed_form: return "closed_form";
        case FisherMethod::quadrature: return "quadrature";
        case FisherMethod::observed: return "observed";
    }
    return "?";
}

Json divergence_json(const DivergenceResult& r) {
    Json j = Json::object();
    j.set("value", r.value);  // null when divergent
    j.set("divergent", r.divergent());
    j.set("method", method_name(r.method));
    j.set("error_bound", r.error_bound);
    return j;
}

bool same_baseline(const std::optional<Baseline>& a, const std::optional<Baseline>& b) {
    return a && b && a->name() == b->name();
}

// classify a --closed-form pair; beta31 counts as os13:max over uniform
struct PairClass {
    enum Kind { none, kl_form, chi_form, jeffreys_ct_f, jeffreys_ct_max, sym_chi_ct_f } kind =
        none;
    KlForm kl{};
    ChiForm chi{};
    CTParams params{};
};

bool is_max_component(const ParsedDist& d) {
    return d.component && (d.component->which == OrderStat::max13 ||
                           d.component->which == OrderStat::beta31);
}

bool is_med_component(const ParsedDist& d) {
    return d.component && d.component->which == OrderStat::med13;
}

bool is_plain_baseline(const ParsedDist& d) { return d.baseline && !d.ct && !d.component; }

PairClass classify_pair(const std::string& kind, const ParsedDist& from, const ParsedDist& to) {
    PairClass pc;
    auto base_of = [](const ParsedDist& d) -> std::optional<Baseline> {
        if (d.component &&
            (d.component->which == OrderStat::beta21 || d.component->which == OrderStat::beta31))
            return make_uniform();
        return d.baseline;
    };
    const auto bf = base_of(from), bt = base_of(to);
    if (kind == "kl") {
        pc.kind = PairClass::kl_form;
        if (from.ct && is_plain_baseline(to) && same_baseline(bf, bt)) {
            pc.kl = KlForm::ct_to_uniform; pc.params = from.ct->params(); return pc;
        }
        if (is_plain_baseline(from) && to.ct && same_baseline(bf, bt)) {
            pc.kl = KlForm::uniform_to_ct; pc.params = to.ct->params(); return pc;
        }
        if (is_med_component(from) && to.ct && same_baseline(bf, bt)) {
            pc.kl = KlForm::med_to_ct; pc.params = to.ct->params(); return pc;
        }
        if (from.ct && is_max_component(to) && same_baseline(bf, bt)) {
            pc.kl = KlForm::ct_to_max; pc.params = from.ct->params(); return pc;
        }
        if (is_max_component(from) && to.ct && same_baseline(bf, bt)) {
            pc.kl = KlForm::max_to_ct; pc.params = to.ct->params(); return pc;
        }
        if (is_med_component(from) && is_max_component(to) && same_baseline(bf, bt)) {
            pc.kl = KlForm::med_to_max; return pc;
        }
        if (is_max_component(from) && is_plain_baseline(to) && same_baseline(bf, bt)) {
            pc.kl = KlForm::max_to_uniform; return pc;
        }
    } else if (kind == "chi2") {
        pc.kind = PairClass::chi_form;
        if (from.ct && is_plain_baseline(to) && same_baseline(bf, bt)) {
            pc.chi = ChiForm::ct_to_uniform; pc.params = from.ct->params(); return pc;
        }
        if (is_plain_baseline(from) && to.ct && same_baseline(bf, bt)) {
            pc.chi = ChiForm::uniform_to_ct; pc.params = to.ct->params(); return pc;
        }
        if (is_max_component(from) && to.ct && same_baseline(bf, bt)) {
            pc.chi = ChiForm::max_to_ct; pc.params = to.ct->params(); return pc;
        }
    } else if (kind == "jeffreys" || kind == "symchi2") {
        // symmetric measures: either order of the recognized pair works
        const ParsedDist* ct_side = from.ct ? &from : (to.ct ? &to : nullptr);
        const ParsedDist* other = from.ct ? &to : &from;
        if (ct_side && same_baseline(base_of(*ct_side), base_of(*other))) {
            pc.params = ct_side->ct->params();
            if (kind == "jeffreys" && is_plain_baseline(*other)) {
                pc.kind = PairClass::jeffreys_ct_f;
                return pc;
            }
            if (kind == "jeffreys" && is_max_component(*other)) {
                pc.kind = PairClass::jeffreys_ct_max;
                return pc;
            }
            if (kind == "symchi2" && is_plain_baseline(*other)) {
                pc.kind = PairClass::sym_chi_ct_f;
                return pc;
            }
        }
    }
    pc.kind = PairClass::none;
    return pc;
}

DivergenceResult closed_pair_sum(DivergenceResult a, DivergenceResult b) {
    const Method m = (a.method == Method::closed_form && b.method == Method::closed_form)
                         ? Method::closed_form
                         : Method::quadrature;
    return {a.value + b.value, m, a.error_bound + b.error_bound};
}

int exit_for_quadrature(const DivergenceResult& r, std::ostream& err) {
    if (r.divergent()) return kExitOk;  // an honest infinity, not a failure
    if (r.method == Method::quadrature &&
        r.error_bound > 1e-6 * std::max(1.0, std::abs(r.value))) {
        err << "warning: quadrature did not converge (error bound " << fmt17(r.error_bound)
            << ")\n";
        return kExitNonConvergence;
    }
    return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cubic transmuted distributions: information measures toolkit"};
    app.require_subcommand(1);

    QuadratureSpec qspec;
    app.add_option("--abs-tol", qspec.abs_tol, "quadrature absolute tolerance");
    app.add_option("--rel-tol", qspec.rel_tol, "quadrature relative tolerance");

    // --- entropy -------------------------------------------------------------
    auto* entropy_cmd = app.add_subcommand("entropy", "Shannon entropy of a distribution");
    std::string entropy_dist;
    bool entropy_decompose = false;
    entropy_cmd->add_option("--dist", entropy_dist, "distribution spec")->required();
    entropy_cmd->add_flag("--decompose", entropy_decompose,
                          "emit the CT decomposition terms (requires a ct spec)");

    // --- divergence ----------------------------------------------------------
    auto* div_cmd = app.add_subcommand("divergence", "divergence between two distributions");
    std::string div_kind, div_from, div_to;
    bool div_closed = false;
    div_cmd->add_option("--kind", div_kind, "kl|jeffreys|chi2|symchi2")->required();
    div_cmd->add_option("--from", div_from, "first distribution spec")->required();
    div_cmd->add_option("--to", div_to, "second distribution spec")->required();
    div_cmd->add_flag("--closed-form", div_closed, "use the closed form for a known pair");

    // --- gini ----------------------------------------------------------------
    auto* gini_cmd = app.add_subcommand("gini", "Gini mean difference measures");
    std::string gini_dist;
    bool gini_decompose = false, gini_ctg = false;
    gini_cmd->add_option("--dist", gini_dist, "distribution spec")->required();
    gini_cmd->add_flag("--decompose", gini_decompose, "emit the CT GMD decomposition");
    gini_cmd->add_flag("--ctg", gini_ctg, "emit the CT Gini mean difference");

    // --- fisher ----------------------------------------------------------------
    auto* fisher_cmd = app.add_subcommand("fisher", "Fisher information matrix of a CT spec");
    std::string fisher_dist;
    fisher_cmd->add_option("--dist", fisher_dist, "ct distribution spec")->required();

    // --- fit -------------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "maximum-likelihood fit");
    std::string fit_model = "ctu", fit_data;
    double fit_level = 0.95;
    fit_cmd->add_option("--model", fit_model, "ctu|ctw")->required();
    fit_cmd->add_option("--data", fit_data, "one-column CSV of observations")->required();
    fit_cmd->add_option("--level", fit_level, "confidence level (default 0.95)");

    // --- sample ------------------------------------------------------------------
    auto* sample_cmd = app.add_subcommand("sample", "draw CT variates (one-column CSV)");
    std::string sample_dist, sample_mix, sample_baseline = "uniform", sample_out;
    std::size_t sample_n = 1000;
    std::uint64_t sample_seed = default_seed();
    sample_cmd->add_option("--dist", sample_dist, "ct spec (mixing probs derived)");
    sample_cmd->add_option("--mix", sample_mix, "pi1,pi2,pi3 mixing probabilities");
    sample_cmd->add_option("--baseline", sample_baseline, "baseline spec for --mix");
    sample_cmd->add_option("--n", sample_n, "number of draws");
    sample_cmd->add_option("--seed", sample_seed, "RNG seed (default env CTINFO_SEED)");
    sample_cmd->add_option("--out", sample_out, "write CSV here instead of stdout");

    // --- simulate ------------------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo campaigns");
    sim_cmd->require_subcommand(1);
    auto* t1_cmd = sim_cmd->add_subcommand("table1", "KL model-selection study");
    std::string t1_mix, t1_n = "150,300,500", t1_out;
    std::size_t t1_reps = 500, t1_bins = 20;
    double t1_smoothing = 0.5;
    std::uint64_t t1_seed = default_seed();
    bool t1_serial = false;
    t1_cmd->add_option("--mix", t1_mix, "pi1,pi2,pi3")->required();
    t1_cmd->add_option("--n", t1_n, "comma-separated sample sizes");
    t1_cmd->add_option("--reps", t1_reps, "replications");
    t1_cmd->add_option("--seed", t1_seed, "seed");
    t1_cmd->add_option("--bins", t1_bins, "histogram bins for the KL estimator");
    t1_cmd->add_option("--smoothing", t1_smoothing, "Laplace smoothing per bin");
    t1_cmd->add_option("--out", t1_out, "CSV output path");
    t1_cmd->add_flag("--serial", t1_serial, "run replications serially");

    auto* ci_cmd = sim_cmd->add_subcommand("ci", "confidence-interval study");
    std::string ci_model = "ctu", ci_params, ci_n = "150,300,500", ci_levels = "0.90,0.95", ci_out;
    std::size_t ci_reps = 500;
    std::uint64_t ci_seed = default_seed();
    bool ci_serial = false;
    ci_cmd->add_option("--model", ci_model, "ctu|ctw")->required();
    ci_cmd->add_option("--params", ci_params, "true parameters, e.g. l1=0.4,l2=0.6[,k=1]")->required();
    ci_cmd->add_option("--n", ci_n, "comma-separated sample sizes");
    ci_cmd->add_option("--level", ci_levels, "comma-separated confidence levels");
    ci_cmd->add_option("--reps", ci_reps, "replications");
    ci_cmd->add_option("--seed", ci_seed, "seed");
    ci_cmd->add_option("--out", ci_out, "CSV output path");
    ci_cmd->add_flag("--serial", ci_serial, "run replications serially");

    // --- verify ------------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "closed-form vs oracle verification suite");
    std::string verify_suite = "closed-forms", verify_out = "erratum_report.json";
    std::string verify_plot_dir;
    int verify_grid = 21;
    bool verify_serial = false;
    verify_cmd->add_option("--suite", verify_suite, "suite name (closed-forms)");
    verify_cmd->add_option("--grid", verify_grid, "grid resolution per axis");
    verify_cmd->add_option("--out", verify_out, "erratum report path");
    verify_cmd->add_option("--plot-data", verify_plot_dir,
                           "also write theta.csv and rstar.csv grids into this directory");
    verify_cmd->add_flag("--serial", verify_serial, "single-threaded sweep");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (entropy_cmd->parsed()) {
            const ParsedDist d = parse_dist(entropy_dist);
            Json j = Json::object();
            j.set("dist", d.canonical);
            if (entropy_decompose) {
                if (!d.ct) {
                    err << "--decompose requires a ct/ct1/qt spec\n";
                    return kExitUsage;
                }
                const EntropyDecomposition dec = ct_entropy_decomposed(*d.ct, qspec);
                j.set("total", dec.total);
                j.set("term_lambda1_Hf", dec.term_lambda1_Hf);
                j.set("term_Hfmax", dec.term_Hfmax);
                j.set("term_weighted", dec.term_weighted);
                j.set("term_HfW", dec.term_HfW);
                j.set("term_HfUCT", dec.term_HfUCT);
                j.set("theta", dec.theta);
                j.set("decomposition_residual", dec.total - dec.sum());
                j.set("converged", dec.converged);
                out << j.dump(2) << "\n";
                return dec.converged ? kExitOk : kExitNonConvergence;
            }
            const Estimate h = shannon_entropy(d.dist, qspec);
            j.set("entropy", h.value);
            j.set("error_bound", h.error_bound);
            j.set("converged", h.converged);
            out << j.dump(2) << "\n";
            return h.converged ? kExitOk : kExitNonConvergence;
        }

        if (div_cmd->parsed()) {
            const ParsedDist from = parse_dist(div_from);
            const ParsedDist to = parse_dist(div_to);
            DivergenceResult r;
            if (div_closed) {
                const PairClass pc = classify_pair(div_kind, from, to);
                if (pc.kind == PairClass::kl_form) r = kl_closed_form(pc.kl, pc.params, qspec);
                else if (pc.kind == PairClass::chi_form)
                    r = chi_square_closed_form(pc.chi, pc.params, qspec);
                else if (pc.kind == PairClass::jeffreys_ct_f)
                    r = closed_pair_sum(kl_closed_form(KlForm::uniform_to_ct, pc.params, qspec),
                                        kl_closed_form(KlForm::ct_to_uniform, pc.params, qspec));
                else if (pc.kind == PairClass::jeffreys_ct_max)
                    r = closed_pair_sum(kl_closed_form(KlForm::ct_to_max, pc.params, qspec),
                                        kl_closed_form(KlForm::max_to_ct, pc.params, qspec));
                else if (pc.kind == PairClass::sym_chi_ct_f)
                    r = closed_pair_sum(
                        chi_square_closed_form(ChiForm::ct_to_uniform, pc.params, qspec),
                        chi_square_closed_form(ChiForm::uniform_to_ct, pc.params, qspec));
                else {
                    err << "--closed-form: no closed form for this pair/kind\n";
                    return kExitUsage;
                }
            } else if (div_kind == "kl") {
                r = kl(from.dist, to.dist, qspec);
            } else if (div_kind == "jeffreys") {
                r = jeffreys(from.dist, to.dist, qspec);
            } else if (div_kind == "chi2") {
                r = chi_square(from.dist, to.dist, qspec);
            } else if (div_kind == "symchi2") {
                r = symmetric_chi_square(from.dist, to.dist, qspec);
            } else {
                err << "unknown divergence kind '" << div_kind << "'\n";
                return kExitUsage;
            }
            Json j = divergence_json(r);
            j.set("kind", div_kind);
            j.set("from", from.canonical);
            j.set("to", to.canonical);
            out << j.dump(2) << "\n";
            return exit_for_quadrature(r, err);
        }

        if (gini_cmd->parsed()) {
            const ParsedDist d = parse_dist(gini_dist);
            Json j = Json::object();
            j.set("dist", d.canonical);
            if (gini_decompose || gini_ctg) {
                if (!d.ct) {
                    err << "--decompose/--ctg require a ct spec\n";
                    return kExitUsage;
                }
                if (gini_decompose) {
                    const GmdDecomposition g = gmd_ct_decomposed(*d.ct, qspec);
                    j.set("total", g.total);
                    j.set("term_f", g.term_f);
                    j.set("term_fmax", g.term_fmax);
                    j.set("r_star", g.r_star);
                    j.set("A", g.A); j.set("B", g.B); j.set("C", g.C);
                    j.set("D", g.D); j.set("E", g.E);
                    j.set("decomposition_residual", g.total - g.sum());
                    j.set("converged", g.converged);
                }
                if (gini_ctg) {
                    j.set("ctg", ctg(*d.ct, qspec));
                    const auto via = ctg_via_energy(*d.ct, qspec);
                    j.set("ctg_via_energy_reference_weights", via ? Json(*via) : Json());
                }
            } else {
                const Estimate g = gmd(d.dist, qspec);
                j.set("gmd", g.value);
                j.set("error_bound", g.error_bound);
                j.set("converged", g.converged);
            }
            out << j.dump(2) << "\n";
            return kExitOk;
        }

        if (fisher_cmd->parsed()) {
            const ParsedDist d = parse_dist(fisher_dist);
            if (!d.ct) {
                err << "fisher requires a ct spec\n";
                return kExitUsage;
            }
            const FisherMatrix m = fisher_matrix(*d.ct, qspec);
            Json j = Json::object();
            j.set("dist", d.canonical);
            j.set("i11", m.i11);
            j.set("i12", m.i12);
            j.set("i22", m.i22);
            j.set("det", m.det());
            j.set("method", fisher_method_name(m.method));
            if (const auto closed = fisher_ct_uniform_closed(d.ct->params())) {
                Json c = Json::object();
                c.set("i11", closed->i11);
                c.set("i12", closed->i12);
                c.set("i22", closed->i22);
                j.set("closed_form", std::move(c));
            }
            out << j.dump(2) << "\n";
            return kExitOk;
        }

        if (fit_cmd->parsed()) {
            const std::vector<double> data = read_one_column_csv(fit_data);
            const FitModel model = fit_model == "ctw" ? FitModel::ct_weibull
                                                      : FitModel::ct_uniform;
            FitOptions opts;
            opts.level = fit_level;
            const FitResult r = mle_fit(data, model, opts);
            Json j = Json::object();
            j.set("model", fit_model);
            j.set("n", r.n);
            Json est = Json::object();
            for (std::size_t i = 0; i < r.param_names.size(); ++i)
                est.set(r.param_names[i], r.estimates[i]);
            j.set("estimates", std::move(est));
            j.set("loglik", r.loglik);
            j.set("level", r.level);
            Json cis = Json::object();
            for (const ConfidenceInterval& c : r.ci) {
                Json iv = Json::array();
                iv.push(c.lo);
                iv.push(c.hi);
                cis.set(c.param, std::move(iv));
            }
            j.set("ci", std::move(cis));
            Json fm = Json::object();
            fm.set("i11", r.fisher.i11);
            fm.set("i12", r.fisher.i12);
            fm.set("i22", r.fisher.i22);
            fm.set("method", fisher_method_name(r.fisher.method));
            j.set("fisher", std::move(fm));
            j.set("converged", r.converged);
            j.set("ci_available", r.ci_available);
            out << j.dump(2) << "\n";
            return r.converged ? kExitOk : kExitNonConvergence;
        }

        if (sample_cmd->parsed()) {
            MixingProbs mix;
            Baseline base = make_uniform();
            if (!sample_dist.empty()) {
                const ParsedDist d = parse_dist(sample_dist);
                if (!d.ct) {
                    err << "sample --dist requires a ct spec\n";
                    return kExitUsage;
                }
                mix = d.ct->mixing_probs();
                base = d.ct->baseline();
            } else if (!sample_mix.empty()) {
                const auto probs = parse_number_list(sample_mix);
                if (probs.size() != 3) {
                    err << "--mix needs exactly three probabilities\n";
                    return kExitUsage;
                }
                mix = {probs[0], probs[1], probs[2]};
                const ParsedDist d = parse_dist(sample_baseline);
                if (!d.baseline || d.ct) {
                    err << "--baseline must name a baseline family\n";
                    return kExitUsage;
                }
                base = *d.baseline;
            } else {
                err << "sample requires --dist or --mix\n";
                return kExitUsage;
            }
            const std::vector<double> xs = sample_ct(mix, base, sample_n, sample_seed);
            std::ostringstream csv;
            csv << "x\n";
            for (double x : xs) csv << fmt17(x) << "\n";
            if (sample_out.empty()) {
                out << csv.str();
            } else {
                std::ofstream f(sample_out);
                f << csv.str();
                Json j = Json::object();
                j.set("written", sample_out);
                j.set("n", sample_n);
                j.set("seed", static_cast<long long>(sample_seed));
                out << j.dump(2) << "\n";
            }
            return kExitOk;
        }

        if (t1_cmd->parsed()) {
            const auto probs = parse_number_list(t1_mix);
            if (probs.size() != 3) {
                err << "--mix needs exactly three probabilities\n";
                return kExitUsage;
            }
            SimulationConfig cfg;
            cfg.mix = {probs[0], probs[1], probs[2]};
            cfg.n_list = parse_count_list(t1_n);
            cfg.replications = t1_reps;
            cfg.seed = t1_seed;
            cfg.histogram_bins = t1_bins;
            cfg.histogram_smoothing = t1_smoothing;
            cfg.exec = t1_serial ? ExecMode::serial : ExecMode::openmp;
            const SimulationReport rep = run_kl_selection(cfg);
            if (!t1_out.empty()) {
                std::ofstream f(t1_out);
                f << kl_report_csv(rep);
            }
            Json j = Json::object();
            j.set("study", rep.study);
            j.set("version", kVersion);
            j.set("seed", static_cast<long long>(rep.seed));
            j.set("replications", rep.replications);
            j.set("wall_seconds", rep.wall_seconds);
            if (!t1_out.empty()) j.set("csv", t1_out);
            Json rows = Json::array();
            for (const KlSelectionRow& r : rep.kl_rows) {
                Json row = Json::object();
                row.set("n", r.n);
                row.set("KL1", r.kl1); row.set("KL2", r.kl2); row.set("KL3", r.kl3);
                row.set("prop1", r.prop1); row.set("prop2", r.prop2); row.set("prop3", r.prop3);
                rows.push(std::move(row));
            }
            j.set("rows", std::move(rows));
            out << j.dump(2) << "\n";
            return kExitOk;
        }

        if (ci_cmd->parsed()) {
            SimulationConfig cfg;
            cfg.model = ci_model == "ctw" ? FitModel::ct_weibull : FitModel::ct_uniform;
            const auto kv = parse_kv(ci_params);
            cfg.true_params = {kv.at("l1"), kv.at("l2")};
            if (cfg.model == FitModel::ct_weibull) cfg.true_params.push_back(kv.at("k"));
            cfg.n_list = parse_count_list(ci_n);
            cfg.levels = parse_number_list(ci_levels);
            cfg.replications = ci_reps;
            cfg.seed = ci_seed;
            cfg.exec = ci_serial ? ExecMode::serial : ExecMode::openmp;
            const SimulationReport rep = run_ci_study(cfg);
            if (!ci_out.empty()) {
                std::ofstream f(ci_out);
                f << ci_report_csv(rep);
            }
            Json j = Json::object();
            j.set("study", rep.study);
            j.set("version", kVersion);
            j.set("seed", static_cast<long long>(rep.seed));
            j.set("replications", rep.replications);
            j.set("failed_fits", rep.failed_fits);
            j.set("wall_seconds", rep.wall_seconds);
            j.set("averaged_endpoints", rep.averaged_endpoints);
            if (!ci_out.empty()) j.set("csv", ci_out);
            Json rows = Json::array();
            for (const CiRow& r : rep.ci_rows) {
                Json row = Json::object();
                row.set("param", r.param);
                row.set("true", r.true_value);
                row.set("n", r.n);
                row.set("level", r.level);
                row.set("avg_lo", r.avg_lo);
                row.set("avg_hi", r.avg_hi);
                row.set("avg_width", r.avg_width);
                row.set("coverage", r.coverage);
                rows.push(std::move(row));
            }
            j.set("rows", std::move(rows));
            out << j.dump(2) << "\n";
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            if (verify_suite != "closed-forms") {
                err << "unknown suite '" << verify_suite << "'\n";
                return kExitUsage;
            }
            const VerifyReport rep =
                run_verify(verify_grid, verify_serial ? ExecMode::serial : ExecMode::openmp, qspec);
            const std::string report = erratum_report_json(rep);
            {
                std::ofstream f(verify_out);
                f << report << "\n";
            }
            if (!verify_plot_dir.empty()) {
                std::ofstream theta_f(verify_plot_dir + "/theta.csv");
                theta_f << theta_grid_csv();
                std::ofstream rstar_f(verify_plot_dir + "/rstar.csv");
                rstar_f << rstar_grid_csv();
            }
            out << report << "\n";
            err << (rep.all_pass ? "all agreement checks passed" : "AGREEMENT FAILURES present")
                << "; errata entries: " << rep.errata.size() << "; wall "
                << fmt17(rep.wall_seconds) << "s\n";
            return rep.all_pass ? kExitOk : kExitNonConvergence;
        }
    } catch (const DistSpecError& e) {
        err << "bad distribution spec: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace ctinfo
