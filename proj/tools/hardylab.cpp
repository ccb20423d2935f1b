// hardylab: constants lookup, suite verification, sharpness sweeps and MOW checks.
//
// Exit codes: 0 all pass, 1 some check failed, 2 numerical failure or unusable input.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardylab/constants.hpp"
#include "hardylab/corpus.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/functionals.hpp"
#include "hardylab/harmonics.hpp"

namespace hl = hardylab;
using json = nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Grid {
    std::vector<int> n{3, 4, 5, 8};
    std::vector<double> p{1.5, 2.0, 3.0};
    std::vector<double> beta{-1.0, 0.0, 1.0};
    std::vector<double> b{0.0, 1.0};
    std::vector<int> l{1, 2};
};

struct RunConfig {
    std::vector<std::string> cases;  // empty: every registry case
    Grid grid;
    std::vector<std::string> corpus{"bump:R=1,m=4", "bump:R=1,m=6", "cutoff:a=0.3,b=0.9"};
    hl::QuadratureOptions tol;
    std::string family = "hardy";
    std::vector<double> scales;  // empty: family default
    std::vector<int> k{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<double> radii{0.5, 0.9};
    int l_max = 100;
    int grid_points = 10000;
    std::string out;
    std::string format = "csv";
    int jobs = 1;
};

int default_jobs() {
    if (const char* env = std::getenv("HARDYLAB_JOBS")) {
        try {
            const int j = std::stoi(env);
            if (j > 0) return j;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("HARDYLAB_JOBS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// ---- config file ----

void reject_unknown(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw UsageError("config: unknown key '" + key + "' in " + where);
}

template <class T>
void take(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

void load_config(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    if (j.value("schema", std::string()) != "1") throw UsageError("config: \"schema\": \"1\" required");
    reject_unknown(j, {"schema", "cases", "grid", "corpus", "tolerances", "sweep", "mow", "out", "format", "jobs"},
                   "config");
    try {
        if (j.contains("cases")) {
            const json& c = j.at("cases");
            if (c.is_string()) {
                if (c.get<std::string>() != "all") throw UsageError("config: cases must be \"all\" or a list");
                cfg.cases.clear();
            } else {
                cfg.cases = c.get<std::vector<std::string>>();
            }
        }
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            reject_unknown(g, {"n", "p", "beta", "b", "l"}, "grid");
            take(g, "n", cfg.grid.n);
            take(g, "p", cfg.grid.p);
            take(g, "beta", cfg.grid.beta);
            take(g, "b", cfg.grid.b);
            take(g, "l", cfg.grid.l);
        }
        take(j, "corpus", cfg.corpus);
        if (j.contains("tolerances")) {
            const json& t = j.at("tolerances");
            reject_unknown(t, {"rel", "abs", "max_subdivisions"}, "tolerances");
            take(t, "rel", cfg.tol.rel_tol);
            take(t, "abs", cfg.tol.abs_tol);
            take(t, "max_subdivisions", cfg.tol.max_subdivisions);
        }
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            reject_unknown(s, {"family", "scales"}, "sweep");
            take(s, "family", cfg.family);
            take(s, "scales", cfg.scales);
        }
        if (j.contains("mow")) {
            const json& m = j.at("mow");
            reject_unknown(m, {"k", "radii", "l_max", "grid_points"}, "mow");
            take(m, "k", cfg.k);
            take(m, "radii", cfg.radii);
            take(m, "l_max", cfg.l_max);
            take(m, "grid_points", cfg.grid_points);
        }
        take(j, "out", cfg.out);
        take(j, "format", cfg.format);
        take(j, "jobs", cfg.jobs);
    } catch (const json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

// ---- output ----

std::string num(double x) { return hl::format_number(x); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;  // strings, numbers or null

    void write(std::ostream& os, const std::string& format, const std::string& command) const {
        if (format == "json") {
            json doc{{"schema", "1"}, {"command", command}, {"rows", json::array()}};
            for (const auto& r : rows) {
                json o = json::object();
                for (size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
                doc["rows"].push_back(o);
            }
            os << doc.dump(2) << "\n";
            return;
        }
        for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) {
                if (i) os << ",";
                const json& v = r[i];
                if (v.is_null()) continue;
                if (v.is_string())
                    os << csv_field(v.get<std::string>());
                else if (v.is_number_integer())
                    os << v.get<long long>();
                else
                    os << num(v.get<double>());
            }
            os << "\n";
        }
    }
};

void emit(const Table& t, const RunConfig& cfg, const std::string& command) {
    if (cfg.out.empty() || cfg.out == "-") {
        t.write(std::cout, cfg.format, command);
        return;
    }
    std::ofstream os(cfg.out);
    if (!os) throw UsageError("cannot write '" + cfg.out + "'");
    t.write(os, cfg.format, command);
}

// Runs f(0..count-1) on a bounded pool; callers store results by index.
template <class F>
void parallel_for(size_t count, int jobs, F&& f) {
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < count; i = next++) f(i);
    };
    std::vector<std::jthread> pool;
    const size_t extra = std::min<size_t>(count, static_cast<size_t>(std::max(jobs, 1))) - (count ? 1 : 0);
    for (size_t t = 0; t < extra; ++t) pool.emplace_back(worker);
    worker();
}

// ---- verify / identity ----

struct Cell {
    std::string id;
    hl::CaseParams params;
    std::string corpus;
};

struct CellResult {
    hl::CaseParams params;
    std::optional<hl::VerificationReport> report;
    hl::Status status = hl::Status::skipped;
    std::string note;
};

std::vector<Cell> expand(const RunConfig& cfg, const std::vector<std::string>& ids) {
    std::vector<Cell> cells;
    for (const auto& id : ids) {
        const hl::CaseInfo& info = hl::case_info(id);
        const std::vector<int> ls = info.uses_l ? cfg.grid.l : std::vector<int>{0};
        // The weight of a critical case is fixed by (n, p); one beta sample suffices.
        const std::vector<double> betas =
            info.critical && !cfg.grid.beta.empty() ? std::vector<double>{cfg.grid.beta.front()} : cfg.grid.beta;
        for (int n : cfg.grid.n)
            for (double p : cfg.grid.p)
                for (double beta : betas)
                    for (double b : cfg.grid.b)
                        for (int l : ls)
                            for (const auto& corpus : cfg.corpus) cells.push_back({id, {n, p, beta, b, l}, corpus});
    }
    return cells;
}

CellResult run_cell(const Cell& c, const hl::QuadratureOptions& tol) {
    CellResult r;
    r.params = c.params;
    try {
        const hl::RadialFunction f = hl::make_corpus(c.corpus, c.params);
        hl::CaseTerms terms = hl::build_case({c.id, c.params}, f);
#ifdef HARDYLAB_FORCED_FAILURE
        terms.constant += 1e-3;
#endif
        r.params = terms.c.params;
        r.report = hl::evaluate_terms(terms, f.id, tol);
        r.status = r.report->status;
        r.note = r.report->notes;
    } catch (const hl::ValidityError& e) {
        r.note = e.what();
    } catch (const hl::ContractError& e) {
        r.note = e.what();
    } catch (const hl::DomainError& e) {
        r.note = e.what();
    } catch (const std::exception& e) {
        r.status = hl::Status::numerical_failure;
        r.note = e.what();
    }
    return r;
}

void check_corpus_ids(const std::vector<std::string>& ids) {
    for (const auto& id : ids) {
        try {
            hl::make_corpus(id, hl::CaseParams{});
        } catch (const hl::ValidityError&) {
            // extremizers are validated per cell
        } catch (const hl::DomainError& e) {
            throw UsageError("corpus '" + id + "': " + e.what());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
}

int cmd_verify(const RunConfig& cfg, bool identity_only) {
    std::vector<std::string> ids = cfg.cases;
    if (ids.empty())
        for (const auto& c : hl::case_registry())
            if (!identity_only || c.identity) ids.push_back(c.id);
    for (const auto& id : ids) {
        try {
            const hl::CaseInfo& info = hl::case_info(id);
            if (identity_only && !info.identity) throw UsageError("case " + id + " has no identity");
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    check_corpus_ids(cfg.corpus);
    const std::vector<Cell> cells = expand(cfg, ids);
    std::vector<CellResult> results(cells.size());
    parallel_for(cells.size(), cfg.jobs, [&](size_t i) { results[i] = run_cell(cells[i], cfg.tol); });

    Table t;
    t.columns = {"case", "n", "p", "beta", "b", "l", "corpus_id", "lhs", "rhs", "constant", "slack", "residual",
                 "quad_error", "status", "note"};
    std::map<hl::Status, int> counts;
    for (size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        const CellResult& r = results[i];
        ++counts[r.status];
        std::vector<json> row{c.id, r.params.n, r.params.p, r.params.beta, r.params.b, r.params.l, c.corpus};
        if (r.report) {
            const auto& v = *r.report;
            row.insert(row.end(), {v.lhs, v.rhs, v.constant, v.slack, v.residual ? json(*v.residual) : json(nullptr),
                                   v.quad_error_budget});
        } else {
            row.insert(row.end(), 6, json(nullptr));
        }
        row.push_back(hl::status_name(r.status));
        row.push_back(r.note);
        t.rows.push_back(std::move(row));
    }
    emit(t, cfg, identity_only ? "identity" : "verify");
    std::cerr << (identity_only ? "identity" : "verify") << ": " << cells.size() << " cells, "
              << counts[hl::Status::pass] << " pass, " << counts[hl::Status::fail] << " fail, "
              << counts[hl::Status::numerical_failure] << " numerical-failure, " << counts[hl::Status::skipped]
              << " skipped\n";
    if (counts[hl::Status::numerical_failure]) return kExitError;
    if (counts[hl::Status::fail]) return kExitFail;
    return kExitPass;
}

// ---- constants ----

std::string family_display(hl::Family f) {
    using F = hl::Family;
    switch (f) {
        case F::hardy:
            return "weighted Hardy";
        case F::critical_hardy:
            return "critical Hardy";
        case F::critical_n:
            return "critical Hardy with p = n";
        case F::onetwo:
            return "first-order Rellich lemma";
        case F::rellich2:
            return "weighted Rellich";
        case F::critical_rellich2:
            return "critical Rellich";
        case F::rellich_even:
            return "higher-order Rellich, k = 2l";
        case F::rellich_odd:
            return "higher-order Rellich, k = 2l+1";
        case F::critical_even:
            return "critical higher-order Rellich, k = 2l";
        case F::critical_odd:
            return "critical higher-order Rellich, k = 2l+1";
        case F::hyp_hardy:
            return "hyperbolic Hardy with dx improvement";
        case F::hyp_critical:
            return "hyperbolic critical Hardy with dx improvement";
        case F::hyp_rellich:
            return "hyperbolic Rellich, p = 2";
        case F::hyp_improved_rellich:
            return "improved hyperbolic Rellich with dx term";
        case F::hyp_even:
            return "improved hyperbolic higher-order Rellich, k = 2l";
        case F::hyp_odd:
            return "improved hyperbolic higher-order Rellich, k = 2l+1";
        case F::mow:
            return "radial versus full Laplacian on hyperbolic space";
    }
    return "";
}

std::optional<double> family_constant(hl::Family f, const hl::CaseParams& c) {
    using F = hl::Family;
    switch (f) {
        case F::hardy:
        case F::hyp_hardy:
            return hl::hardy_constant(c.n, c.p, c.beta);
        case F::critical_hardy:
        case F::critical_n:
        case F::hyp_critical:
            return hl::critical_hardy_constant(c.p);
        case F::onetwo:
            return hl::onetwo_constant(c.n, c.p, c.beta);
        case F::rellich2:
            return hl::rellich2_constant(c.n, c.p, c.beta);
        case F::critical_rellich2:
            return hl::critical_rellich2_constant(c.n, c.p);
        case F::rellich_even:
        case F::hyp_even:
            return hl::c_even(c.n, c.l, c.beta, c.p);
        case F::rellich_odd:
        case F::hyp_odd:
            return hl::c_odd(c.n, c.l, c.beta, c.p);
        case F::critical_even:
            return hl::critical_even_constant(c.n, c.l, c.p);
        case F::critical_odd:
            return hl::critical_odd_constant(c.n, c.l, c.p);
        case F::hyp_rellich:
        case F::hyp_improved_rellich: {
            const double u = (c.n + c.beta) * (c.n - 4.0 - c.beta);
            return u * u / 16.0;
        }
        case F::mow:
            return std::nullopt;
    }
    return std::nullopt;
}

int cmd_constants(const std::string& name, hl::CaseParams c, const RunConfig& cfg) {
    hl::Family fam;
    std::string display;
    try {
        fam = hl::family_of(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    display = family_display(fam);
    for (const auto& info : hl::case_registry())
        if (info.id == name) display = info.display;
    const hl::BetaRange br = hl::beta_range(fam, c.n, c.p, c.l);
    if (br.beta_free) c.beta = br.lower;
    std::optional<double> value;
    try {
        value = family_constant(fam, c);
    } catch (const hl::ValidityError& e) {
        std::cerr << "constants: " << e.what() << "\n";
        return kExitError;
    }
    // The critical higher-order constants are defined beyond the p-range of their inequality.
    const hl::Validity v = hl::validity(fam, c);
    if (!v && fam != hl::Family::critical_even && fam != hl::Family::critical_odd) {
        std::cerr << "constants: " << name << ": " << v.reason << "\n";
        return kExitError;
    }
    const std::string interval = br.beta_free ? "beta = " + br.lower_source + " = " + num(br.lower)
                                              : "beta in (" + num(br.lower) + ", " + num(br.upper) +
                                                    (br.upper_inclusive ? "]" : ")") + " from " + br.lower_source +
                                                    " < beta " + (br.upper_inclusive ? "<=" : "<") + " " +
                                                    br.upper_source;
    std::ostringstream os;
    if (cfg.format == "json") {
        json j{{"case", name},
               {"family", hl::family_name(fam)},
               {"display", display},
               {"constant", value ? json(*value) : json(nullptr)},
               {"beta_lower", br.lower},
               {"beta_upper", br.upper},
               {"beta_lower_source", br.lower_source},
               {"beta_upper_source", br.upper_source},
               {"upper_inclusive", br.upper_inclusive},
               {"beta_fixed", br.beta_free},
               {"range_note", v ? json(nullptr) : json(v.reason)}};
        os << j.dump(2) << "\n";
    } else {
        os << "case: " << name << "\n"
           << "family: " << hl::family_name(fam) << "\n"
           << "display: " << display << "\n"
           << "constant: " << (value ? num(*value) : "none") << "\n"
           << interval << "\n";
        if (!v) os << "note: outside the inequality's range (" << v.reason << ")\n";
    }
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << os.str();
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw UsageError("cannot write '" + cfg.out + "'");
        f << os.str();
    }
    return kExitPass;
}

// ---- sharpness ----

std::vector<double> default_scales(hl::ExtremizerKind k) {
    switch (k) {
        case hl::ExtremizerKind::hardy:
            return {1e-1, 1e-3, 1e-6};
        case hl::ExtremizerKind::critical:
            return {0.2, 0.1, 0.05, 0.02};
        default:
            return {1e-1, 1e-2, 1e-3};
    }
}

int cmd_sharpness(const RunConfig& cfg) {
    hl::ExtremizerKind kind;
    try {
        kind = hl::extremizer_kind(cfg.family);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::vector<double> scales = cfg.scales.empty() ? default_scales(kind) : cfg.scales;
    const hl::CaseParams c{cfg.grid.n.front(), cfg.grid.p.front(), cfg.grid.beta.front(), cfg.grid.b.front(), 0};
    hl::SweepResult s;
    try {
        s = hl::sharpness_sweep(kind, c, scales, cfg.tol);
    } catch (const hl::NonConvergence& e) {
        std::cerr << "sharpness: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        throw UsageError(std::string("sharpness: ") + e.what());
    }
    Table t;
    t.columns = {"family", "n", "p", "beta", "b", "scale", "f_side", "derivative_side", "quotient", "limit", "gap",
                 "error"};
    for (const auto& r : s.rows)
        t.rows.push_back({hl::extremizer_name(kind), s.params.n, s.params.p, s.params.beta, s.params.b, r.scale,
                          r.f_side, r.derivative_side, r.quotient, s.limit, r.gap, r.error});
    emit(t, cfg, "sharpness");
    std::cerr << "sharpness: gaps " << (s.gaps_positive ? "positive" : "NOT positive") << ", "
              << (s.gaps_decreasing ? "decreasing" : "NOT decreasing") << "\n";
    return s.ok() ? kExitPass : kExitFail;
}

// ---- mow ----

struct MowRow {
    std::string check;
    int n = 0;
    double beta = 0.0;
    std::optional<int> k;
    std::optional<double> radius;
    std::optional<double> value;
    std::optional<double> error;
    hl::Status status = hl::Status::pass;
    std::string note;
};

MowRow row(std::string check, int n, double beta, std::optional<int> k = {}, std::optional<double> radius = {}) {
    MowRow r;
    r.check = std::move(check);
    r.n = n;
    r.beta = beta;
    r.k = k;
    r.radius = radius;
    return r;
}

std::vector<MowRow> mow_group(int n, double beta, const RunConfig& cfg) {
    std::vector<MowRow> rows;
    try {
        hl::check_mow_params(n, beta);
    } catch (const hl::ValidityError& e) {
        MowRow r = row("params", n, beta);
        r.status = hl::Status::skipped;
        r.note = e.what();
        rows.push_back(std::move(r));
        return rows;
    }
    const std::string boundary = hl::mow_boundary(n, beta) ? "boundary case, proof route differs" : "";
    auto guarded = [&](MowRow proto, auto&& body) {
        try {
            body(proto);
        } catch (const std::exception& e) {
            proto.status = hl::Status::numerical_failure;
            proto.note = e.what();
        }
        if (!boundary.empty()) proto.note = proto.note.empty() ? boundary : boundary + "; " + proto.note;
        rows.push_back(std::move(proto));
    };
    for (int k : cfg.k) {
        for (double R : cfg.radii) {
            guarded(row("mode_form", n, beta, k, R), [&](MowRow& r) {
                const hl::QuadratureResult q = hl::mode_form(n, beta, k, hl::mode_profile(k, R, 4), cfg.tol);
                r.value = q.value;
                r.error = q.error_estimate;
                r.status = q.value >= -std::max(1e-9, 10.0 * q.error_estimate) ? hl::Status::pass : hl::Status::fail;
            });
        }
        guarded(row("coefficient_check", n, beta, k), [&](MowRow& r) {
            const hl::CoefficientCheck cc = hl::coefficient_check(n, beta, k, cfg.l_max);
            r.value = std::min(cc.leading, cc.min_series);
            r.status = cc.ok() ? hl::Status::pass : hl::Status::fail;
            for (const auto& v : cc.violations)
                r.note += (r.note.empty() ? "" : "; ") + std::string("l=") + std::to_string(v.l) + " " + num(v.value);
        });
    }
    for (double R : cfg.radii) {
        guarded(row("mow_radial", n, beta, 0, R), [&](MowRow& r) {
            const hl::MowResult m = hl::mow_compare(n, beta, {hl::make_mode(n, 0, hl::mode_profile(0, R, 4))}, cfg.tol);
            r.value = m.slack;
            r.error = m.quad_error;
            r.status = std::abs(m.slack) <= 1e-9 && std::abs(m.rhs - m.lhs) <= 1e-9 ? hl::Status::pass
                                                                                    : hl::Status::fail;
        });
        guarded(row("mow_modes", n, beta, std::nullopt, R), [&](MowRow& r) {
            std::vector<hl::ModeSpec> modes;
            for (int k = 0; k < static_cast<int>(hl::kMaxModes) && (k == 0 || std::count(cfg.k.begin(), cfg.k.end(), k)); ++k)
                modes.push_back(hl::make_mode(n, k, hl::mode_profile(k, R, 4)));
            const hl::MowResult m = hl::mow_compare(n, beta, modes, cfg.tol);
            r.value = m.slack;
            r.error = m.quad_error;
            const double tol = std::max(1e-9, 10.0 * m.quad_error);
            const bool consistent = std::abs((m.rhs - m.lhs) - m.slack) <= tol * std::max(1.0, m.rhs);
            r.status = m.slack >= -tol && consistent ? hl::Status::pass : hl::Status::fail;
            if (!consistent) r.note = "rhs - lhs disagrees with the mode sum";
        });
    }
    guarded(row("pointwise_positivity", n, beta, 1), [&](MowRow& r) {
        std::vector<double> grid(static_cast<size_t>(cfg.grid_points));
        for (size_t i = 0; i < grid.size(); ++i) grid[i] = 30.0 * static_cast<double>(i + 1) / grid.size();
        const hl::PositivityMin m = hl::pointwise_positivity(n, beta, grid);
        r.value = m.value;
        r.radius = m.rho;
        r.status = m.value > 0.0 ? hl::Status::pass : hl::Status::fail;
    });
    return rows;
}

int cmd_mow(const RunConfig& cfg) {
    if (cfg.grid_points < 1 || cfg.l_max < 1) throw UsageError("mow: grid_points and l_max must be >= 1");
    std::vector<std::pair<int, double>> groups;
    for (int n : cfg.grid.n)
        for (double beta : cfg.grid.beta) groups.emplace_back(n, beta);
    std::vector<std::vector<MowRow>> results(groups.size());
    parallel_for(groups.size(), cfg.jobs,
                 [&](size_t i) { results[i] = mow_group(groups[i].first, groups[i].second, cfg); });
    Table t;
    t.columns = {"check", "n", "beta", "k", "radius", "value", "error", "status", "note"};
    auto opt = [](const auto& o) { return o ? json(*o) : json(nullptr); };
    std::map<hl::Status, int> counts;
    for (const auto& g : results)
        for (const auto& r : g) {
            ++counts[r.status];
            t.rows.push_back({r.check, r.n, r.beta, opt(r.k), opt(r.radius), opt(r.value), opt(r.error),
                              hl::status_name(r.status), r.note});
        }
    emit(t, cfg, "mow");
    std::cerr << "mow: " << counts[hl::Status::pass] << " pass, " << counts[hl::Status::fail] << " fail, "
              << counts[hl::Status::numerical_failure] << " numerical-failure, " << counts[hl::Status::skipped]
              << " skipped\n";
    if (counts[hl::Status::numerical_failure]) return kExitError;
    if (counts[hl::Status::fail]) return kExitFail;
    return kExitPass;
}

// ---- flags ----

struct GridFlags {
    std::vector<int> n;
    std::vector<double> p, beta, b;
    std::vector<int> l;
    std::vector<std::string> cases, corpus;
    std::optional<double> rel, abs;
    std::optional<int> max_sub;
};

void add_common(CLI::App* app, std::string& config, RunConfig& cfg, std::optional<int>& jobs, std::string& out,
                std::string& format) {
    app->add_option("--config", config, "JSON run configuration (schema 1)")->check(CLI::ExistingFile);
    app->add_option("--out", out, "report path (default stdout)");
    app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--jobs", jobs, "worker threads (default $HARDYLAB_JOBS or all cores)")->check(CLI::PositiveNumber);
    (void)cfg;
}

void add_grid(CLI::App* app, GridFlags& g, bool with_cases) {
    if (with_cases) {
        app->add_option("--case", g.cases, "registry case ids (comma separated)")->delimiter(',');
        app->add_option("--corpus", g.corpus, "corpus ids")->delimiter(';');
        app->add_option("--l", g.l, "l values")->delimiter(',');
    }
    app->add_option("--n", g.n, "dimensions")->delimiter(',');
    app->add_option("--p", g.p, "exponents")->delimiter(',');
    app->add_option("--beta", g.beta, "weights")->delimiter(',');
    app->add_option("--b", g.b, "curvature parameters")->delimiter(',');
    app->add_option("--rel-tol", g.rel, "quadrature relative tolerance");
    app->add_option("--abs-tol", g.abs, "quadrature absolute tolerance");
    app->add_option("--max-subdivisions", g.max_sub, "quadrature subdivision cap");
}

void apply(const GridFlags& g, RunConfig& cfg) {
    if (!g.n.empty()) cfg.grid.n = g.n;
    if (!g.p.empty()) cfg.grid.p = g.p;
    if (!g.beta.empty()) cfg.grid.beta = g.beta;
    if (!g.b.empty()) cfg.grid.b = g.b;
    if (!g.l.empty()) cfg.grid.l = g.l;
    if (!g.cases.empty()) cfg.cases = g.cases;
    if (!g.corpus.empty()) cfg.corpus = g.corpus;
    if (g.rel) cfg.tol.rel_tol = *g.rel;
    if (g.abs) cfg.tol.abs_tol = *g.abs;
    if (g.max_sub) cfg.tol.max_subdivisions = *g.max_sub;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hardylab: Hardy and Rellich inequalities on model manifolds"};
    app.require_subcommand(1);

    std::string config, out, format;
    std::optional<int> jobs;
    RunConfig cfg;

    auto* constants = app.add_subcommand("constants", "print a sharp constant and its beta interval");
    std::string const_case;
    hl::CaseParams cp;
    constants->add_option("--case", const_case, "family name or registry id")->required();
    constants->add_option("--n", cp.n, "dimension");
    constants->add_option("--p", cp.p, "exponent");
    constants->add_option("--beta", cp.beta, "weight");
    constants->add_option("--b", cp.b, "curvature parameter");
    constants->add_option("--l", cp.l, "order index");
    constants->add_option("--out", out, "output path");
    constants->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    GridFlags vf, idf, sf, mf;
    auto* verify = app.add_subcommand("verify", "evaluate case x params x corpus cells");
    add_common(verify, config, cfg, jobs, out, format);
    add_grid(verify, vf, true);

    auto* identity = app.add_subcommand("identity", "verify restricted to cases with an exact identity");
    add_common(identity, config, cfg, jobs, out, format);
    add_grid(identity, idf, true);

    auto* sharpness = app.add_subcommand("sharpness", "quotients along an extremizer family");
    add_common(sharpness, config, cfg, jobs, out, format);
    add_grid(sharpness, sf, false);
    std::optional<std::string> family;
    std::vector<double> scales;
    sharpness->add_option("--family", family, "hardy, critical, onetwo or rellich2");
    sharpness->add_option("--scales", scales, "decreasing scales")->delimiter(',');

    auto* mow = app.add_subcommand("mow", "mode-wise checks of the radial Laplacian comparison on hyperbolic space");
    add_common(mow, config, cfg, jobs, out, format);
    add_grid(mow, mf, false);
    std::vector<int> ks;
    std::vector<double> radii;
    std::optional<int> l_max, grid_points;
    mow->add_option("--k", ks, "mode indices")->delimiter(',');
    mow->add_option("--radii", radii, "profile radii in (0,1)")->delimiter(',');
    mow->add_option("--l-max", l_max, "series coefficients checked up to l");
    mow->add_option("--grid-points", grid_points, "points of the positivity grid on (0,30]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }

    try {
        cfg.jobs = default_jobs();
        if (constants->parsed()) {
            if (!format.empty()) cfg.format = format;
            cfg.out = out;
            return cmd_constants(const_case, cp, cfg);
        }
        if (mow->parsed()) {
            // The MOW grid defaults differ from the verify grid.
            cfg.grid.n = {4, 5, 6, 7, 8};
            cfg.grid.beta = {-1.9, -1.0, 0.0, 1.0, 2.0};
        }
        if (sharpness->parsed()) {
            cfg.grid.n = {4};
            cfg.grid.p = {2.0};
            cfg.grid.beta = {0.0};
            cfg.grid.b = {0.0};
        }
        if (!config.empty()) load_config(config, cfg);
        if (verify->parsed()) apply(vf, cfg);
        if (identity->parsed()) apply(idf, cfg);
        if (sharpness->parsed()) {
            apply(sf, cfg);
            if (family) cfg.family = *family;
            if (!scales.empty()) cfg.scales = scales;
        }
        if (mow->parsed()) {
            apply(mf, cfg);
            if (!ks.empty()) cfg.k = ks;
            if (!radii.empty()) cfg.radii = radii;
            if (l_max) cfg.l_max = *l_max;
            if (grid_points) cfg.grid_points = *grid_points;
        }
        if (jobs) cfg.jobs = *jobs;
        if (!out.empty()) cfg.out = out;
        if (!format.empty()) cfg.format = format;
        if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
        if (cfg.jobs < 1) throw UsageError("jobs must be >= 1");
        if (cfg.grid.n.empty() || cfg.grid.p.empty() || cfg.grid.beta.empty() || cfg.grid.b.empty())
            throw UsageError("empty parameter grid");

        if (verify->parsed()) return cmd_verify(cfg, false);
        if (identity->parsed()) return cmd_verify(cfg, true);
        if (sharpness->parsed()) return cmd_sharpness(cfg);
        if (mow->parsed()) return cmd_mow(cfg);
    } catch (const UsageError& e) {
        std::cerr << "hardylab: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "hardylab: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
