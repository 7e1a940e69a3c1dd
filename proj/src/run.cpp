// run.cpp - table builders and serialization for the est CLI

#include "entsurv/run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "entsurv/entanglement.hpp"
#include "entsurv/errors.hpp"
#include "entsurv/figure_defaults.hpp"
#include "entsurv/models.hpp"

namespace entsurv::run {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

double parse_number(std::string_view text) {
    const std::string s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw UsageError("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return {};
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        cell);
}

void check_grid(const std::vector<double>& grid, const char* name, bool ascending) {
    if (grid.empty()) {
        throw UsageError(std::string(name) + " grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) {
            throw UsageError(std::string(name) + " grid has a non-finite value");
        }
        if (ascending && i > 0 && grid[i] < grid[i - 1]) {
            throw UsageError(std::string(name) + " grid must be ascending");
        }
    }
}

} // namespace

Model parse_model(std::string_view name) {
    if (name == "phase-flip") {
        return Model::PhaseFlip;
    }
    if (name == "gad") {
        return Model::Gad;
    }
    if (name == "depolarizing") {
        return Model::Depolarizing;
    }
    if (name == "gaussian-gad") {
        return Model::GaussianGad;
    }
    throw UsageError("unknown model '" + std::string(name) +
                     "' (expected phase-flip, gad, depolarizing or gaussian-gad)");
}

std::string_view to_string(Model model) {
    switch (model) {
    case Model::PhaseFlip:
        return "phase-flip";
    case Model::Gad:
        return "gad";
    case Model::Depolarizing:
        return "depolarizing";
    case Model::GaussianGad:
        return "gaussian-gad";
    }
    return "unknown";
}

Format parse_format(std::string_view name) {
    if (name == "csv") {
        return Format::Csv;
    }
    if (name == "json") {
        return Format::Json;
    }
    throw UsageError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) {
        throw UsageError("grid needs at least one point");
    }
    if (points == 1) {
        return {lo};
    }
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    }
    out.back() = hi;
    return out;
}

std::vector<double> parse_grid(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) {
        throw UsageError("empty grid");
    }
    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ':')) {
            parts.push_back(part);
        }
        if (parts.size() != 3) {
            throw UsageError("range grid must look like start:stop:count, got '" + s + "'");
        }
        const double lo = parse_number(parts[0]);
        const double hi = parse_number(parts[1]);
        const double n = parse_number(parts[2]);
        if (n < 1 || n != std::floor(n) || n > 1e7) {
            throw UsageError("range grid count must be a positive integer, got '" + parts[2] + "'");
        }
        if (hi < lo) {
            throw UsageError("range grid must be ascending, got '" + s + "'");
        }
        return linspace(lo, hi, static_cast<int>(n));
    }
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(item));
    }
    return out;
}

void RunConfig::validate() const {
    check_grid(kappas, "kappa", true);
    check_grid(thetas, "theta", false);
    check_grid(n_means, "N", false);
    for (double k : kappas) {
        if (k < 0.0) {
            throw UsageError("kappa must be non-negative");
        }
    }
    for (double n : n_means) {
        if (n < 0.0) {
            throw UsageError("N must be non-negative");
        }
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw UsageError("gamma must be positive");
    }
    if (horizon && !(*horizon > 0.0 && std::isfinite(*horizon))) {
        throw UsageError("horizon must be positive");
    }
    if (workers == 0) {
        throw UsageError("workers must be at least 1");
    }
}

std::string to_csv(const Table& table) {
    std::string out = "# " + table.schema + "\n";
    for (const auto& c : table.comments) {
        out += "# " + c + "\n";
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ",";
            }
            out += csv_escape(cell_text(row[i]));
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json doc;
    doc["schema"] = table.schema;
    doc["comments"] = table.comments;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            const Cell& cell = row[i];
            auto& slot = obj[table.columns[i]];
            if (std::holds_alternative<std::monostate>(cell)) {
                slot = nullptr;
            } else if (const double* d = std::get_if<double>(&cell)) {
                if (std::isfinite(*d)) {
                    slot = std::stod(format_double(*d));
                } else {
                    slot = format_double(*d);
                }
            } else if (const long long* n = std::get_if<long long>(&cell)) {
                slot = *n;
            } else {
                slot = std::get<std::string>(cell);
            }
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string render(const Table& table, Format format) {
    return format == Format::Csv ? to_csv(table) : to_json(table);
}

void write_output(const Table& table, Format format, const std::string& path) {
    const std::string text = render(table, format);
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw Error("cannot open '" + path + "' for writing");
    }
    file << text;
    if (!file) {
        throw Error("failed writing '" + path + "'");
    }
}

lindblad::SuperOp qubit_generator(Model model, double kappa, double theta, double n_mean, double gamma) {
    switch (model) {
    case Model::PhaseFlip:
        return lindblad::build_generator(models::phase_flip_spec({kappa, theta, 0.0}, gamma));
    case Model::Gad:
        return lindblad::build_generator(models::gad_spec({n_mean, kappa, theta}, gamma));
    case Model::Depolarizing:
        return lindblad::build_generator(models::depolarizing_spec(kappa, theta, gamma));
    case Model::GaussianGad:
        break;
    }
    throw UsageError("qubit_generator: " + std::string(to_string(model)) + " is not a qubit model");
}

Table run_sweep(const RunConfig& cfg) {
    cfg.validate();
    struct Point {
        double n, theta, kappa;
    };
    std::vector<Point> points;
    for (double n : cfg.n_means) {
        for (double th : cfg.thetas) {
            for (double k : cfg.kappas) {
                points.push_back({n, th, k});
            }
        }
    }
    est::SolveOptions options;
    if (cfg.horizon) {
        options.horizon = *cfg.horizon / cfg.gamma;
    }
    std::vector<est::EstResult> results(points.size());
    std::vector<std::string> errors(points.size());
    est::parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
        const Point& p = points[i];
        try {
            if (cfg.model == Model::GaussianGad) {
                results[i] = gaussian::gaussian_est({p.n, p.kappa, p.theta, cfg.gamma}, options);
            } else {
                results[i] = est::solve_est(qubit_generator(cfg.model, p.kappa, p.theta, p.n, cfg.gamma),
                                            cfg.gamma, options);
            }
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    Table table;
    table.schema = "entsurv sweep schema v1";
    table.comments.push_back("model=" + std::string(to_string(cfg.model)) + " gamma=" + format_double(cfg.gamma) +
                             " horizon=" +
                             format_double(cfg.horizon.value_or(est::default_horizon(1.0))));
    table.columns = {"model", "N", "theta", "kappa", "status", "T_ent", "tau_ent", "residual",
                     "iterations", "bound_lower", "bound_upper", "error"};
    const bool bounds = cfg.model == Model::PhaseFlip;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& p = points[i];
        std::vector<Cell> row{std::string(to_string(cfg.model)), p.n, p.theta, p.kappa};
        if (!errors[i].empty()) {
            row.insert(row.end(), {std::string("error"), {}, {}, {}, {}, {}, {}, errors[i]});
            table.warnings.push_back("N=" + format_double(p.n) + " theta=" + format_double(p.theta) +
                                     " kappa=" + format_double(p.kappa) + ": " + errors[i]);
        } else {
            const est::EstResult& r = results[i];
            row.push_back(std::string(est::to_string(r.status)));
            if (r.finite()) {
                row.push_back(r.t_rescaled);
                row.push_back(r.t_ent);
            } else {
                row.push_back(std::monostate{});
                row.push_back(std::monostate{});
            }
            row.push_back(r.residual);
            row.push_back(static_cast<long long>(r.iterations));
            if (bounds && std::abs(p.theta - kHalfPi) < 1e-4 && p.kappa >= 0.25) {
                const models::Bounds b = models::pf_bounds(p.kappa);
                row.push_back(b.lower);
                row.push_back(b.upper);
            } else {
                row.push_back(std::monostate{});
                row.push_back(std::monostate{});
            }
            row.push_back(std::monostate{});
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

std::optional<double> closed_form_negativity(const NegativityConfig& cfg, double tau) {
    switch (cfg.model) {
    case Model::PhaseFlip:
        if (std::abs(cfg.theta - kHalfPi) < 1e-12) {
            return models::pf_negativity(cfg.kappa, tau);
        }
        return std::nullopt;
    case Model::Gad:
        if (cfg.kappa == 0.0) {
            return models::gad_negativity(cfg.n_mean, tau);
        }
        return std::nullopt;
    case Model::Depolarizing:
        return models::depolarizing_negativity(tau);
    case Model::GaussianGad:
        break;
    }
    return std::nullopt;
}

} // namespace

Table negativity_table(const NegativityConfig& cfg) {
    if (cfg.model == Model::GaussianGad) {
        throw UsageError("negativity: the gaussian-gad model has no qubit Choi state; use classify-gaussian");
    }
    if (!(cfg.tmax > 0.0) || cfg.points < 2) {
        throw UsageError("negativity: need tmax > 0 and at least two points");
    }
    if (!(cfg.gamma > 0.0)) {
        throw UsageError("negativity: gamma must be positive");
    }
    const lindblad::SuperOp gen = qubit_generator(cfg.model, cfg.kappa, cfg.theta, cfg.n_mean, cfg.gamma);
    const qmat::Propagator propagator(gen.matrix);
    Table table;
    table.schema = "entsurv negativity schema v1";
    table.comments.push_back("model=" + std::string(to_string(cfg.model)) + " kappa=" + format_double(cfg.kappa) +
                             " theta=" + format_double(cfg.theta) + " N=" + format_double(cfg.n_mean) +
                             " gamma=" + format_double(cfg.gamma));
    table.columns = {"tau", "negativity", "negativity_closed_form", "min_pt_eigenvalue"};
    for (double tau : linspace(0.0, cfg.tmax, cfg.points)) {
        const auto rho = entanglement::choi_unchecked(propagator.at(tau / cfg.gamma), gen.dim);
        const entanglement::PptReport report = entanglement::ppt(rho);
        std::vector<Cell> row{tau, report.negativity};
        if (const auto closed = closed_form_negativity(cfg, tau)) {
            row.push_back(*closed);
        } else {
            row.push_back(std::monostate{});
        }
        row.push_back(report.min_eigenvalue);
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table classify_gaussian(const ClassifyConfig& cfg) {
    Table table;
    table.schema = "entsurv classify-gaussian schema v1";
    table.columns = {"tau", "class", "k", "q", "eb", "eb_determinant", "cpt_margin", "warning"};
    auto emit = [&](std::optional<double> tau, const gaussian::GaussianChannel& ch) {
        const gaussian::Classification c = gaussian::classify(ch);
        std::vector<Cell> row;
        row.push_back(tau ? Cell(*tau) : Cell(std::monostate{}));
        row.insert(row.end(), {std::string(gaussian::to_string(c.cls)), c.k, c.q,
                               std::string(gaussian::is_eb(c) ? "true" : "false"),
                               gaussian::eb_determinant(ch), gaussian::cpt_margin(ch)});
        row.push_back(c.warning.empty() ? Cell(std::monostate{}) : Cell(c.warning));
        table.rows.push_back(std::move(row));
    };
    if (cfg.channel) {
        table.comments.push_back("explicit channel");
        emit(std::nullopt, *cfg.channel);
        return table;
    }
    const auto& p = cfg.params;
    gaussian::validate(p);
    if (!(cfg.tmax > 0.0) || cfg.points < 2) {
        throw UsageError("classify-gaussian: need tmax > 0 and at least two points");
    }
    table.comments.push_back("model=gaussian-gad kappa=" + format_double(p.kappa) + " theta=" +
                             format_double(p.theta) + " N=" + format_double(p.n_mean) +
                             " gamma=" + format_double(p.gamma));
    for (double tau : linspace(0.0, cfg.tmax, cfg.points)) {
        emit(tau, gaussian::model_fg(p, tau / p.gamma));
    }
    return table;
}

std::vector<std::string> figure_ids() {
    return {"1", "2a", "2b", "3a", "3b", "3c", "3d", "4a", "4b", "4c", "4d", "5"};
}

namespace {

std::vector<double> range_grid(const figure_defaults::Range& r) {
    return linspace(r.lo, r.hi, r.points);
}

Table figure_sweep(std::string_view id, RunConfig cfg, unsigned workers, std::optional<double> horizon) {
    cfg.workers = workers;
    cfg.horizon = horizon;
    Table table = run_sweep(cfg);
    table.comments.insert(table.comments.begin(),
                          "figure " + std::string(id) + " defaults v" +
                              std::to_string(figure_defaults::kFigureDefaultsVersion));
    return table;
}

} // namespace

Table figure_table(std::string_view id, unsigned workers, std::optional<double> horizon) {
    namespace fd = figure_defaults;
    const std::string defaults_tag = "defaults v" + std::to_string(fd::kFigureDefaultsVersion);
    if (id == "1") {
        Table table;
        table.schema = "entsurv figure-1 schema v1";
        table.comments.push_back("figure 1 " + defaults_tag + ": phase-flip negativity, theta=pi/2");
        table.columns = {"kappa", "tau", "negativity"};
        for (double k : fd::kFig1Kappas) {
            for (double tau : range_grid(fd::kFig1Tau)) {
                table.rows.push_back({k, tau, models::pf_negativity(k, tau)});
            }
        }
        return table;
    }
    if (id == "5") {
        Table table;
        table.schema = "entsurv figure-5 schema v1";
        table.comments.push_back("figure 5 " + defaults_tag + ": gaussian kappa -> infinity asymptote");
        table.columns = {"N", "theta", "T_ent_infinity"};
        const double quarter = 0.7853981633974483;
        for (double n : fd::kFig5N) {
            for (int i = 0; i < fd::kFig5ThetaPoints; ++i) {
                const double theta = quarter * i / fd::kFig5ThetaPoints;
                table.rows.push_back({n, theta, gaussian::gaussian_asymptote(n, theta)});
            }
        }
        return table;
    }
    RunConfig cfg;
    if (id == "2a") {
        cfg.model = Model::PhaseFlip;
        cfg.kappas = range_grid(fd::kFig2aKappa);
        cfg.thetas = {kHalfPi};
    } else if (id == "2b") {
        cfg.model = Model::PhaseFlip;
        cfg.kappas = range_grid(fd::kFig2bKappa);
        cfg.thetas = range_grid(fd::kFig2bTheta);
    } else if (id == "3a") {
        cfg.model = Model::Gad;
        cfg.kappas = range_grid(fd::kFig3aKappa);
        cfg.thetas.assign(fd::kFig3aThetas.begin(), fd::kFig3aThetas.end());
        cfg.n_means = {0.0};
    } else if (id == "3b" || id == "3c" || id == "3d") {
        cfg.model = Model::Gad;
        cfg.kappas = range_grid(fd::kFig3Kappa);
        cfg.thetas = range_grid(fd::kFig3Theta);
        cfg.n_means = {fd::kFig3SurfaceN[static_cast<std::size_t>(id[1] - 'b')]};
    } else if (id == "4a" || id == "4c") {
        cfg.model = Model::GaussianGad;
        cfg.kappas = range_grid(fd::kFig4Kappa);
        cfg.thetas.assign(fd::kFig4Thetas.begin(), fd::kFig4Thetas.end());
        cfg.n_means = {fd::kFig4N[id == "4a" ? 0 : 1]};
    } else if (id == "4b" || id == "4d") {
        cfg.model = Model::GaussianGad;
        cfg.kappas = range_grid(fd::kFig4SurfaceKappa);
        cfg.thetas = range_grid(fd::kFig4SurfaceTheta);
        cfg.n_means = {fd::kFig4N[id == "4b" ? 0 : 1]};
    } else {
        throw UsageError("unknown figure '" + std::string(id) +
                         "' (expected 1, 2a, 2b, 3a, 3b, 3c, 3d, 4a, 4b, 4c, 4d or 5)");
    }
    return figure_sweep(id, cfg, workers, horizon);
}

} // namespace entsurv::run
