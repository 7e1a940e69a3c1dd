// est - entanglement survival time sweeps, negativity tables and figure data

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entsurv/errors.hpp"
#include "entsurv/run.hpp"

namespace {

using namespace entsurv;

constexpr int kUsageExit = 2;

struct Common {
    std::string format = "csv";
    std::string out;
    unsigned workers = 1;
    std::optional<double> horizon;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out, "output file, stdout when omitted");
    cmd->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", c.horizon, "search horizon in units of 1/gamma (default 50 or EST_HORIZON)");
}

std::vector<double> parse_list(const std::string& text) {
    return run::parse_grid(text);
}

double parse_single(const std::string& text, const char* name) {
    const auto values = run::parse_grid(text);
    if (values.size() != 1) {
        throw UsageError(std::string(name) + " takes a single value here");
    }
    return values.front();
}

void report_warnings(const run::Table& table) {
    for (const auto& w : table.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement survival time of Markovian qubit and Gaussian dynamics"};
    app.require_subcommand(1);

    Common common;
    std::string model = "phase-flip";
    std::string kappa = "0";
    std::string theta = "1.5707963267948966";
    std::string n_mean = "0";
    double gamma = 1.0;
    double tmax = 5.0;
    int points = 200;

    auto* sweep = app.add_subcommand("sweep", "survival time over a parameter grid");
    sweep->add_option("--model", model, "phase-flip, gad, depolarizing or gaussian-gad")->required();
    sweep->add_option("--kappa", kappa, "start:stop:count or a comma list")->required();
    sweep->add_option("--theta", theta, "theta grid (comma list or range)");
    sweep->add_option("--N", n_mean, "mean thermal photon number grid");
    sweep->add_option("--gamma", gamma, "damping rate");
    add_common(sweep, common);

    auto* neg = app.add_subcommand("negativity", "negativity of the Choi state over time");
    neg->add_option("--model", model, "phase-flip, gad or depolarizing")->required();
    neg->add_option("--kappa", kappa, "driving/damping ratio");
    neg->add_option("--theta", theta, "driving angle");
    neg->add_option("--N", n_mean, "mean thermal photon number");
    neg->add_option("--gamma", gamma, "damping rate");
    neg->add_option("--tmax", tmax, "largest rescaled time gamma t");
    neg->add_option("--points", points, "number of time points");
    add_common(neg, common);

    std::string figure_id;
    auto* fig = app.add_subcommand("figure", "regenerate the data behind one figure panel");
    fig->add_option("id", figure_id, "1, 2a, 2b, 3a-3d, 4a-4d or 5")->required();
    add_common(fig, common);

    std::vector<double> f_entries;
    std::vector<double> g_entries;
    double class_tmax = 3.0;
    int class_points = 31;
    auto* cls = app.add_subcommand("classify-gaussian", "normal form and EB verdict of Gaussian channels");
    cls->add_option("--kappa", kappa, "driving/damping ratio");
    cls->add_option("--theta", theta, "squeezing angle");
    cls->add_option("--N", n_mean, "mean thermal photon number");
    cls->add_option("--gamma", gamma, "damping rate");
    cls->add_option("--tmax", class_tmax, "largest rescaled time gamma t");
    cls->add_option("--points", class_points, "number of time points");
    auto* f_opt = cls->add_option("--f", f_entries, "explicit F, four entries row-major")->expected(4)->delimiter(',');
    auto* g_opt = cls->add_option("--g", g_entries, "explicit G, four entries row-major")->expected(4)->delimiter(',');
    f_opt->needs(g_opt);
    g_opt->needs(f_opt);
    add_common(cls, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageExit;
    }

    try {
        const run::Format format = run::parse_format(common.format);
        run::Table table;
        if (*sweep) {
            run::RunConfig cfg;
            cfg.model = run::parse_model(model);
            cfg.kappas = parse_list(kappa);
            cfg.thetas = parse_list(theta);
            cfg.n_means = parse_list(n_mean);
            cfg.gamma = gamma;
            cfg.horizon = common.horizon;
            cfg.format = format;
            cfg.out_path = common.out;
            cfg.workers = common.workers;
            table = run::run_sweep(cfg);
        } else if (*neg) {
            run::NegativityConfig cfg;
            cfg.model = run::parse_model(model);
            cfg.kappa = parse_single(kappa, "--kappa");
            cfg.theta = parse_single(theta, "--theta");
            cfg.n_mean = parse_single(n_mean, "--N");
            cfg.gamma = gamma;
            cfg.tmax = tmax;
            cfg.points = points;
            table = run::negativity_table(cfg);
        } else if (*fig) {
            table = run::figure_table(figure_id, common.workers, common.horizon);
        } else if (*cls) {
            run::ClassifyConfig cfg;
            cfg.params.kappa = parse_single(kappa, "--kappa");
            cfg.params.theta = parse_single(theta, "--theta");
            cfg.params.n_mean = parse_single(n_mean, "--N");
            cfg.params.gamma = gamma;
            cfg.tmax = class_tmax;
            cfg.points = class_points;
            if (!f_entries.empty()) {
                gaussian::GaussianChannel ch;
                ch.f << f_entries[0], f_entries[1], f_entries[2], f_entries[3];
                ch.g << g_entries[0], g_entries[1], g_entries[2], g_entries[3];
                cfg.channel = ch;
            }
            table = run::classify_gaussian(cfg);
        }
        run::write_output(table, format, common.out);
        report_warnings(table);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const ContractError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
