// run.hpp - sweeps, negativity tables and figure data behind the est CLI

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entsurv/est.hpp"
#include "entsurv/gaussian.hpp"

namespace entsurv::run {

enum class Model { PhaseFlip, Gad, Depolarizing, GaussianGad };
enum class Format { Csv, Json };

Model parse_model(std::string_view name);
std::string_view to_string(Model model);
Format parse_format(std::string_view name);

/// "a:b:n" (n evenly spaced points, both ends included) or a comma list.
/// Throws UsageError on malformed input.
std::vector<double> parse_grid(std::string_view text);
std::vector<double> linspace(double lo, double hi, int points);

struct RunConfig {
    Model model = Model::PhaseFlip;
    std::vector<double> kappas;
    std::vector<double> thetas{1.5707963267948966};
    std::vector<double> n_means{0.0};
    double gamma = 1.0;
    std::optional<double> horizon; // rescaled units (gamma t); empty means the default
    std::string out_path;          // empty or "-" writes to stdout
    Format format = Format::Csv;
    unsigned workers = 1;

    // Throws UsageError for empty / non-finite / unsorted grids, gamma <= 0
    // or horizon <= 0.
    void validate() const;
};

// Empty cell, number, or text.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::string schema; // name and version, written into the header comment
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> warnings; // row-level failures, not part of the file
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string render(const Table& table, Format format);
// Writes to path, or stdout for "" / "-".
void write_output(const Table& table, Format format, const std::string& path);

// Qubit generator of a model at (kappa, theta, N).
lindblad::SuperOp qubit_generator(Model model, double kappa, double theta, double n_mean, double gamma);

// One row per (N, theta, kappa), kappa varying fastest.
Table run_sweep(const RunConfig& cfg);

struct NegativityConfig {
    Model model = Model::PhaseFlip;
    double kappa = 0.0;
    double theta = 1.5707963267948966;
    double n_mean = 0.0;
    double gamma = 1.0;
    double tmax = 5.0; // rescaled
    int points = 200;
};

// Numeric negativity on [0, tmax], next to the closed form where one exists.
Table negativity_table(const NegativityConfig& cfg);

struct ClassifyConfig {
    gaussian::GaussianModelParams params;
    double tmax = 3.0;
    int points = 31;
    std::optional<gaussian::GaussianChannel> channel; // classify this instead of the model
};

Table classify_gaussian(const ClassifyConfig& cfg);

std::vector<std::string> figure_ids();
/// Data for one figure panel. Throws UsageError for an unknown id.
Table figure_table(std::string_view id, unsigned workers = 1, std::optional<double> horizon = {});

} // namespace entsurv::run
