#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "entsurv/errors.hpp"
#include "entsurv/run.hpp"

using namespace entsurv;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::size_t column(const run::Table& t, const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    REQUIRE(it != t.columns.end());
    return static_cast<std::size_t>(it - t.columns.begin());
}

double number(const run::Cell& c) {
    REQUIRE(std::holds_alternative<double>(c));
    return std::get<double>(c);
}

} // namespace

TEST_CASE("parse_grid") {
    const auto r = run::parse_grid("0:5:11");
    REQUIRE(r.size() == 11);
    CHECK(r.front() == 0.0);
    CHECK(r.back() == 5.0);
    CHECK(r[3] == doctest::Approx(1.5));
    CHECK(run::parse_grid("0.5") == std::vector<double>{0.5});
    CHECK(run::parse_grid(" 1, 2.5 ,4") == std::vector<double>{1.0, 2.5, 4.0});
    CHECK(run::parse_grid("2:2:1") == std::vector<double>{2.0});
    for (const char* bad : {"", "a", "1:2", "1:2:0", "1:2:x", "3:1:5", "1,,2", "nan", "1:2:3:4"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(run::parse_grid(bad), UsageError);
    }
    CHECK(run::linspace(0.0, 1.0, 5) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}

TEST_CASE("model and format names") {
    for (const char* name : {"phase-flip", "gad", "depolarizing", "gaussian-gad"}) {
        CHECK(run::to_string(run::parse_model(name)) == name);
    }
    CHECK_THROWS_AS(run::parse_model("bitflip"), UsageError);
    CHECK(run::parse_format("json") == run::Format::Json);
    CHECK_THROWS_AS(run::parse_format("xml"), UsageError);
}

TEST_CASE("config validation") {
    run::RunConfig cfg;
    cfg.kappas = {0.0, 1.0};
    CHECK_NOTHROW(cfg.validate());
    cfg.kappas = {};
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.kappas = {1.0, 0.5};
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.kappas = {-1.0};
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.kappas = {1.0};
    cfg.gamma = 0.0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.gamma = 1.0;
    cfg.horizon = -2.0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.horizon.reset();
    cfg.n_means = {};
    CHECK_THROWS_AS(run::run_sweep(cfg), UsageError);
}

TEST_CASE("depolarizing sweep") {
    run::RunConfig cfg;
    cfg.model = run::Model::Depolarizing;
    cfg.kappas = run::parse_grid("0:5:11");
    const auto t = run::run_sweep(cfg);
    REQUIRE(t.rows.size() == 11);
    const auto col = column(t, "T_ent");
    for (const auto& row : t.rows) {
        CHECK(std::get<std::string>(row[column(t, "status")]) == "finite");
        CHECK(std::abs(number(row[col]) - std::log(3.0)) < 1e-8);
    }
    const auto csv = lines_of(run::to_csv(t));
    CHECK(csv[0] == "# entsurv sweep schema v1");
    CHECK(csv[1].rfind("# ", 0) == 0);
    CHECK(csv[2] == "model,N,theta,kappa,status,T_ent,tau_ent,residual,iterations,bound_lower,bound_upper,error");
    REQUIRE(csv.size() == 3 + 11);
    const auto cells = split(csv[3]);
    CHECK(cells.size() == 12);
    CHECK(cells[0] == "depolarizing");
    CHECK(cells[5] == "1.09861228867");
}

TEST_CASE("phase flip sweep carries bounds and divergent rows") {
    run::RunConfig cfg;
    cfg.model = run::Model::PhaseFlip;
    cfg.kappas = {0.0, 0.1, 0.3, 1.0};
    cfg.thetas = {1.5708};
    const auto t = run::run_sweep(cfg);
    REQUIRE(t.rows.size() == 4);
    CHECK(std::get<std::string>(t.rows[0][column(t, "status")]) == "divergent");
    CHECK(std::holds_alternative<std::monostate>(t.rows[0][column(t, "T_ent")]));
    CHECK(std::holds_alternative<std::monostate>(t.rows[1][column(t, "bound_lower")]));
    for (std::size_t i : {2u, 3u}) {
        const double v = number(t.rows[i][column(t, "T_ent")]);
        CHECK(v >= number(t.rows[i][column(t, "bound_lower")]) - 1e-9);
        CHECK(v <= number(t.rows[i][column(t, "bound_upper")]) + 1e-9);
    }
    // Divergent rows leave the value field empty in CSV and null in JSON.
    const auto csv = lines_of(run::to_csv(t));
    CHECK(split(csv[3])[5].empty());
    const auto doc = nlohmann::json::parse(run::to_json(t));
    CHECK(doc["rows"][0]["T_ent"].is_null());
    CHECK(doc["rows"][0]["status"] == "divergent");
    CHECK(doc["schema"] == "entsurv sweep schema v1");
    CHECK(doc["columns"].size() == 12);
}

TEST_CASE("sweep output is deterministic and independent of the worker count") {
    run::RunConfig cfg;
    cfg.model = run::Model::Gad;
    cfg.kappas = run::parse_grid("0:2:7");
    cfg.thetas = {0.4, 1.2};
    cfg.n_means = {0.0, 1.0};
    const std::string serial = run::to_csv(run::run_sweep(cfg));
    CHECK(serial == run::to_csv(run::run_sweep(cfg)));
    cfg.workers = 4;
    const auto parallel = run::run_sweep(cfg);
    CHECK(serial == run::to_csv(parallel));
    // kappa varies fastest, then theta, then N.
    CHECK(number(parallel.rows[1][column(parallel, "kappa")]) > number(parallel.rows[0][column(parallel, "kappa")]));
    CHECK(number(parallel.rows[7][column(parallel, "theta")]) == 1.2);
    CHECK(number(parallel.rows[14][column(parallel, "N")]) == 1.0);
    cfg.format = run::Format::Json;
    CHECK(run::to_json(run::run_sweep(cfg)) == run::to_json(parallel));
}

TEST_CASE("write_output") {
    run::Table t;
    t.schema = "test schema v1";
    t.columns = {"a", "b"};
    t.rows = {{1.0, std::string("x,y")}, {std::monostate{}, static_cast<long long>(3)}};
    const auto path = std::filesystem::temp_directory_path() / "entsurv_write_output_test.csv";
    run::write_output(t, run::Format::Csv, path.string());
    std::ifstream in(path, std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == "# test schema v1\na,b\n1,\"x,y\"\n,3\n");
    CHECK(text.find('\r') == std::string::npos);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(run::write_output(t, run::Format::Csv, "/nonexistent-dir/x.csv"), Error);
}

TEST_CASE("negativity table") {
    run::NegativityConfig cfg;
    cfg.model = run::Model::Gad;
    cfg.n_mean = 1.0;
    cfg.kappa = 0.0;
    cfg.tmax = 5.0;
    cfg.points = 200;
    const auto t = run::negativity_table(cfg);
    REQUIRE(t.rows.size() == 200);
    for (const auto& row : t.rows) {
        CHECK(std::abs(number(row[1]) - number(row[2])) < 1e-9);
    }
    cfg.model = run::Model::PhaseFlip;
    cfg.kappa = 0.5;
    cfg.theta = 0.7;
    const auto general = run::negativity_table(cfg);
    CHECK(std::holds_alternative<std::monostate>(general.rows[5][2]));
    cfg.model = run::Model::GaussianGad;
    CHECK_THROWS_AS(run::negativity_table(cfg), UsageError);
    cfg.model = run::Model::Depolarizing;
    cfg.points = 1;
    CHECK_THROWS_AS(run::negativity_table(cfg), UsageError);
}

TEST_CASE("classify-gaussian table") {
    run::ClassifyConfig cfg;
    cfg.params.n_mean = 1.0;
    cfg.params.kappa = 0.5;
    cfg.params.theta = 0.3;
    const auto t = run::classify_gaussian(cfg);
    REQUIRE(t.rows.size() == 31);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        CHECK(std::get<std::string>(t.rows[i][column(t, "class")]) == "C");
    }
    gaussian::GaussianChannel ch;
    ch.f << 0.5, 0.0, 0.0, -0.5;
    ch.g = gaussian::Matrix2::Identity();
    cfg.channel = ch;
    const auto single = run::classify_gaussian(cfg);
    REQUIRE(single.rows.size() == 1);
    CHECK(std::get<std::string>(single.rows[0][column(single, "class")]) == "D");
    CHECK(std::get<std::string>(single.rows[0][column(single, "eb")]) == "true");
}

TEST_CASE("figure data") {
    CHECK(run::figure_ids().size() == 12);
    CHECK_THROWS_AS(run::figure_table("6"), UsageError);
    const auto f1 = run::figure_table("1");
    CHECK(f1.columns == std::vector<std::string>{"kappa", "tau", "negativity"});
    CHECK(f1.rows.size() == 4 * 201);
    const auto f5 = run::figure_table("5");
    CHECK(f5.rows.size() == 200);
    for (const auto& row : f5.rows) {
        CHECK(std::isfinite(number(row[2])));
    }
    const auto f2a = run::figure_table("2a", 4);
    CHECK(f2a.comments.front() == "figure 2a defaults v1");
    for (const auto& row : f2a.rows) {
        CHECK(std::get<std::string>(row[column(f2a, "status")]) == "finite");
    }
}
