#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "statefile.hpp"
#include "support/test_random.hpp"

using namespace entprod;
using namespace entprod::cli;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path tmp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "entprod_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string tmp_file(const std::string& name) {
    return (tmp_dir() / name).string();
}

}  // namespace

TEST_CASE("state files round-trip exactly") {
    std::mt19937 rng(211);
    const SpaceLayout layout({2, 3});
    const DensityOperator rho = testing::random_density(rng, layout);

    StateFile file;
    file.dims = layout.dims();
    file.matrix = rho.matrix();
    file.partition = {{0}, {1}};

    const std::string path = tmp_file("roundtrip.json");
    save_state_file(path, file);
    const StateFile loaded = load_state_file(path);
    CHECK(loaded.dims == file.dims);
    REQUIRE(loaded.partition.has_value());
    CHECK((loaded.matrix - file.matrix).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("partition grammar is strict") {
    CHECK(parse_partition("0,1|2,3", 4).block_count() == 2);
    CHECK(parse_partition("2|0|1", 3).block_count() == 3);
    CHECK_THROWS_AS(parse_partition("", 2), ValidationError);
    CHECK_THROWS_AS(parse_partition("0, 1|2", 3), ValidationError);
    CHECK_THROWS_AS(parse_partition("0|", 2), ValidationError);
    CHECK_THROWS_AS(parse_partition("0||1", 2), ValidationError);
    CHECK_THROWS_AS(parse_partition("0|0", 2), ValidationError);
    CHECK_THROWS_AS(parse_partition("0|2", 2), ValidationError);
    CHECK_THROWS_AS(parse_partition("a|b", 2), ValidationError);
}

TEST_CASE("measure command on a Bell state file") {
    const std::string state_path = tmp_file("bell.json");
    const RunResult gen =
        run({"states", "--kind", "bell", "--out", state_path});
    REQUIRE(gen.code == 0);

    const RunResult res =
        run({"measure", state_path, "--partition", "0|1"});
    REQUIRE(res.code == 0);
    const auto j = nlohmann::json::parse(res.out);
    CHECK(j["epsilon"].get<double>() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(j["log_base"] == "e");
    CHECK(j["validation"]["hermitian"].get<bool>());
    CHECK(j["validation"]["trace"].get<bool>());
    CHECK(j["validation"]["psd"].get<bool>());
    CHECK(j["per_block_norms"].size() == 2);

    // partition stored in the file works without the flag
    const RunResult res2 = run({"measure", state_path});
    CHECK(res2.code == 0);

    // base-2 output
    const RunResult res3 =
        run({"--log-base", "2", "measure", state_path, "--partition", "0|1"});
    const auto j3 = nlohmann::json::parse(res3.out);
    CHECK(j3["epsilon"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(j3["log_base"] == "2");
}

TEST_CASE("measure command error paths") {
    // product state: epsilon 0
    StateFile product;
    product.dims = {2, 2};
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1.0;
    product.matrix = m;
    const std::string product_path = tmp_file("product.json");
    save_state_file(product_path, product);
    const RunResult ok =
        run({"measure", product_path, "--partition", "0|1"});
    REQUIRE(ok.code == 0);
    CHECK(std::abs(nlohmann::json::parse(ok.out)["epsilon"].get<double>()) <
          1e-10);

    // no partition anywhere -> validation failure
    CHECK(run({"measure", product_path}).code == 2);

    // zero-trace matrix -> numeric failure with a clear message
    StateFile traceless = product;
    traceless.matrix = Matrix::Zero(4, 4);
    traceless.matrix(0, 1) = 1.0;
    const std::string traceless_path = tmp_file("traceless.json");
    save_state_file(traceless_path, traceless);
    const RunResult zero =
        run({"measure", traceless_path, "--partition", "0|1"});
    CHECK(zero.code == 3);
    CHECK(zero.err.find("zero trace") != std::string::npos);

    // unreadable path and malformed JSON -> validation failures
    CHECK(run({"measure", tmp_file("missing.json"), "--partition", "0|1"})
              .code == 2);
    const std::string garbage_path = tmp_file("garbage.json");
    std::ofstream(garbage_path) << "not json";
    CHECK(run({"measure", garbage_path, "--partition", "0|1"}).code == 2);

    // bad flags -> parse error is a validation failure
    CHECK(run({"measure"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
}

TEST_CASE("states command closed-form reports") {
    const RunResult ghz = run({"states", "--kind", "ghz", "--n", "4", "--out",
                               tmp_file("ghz.json")});
    REQUIRE(ghz.code == 0);
    CHECK(nlohmann::json::parse(ghz.out)["epsilon"].get<double>() ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

    const RunResult cat = run({"states", "--kind", "multicat", "--n", "3",
                               "--coeffs", "1,0", "--out",
                               tmp_file("cat.json")});
    REQUIRE(cat.code == 0);
    CHECK(std::abs(nlohmann::json::parse(cat.out)["epsilon"].get<double>()) <
          1e-12);

    const RunResult sep = run({"states", "--kind", "separable", "--n", "2",
                               "--weights", "0.5,0.5", "--out",
                               tmp_file("sep.json")});
    REQUIRE(sep.code == 0);
    CHECK(nlohmann::json::parse(sep.out)["epsilon"].get<double>() ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));

    // complex coefficients with a phase
    const RunResult mm = run({"states", "--kind", "multimode", "--n", "2",
                              "--coeffs", "0.5:0.5,0:0.70710678118654752",
                              "--out", tmp_file("mm.json")});
    CHECK(mm.code == 0);

    // invalid normalization is a validation failure
    CHECK(run({"states", "--kind", "multicat", "--n", "3", "--coeffs", "1,1",
               "--out", tmp_file("bad.json")})
              .code == 2);
    CHECK(run({"states", "--kind", "separable", "--n", "2", "--weights",
               "0.7,0.7", "--out", tmp_file("bad.json")})
              .code == 2);

    // generated state files measure back to the same value
    const RunResult check =
        run({"measure", tmp_file("ghz.json")});
    REQUIRE(check.code == 0);
    CHECK(nlohmann::json::parse(check.out)["epsilon"].get<double>() ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("gibbs2q command output") {
    const RunResult cell = run({"gibbs2q", "--coupling", "ferro", "--t-range",
                                "1:1:1", "--h-range", "0:0:1"});
    REQUIRE(cell.code == 0);
    std::istringstream lines(cell.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "T,h,epsilon");
    CHECK(row.substr(0, 4) == "1,0,");
    CHECK(std::stod(row.substr(4)) ==
          doctest::Approx(0.0967759082832360).epsilon(1e-10));

    // byte-stable across runs
    const RunResult again = run({"gibbs2q", "--coupling", "ferro", "--t-range",
                                 "1:1:1", "--h-range", "0:0:1"});
    CHECK(again.out == cell.out);

    // asymptotic columns appear on demand
    const RunResult asym =
        run({"gibbs2q", "--coupling", "antiferro", "--t-range", "0.5:1:2",
             "--h-range", "0:1:2", "--asymptotics"});
    REQUIRE(asym.code == 0);
    std::istringstream asym_lines(asym.out);
    std::getline(asym_lines, header);
    CHECK(header ==
          "T,h,epsilon,epsilon_low_T,epsilon_small_h,epsilon_high_T,"
          "epsilon_large_h");

    // range validation
    CHECK(run({"gibbs2q", "--coupling", "ferro", "--t-range", "0:1:5",
               "--h-range", "0:1:5"})
              .code == 2);
    CHECK(run({"gibbs2q", "--coupling", "ferro", "--t-range", "nonsense",
               "--h-range", "0:1:5"})
              .code == 2);
}

namespace {

std::string write_decohere_spec(bool diagonal, double gamma) {
    std::mt19937 rng(diagonal ? 401 : 402);
    nlohmann::json j;
    j["dim_a"] = 2;
    j["dim_b"] = 2;
    j["energies"] = {{0.3, 1.1}, {-0.4, 0.9}};

    Matrix rho;
    if (diagonal) {
        rho = Matrix::Zero(4, 4);
        rho(0, 0) = 0.4;
        rho(1, 1) = 0.3;
        rho(2, 2) = 0.2;
        rho(3, 3) = 0.1;
    } else {
        rho = testing::random_density_matrix(rng, 4);
    }
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json re_row = nlohmann::json::array(),
                       im_row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) {
            re_row.push_back(rho(r, c).real());
            im_row.push_back(rho(r, c).imag());
        }
        re.push_back(re_row);
        im.push_back(im_row);
    }
    j["rho0_re"] = re;
    j["rho0_im"] = im;
    if (gamma > 0.0) j["gamma"] = gamma;

    const std::string path =
        tmp_file(diagonal ? "deco_diag.json" : "deco_generic.json");
    std::ofstream(path) << j.dump();
    return path;
}

}  // namespace

TEST_CASE("decohere command trajectories") {
    // diagonal initial state: flat trajectory
    const std::string diag_path = write_decohere_spec(true, 0.0);
    const RunResult flat = run({"decohere", "--spec", diag_path, "--t-max",
                                "5", "--steps", "6"});
    REQUIRE(flat.code == 0);
    std::istringstream lines(flat.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,epsilon");
    double first = 0.0;
    int rows = 0;
    while (std::getline(lines, line) && line[0] != '#') {
        const auto comma = line.find(',');
        const double eps = std::stod(line.substr(comma + 1));
        if (rows == 0) first = eps;
        CHECK(eps == doctest::Approx(first).epsilon(1e-10));
        ++rows;
    }
    CHECK(rows == 6);
    CHECK(line.find("# eps0=") == 0);

    // generic state: the final comment line reports eps_inf >= eps0
    const std::string generic_path = write_decohere_spec(false, 0.7);
    const RunResult generic = run({"decohere", "--spec", generic_path,
                                   "--t-max", "40", "--steps", "81", "--mode",
                                   "lorentz"});
    REQUIRE(generic.code == 0);
    std::istringstream glines(generic.out);
    std::string last_data, footer, cur;
    std::getline(glines, cur);  // header
    while (std::getline(glines, cur)) {
        if (cur.rfind("# eps0=", 0) == 0)
            footer = cur;
        else
            last_data = cur;
    }
    const auto eps0_pos = footer.find("eps0=") + 5;
    const auto inf_pos = footer.find("eps_inf=") + 8;
    const double eps0 = std::stod(footer.substr(eps0_pos));
    const double eps_inf = std::stod(footer.substr(inf_pos));
    CHECK(eps_inf >= eps0 - 1e-12);
    // the damped trajectory has converged by t = 40
    const double trailing = std::stod(last_data.substr(last_data.find(',') + 1));
    CHECK(std::abs(trailing - eps_inf) < 1e-6);

    // lorentz mode without widths is a validation failure
    const std::string no_gamma = write_decohere_spec(false, 0.0);
    CHECK(run({"decohere", "--spec", no_gamma, "--t-max", "1", "--steps", "2",
               "--mode", "lorentz"})
              .code == 2);

    // malformed spec file
    const std::string bad = tmp_file("bad_spec.json");
    std::ofstream(bad) << "{\"dim_a\": 2}";
    CHECK(run({"decohere", "--spec", bad, "--t-max", "1", "--steps", "2"})
              .code == 2);
}

TEST_CASE("spinor commands") {
    const RunResult table = run({"spinor", "spin-spatial", "--n", "10"});
    REQUIRE(table.code == 0);
    std::istringstream lines(table.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "N,S,epsilon_spin_spatial");
    const long expected_f[] = {42, 90, 75, 35, 9, 1};
    for (int s = 0; s <= 5; ++s) {
        REQUIRE(std::getline(lines, line));
        std::istringstream row(line);
        std::string n_str, s_str, eps_str;
        std::getline(row, n_str, ',');
        std::getline(row, s_str, ',');
        std::getline(row, eps_str, ',');
        CHECK(n_str == "10");
        CHECK(s_str == std::to_string(s));
        CHECK(std::stod(eps_str) ==
              doctest::Approx(std::log(static_cast<double>(expected_f[s])))
                  .epsilon(1e-10));
    }

    const RunResult maximal = run({"spinor", "particle", "--n", "10", "--s",
                                   "5", "--sz", "0", "--iz", "0"});
    REQUIRE(maximal.code == 0);
    std::istringstream mlines(maximal.out);
    std::getline(mlines, line);
    CHECK(line == "N,S,Sz,Iz,epsilon_particle");
    std::getline(mlines, line);
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) ==
          doctest::Approx(10.0 * std::log(2.0)).epsilon(1e-12));

    // oracle cross-check column
    const RunResult oracle = run({"spinor", "particle", "--n", "4", "--s", "1",
                                  "--sz", "1", "--iz", "0", "--oracle"});
    REQUIRE(oracle.code == 0);
    std::istringstream olines(oracle.out);
    std::getline(olines, line);
    CHECK(line == "N,S,Sz,Iz,epsilon_particle,oracle_epsilon");
    std::getline(olines, line);
    const auto last = line.rfind(',');
    const auto second_last = line.rfind(',', last - 1);
    const double formula = std::stod(line.substr(second_last + 1, last - second_last - 1));
    const double oracle_eps = std::stod(line.substr(last + 1));
    CHECK(formula == doctest::Approx(2.3263016196113617).epsilon(1e-10));
    CHECK(std::abs(formula - oracle_eps) <= 1e-9);

    // half-integer table for odd N
    const RunResult odd = run({"spinor", "particle", "--n", "3", "--table"});
    REQUIRE(odd.code == 0);
    CHECK(odd.out.find("3,0.5,-0.5,-0.5,") != std::string::npos);

    // invalid quantum numbers and oracle bounds
    CHECK(run({"spinor", "particle", "--n", "4", "--s", "0.5", "--sz", "0.5",
               "--iz", "0.5"})
              .code == 2);
    CHECK(run({"spinor", "particle", "--n", "8", "--s", "1", "--sz", "0",
               "--iz", "0", "--oracle"})
              .code == 2);
    CHECK(run({"spinor", "spin-spatial", "--n", "0"}).code == 2);
}

TEST_CASE("CSV outputs are byte-stable") {
    const std::vector<std::string> cmd = {"spinor", "spin-spatial", "--n", "12"};
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    CHECK(a.out == b.out);

    const std::vector<std::string> sweep_cmd = {
        "gibbs2q", "--coupling", "antiferro",
        "--t-range", "0.1:10:7", "--h-range", "0:3:5", "--asymptotics"};
    CHECK(run(sweep_cmd).out == run(sweep_cmd).out);
}
