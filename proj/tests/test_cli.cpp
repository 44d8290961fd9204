#include "entclone/cli.hpp"

#include "entclone/formulas.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace entclone;
using namespace entclone::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_args(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = main_with_args(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto& row = rows.emplace_back();
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) row.push_back(f);
    if (!line.empty() && line.back() == ',') row.emplace_back();
  }
  return rows;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(format_display, rounds_half_to_even) {
  EXPECT_EQ(format_display(0.71712927), "0.7171");
  EXPECT_EQ(format_display(0.7), "0.7000");
  EXPECT_EQ(format_display(0.5, 0), "0");
  EXPECT_EQ(format_display(1.5, 0), "2");
  EXPECT_EQ(format_display(2.5, 0), "2");
}

TEST(format_full, round_trips) {
  for (double x : {optimal_fidelity(3), 1.0 / 3.0, 0.5, -0.0889831963046883}) {
    EXPECT_EQ(std::stod(format_full(x)), x);
  }
  EXPECT_GE(format_full(1.0 / 3.0).size(), 17u);
}

TEST(cmd_table, golden_text) {
  const Result r = run_args({"table", "--d-min", "2", "--d-max", "6", "--format", "text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, read_file(std::filesystem::path(ENTCLONE_GOLDEN_DIR) / "table_d2_6.txt"));
}

TEST(cmd_table, rows_display_values) {
  RunConfig cfg = resolve({.command = Command::table});
  const Table t = cmd_table(cfg);
  ASSERT_EQ(t.rows.size(), 5u);
  auto shown = [&](std::size_t row) {
    std::vector<std::string> v;
    for (std::size_t c = 1; c < 5; ++c) v.push_back(format_display(std::get<double>(t.rows[row][c])));
    return v;
  };
  EXPECT_EQ(shown(0), (std::vector<std::string>{"0.7171", "0.7171", "0.7000", "0.5833"}));
  EXPECT_EQ(shown(3), (std::vector<std::string>{"0.5398", "0.5386", "0.5385", "0.3667"}));
  EXPECT_EQ(shown(4), (std::vector<std::string>{"0.5277", "0.5271", "0.5270", "0.3452"}));
}

TEST(cmd_table, csv_and_json_agree_at_full_precision) {
  const Result csv = run_args({"table", "--d-min", "2", "--d-max", "9"});
  const Result json = run_args({"table", "--d-min", "2", "--d-max", "9", "--format", "json"});
  ASSERT_EQ(csv.code, 0);
  ASSERT_EQ(json.code, 0);
  const auto rows = parse_csv(csv.out);
  ASSERT_EQ(rows.front(), (std::vector<std::string>{"d", "F_r", "F", "F_u", "F_loc"}));
  EXPECT_EQ(csv.out.back(), '\n');
  const auto doc = nlohmann::json::parse(json.out);
  EXPECT_EQ(doc["command"], "table");
  EXPECT_EQ(doc["config"]["d_min"], 2);
  ASSERT_EQ(doc["rows"].size(), rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& obj = doc["rows"][r - 1];
    EXPECT_EQ(std::stoi(rows[r][0]), obj["d"].get<int>());
    for (std::size_t c = 1; c < rows.front().size(); ++c) {
      EXPECT_EQ(std::stod(rows[r][c]), obj[rows.front()[c]].get<double>());
    }
  }
}

TEST(cmd_optimal, reports_normalized_solution_and_transcription) {
  const Table t = cmd_optimal(resolve({.command = Command::optimal, .d_min = 2, .d_max = 2}));
  ASSERT_EQ(t.rows.size(), 1u);
  auto col = [&](const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    return std::get<double>(t.rows[0][it - t.columns.begin()]);
  };
  EXPECT_NEAR(col("normalization"), 1.0, 1e-12);
  EXPECT_NEAR(col("F_coeffs"), col("F"), 1e-12);
  EXPECT_NEAR(col("normalization_printed"), 0.6999, 1e-4);
}

TEST(cmd_eof_curve, grid_and_markers) {
  const Table t = cmd_eof_curve(resolve({.command = Command::eof_curve, .d_min = 2, .d_max = 7, .grid = 5}));
  ASSERT_EQ(t.columns, (std::vector<std::string>{"d", "F", "E_F", "branch", "marker"}));
  ASSERT_EQ(t.rows.size(), 6u * 7u);
  // d = 2: last grid point is F = 1.
  EXPECT_EQ(std::get<double>(t.rows[4][1]), 1.0);
  EXPECT_NEAR(std::get<double>(t.rows[4][2]), 1.0, 1e-15);
  // d = 3, grid point k = 1 is F = 1/9 + 2/9 = 1/3.
  const auto& third = t.rows[7 + 1];
  EXPECT_EQ(std::get<std::int64_t>(third[0]), 3);
  EXPECT_NEAR(std::get<double>(third[1]), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::get<double>(third[2]), 0.0, 1e-12);
  // d = 7 circle marker sits on the linear branch.
  const auto& circle = t.rows[5 * 7 + 5];
  EXPECT_EQ(std::get<std::int64_t>(circle[0]), 7);
  EXPECT_EQ(std::get<std::string>(circle[4]), "circle");
  EXPECT_NEAR(std::get<double>(circle[1]), 0.5200, 5e-5);
  EXPECT_EQ(std::get<std::string>(circle[3]), "linear");
  EXPECT_EQ(std::get<std::string>(t.rows[5 * 7 + 6][4]), "cross");
}

TEST(cmd_eof_curve, exact_zero_at_one_over_d) {
  EXPECT_EQ(eof_isotropic({3, 1.0 / 3.0}).branch, EofBranch::zero);
  EXPECT_EQ(eof_isotropic({3, 1.0 / 3.0}).eof, 0.0);
}

TEST(cmd_clone_curve, halving_and_local_branch_flip) {
  const Table t = cmd_clone_curve(resolve({.command = Command::clone_curve}));
  ASSERT_EQ(t.rows.size(), 199u);
  for (const auto& row : t.rows) {
    EXPECT_LT(std::get<double>(row[2]), std::get<double>(row[4]));
    EXPECT_DOUBLE_EQ(std::get<double>(row[4]), std::get<double>(row[1]) / 2.0);
    EXPECT_DOUBLE_EQ(std::get<double>(row[5]), std::get<double>(row[1]) / 4.0);
  }
  const auto& d200 = t.rows.back();
  const double e_in = std::get<double>(d200[1]);
  EXPECT_GT(std::get<double>(d200[2]) / e_in, 0.45);
  EXPECT_LT(std::get<double>(d200[2]) / e_in, 0.50);
  EXPECT_GT(std::get<double>(d200[3]) / e_in, 0.20);
  EXPECT_LT(std::get<double>(d200[3]) / e_in, 0.25);
  EXPECT_EQ(std::get<std::string>(t.rows[12 - 2][7]), "middle");
  EXPECT_EQ(std::get<std::string>(t.rows[13 - 2][7]), "linear");
  EXPECT_EQ(std::get<std::string>(t.rows[6 - 2][6]), "middle");
  EXPECT_EQ(std::get<std::string>(t.rows[7 - 2][6]), "linear");
}

TEST(cmd_verify, default_run_passes) {
  const Result r = run_args({"verify", "--format", "json", "--trials", "30"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("d=4: all checks pass"), std::string::npos);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["rows"].size(), 3u);
  for (const auto& row : doc["rows"]) EXPECT_TRUE(row["pass"].get<bool>());
}

TEST(cmd_verify, seed_repetition_is_byte_identical) {
  const Result a = run_args({"verify", "--d", "3", "--format", "json", "--seed", "17", "--trials", "20"});
  const Result b = run_args({"verify", "--d", "3", "--format", "json", "--seed", "17", "--trials", "20"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}

TEST(cmd_verify, injected_broken_coefficients_fail) {
  const Result r = run_args({"verify", "--d", "2", "--inject-broken", "--trials", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("check_covariance"), std::string::npos);
}

TEST(usage, bad_invocations_exit_two) {
  EXPECT_EQ(run_args({"table", "--d-min", "5", "--d-max", "3"}).code, 2);
  EXPECT_EQ(run_args({"table", "--d", "1"}).code, 2);
  EXPECT_EQ(run_args({"verify", "--d", "7"}).code, 2);
  EXPECT_EQ(run_args({"eof-curve", "--d", "1001"}).code, 2);
  EXPECT_EQ(run_args({"table", "--d-min", "2"}).code, 2);
  EXPECT_EQ(run_args({"frobnicate"}).code, 2);
  EXPECT_EQ(run_args({}).code, 2);
  EXPECT_EQ(run_args({"table", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_args({"table", "--d", "3", "--d-min", "2", "--d-max", "4"}).code, 2);
  EXPECT_EQ(run_args({"eof-curve", "--grid", "1"}).code, 2);
}

TEST(usage, table_accepts_large_dimensions) {
  const Result r = run_args({"table", "--d", "1000000"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.5, 1e-11);
}

TEST(output, writes_to_path) {
  const auto path = std::filesystem::temp_directory_path() / "entclone_table_test.csv";
  std::filesystem::remove(path);
  const Result r = run_args({"table", "--d", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_file(path), run_args({"table", "--d", "2"}).out);
  std::filesystem::remove(path);
}
