#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include <limits>

#include "epstein/io.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& cache_dir) {
  const std::string cmd = "EPSTEIN_LAB_CACHE=" + cache_dir + " " +
                          std::string(EPSTEIN_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  if (end == std::string::npos) return {};
  auto begin = text.rfind('\n', end);
  return text.substr(begin == std::string::npos ? 0 : begin + 1,
                     end - (begin == std::string::npos ? 0 : begin + 1) + 1);
}

std::string strip_timestamp(std::string json_line) {
  auto j = nlohmann::json::parse(json_line);
  j.erase("timestamp");
  return j.dump();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("epstein_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

}  // namespace

TEST_CASE("eval: oracle value, exit codes for pole and bad form") {
  TempDir dir;
  const auto ok = run_cli("eval --form 1,0,1 --s 3+0i", dir.path.string());
  CHECK(ok.exit_code == 0);
  const auto j = nlohmann::json::parse(last_line(ok.output));
  CHECK(j.at("schema") == 1);
  const double want = oracle::zeta_q_disc4({3.0, 0.0}).real();
  CHECK(std::abs(j.at("zeta_re").get<double>() - want) < 1e-9 * want);
  CHECK(std::abs(j.at("zeta_im").get<double>()) < 1e-12);

  CHECK(run_cli("eval --form 1,0,1 --s 1+0i", dir.path.string()).exit_code == 2);
  CHECK(run_cli("eval --form 1,0,-1 --s 2", dir.path.string()).exit_code == 2);
  CHECK(run_cli("eval --form 1,0,1 --s nonsense", dir.path.string()).exit_code == 2);
}

TEST_CASE("eval: config file supplies flags") {
  TempDir dir;
  const auto cfg_path = dir.path / "run.cfg";
  {
    std::ofstream out(cfg_path);
    out << "# sample configuration\n";
    out << "form=1,1,1\n";
    out << "s=2+0i\n";
  }
  const auto res = run_cli("eval --config " + cfg_path.string(), dir.path.string());
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(last_line(res.output));
  CHECK(j.at("form") == "1,1,1");
  CHECK(std::abs(j.at("s_re").get<double>() - 2.0) < 1e-15);
}

TEST_CASE("zeros: table files, first zero, empty range, resume union") {
  TempDir dir;
  const auto first = run_cli("zeros --form 1,0,1 --range 0:40", dir.path.string());
  CHECK(first.exit_code == 0);
  const auto j = nlohmann::json::parse(last_line(first.output));
  CHECK(j.at("count").get<int>() >= 10);
  const std::string table = j.at("table");
  REQUIRE(fs::exists(table));
  REQUIRE(fs::exists(table + ".meta.json"));

  // CSV header and first ordinate near the first beta-factor zero.
  std::ifstream csv(table);
  std::string header, first_row;
  std::getline(csv, header);
  std::getline(csv, first_row);
  CHECK(header == "t,bracket");
  CHECK(std::abs(std::stod(first_row) - 6.0209) < 1e-3);

  const auto empty = run_cli("zeros --form 1,1,1 --range 5:5", dir.path.string());
  CHECK(empty.exit_code == 0);
  CHECK(nlohmann::json::parse(last_line(empty.output)).at("count") == 0);

  // Resumed overlapping scan equals one full scan.
  TempDir dir2;
  auto a = run_cli("zeros --form 1,1,1 --range 0:25", dir2.path.string());
  CHECK(a.exit_code == 0);
  auto b = run_cli("zeros --form 1,1,1 --range 15:40 --resume", dir2.path.string());
  CHECK(b.exit_code == 0);
  TempDir dir3;
  auto whole = run_cli("zeros --form 1,1,1 --range 0:40", dir3.path.string());
  CHECK(whole.exit_code == 0);
  const auto jb = nlohmann::json::parse(last_line(b.output));
  const auto jw = nlohmann::json::parse(last_line(whole.output));
  CHECK(jb.at("count") == jw.at("count"));

  const auto resumed = epstein::read_zero_table(
      nlohmann::json::parse(last_line(b.output)).at("table"));
  const auto direct = epstein::read_zero_table(
      nlohmann::json::parse(last_line(whole.output)).at("table"));
  REQUIRE(resumed.size() == direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i)
    CHECK(std::abs(resumed[i].t - direct[i].t) < 1e-7);
}

TEST_CASE("gaps: table reuse, bounds, missing coverage") {
  TempDir dir;
  CHECK(run_cli("zeros --form 1,0,1 --range 0:60", dir.path.string()).exit_code == 0);
  const auto res = run_cli("gaps --form 1,0,1 --T 60 --V 0.5,1,2,4", dir.path.string());
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(last_line(res.output));
  REQUIRE(j.at("rows").size() == 4);
  std::int64_t prev = std::numeric_limits<std::int64_t>::max();
  for (const auto& row : j.at("rows")) {
    CHECK(row.at("pass") == true);
    const std::int64_t r = row.at("R");
    CHECK(r <= prev);  // descending V given ascending here: R non-increasing
    prev = r;
  }

  CHECK(run_cli("gaps --form 1,0,1 --T 100 --V 1", dir.path.string()).exit_code == 2);
  CHECK(run_cli("gaps --form 2,1,3 --T 10 --V 1", dir.path.string()).exit_code == 2);
  CHECK(run_cli("gaps --form 1,0,1 --T 60 --V -1", dir.path.string()).exit_code == 2);
}

TEST_CASE("verify: unknown suite and deterministic reports") {
  TempDir dir;
  CHECK(run_cli("verify no-such-suite", dir.path.string()).exit_code == 2);

  const auto one = run_cli("verify cf-approx --seed 7", dir.path.string());
  const auto two = run_cli("verify cf-approx --seed 7", dir.path.string());
  CHECK(one.exit_code == 0);
  CHECK(strip_timestamp(last_line(one.output)) ==
        strip_timestamp(last_line(two.output)));
}

TEST_CASE("io: rep-count CSV, eval record, range algebra") {
  TempDir dir;
  const auto table = epstein::rep_counts(epstein::QuadraticForm(1, 0, 1), 5);
  const auto csv_path = (dir.path / "counts.csv").string();
  epstein::write_rep_counts_csv(table, csv_path);
  std::ifstream in(csv_path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,r");
  std::getline(in, line);
  CHECK(line == "1,4");
  std::getline(in, line);
  CHECK(line == "2,4");
  std::getline(in, line);
  CHECK(line == "3,0");

  epstein::CompletedZetaValue value;
  value.s = {3.0, 0.0};
  value.zeta = {4.5, 0.0};
  value.lambda = {0.3, 0.0};
  value.est_err = 1e-14;
  const auto record = nlohmann::json::parse(
      epstein::eval_record_json(epstein::QuadraticForm(1, 0, 1), value));
  CHECK(record.at("schema") == 1);
  CHECK(record.at("form") == "1,0,1");
  CHECK(record.at("zeta_re") == 4.5);
  CHECK_FALSE(record.contains("timestamp"));

  auto ranges = epstein::merge_ranges({}, 0.0, 10.0);
  ranges = epstein::merge_ranges(ranges, 20.0, 30.0);
  ranges = epstein::merge_ranges(ranges, 8.0, 22.0);
  REQUIRE(ranges.size() == 1);
  CHECK(ranges[0].first == 0.0);
  CHECK(ranges[0].second == 30.0);

  const auto holes = epstein::uncovered_ranges({{2.0, 5.0}, {7.0, 9.0}}, 0.0, 10.0);
  REQUIRE(holes.size() == 3);
  CHECK(holes[0] == std::pair{0.0, 2.0});
  CHECK(holes[1] == std::pair{5.0, 7.0});
  CHECK(holes[2] == std::pair{9.0, 10.0});
  CHECK(epstein::uncovered_ranges({{0.0, 10.0}}, 1.0, 9.0).empty());
}

TEST_CASE("verify oscillatory accepts a declarative case file") {
  TempDir dir;
  const auto cases_path = dir.path / "cases.json";
  {
    std::ofstream out(cases_path);
    out << R"([{"kind":"quadratic","gamma":1.0,"a":0.0,"b":10.0,"m_bound":2.0},
               {"kind":"cubic","a":1.0,"b":9.0},
               {"kind":"transformed","C2":0.21,"m":9,"n":4,"a":500.0,"b":1000.0}])";
  }
  const auto res = run_cli("verify oscillatory --cases " + cases_path.string(),
                           dir.path.string());
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(last_line(res.output));
  REQUIRE(j.at("checks").size() == 3);
  for (const auto& row : j.at("checks")) CHECK(row.at("pass") == true);

  std::ofstream bad(dir.path / "bad.json");
  bad << R"([{"kind":"nope","a":0,"b":1}])";
  bad.close();
  CHECK(run_cli("verify oscillatory --cases " + (dir.path / "bad.json").string(),
                dir.path.string())
            .exit_code == 2);
}
