#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string command = env + (env.empty() ? "" : " ") + "'" KSUMLAB_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) r.out.append(buffer.data(), got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const Run& r, const std::string& needle) { return r.out.find(needle) != std::string::npos; }

const std::string kFirst = "'-8 -5 -4 -3 -2 -1 1 2 3 4 5 8'";
const std::string kSecond = "'-7^2 -4 -2 -1 0^2 1 2 4 7^2'";

}  // namespace

TEST_CASE("ksums") {
  const Run big = run("ksums -k 4 '-1 0^10 1'");
  CHECK(big.code == 0);
  CHECK(big.out == "-1^120 0^255 1^120\n");
  CHECK(run("ksums -k 2 '1 2 3'").out == "3 4 5\n");
  CHECK(run("ksums -k 5 '1 2 3'").code == 2);
  CHECK(run("ksums -k 2 '1 2 x'").code == 2);
  CHECK(run("ksums '1 2 3'").code == 2);

  // Output parses back as input.
  const Run sums = run("ksums -k 2 '0 1 1 5'");
  CHECK(sums.out == "1^2 2 5 6^2\n");
  CHECK(run("ksums -k 1 '" + sums.out.substr(0, sums.out.size() - 1) + "'").out == sums.out);
}

TEST_CASE("ksums reads sets from a file") {
  const auto path = std::filesystem::temp_directory_path() / ("ksumlab_cli_" + std::to_string(::getpid()));
  std::ofstream(path) << "# two sets\n1 2 3\n0 0 1\n";
  const Run r = run("ksums -k 2 -f '" + path.string() + "'");
  std::filesystem::remove(path);
  CHECK(r.code == 0);
  CHECK(r.out == "3 4 5\n0 1^2\n");
}

TEST_CASE("collide") {
  const Run equal = run("collide -k 4 " + kFirst + " " + kSecond);
  CHECK(equal.code == 0);
  CHECK(has(equal, "EQUAL (495 sums)"));
  const Run differ = run("collide -k 4 " + kFirst + " '-7 -6 -4 -2 -1 0^2 1 2 4 7^2'");
  CHECK(differ.code == 1);
  CHECK(has(differ, "DIFFERENT"));
  CHECK(run("collide -k 2 '1 2 3' '1 2 3 4'").code == 2);
  CHECK(run("collide -k 2 '0 3 5 6' '1 2 4 7'").code == 0);
}

TEST_CASE("expand") {
  const Run e2 = run("expand -p 2 -k 4 -n 12 --s1zero");
  CHECK(e2.code == 0);
  CHECK(e2.out == "E2 = 120*S2\n");
  CHECK(run("expand -p 2").out == "E2 = 45*S1^2 + 120*S2\n");
  CHECK(run("expand -p 0").code == 2);

  const Run check6 = run("expand -p 6 --s1zero --check-paper");
  CHECK(check6.code == 0);
  CHECK(has(check6, "coef(S6) = 0 [expected 0] OK"));
  const Run check14 = run("expand -p 14 --s1zero --check-paper");
  CHECK(check14.code == 0);
  CHECK(!has(check14, "MISMATCH"));
  CHECK(run("expand -p 13 --s1zero --check-paper").code == 2);
}

TEST_CASE("fixture override through the environment") {
  const auto path = std::filesystem::temp_directory_path() / ("ksumlab_fixture_" + std::to_string(::getpid()));
  std::ofstream(path) << "E6 = 90*S2^3 - 120*S2*S4 + 41*S3^2 + 0*S6\n";
  const Run r = run("expand -p 6 --s1zero --check-paper", "KSUMLAB_FIXTURES='" + path.string() + "'");
  std::filesystem::remove(path);
  CHECK(r.code == 1);
  CHECK(has(r, "coef(S3^2) = 40 [expected 41] MISMATCH"));
  CHECK(run("expand -p 6 --s1zero --check-paper", "KSUMLAB_FIXTURES=/nonexistent/fixture").code == 2);
}

TEST_CASE("eliminate") {
  const Run verify = run("eliminate --verify-coefficients");
  CHECK(verify.code == 0);
  CHECK(has(verify, "coef(S6*E2^2*E4) = 4783550233/119441640960 [expected 4783550233/119441640960] OK"));
  CHECK(has(verify, "coef(S6^2*E2) = 73458/5465"));

  const Run example = run("eliminate --example1");
  CHECK(example.code == 0);
  CHECK(has(example, "roots: 2, 377762/44361"));

  const Run second = run("eliminate --second-root " + kFirst);
  CHECK(second.code == 0);
  CHECK(has(second, "S6'' = 478918"));

  const Run residuals = run("eliminate --residuals " + kSecond);
  CHECK(residuals.code == 0);
  CHECK(has(residuals, "all 13 residuals vanish"));
  CHECK(run("eliminate --residuals '1 2 3 4 5 6 7 8 9 10 11 13'").code == 1);

  // Shifted to S1 = 0 this is all zeros, so S2 = 0.
  CHECK(run("eliminate --second-root '5^12'").code == 2);
  CHECK(run("eliminate --second-root '1 2 3'").code == 2);
  CHECK(run("eliminate").code == 2);
  CHECK(run("eliminate --example1 --verify-coefficients").code == 2);
}

TEST_CASE("search") {
  const Run twelve = run("search -n 12 -k 4 -b 8 --symmetric");
  CHECK(twelve.code == 0);
  const auto line = nlohmann::json::parse(twelve.out.substr(0, twelve.out.find('\n')));
  const auto first = line["first"].get<std::vector<long>>();
  const auto second = line["second"].get<std::vector<long>>();
  CHECK(first == std::vector<long>{-8, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 8});
  CHECK(second == std::vector<long>{-7, -7, -4, -2, -1, 0, 0, 1, 2, 4, 7, 7});
  CHECK(line["k"] == 4);
  CHECK(std::count(twelve.out.begin(), twelve.out.end(), '\n') == 1);

  const Run four = run("search -n 4 -k 2 -b 7");
  CHECK(four.code == 0);
  CHECK(has(four, R"({"first":[-7,-1,3,5],"second":[-5,-3,1,7],"k":2})"));

  CHECK(run("search -n 3 -k 2 -b 4").code == 1);
  CHECK(run("search -n 5 -k 2 -b 3 --symmetric").code == 2);
  CHECK(run("search -n 4 -k 9 -b 3").code == 2);

  CHECK(run("search -n 8 -k 2 -b 4 --workers 1").out == run("search -n 8 -k 2 -b 4 --workers 3").out);
  CHECK(run("search -n 8 -k 2 -b 4 --serial").out == run("search -n 8 -k 2 -b 4").out);
}

TEST_CASE("search writes and resumes a checkpoint") {
  const auto dir = std::filesystem::temp_directory_path() / ("ksumlab_cli_search_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string ckpt = (dir / "run.ckpt").string();
  const std::string out = (dir / "records.jsonl").string();
  const Run first = run("search -n 8 -k 2 -b 4 --resume '" + ckpt + "' --out '" + out + "'");
  CHECK(first.code == 0);
  CHECK(std::filesystem::exists(ckpt));
  std::ifstream in(out);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == run("search -n 8 -k 2 -b 4").out);
  const Run again = run("search -n 8 -k 2 -b 4 --resume '" + ckpt + "'");
  CHECK(again.out == written);
  CHECK(run("search -n 8 -k 2 -b 5 --resume '" + ckpt + "'").code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
}
