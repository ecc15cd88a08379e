#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = MED_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("med_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("full pipeline on the stimulus-sized graph") {
  TempDir tmp;
  const auto graph = tmp.file("graph.json");
  const auto layout = tmp.file("layout.json");
  const auto timeline = tmp.file("timeline.json");

  CHECK(run("generate --nodes 50 --m 3 --seed 1 --out " + graph) == 0);
  CHECK(run("layout --in " + graph +
            " --width 1000 --height 800 --iterations 500 --seed 1 --out " +
            layout) == 0);
  CHECK(run("schedule --in " + layout + " --delta 0.25 --out " + timeline) == 0);

  const auto stats_out = tmp.file("stats.json");
  CHECK(run("stats --layout " + layout + " --timeline " + timeline + " > " +
            stats_out) == 0);
  const std::string stats = slurp(stats_out);
  CHECK(stats.find("\"edges\": 144") != std::string::npos);
  CHECK(stats.find("\"group_count\"") != std::string::npos);
  CHECK(stats.find("non_morphing_candidates") != std::string::npos);

  for (const std::string fmt :
       {"svg-animated", "svg-static-ped", "svg-static-ced"}) {
    const auto svg = tmp.file(fmt + ".svg");
    CHECK(run("render --layout " + layout + " --timeline " + timeline +
              " --format " + fmt + " --out " + svg) == 0);
    const std::string body = slurp(svg);
    CHECK(body.find("<svg") != std::string::npos);
    if (fmt == "svg-animated") {
      CHECK(body.find("<animate") != std::string::npos);
    } else {
      CHECK(body.find("<animate") == std::string::npos);
    }
  }

  CHECK(run("verify --layout " + layout + " --timeline " + timeline +
            " --dt-ms 1 > " + tmp.file("verify.json")) == 0);
  CHECK(slurp(tmp.file("verify.json")).find("\"ok\": true") !=
        std::string::npos);

  // re-running a stage yields byte-identical output
  const auto timeline2 = tmp.file("timeline2.json");
  CHECK(run("schedule --in " + layout + " --delta 0.25 --out " + timeline2) == 0);
  CHECK(slurp(timeline) == slurp(timeline2));
  const auto graph2 = tmp.file("graph2.json");
  CHECK(run("generate --nodes 50 --m 3 --seed 1 --out " + graph2) == 0);
  CHECK(slurp(graph) == slurp(graph2));
}

TEST_CASE("full pipeline on a two-node graph") {
  TempDir tmp;
  CHECK(run("generate --nodes 2 --m 1 --seed 7 --out " + tmp.file("g.json")) == 0);
  CHECK(run("layout --in " + tmp.file("g.json") + " --width 200 --height 200 "
            "--iterations 300 --seed 7 --out " + tmp.file("l.json")) == 0);
  CHECK(run("schedule --in " + tmp.file("l.json") + " --speed 40 "
            "--min-travel-ms 0 --out " + tmp.file("t.json")) == 0);
  const std::string timeline = slurp(tmp.file("t.json"));
  CHECK(timeline.find("\"tracks\"") != std::string::npos);
  CHECK(run("verify --layout " + tmp.file("l.json") + " --timeline " +
            tmp.file("t.json") + " > /dev/null") == 0);
}

TEST_CASE("verification failure exits with code 2") {
  TempDir tmp;
  spit(tmp.file("layout.json"), R"({
    "nodes": [{"id":0,"x":0,"y":0},{"id":1,"x":100,"y":0},
              {"id":2,"x":40,"y":-40},{"id":3,"x":40,"y":60}],
    "edges": [[0,1],[2,3]]
  })");
  // both edges start at once: their stubs meet at the crossing point
  spit(tmp.file("broken.json"), R"({
    "period_s": 1.0,
    "params": {"delta":0.25,"eta":0.5,"speed":50.0,"min_travel_s":0.0},
    "tracks": [{"edge":0,"length":100.0,"eff_speed":50.0,"t_s":0.0,"d1":0.5},
               {"edge":1,"length":100.0,"eff_speed":50.0,"t_s":0.0,"d1":0.5}],
    "groups": [[0,1]]
  })");
  CHECK(run("verify --layout " + tmp.file("layout.json") + " --timeline " +
            tmp.file("broken.json") + " > " + tmp.file("report.json")) == 2);
  CHECK(slurp(tmp.file("report.json")).find("\"ok\": false") !=
        std::string::npos);
}

TEST_CASE("invalid input exits with code 1 and a machine-parsable line") {
  TempDir tmp;
  spit(tmp.file("bad.json"), R"({"node_count": 3, "edges": [[0,0]]})");
  CHECK(run("layout --in " + tmp.file("bad.json") + " --out " +
            tmp.file("l.json") + " 2> " + tmp.file("err.txt")) == 1);
  const std::string err = slurp(tmp.file("err.txt"));
  CHECK(err.find("{\"error\":\"validation\"") != std::string::npos);
  CHECK(err.find('\n') == err.size() - 1);  // a single line

  CHECK(run("generate --nodes 3 --m 5 --seed 1 --out " +
            tmp.file("g.json") + " 2> /dev/null") == 1);
  CHECK(run("schedule --in /nonexistent.json --out " + tmp.file("t.json") +
            " 2> /dev/null") == 3);
  CHECK(run("bogus-subcommand 2> /dev/null") == 1);
}

TEST_CASE("options can come from an INI config file") {
  TempDir tmp;
  spit(tmp.file("med.ini"),
       "[generate]\nnodes=10\nm=2\nseed=5\nout=" + tmp.file("g.json") + "\n");
  CHECK(run("--config " + tmp.file("med.ini") + " generate") == 0);
  const std::string graph = slurp(tmp.file("g.json"));
  CHECK(graph.find("\"node_count\": 10") != std::string::npos);
}

TEST_CASE("schedule accepts an explicit speed or the angular triple") {
  TempDir tmp;
  CHECK(run("generate --nodes 8 --m 2 --seed 3 --out " + tmp.file("g.json")) == 0);
  CHECK(run("layout --in " + tmp.file("g.json") +
            " --width 400 --height 300 --iterations 200 --seed 3 --out " +
            tmp.file("l.json")) == 0);
  CHECK(run("schedule --in " + tmp.file("l.json") + " --speed 120 --out " +
            tmp.file("ts.json")) == 0);
  CHECK(slurp(tmp.file("ts.json")).find("\"speed\": 120.0") !=
        std::string::npos);
  CHECK(run("schedule --in " + tmp.file("l.json") +
            " --deg-per-s 10 --view-dist-cm 40 --px-per-cm 37.8 --out " +
            tmp.file("ta.json")) == 0);
  CHECK(slurp(tmp.file("ta.json")).find("266.606") != std::string::npos);
}
