#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "support/temp_dir.hpp"
#include "vgk/data/dataset.hpp"
#include "vgk/frontend/builder.hpp"
#include "vgk/graph_io.hpp"

using namespace vgk;

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(VGK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string fixture(const std::string& name) {
  return std::string(VGK_FIXTURE_DIR) + "/" + name;
}

// two-family disk dataset: loops rank (a,b) as (1,2), straight-line reversed
void write_disk_dataset(const fs::path& dir, int n) {
  fs::create_directories(dir / "graphs");
  std::string csv = "task,tool,time_s,answer,expected\n";
  for (int i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "t%02d", i);
    const bool loop = i % 2 == 0;
    const std::string src =
        loop ? "int i; int n; n = input(); i = 0; while (i < n) { i = i + 1; } assert(i >= n);"
             : "int a; a = input(); a = a * 2; assert(a != 1);";
    save_graph_file(frontend::extract_graph(src),
                    (dir / "graphs" / (std::string(id) + ".json")).string());
    // loop tasks: anna solves quickly, bert unknown; straight-line reversed
    csv += std::string(id) + ",anna,1.0," + (loop ? "TRUE" : "UNKNOWN") + ",TRUE\n";
    csv += std::string(id) + ",bert,2.0," + (loop ? "UNKNOWN" : "TRUE") + ",TRUE\n";
  }
  testing::write_text((dir / "outcomes.csv").string(), csv);
  testing::write_text((dir / "schema.json").string(),
                      R"({"correct_true":2,"correct_false":1,"incorrect_true":-8,)"
                      R"("incorrect_false":-4,"unknown":0})");
}

} // namespace

TEST_CASE("cli: extract writes a loadable graph") {
  testing::TempDir tmp("vgk-cli");
  const std::string out = tmp.file("p_sum.json");
  REQUIRE(run_cli("extract " + fixture("p_sum.c") + " -o " + out) == 0);
  const VerificationGraph g = load_graph_file(out);
  CHECK(g.node_count() == 36);
  CHECK(g.edge_count() == 48);
}

TEST_CASE("cli: extract rejects out-of-subset input") {
  testing::TempDir tmp("vgk-cli");
  testing::write_text(tmp.file("bad.c"), "int *p;\n");
  CHECK(run_cli("extract " + tmp.file("bad.c") + " -o " + tmp.file("bad.json")) != 0);
  CHECK(run_cli("extract " + tmp.file("missing.c") + " -o " + tmp.file("x.json")) != 0);
}

TEST_CASE("cli: gram over graph files") {
  testing::TempDir tmp("vgk-cli");
  const std::string g1 = tmp.file("a.json");
  const std::string g2 = tmp.file("b.json");
  save_graph_file(frontend::extract_graph("int x; x = 1;"), g1);
  save_graph_file(frontend::extract_graph("int y; y = 2; assert(y > 0);"), g2);
  const std::string out = tmp.file("gram.json");
  REQUIRE(run_cli("gram --edges CF --depth 5 --iters 2 " + g1 + " " + g2 + " -o " + out) == 0);
  nlohmann::json j = nlohmann::json::parse(testing::read_text(out));
  CHECK(j.at("tasks").size() == 2);
  CHECK(j.at("matrix").size() == 2);
  CHECK(j.at("config").at("components")[0].at("edges") == "CF");
}

TEST_CASE("cli: full train/predict/baseline/cv pipeline") {
  testing::TempDir tmp("vgk-cli");
  write_disk_dataset(tmp.path, 12);
  const std::string data_args = " --graphs " + tmp.file("graphs") + " --outcomes " +
                                tmp.file("outcomes.csv") + " --schema " +
                                tmp.file("schema.json");
  const std::string manifest = tmp.file("manifest.json");

  REQUIRE(run_cli("gram --edges CF --depth 5 --iters 2" + data_args +
                  " --save-manifest " + manifest + " -o " + tmp.file("gram.json")) == 0);
  REQUIRE(fs::exists(manifest));

  REQUIRE(run_cli("train --gram " + tmp.file("gram.json") + " --dataset " + manifest +
                  " --C 1.0 -o " + tmp.file("model")) == 0);
  REQUIRE(fs::exists(tmp.path / "model" / "ensemble.json"));

  // predicting a training instance of this separable problem reproduces its ranking
  REQUIRE(run_cli("predict --model " + tmp.file("model") + " --graph " +
                  tmp.file("graphs/t00.json") + " -o " + tmp.file("pred.json")) == 0);
  nlohmann::json pred = nlohmann::json::parse(testing::read_text(tmp.file("pred.json")));
  const Dataset ds = load_dataset_file(manifest);
  CHECK(pred.at("ranking").get<std::vector<int>>() == ds.rankings[0].positions());

  REQUIRE(run_cli("baseline --dataset " + manifest) == 0);

  REQUIRE(run_cli("cv --dataset " + manifest +
                  " --edges CF --folds 3 --seed 7 -o " + tmp.file("report.json")) == 0);
  nlohmann::json report = nlohmann::json::parse(testing::read_text(tmp.file("report.json")));
  CHECK(report.at("runs")[0].at("folds").size() == 3);
  CHECK(report.at("config").at("seed") == 7);
}

TEST_CASE("cli: train rejects a gram/dataset mismatch") {
  testing::TempDir tmp("vgk-cli");
  write_disk_dataset(tmp.path, 6);
  const std::string data_args = " --graphs " + tmp.file("graphs") + " --outcomes " +
                                tmp.file("outcomes.csv") + " --schema " +
                                tmp.file("schema.json");
  const std::string manifest = tmp.file("manifest.json");
  REQUIRE(run_cli("gram --edges CF" + data_args + " --save-manifest " + manifest +
                  " -o " + tmp.file("gram.json")) == 0);
  // gram over a different graph set cannot be used to train on this dataset
  const std::string g1 = tmp.file("other.json");
  save_graph_file(frontend::extract_graph("int q; q = 1;"), g1);
  REQUIRE(run_cli("gram --edges CF " + g1 + " -o " + tmp.file("gram2.json")) == 0);
  CHECK(run_cli("train --gram " + tmp.file("gram2.json") + " --dataset " + manifest +
                " -o " + tmp.file("m")) != 0);
  CHECK(run_cli("train --gram " + tmp.file("gram.json") + " --dataset " + manifest +
                " -o " + tmp.file("m")) == 0);
}
