// Copyright 2026 The qsat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the qsat binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string &args) {
  std::string cmd = std::string(QSAT_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE *p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("qsat_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string &name, const std::string &text) {
    fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir;
};

const char *kSingletChain = R"({"n":3,"pairs":[
  {"qubits":[0,1],"tensors":[[[["0","0"],["1","0"]],[["-1","0"],["0","0"]]]]},
  {"qubits":[1,2],"tensors":[[[["0","0"],["1","0"]],[["-1","0"],["0","0"]]]]}]})";

const char *kFullPair = R"({"n":2,"pairs":[{"qubits":[0,1],"tensors":[
  [[["1","0"],["0","0"]],[["0","0"],["0","0"]]],
  [[["0","0"],["1","0"]],[["0","0"],["0","0"]]],
  [[["0","0"],["0","0"]],[["1","0"],["0","0"]]],
  [[["0","0"],["0","0"]],[["0","0"],["1","0"]]]]}]})";

}  // namespace

TEST_F(CliTest, SolveSingletChain) {
  std::string inst = write("chain.json", kSingletChain);
  std::string state = (dir / "state.json").string();
  Outcome r = run("solve " + inst + " --assignment " + state);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 4), "SAT\n");
  Outcome v = run("verify " + inst + " " + state);
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("VERIFIED"), std::string::npos);
}

TEST_F(CliTest, SolveRankFourIsUnsat) {
  Outcome r = run("solve " + write("full.json", kFullPair));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "UNSAT\n");
}

TEST_F(CliTest, VerifyRejectsWrongState) {
  std::string inst = write("chain.json", kSingletChain);
  // |010> is not symmetric
  std::string state = write("bad.json", R"({"amplitudes":[["0","0"],["0","0"],["1","0"],["0","0"],
      ["0","0"],["0","0"],["0","0"],["0","0"]]})");
  Outcome v = run("verify " + inst + " " + state);
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("NOT VERIFIED"), std::string::npos);
}

TEST_F(CliTest, OracleReportsNullity) {
  std::string inst = write("chain.json", kSingletChain);
  Outcome r = run("oracle " + inst);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("nullity 4"), std::string::npos);
  Outcome f = run("oracle " + inst + " --mode float");
  EXPECT_EQ(f.code, 0);
  EXPECT_NE(f.out.find("lambda_min"), std::string::npos);
}

TEST_F(CliTest, GenIsReproducible) {
  std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  std::string args = "gen --n 6 --pairs 9 --rank-dist 1:0.6,2:0.3,3:0.1 --seed 42 -o ";
  EXPECT_EQ(run(args + a).code, 0);
  EXPECT_EQ(run(args + b).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST_F(CliTest, ClassicalSolves) {
  Outcome sat = run("classical " + write("f.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n"));
  EXPECT_EQ(sat.code, 0);
  EXPECT_EQ(sat.out.substr(0, 4), "SAT\n");
  EXPECT_EQ(sat.out[5], '1');
  Outcome unsat = run("classical " + write("g.cnf", "p cnf 2 4\n1 2 0\n-1 -2 0\n1 -2 0\n-1 2 0\n"));
  EXPECT_EQ(unsat.code, 1);
  EXPECT_EQ(unsat.out, "UNSAT\n");
}

TEST_F(CliTest, ReduceWritesInstance) {
  std::string circuit = write("c.json", R"({"n_in":1,"n_wit":0,"out":[0],"gates":[
      {"qubits":[0],"matrix":[[["1","0"],["0","0"]],[["0","0"],["1","0"]]]}]})");
  std::string out = (dir / "h.json").string();
  EXPECT_EQ(run("reduce " + circuit + " -o " + out).code, 0);
  Outcome o = run("oracle " + out);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("nullity 1"), std::string::npos);
}

TEST_F(CliTest, Errors) {
  EXPECT_EQ(run("solve " + (dir / "missing.json").string()).code, 2);
  EXPECT_EQ(run("solve " + write("broken.json", "{")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("solve --bogus x").code, 2);
  EXPECT_EQ(run("").code, 2);
}
