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

// qsat command-line front end.
//
// Exit codes: 0 = SAT / verified, 1 = UNSAT / not verified, 2 = error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "qsat/classical2sat.hpp"
#include "qsat/generator.hpp"
#include "qsat/oracle.hpp"
#include "qsat/reduction4sat.hpp"
#include "qsat/solver2sat.hpp"

namespace {

using nlohmann::json;
using namespace qsat;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

using AnyInstance = std::variant<QSatInstance, KSatInstance>;

/// k-SAT files carry "terms", 2-SAT files carry "pairs"/"units".
AnyInstance load_instance(const std::string &path) {
  json j = parse_json(read_file(path));
  if (j.is_object() && j.contains("terms")) return ksat_from_json(j);
  return instance_from_json(j);
}

QSatInstance load_qsat(const std::string &path) {
  AnyInstance inst = load_instance(path);
  if (auto *q = std::get_if<QSatInstance>(&inst)) return std::move(*q);
  throw ParseError(path + ": expected a 2-SAT instance (pairs/units), got k-SAT terms");
}

struct Options {
  bool json_out = false;

  std::string instance;
  std::string assignment_path;
  std::string transcript_path;

  std::string state_path;

  std::string mode = "exact";
  std::size_t limit = oracle::kDefaultExactLimit;

  std::string circuit_path;
  std::size_t k = 4;
  bool merge = false;
  std::string output;

  std::string cnf_path;

  GenOptions gen;
  std::string rank_dist = "1:1";
};

int run_solve(const Options &o) {
  QSatInstance inst = load_qsat(o.instance);
  SolveResult res = solve(inst);
  if (!o.assignment_path.empty() && res.satisfiable()) write_text(o.assignment_path, format_json(result_to_json(res)));
  if (!o.transcript_path.empty()) write_text(o.transcript_path, format_json(transcript_to_json(res.transcript)));
  if (o.json_out) {
    json j = result_to_json(res);
    j["stats"] = {{"qubit_reductions", res.stats.qubit_reductions},
                  {"closure_rounds", res.stats.closure_rounds},
                  {"closure_attempts", res.stats.total_attempts}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (res.satisfiable() ? "SAT" : "UNSAT") << "\n";
    if (res.satisfiable())
      std::cout << "form: " << (res.status == SolveStatus::SatProduct ? "product" : "entangled") << "\n";
  }
  return res.satisfiable() ? kExitYes : kExitNo;
}

int run_verify(const Options &o) {
  AnyInstance inst = load_instance(o.instance);
  std::size_t n = std::visit([](const auto &i) { return i.num_qubits(); }, inst);
  FactorizedState state = state_from_json(parse_json(read_file(o.state_path)), n);
  bool ok = false;
  if (const auto *q = std::get_if<QSatInstance>(&inst)) {
    ok = verify_factorized(*q, state);
  } else {
    ok = oracle::verify_state(std::get<KSatInstance>(inst), state.amplitudes());
  }
  if (o.json_out) {
    std::cout << json{{"verified", ok}}.dump() << "\n";
  } else {
    std::cout << (ok ? "VERIFIED" : "NOT VERIFIED") << "\n";
  }
  return ok ? kExitYes : kExitNo;
}

int run_oracle(const Options &o) {
  AnyInstance inst = load_instance(o.instance);
  if (o.mode == "float") {
    KSatInstance k = std::holds_alternative<KSatInstance>(inst) ? std::get<KSatInstance>(inst)
                                                                : to_ksat(std::get<QSatInstance>(inst));
    double lambda = oracle::min_eigenvalue_float(k);
    if (o.json_out) {
      std::cout << json{{"lambda_min", lambda}}.dump() << "\n";
    } else {
      std::printf("lambda_min %.12g\n", lambda);
    }
    return kExitYes;
  }
  oracle::Decision d = std::visit([&](const auto &i) { return oracle::brute_satisfiable(i, o.limit); }, inst);
  if (o.json_out) {
    std::cout << json{{"nullity", d.nullity}, {"satisfiable", d.satisfiable}}.dump() << "\n";
  } else {
    std::cout << "nullity " << d.nullity << "\n" << (d.satisfiable ? "SAT" : "UNSAT") << "\n";
  }
  return d.satisfiable ? kExitYes : kExitNo;
}

int run_reduce(const Options &o) {
  Circuit c = parse_circuit(read_file(o.circuit_path));
  KSatInstance inst = emit_hamiltonian(c, {o.k, true});
  if (o.merge) inst = merge_terms(inst);
  json out = reduction_to_json(c, inst);
  write_text(o.output, format_json(out));
  if (!o.output.empty() && o.output != "-") {
    if (o.json_out) {
      std::cout << out["header"].dump() << "\n";
    } else {
      std::cout << "L=" << c.length() << " N=" << c.num_qubits() << " qubits=" << inst.num_qubits()
                << " terms=" << inst.terms().size() << " k=" << inst.locality() << "\n";
    }
  }
  return kExitYes;
}

int run_classical(const Options &o) {
  Cnf2 f = parse_dimacs(read_file(o.cnf_path));
  ClassicalResult res = solve_classical(f);
  if (o.json_out) {
    json j = {{"satisfiable", res.satisfiable()}};
    if (res.satisfiable()) j["assignment"] = assignment_string(*res.assignment);
    std::cout << j.dump() << "\n";
  } else if (res.satisfiable()) {
    std::cout << "SAT\n" << assignment_string(*res.assignment) << "\n";
  } else {
    std::cout << "UNSAT\n";
  }
  return res.satisfiable() ? kExitYes : kExitNo;
}

int run_gen(Options o) {
  o.gen.rank_dist = parse_rank_dist(o.rank_dist);
  QSatInstance inst = generate_instance(o.gen);
  write_text(o.output, serialize_instance(inst));
  return kExitYes;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact quantum 2-SAT solver and quantum 4-SAT reduction"};
  app.require_subcommand(1);
  Options o;

  auto add_json = [&](CLI::App *cmd) { cmd->add_flag("--json", o.json_out, "Machine-readable JSON on stdout"); };

  CLI::App *solve_cmd = app.add_subcommand("solve", "Decide a 2-SAT instance and build an assignment");
  solve_cmd->add_option("instance", o.instance, "Instance JSON")->required();
  solve_cmd->add_option("--assignment", o.assignment_path, "Write the satisfying state here");
  solve_cmd->add_option("--transcript", o.transcript_path, "Write the reduction transcript here");
  add_json(solve_cmd);

  CLI::App *verify_cmd = app.add_subcommand("verify", "Check that a state satisfies every constraint exactly");
  verify_cmd->add_option("instance", o.instance, "Instance JSON (2-SAT or k-SAT)")->required();
  verify_cmd->add_option("state", o.state_path, "State JSON")->required();
  add_json(verify_cmd);

  CLI::App *oracle_cmd = app.add_subcommand("oracle", "Brute-force nullity or float ground energy");
  oracle_cmd->add_option("instance", o.instance, "Instance JSON (2-SAT or k-SAT)")->required();
  oracle_cmd->add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  oracle_cmd->add_option("--limit", o.limit, "Qubit limit for exact mode");
  add_json(oracle_cmd);

  CLI::App *reduce_cmd = app.add_subcommand("reduce", "Compile a circuit into a quantum 4-SAT instance");
  reduce_cmd->add_option("circuit", o.circuit_path, "Circuit JSON")->required();
  reduce_cmd->add_option("--k", o.k, "Locality: 4, or 5 to allow 3-qubit gates")->check(CLI::IsMember({4, 5}));
  reduce_cmd->add_option("-o,--output", o.output, "Output file (default stdout)");
  reduce_cmd->add_flag("--merge", o.merge, "Merge terms sharing a support");
  add_json(reduce_cmd);

  CLI::App *classical_cmd = app.add_subcommand("classical", "Solve a classical 2-CNF in DIMACS format");
  classical_cmd->add_option("cnf", o.cnf_path, "DIMACS file")->required();
  add_json(classical_cmd);

  CLI::App *gen_cmd = app.add_subcommand("gen", "Emit a reproducible random 2-SAT instance");
  gen_cmd->add_option("--n", o.gen.n, "Qubit count")->required();
  gen_cmd->add_option("--pairs", o.gen.pairs, "Number of pair constraints to draw")->required();
  gen_cmd->add_option("--rank-dist", o.rank_dist, "Rank weights, e.g. 1:0.5,2:0.3,3:0.15,4:0.05");
  gen_cmd->add_option("--seed", o.gen.seed, "Random seed")->required();
  gen_cmd->add_option("--units", o.gen.units, "Number of one-qubit constraints");
  gen_cmd->add_option("--product-fraction", o.gen.product_fraction, "Chance a rank-1 constraint is a product")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("-o,--output", o.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*solve_cmd) return run_solve(o);
    if (*verify_cmd) return run_verify(o);
    if (*oracle_cmd) return run_oracle(o);
    if (*reduce_cmd) return run_reduce(o);
    if (*classical_cmd) return run_classical(o);
    if (*gen_cmd) return run_gen(o);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
