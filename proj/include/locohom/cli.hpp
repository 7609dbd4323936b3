#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locohom/deletion.hpp"
#include "locohom/extension.hpp"
#include "locohom/generators.hpp"
#include "locohom/hom.hpp"
#include "locohom/io.hpp"
#include "locohom/lihom.hpp"
#include "locohom/pipeline.hpp"

namespace locohom::cli {

enum ExitCode : int { kYes = 0, kNo = 1, kUsage = 2, kInput = 3, kBudget = 4 };

struct ProblemRequest {
  std::string problem;  // lbhom | lshom | lihom | role
  std::string algo = "auto";
  int h = 0;
  int k = -1;
  int c = -1;
  int threads = 1;
};

inline int brute_threshold() {
  if (const char* env = std::getenv("LOCOHOM_BRUTE_MAX")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
  }
  return 10;
}

inline SolveReport solve_problem(const ProblemRequest& req, const Graph& g, const Graph* host) {
  const bool brute = req.algo == "brute" || (req.algo == "auto" && g.order() <= brute_threshold());
  const bool explicit_params = req.k >= 0 && req.c >= 0;
  SolveOptions opts{req.threads};
  if (req.problem == "role") {
    if (brute) {
      SolveReport r;
      r.route = "brute-force";
      if (auto found = brute_force_role(g, req.h)) {
        r.answer = true;
        r.witness = found->roles;
        r.host = found->role_graph;
      }
      return r;
    }
    return explicit_params ? solve_role_assignment(g, req.h, req.k, req.c, opts) : solve_role_assignment(g, req.h, opts);
  }
  if (!host) throw InputError("--host is required for " + req.problem);
  if (req.problem == "lihom") {
    if (brute) {
      SolveReport r;
      r.route = "brute-force";
      if (auto found = brute_force_hom(g, *host, Mode::inj())) {
        r.answer = true;
        r.witness = *found;
      }
      return r;
    }
    return solve_lihom_special(g, *host, LihomOptions{3, req.threads});
  }
  const bool bijective = req.problem == "lbhom";
  if (brute) {
    SolveReport r;
    r.route = "brute-force";
    if (auto found = brute_force_hom(g, *host, bijective ? Mode::bij() : Mode::surj())) {
      r.answer = true;
      r.witness = *found;
    }
    return r;
  }
  return explicit_params ? solve_constrained_hom(g, *host, bijective, req.k, req.c, opts)
                         : solve_constrained_hom(g, *host, bijective, opts);
}

namespace detail {

inline Witness to_witness(const SolveReport& r) { return Witness{r.answer, r.witness, r.host}; }

inline void check_params(const ProblemRequest& req) {
  if ((req.k >= 0) != (req.c >= 0)) throw CLI::ValidationError("--k and --c must be given together");
  if (req.problem == "role" && req.h < 1) throw CLI::ValidationError("--h is required for role");
}

inline std::string stats_csv(const SolveStats& s) {
  return std::to_string(s.subsets_tried) + "," + std::to_string(s.partial_homs_tried) + "," + std::to_string(s.ilp_solves) +
         "," + std::to_string(s.dp_calls) + "," + std::to_string(s.branches);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline int run_bench(const std::string& suite, const ProblemRequest& req, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(suite)) throw InputError("suite is not a directory: " + suite);
  const std::string guest_suffix = ".guest.gr";
  std::vector<std::string> stems;
  for (const auto& entry : fs::directory_iterator(suite)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > guest_suffix.size() && name.ends_with(guest_suffix)) {
      stems.push_back(name.substr(0, name.size() - guest_suffix.size()));
    }
  }
  std::sort(stems.begin(), stems.end());
  out << "instance,answer,wall_ms,subsets_tried,partial_homs_tried,ilp_solves,dp_calls,branches,route\n";
  for (const auto& stem : stems) {
    const fs::path base = fs::path(suite) / stem;
    std::string answer;
    std::string route;
    SolveStats stats;
    const auto start = std::chrono::steady_clock::now();
    try {
      Graph g = read_graph_file(base.string() + guest_suffix);
      std::optional<Graph> host;
      if (req.problem != "role") host = read_graph_file(base.string() + ".host.gr");
      auto r = solve_problem(req, g, host ? &*host : nullptr);
      answer = r.answer ? "yes" : "no";
      route = r.route;
      stats = r.stats;
    } catch (const BudgetExceeded& e) {
      answer = "budget";
      err << stem << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
      answer = "error";
      err << stem << ": " << e.what() << '\n';
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << csv_field(stem) << ',' << answer << ',' << ms << ',' << stats_csv(stats) << ',' << csv_field(route) << '\n';
  }
  return kYes;
}

inline int run_types(const std::string& path, int k, int c, std::ostream& out) {
  Graph g = read_graph_file(path);
  if ((k >= 0) != (c >= 0)) throw CLI::ValidationError("--k and --c must be given together");
  if (k < 0) {
    auto p = discover_fracture_params(g);
    k = p.k;
    c = p.c;
  }
  auto d = find_c_deletion_set(g, c, k);
  if (!d) {
    out << "# no " << c << "-deletion set of size at most " << k << '\n';
    return kNo;
  }
  auto census = compute_types(g, *d);
  out << "# k " << k << " c " << c << " deletion set";
  for (Vertex v : *d) out << ' ' << v + 1;
  out << '\n';
  for (std::size_t t = 0; t < census.types.size(); ++t) {
    const auto& type = census.types[t];
    out << "# type " << t + 1 << " count " << census.counts[t] << " base " << type.canonical.base << '\n';
    write_graph(out, type.canonical.graph);
  }
  return kYes;
}

}  // namespace detail

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solvers for locally constrained graph homomorphisms", "locohom"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  ProblemRequest req;
  std::string guest_path;
  std::string host_path;
  std::string json_path;
  auto* solve = app.add_subcommand("solve", "Decide an instance and print a JSON witness");
  solve->add_option("--problem", req.problem)->required()->check(CLI::IsMember({"lbhom", "lshom", "lihom", "role"}));
  solve->add_option("--guest", guest_path)->required();
  solve->add_option("--host", host_path);
  solve->add_option("--h", req.h)->check(CLI::PositiveNumber);
  solve->add_option("--k", req.k)->check(CLI::NonNegativeNumber);
  solve->add_option("--c", req.c)->check(CLI::NonNegativeNumber);
  solve->add_option("--algo", req.algo)->check(CLI::IsMember({"auto", "fpt", "brute"}));
  solve->add_option("--json", json_path);
  solve->add_option("--threads", req.threads)->check(CLI::PositiveNumber);

  std::string out_prefix;
  auto* generate = app.add_subcommand("generate", "Write generated instances");
  generate->require_subcommand(1);
  std::vector<int> part_a;
  int part_b = 0;
  bool relaxed = false;
  auto* three = generate->add_subcommand("3part", "3-Partition reduction pair for LBHom / LSHom");
  three->add_option("--a", part_a)->required()->delimiter(',');
  three->add_option("--b", part_b)->required();
  three->add_flag("--relaxed", relaxed, "Accept any 1 <= a_i < b");
  three->add_option("--out-prefix", out_prefix)->required();
  std::string variant;
  std::string input_path;
  int part_k = 0;
  auto* hpart = generate->add_subcommand("hpart", "H'-Partition reduction pair for LIHom");
  hpart->add_option("--variant", variant)->required()->check(CLI::IsMember({"p3", "k3"}));
  hpart->add_option("--input", input_path)->required();
  hpart->add_option("--k", part_k)->required();
  hpart->add_option("--out-prefix", out_prefix)->required();
  int rn = 0, rk = 0, rc = 0;
  std::uint64_t seed = 0;
  auto* random = generate->add_subcommand("random", "Random graph with a planted c-deletion set");
  random->add_option("--n", rn)->required();
  random->add_option("--k", rk)->required();
  random->add_option("--c", rc)->required();
  random->add_option("--seed", seed)->required();
  random->add_option("--out-prefix", out_prefix)->required();

  std::string mapping_path;
  std::string mode_name_arg;
  auto* verify = app.add_subcommand("verify", "Check a mapping file against a guest and host");
  verify->add_option("--guest", guest_path)->required();
  verify->add_option("--host", host_path)->required();
  verify->add_option("--mapping", mapping_path)->required();
  verify->add_option("--mode", mode_name_arg)->required()->check(CLI::IsMember({"s", "b", "i"}));

  std::string suite;
  auto* bench = app.add_subcommand("bench", "Solve every NAME.guest.gr (with NAME.host.gr) in a directory; CSV output");
  bench->add_option("--suite", suite)->required();
  bench->add_option("--problem", req.problem)->check(CLI::IsMember({"lbhom", "lshom", "lihom", "role"}));
  bench->add_option("--algo", req.algo)->check(CLI::IsMember({"auto", "fpt", "brute"}));
  bench->add_option("--h", req.h)->check(CLI::PositiveNumber);
  bench->add_option("--threads", req.threads)->check(CLI::PositiveNumber);

  std::string types_path;
  int types_k = -1, types_c = -1;
  auto* types = app.add_subcommand("types", "Dump the extension types of a graph around a deletion set");
  types->add_option("--graph", types_path)->required();
  types->add_option("--k", types_k)->check(CLI::NonNegativeNumber);
  types->add_option("--c", types_c)->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*bench && req.problem.empty()) req.problem = "lbhom";
    if (*solve || *bench) detail::check_params(req);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kYes;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*solve) {
      Graph g = read_graph_file(guest_path);
      std::optional<Graph> host;
      if (!host_path.empty()) host = read_graph_file(host_path);
      auto r = solve_problem(req, g, host ? &*host : nullptr);
      const std::string text = witness_to_json(detail::to_witness(r)).dump();
      out << text << '\n';
      if (!json_path.empty()) write_text_file(json_path, text + "\n");
      return r.answer ? kYes : kNo;
    }
    if (*three) {
      auto pair = gen_3partition_reduction(part_a, part_b, !relaxed);
      write_text_file(out_prefix + ".guest.gr", to_graph_string(pair.guest));
      write_text_file(out_prefix + ".host.gr", to_graph_string(pair.host));
      out << out_prefix << ".guest.gr\n" << out_prefix << ".host.gr\n";
      if (pair.witness) {
        write_text_file(out_prefix + ".witness.json", witness_to_json({true, *pair.witness, std::nullopt}).dump() + "\n");
        out << out_prefix << ".witness.json\n";
      }
      out << "3-partition: " << (pair.witness ? "yes" : "no") << '\n';
      return kYes;
    }
    if (*hpart) {
      Graph g_prime = read_graph_file(input_path);
      auto pair = gen_hprime_partition_reduction(g_prime, variant == "p3" ? PartitionVariant::P3 : PartitionVariant::K3, part_k);
      write_text_file(out_prefix + ".guest.gr", to_graph_string(pair.guest));
      write_text_file(out_prefix + ".host.gr", to_graph_string(pair.host));
      out << out_prefix << ".guest.gr\n" << out_prefix << ".host.gr\n";
      return kYes;
    }
    if (*random) {
      Graph g = gen_random_bounded_fracture(rn, rk, rc, seed);
      write_text_file(out_prefix + ".gr", to_graph_string(g));
      out << out_prefix << ".gr\n";
      return kYes;
    }
    if (*verify) {
      Graph g = read_graph_file(guest_path);
      Graph h = read_graph_file(host_path);
      Witness w = read_witness_file(mapping_path);
      if (!w.answer) throw InputError("mapping file holds a no-answer");
      const Mode mode = mode_name_arg == "s" ? Mode::surj() : mode_name_arg == "b" ? Mode::bij() : Mode::inj();
      if (static_cast<int>(w.mapping.size()) != g.order()) {
        throw InputError("mapping has " + std::to_string(w.mapping.size()) + " entries, guest has " + std::to_string(g.order()) + " vertices");
      }
      for (Vertex x : w.mapping) {
        if (x >= h.order()) throw InputError("mapping image " + std::to_string(x + 1) + " is not a host vertex");
      }
      if (auto violation = find_violation(g, h, w.mapping, mode)) {
        out << "invalid: " << *violation << '\n';
        return kNo;
      }
      out << "valid\n";
      return kYes;
    }
    if (*bench) return detail::run_bench(suite, req, out, err);
    if (*types) return detail::run_types(types_path, types_k, types_c, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const PreconditionError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}

}  // namespace locohom::cli
