// Copyright 2026 The twomatch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twomatch/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <sstream>

#include "twomatch/extform.hpp"
#include "twomatch/flawed.hpp"
#include "twomatch/lp.hpp"
#include "twomatch/matching.hpp"
#include "twomatch/model.hpp"
#include "twomatch/oracle.hpp"
#include "twomatch/separation.hpp"

namespace twomatch {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Coalition parse_coalition(const std::string& text, int n) {
  std::vector<VertexId> members;
  for (const auto& item : split_list(text)) {
    VertexId v = -1;
    try {
      v = std::stoi(item);
    } catch (const std::exception&) {
      throw UsageError("malformed vertex id '" + item + "'");
    }
    if (v < 0 || v >= n) throw UsageError("vertex " + item + " out of range");
    members.push_back(v);
  }
  if (members.empty()) throw UsageError("empty coalition");
  return Coalition(std::move(members));
}

std::string verdict_line(const std::optional<Violation>& v) {
  return v ? "VIOLATED " + v->summary() : std::string("IN_CORE");
}

void write_details(const Violation& v, std::ostream& out) {
  out << "details\n";
  out << "  kind " << to_string(v.kind) << "\n";
  out << "  members";
  for (VertexId x : v.coalition.members()) out << " " << x;
  out << "\n";
  out << "  allocated " << v.allocated << "\n";
  out << "  bound " << v.bound << "\n";
  if (!v.witness_edges.empty()) {
    out << "  witness_edges";
    for (EdgeId e : v.witness_edges) out << " " << e;
    out << "\n";
  }
  out << "end\n";
}

void write_walk(const char* tag, const ConstraintFamily::Walk& w,
                std::ostream& out) {
  out << tag << " vertices";
  for (VertexId v : w.vertices) out << " " << v;
  out << " edges";
  for (EdgeId e : w.edges) out << " " << e;
  out << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact core membership for 2-matching games", "twomatch"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string alloc_path;
  std::string output_path;
  std::string coalition_text;
  std::string x_text;
  std::string density_text = "1/2";
  int jobs = 1;
  bool all = false;
  std::string emit_path;
  bool do_check = false;
  bool do_size = false;
  std::uint64_t seed = 1;
  int n_vertices = 6;
  int wmax = 10;

  auto add_instance = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-i,--instance", instance_path,
                                "Game instance file");
    if (required) opt->required();
  };
  auto add_alloc = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-a,--alloc", alloc_path, "Allocation file");
    if (required) opt->required();
  };
  auto add_jobs = [&](CLI::App* sub) {
    sub->add_option("-j,--jobs", jobs, "Worker threads (default 1)")
        ->check(CLI::PositiveNumber);
  };

  auto* value = app.add_subcommand("value", "Print nu(N), or nu(S)");
  add_instance(value, true);
  value->add_option("-S,--coalition", coalition_text,
                    "Comma-separated vertex ids");

  auto* check = app.add_subcommand("check", "Core membership verdict");
  add_instance(check, true);
  add_alloc(check, true);
  add_jobs(check);

  auto* sep = app.add_subcommand("separate", "Verdict with certificate");
  add_instance(sep, true);
  add_alloc(sep, true);
  add_jobs(sep);
  sep->add_flag("--all", all, "List every violated family member");

  auto* ext = app.add_subcommand("extform", "Extended formulation of the core");
  add_instance(ext, true);
  add_alloc(ext, false);
  add_jobs(ext);
  ext->add_option("-e,--emit", emit_path, "Write the LP file");
  ext->add_flag("-c,--check", do_check, "Decide membership of --alloc");
  ext->add_flag("-s,--size", do_size, "Print the size report");

  auto* flaw = app.add_subcommand("flaw", "Layered path method report");
  add_instance(flaw, false);
  add_alloc(flaw, false);

  auto* rnd = app.add_subcommand("random", "Write a random instance");
  rnd->add_option("-s,--seed", seed, "Seed")->required();
  rnd->add_option("-n,--n", n_vertices, "Vertices")->required()->check(
      CLI::Range(1, 64));
  rnd->add_option("-d,--density", density_text, "Edge probability (a/b)");
  rnd->add_option("-w,--wmax", wmax, "Largest weight")->check(
      CLI::NonNegativeNumber);
  rnd->add_option("-o,--output", output_path, "Output file (default stdout)");

  auto* orc = app.add_subcommand("oracle", "Exhaustive reference checks");
  orc->require_subcommand(1);
  auto* o_nu = orc->add_subcommand("nu", "nu(S) by enumeration");
  add_instance(o_nu, true);
  o_nu->add_option("-S,--coalition", coalition_text,
                   "Comma-separated vertex ids");
  auto* o_core = orc->add_subcommand("core", "Coalition-by-coalition check");
  add_instance(o_core, true);
  add_alloc(o_core, true);
  auto* o_cons = orc->add_subcommand("constraints", "List cycles and paths");
  add_instance(o_cons, true);
  auto* o_ccheck =
      orc->add_subcommand("constraint-check", "Check via cycles and paths");
  add_instance(o_ccheck, true);
  add_alloc(o_ccheck, true);
  auto* o_neg =
      orc->add_subcommand("negcycle", "Most negative cycle of G2 under p");
  add_instance(o_neg, true);
  add_alloc(o_neg, true);
  auto* o_cuts = orc->add_subcommand("cuts", "Cut inequalities for x on G");
  add_instance(o_cuts, true);
  o_cuts->add_option("-x,--x", x_text, "Comma-separated edge values")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    auto load = [&]() { return read_instance_file(instance_path); };

    if (*value) {
      const Instance inst = load();
      if (coalition_text.empty()) {
        out << max_weight_b_matching(inst).weight << "\n";
      } else {
        out << nu(inst, parse_coalition(coalition_text, inst.n())) << "\n";
      }
      return kExitOk;
    }
    if (*check || *sep) {
      const Instance inst = load();
      const Allocation p = read_allocation_file(alloc_path, inst);
      const auto verdict = separate(inst, p, SeparationOptions{jobs});
      out << verdict_line(verdict.violation) << "\n";
      if (*sep && verdict.violation) {
        if (all) {
          const auto every = separate_all(inst, p);
          out << "violations " << every.size() << "\n";
          for (const auto& v : every) out << "  " << v.summary() << "\n";
        } else {
          write_details(*verdict.violation, out);
        }
      }
      return verdict.in_core() ? kExitOk : kExitViolated;
    }
    if (*ext) {
      const int modes = (emit_path.empty() ? 0 : 1) + (do_check ? 1 : 0) +
                        (do_size ? 1 : 0);
      if (modes != 1) {
        throw UsageError("extform needs exactly one of --emit, --check, --size");
      }
      const Instance inst = load();
      if (!emit_path.empty()) {
        const ConstraintSystem sys = build_extended_formulation(inst);
        std::ofstream file(emit_path);
        if (!file) throw std::ios_base::failure("cannot write " + emit_path);
        emit_lp(sys, file);
        out << "wrote " << sys.variable_count() << " variables, "
            << sys.constraint_count() << " constraints to " << emit_path
            << "\n";
        return kExitOk;
      }
      if (do_size) {
        out << format_size_report(size_report(inst));
        return kExitOk;
      }
      if (alloc_path.empty()) throw UsageError("extform --check needs --alloc");
      const Allocation p = read_allocation_file(alloc_path, inst);
      const auto result = check_membership(inst, p, jobs);
      out << (result.in_core ? "InCore" : "NotInCore") << "\n";
      if (!result.in_core) out << "failed " << result.failed << "\n";
      return result.in_core ? kExitOk : kExitViolated;
    }
    if (*flaw) {
      if (instance_path.empty() != alloc_path.empty()) {
        throw UsageError("flaw takes both --instance and --alloc, or neither");
      }
      if (instance_path.empty()) {
        out << demo_counterexample();
      } else {
        const Instance inst = load();
        out << flawed_report(inst, read_allocation_file(alloc_path, inst));
      }
      return kExitOk;
    }
    if (*rnd) {
      auto density = Rational::try_parse(density_text);
      if (!density) density = Rational::try_parse_decimal(density_text);
      if (!density || density->sign() < 0 || *density > Rational(1)) {
        throw UsageError("density must be a rational in [0,1]");
      }
      const Instance inst = random_instance(seed, n_vertices, *density, wmax);
      if (output_path.empty()) {
        write_instance(inst, out);
      } else {
        std::ofstream file(output_path);
        if (!file) throw std::ios_base::failure("cannot write " + output_path);
        write_instance(inst, file);
      }
      return kExitOk;
    }
    if (*orc) {
      const Instance inst = load();
      if (*o_nu) {
        const Coalition s = coalition_text.empty()
                                ? Coalition::grand(inst.n())
                                : parse_coalition(coalition_text, inst.n());
        out << nu_bruteforce(inst, s) << "\n";
        return kExitOk;
      }
      if (*o_cons) {
        const auto family = enumerate_constraints(inst);
        out << "cycles " << family.cycles.size() << "\n";
        for (const auto& c : family.cycles) write_walk("cycle", c, out);
        out << "paths " << family.paths.size() << "\n";
        for (const auto& path : family.paths) write_walk("path", path, out);
        return kExitOk;
      }
      if (*o_cuts) {
        const CostedGraph g = [&] {
          CostedGraph h = CostedGraph::from_costs(
              inst.n(),
              std::vector<Edge>(inst.edges().begin(), inst.edges().end()),
              std::vector<Rational>(static_cast<size_t>(inst.m())));
          return h;
        }();
        std::vector<Rational> x;
        for (const auto& item : split_list(x_text)) {
          auto v = Rational::try_parse(item);
          if (!v) throw UsageError("malformed rational '" + item + "'");
          x.push_back(*v);
        }
        if (static_cast<int>(x.size()) != inst.m()) {
          throw UsageError("--x needs one value per edge");
        }
        const auto cut = check_cut_system(g, x);
        if (!cut) {
          out << "holds\n";
          return kExitOk;
        }
        out << "violated edge=" << cut->edge << " side={";
        for (size_t i = 0; i < cut->side.size(); ++i) {
          out << (i ? "," : "") << cut->side[i];
        }
        out << "}\n";
        return kExitViolated;
      }
      const Allocation p = read_allocation_file(alloc_path, inst);
      if (*o_core || *o_ccheck) {
        const auto v = *o_core ? core_check_bruteforce(inst, p)
                               : constraint_check_bruteforce(inst, p);
        out << verdict_line(v) << "\n";
        return v ? kExitViolated : kExitOk;
      }
      if (*o_neg) {
        const CostedGraph g = build_g2(inst, &p);
        const auto c = negative_cycle_bruteforce(g);
        if (!c) {
          out << "none\n";
          return kExitOk;
        }
        out << "cycle vertices";
        for (VertexId v : c->vertices) out << " " << g.labels[v];
        out << " cost " << c->cost << "\n";
        return kExitViolated;
      }
    }
    throw UsageError("unknown command");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return kExitSizeGuard;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitFile;
  } catch (const std::ios_base::failure& e) {
    err << "file error: " << e.what() << "\n";
    return kExitFile;
  } catch (const ModelError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitFile;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace twomatch
