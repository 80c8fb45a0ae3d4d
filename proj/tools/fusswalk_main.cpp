// fusswalk: workbench for 2-Dyck paths, non-crossing spanning trees, the
// adjacent-move and flip Markov chains, canonical-path comparison, and
// desk-scale spectral/mixing analysis.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fusswalk/bijection.hpp"
#include "fusswalk/canonical.hpp"
#include "fusswalk/caps.hpp"
#include "fusswalk/chains.hpp"
#include "fusswalk/dyck.hpp"
#include "fusswalk/errors.hpp"
#include "fusswalk/ncst.hpp"
#include "fusswalk/rng.hpp"
#include "fusswalk/spectral.hpp"
#include "fusswalk/verify.hpp"
#include "fusswalk/version.hpp"

namespace {

using fusswalk::ChainKind;
using json = nlohmann::ordered_json;

// Every structured output begins with a '#'-prefixed JSON header line
// carrying version, subcommand and seed; identical invocations produce
// byte-identical output.
std::string header_line(const std::string& subcommand,
                        std::optional<std::uint64_t> seed) {
  json h;
  h["version"] = fusswalk::kVersion;
  h["subcommand"] = subcommand;
  if (seed)
    h["seed"] = *seed;
  else
    h["seed"] = nullptr;
  return "#" + h.dump();
}

// Output sink: --output FILE or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw CLI::ValidationError("cannot open " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += "\"\"";
    else
      out.push_back(c);
  }
  out += "\"";
  return out;
}

ChainKind parse_chain(const std::string& name) {
  return name == "am" ? ChainKind::kAdjacentMove : ChainKind::kFlipMove;
}

int effective_cap(int default_cap, int flag_cap) {
  if (flag_cap < 0) return default_cap;
  if (flag_cap > default_cap)
    std::cerr << "warning: cap " << flag_cap << " overrides the default "
              << default_cap << "\n";
  return flag_cap;
}

json summary_json(const std::string& subcommand,
                  std::optional<std::uint64_t> seed) {
  json j;
  j["version"] = fusswalk::kVersion;
  j["subcommand"] = subcommand;
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  return j;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw CLI::ValidationError("empty list");
  return out;
}

std::string edge_text(fusswalk::Edge e) {
  return std::to_string(e.a) + "-" + std::to_string(e.b);
}

// The documented JSON form of a tree: {"n": ..., "edges": [[a,b], ...]}.
json tree_json(const fusswalk::Ncst& t) {
  json j;
  j["n"] = t.size();
  json edges = json::array();
  for (fusswalk::Edge e : t.edges()) edges.push_back({e.a, e.b});
  j["edges"] = edges;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"Fuss-Catalan structures, flip/adjacent-move chains, and "
               "canonical-path comparison workbench"};
  app.require_subcommand(1);

  // ---- count ----
  int count_k = 2;
  long long count_n = 0;
  auto* count = app.add_subcommand("count", "Fuss-Catalan number C_{k,n}");
  count->add_option("--k", count_k, "family index (default 2)");
  count->add_option("--n", count_n, "size")->required();
  count->callback([&] {
    std::cout << fusswalk::fuss_catalan(count_k, count_n).str() << "\n";
  });

  // ---- enumerate ----
  std::string enum_kind = "paths", enum_output;
  int enum_n = 0, enum_cap = -1;
  auto* enumerate =
      app.add_subcommand("enumerate", "List all paths or trees of size n");
  enumerate->add_option("--kind", enum_kind, "paths or trees")
      ->check(CLI::IsMember({"paths", "trees"}));
  enumerate->add_option("--n", enum_n, "size")->required();
  enumerate->add_option("--cap", enum_cap, "override the enumeration cap");
  enumerate->add_option("--output", enum_output,
                        "output file (default stdout)");
  enumerate->callback([&] {
    const int cap = effective_cap(fusswalk::caps().enumeration, enum_cap);
    json items = json::array();
    if (enum_kind == "paths") {
      for (const auto& p : fusswalk::enumerate_paths(enum_n, cap))
        items.push_back(p.str());
    } else {
      for (const auto& t : fusswalk::enumerate_trees(enum_n, cap))
        items.push_back(t.str());
    }
    Sink sink(enum_output);
    sink.out() << header_line("enumerate", std::nullopt) << "\n"
               << items.dump() << "\n";
  });

  // ---- bijection ----
  std::string bij_path, bij_tree;
  auto* bijection = app.add_subcommand(
      "bijection", "Map a path to its tree or a tree to its path");
  bijection->add_option("--path", bij_path, "2-Dyck path, e.g. UUDUUD");
  bijection->add_option("--tree", bij_tree, "tree, e.g. 0-1,1-2");
  bijection->callback([&] {
    if (bij_path.empty() == bij_tree.empty())
      throw CLI::ValidationError("give exactly one of --path / --tree");
    if (!bij_path.empty())
      std::cout << fusswalk::path_to_tree(fusswalk::parse_path(bij_path)).str()
                << "\n";
    else
      std::cout
          << fusswalk::tree_to_path(fusswalk::Ncst::parse(bij_tree)).str()
          << "\n";
  });

  // ---- walk ----
  std::string walk_chain = "am", walk_emit = "histogram", walk_output;
  int walk_n = 0;
  long walk_steps = 0;
  std::uint64_t walk_seed = 0;
  auto* walk =
      app.add_subcommand("walk", "Run a chain and emit the trajectory");
  walk->add_option("--chain", walk_chain, "am or fm")
      ->check(CLI::IsMember({"am", "fm"}));
  walk->add_option("--n", walk_n, "size")->required();
  walk->add_option("--steps", walk_steps, "number of steps")->required();
  walk->add_option("--seed", walk_seed, "rng seed (default 0)");
  walk->add_option("--emit", walk_emit, "trace or histogram")
      ->check(CLI::IsMember({"trace", "histogram"}));
  walk->add_option("--output", walk_output, "output file (default stdout)");
  walk->callback([&] {
    Sink sink(walk_output);
    auto& out = sink.out();
    out << header_line("walk", walk_seed) << "\n";
    out << (walk_emit == "trace" ? "step,state" : "state,count") << "\n";
    fusswalk::RngStream rng(walk_seed);
    std::map<std::string, long> histogram;
    auto record = [&](long step, const std::string& state) {
      if (walk_emit == "trace")
        out << step << "," << csv_quote(state) << "\n";
      else
        ++histogram[state];
    };
    if (parse_chain(walk_chain) == ChainKind::kAdjacentMove) {
      auto x = fusswalk::top_path(walk_n);
      for (long t = 1; t <= walk_steps; ++t) {
        x = fusswalk::am_step(x, rng);
        record(t, x.str());
      }
    } else {
      auto t0 = fusswalk::path_to_tree(fusswalk::top_path(walk_n));
      for (long t = 1; t <= walk_steps; ++t) {
        t0 = fusswalk::fm_step(t0, rng);
        record(t, t0.str());
      }
    }
    if (walk_emit == "histogram")
      for (const auto& [state, times] : histogram)
        out << csv_quote(state) << "," << times << "\n";
  });

  // ---- path ----
  std::string path_from, path_to, path_output;
  auto* pathcmd = app.add_subcommand(
      "path", "Canonical flip path simulating one adjacent move");
  pathcmd->add_option("--from", path_from, "initial 2-Dyck path")->required();
  pathcmd->add_option("--to", path_to, "final 2-Dyck path")->required();
  pathcmd->add_option("--output", path_output,
                      "output file (default stdout)");
  pathcmd->callback([&] {
    const auto i = fusswalk::parse_path(path_from);
    const auto f = fusswalk::parse_path(path_to);
    const auto cp = fusswalk::build_path(i, f);
    json j = summary_json("path", std::nullopt);
    j["from"] = i.str();
    j["to"] = f.str();
    j["direction"] = fusswalk::to_string(cp.direction);
    j["type"] = fusswalk::to_string(cp.move_type);
    j["start_tree"] = tree_json(fusswalk::path_to_tree(i));
    json steps = json::array();
    for (int k = 0; k < static_cast<int>(cp.steps.size()); ++k) {
      const auto& s = cp.steps[static_cast<std::size_t>(k)];
      const auto tr = fusswalk::encode(cp, k);
      json e;
      e["tree"] = tree_json(s.after);
      e["removed"] = edge_text(s.removed);
      e["added"] = edge_text(s.added);
      e["tag"] = fusswalk::to_string(s.tag);
      e["depth"] = s.depth;
      e["encoding"] = fusswalk::to_string(tr.move_tag);
      steps.push_back(e);
    }
    j["steps"] = steps;
    Sink sink(path_output);
    sink.out() << header_line("path", std::nullopt) << "\n"
               << j.dump() << "\n";
  });

  // ---- congestion ----
  int cong_n = 0, cong_cap = -1;
  std::string cong_csv;
  auto* congestion = app.add_subcommand(
      "congestion", "Canonical-path usage census and congestion ratio");
  congestion->add_option("--n", cong_n, "size")->required();
  congestion->add_option("--cap", cong_cap, "override the census cap");
  congestion->add_option("--csv", cong_csv,
                         "write the per-transition CSV here (default stdout)");
  congestion->callback([&] {
    const int cap = effective_cap(fusswalk::caps().census, cong_cap);
    const auto report = fusswalk::congestion_census(cong_n, cap);
    std::vector<fusswalk::Ncst> trees;
    for (const auto& p : fusswalk::enumerate_paths(cong_n, cap))
      trees.push_back(fusswalk::path_to_tree(p));
    {
      Sink sink(cong_csv);
      auto& out = sink.out();
      out << header_line("congestion", std::nullopt) << "\n";
      out << "z,z_prime,count\n";
      for (const auto& [key, times] : report.usage)
        out << csv_quote(trees[static_cast<std::size_t>(key.first)].str())
            << ","
            << csv_quote(trees[static_cast<std::size_t>(key.second)].str())
            << "," << times << "\n";
    }
    json j = summary_json("congestion", std::nullopt);
    j["n"] = report.n;
    j["max_count"] = report.max_count;
    j["bound_12n"] = report.bound_12n;
    j["B"] = report.congestion_b.str();
    j["B_float"] = static_cast<double>(report.congestion_b);
    std::cout << j.dump() << "\n";
  });

  // ---- spectrum ----
  std::string spectrum_chain = "am";
  int spectrum_n = 0, spectrum_cap = -1;
  auto* spectrum =
      app.add_subcommand("spectrum", "Spectral gap and relaxation time");
  spectrum->add_option("--chain", spectrum_chain, "am or fm")
      ->check(CLI::IsMember({"am", "fm"}));
  spectrum->add_option("--n", spectrum_n, "size")->required();
  spectrum->add_option("--cap", spectrum_cap, "override the eigen cap");
  spectrum->callback([&] {
    const int cap = effective_cap(fusswalk::caps().eigen, spectrum_cap);
    const auto m =
        fusswalk::transition_matrix(parse_chain(spectrum_chain), spectrum_n, cap);
    const auto s = fusswalk::spectral_gap(m);
    json j = summary_json("spectrum", std::nullopt);
    j["chain"] = spectrum_chain;
    j["n"] = spectrum_n;
    j["states"] = m.states();
    if (s.defined) {
      j["gap"] = s.gap;
      j["relaxation"] = s.relaxation;
      j["lambda_min"] = s.lambda_min;
    } else {
      // single state: the gap's variational form has no admissible function
      j["gap"] = nullptr;
      j["relaxation"] = nullptr;
      j["lambda_min"] = nullptr;
    }
    std::cout << header_line("spectrum", std::nullopt) << "\n"
              << j.dump() << "\n";
  });

  // ---- mix ----
  std::string mix_chain = "am", mix_csv;
  int mix_n = 0, mix_cap = -1;
  auto* mix = app.add_subcommand(
      "mix", "Total-variation decay curve and 1/4 mixing time");
  mix->add_option("--chain", mix_chain, "am or fm")
      ->check(CLI::IsMember({"am", "fm"}));
  mix->add_option("--n", mix_n, "size")->required();
  mix->add_option("--cap", mix_cap, "override the TV cap");
  mix->add_option("--csv", mix_csv,
                  "write the d-curve CSV here (default stdout)");
  mix->callback([&] {
    const int cap = effective_cap(fusswalk::caps().tv, mix_cap);
    const auto m =
        fusswalk::transition_matrix(parse_chain(mix_chain), mix_n, cap);
    const auto report = fusswalk::tv_mixing_time(m, cap);
    {
      Sink sink(mix_csv);
      auto& out = sink.out();
      out << header_line("mix", std::nullopt) << "\n";
      out << "t,d\n";
      char buffer[64];
      for (const auto& [t, d] : report.d_curve) {
        std::snprintf(buffer, sizeof buffer, "%ld,%.12f", t, d);
        out << buffer << "\n";
      }
    }
    json j = summary_json("mix", std::nullopt);
    j["chain"] = mix_chain;
    j["n"] = mix_n;
    j["t_mix"] = report.t_mix;
    j["gap"] = report.gap;
    j["relaxation"] = report.relaxation;
    std::cout << j.dump() << "\n";
  });

  // ---- couple ----
  std::string couple_nlist = "4,6,8,10,12", couple_csv;
  int couple_seeds = 200;
  std::uint64_t couple_seed = 0;
  auto* couple = app.add_subcommand(
      "couple", "Coupled-chain coalescence experiment across sizes");
  couple->add_option("--n-list", couple_nlist, "comma-separated sizes");
  couple->add_option("--seeds", couple_seeds, "seeds per size (default 200)");
  couple->add_option("--seed", couple_seed, "base seed (default 0)");
  couple->add_option("--csv", couple_csv,
                     "write per-seed times here (default stdout)");
  couple->callback([&] {
    const auto sizes = parse_int_list(couple_nlist);
    std::vector<fusswalk::CoalescenceStats> stats;
    for (int n : sizes)
      stats.push_back(
          fusswalk::coalescence_experiment(n, couple_seeds, couple_seed));
    {
      Sink sink(couple_csv);
      auto& out = sink.out();
      out << header_line("couple", couple_seed) << "\n";
      out << "n,seed,time\n";
      for (const auto& st : stats)
        for (int k = 0; k < st.seeds; ++k)
          out << st.n << "," << (couple_seed + static_cast<std::uint64_t>(k))
              << "," << st.times[static_cast<std::size_t>(k)] << "\n";
    }
    json j = summary_json("couple", couple_seed);
    json means = json::array();
    std::vector<std::pair<int, double>> points;
    for (const auto& st : stats) {
      json m;
      m["n"] = st.n;
      m["mean"] = st.mean;
      m["median"] = st.median;
      means.push_back(m);
      points.push_back({st.n, st.mean});
    }
    j["per_n"] = means;
    if (points.size() >= 2) j["loglog_slope"] = fusswalk::loglog_slope(points);
    std::cout << j.dump() << "\n";
  });

  // ---- verify ----
  int verify_max_n = 4;
  auto* verify =
      app.add_subcommand("verify", "Run the cross-module invariant suite");
  verify->add_option("--max-n", verify_max_n, "size ceiling (default 4)");
  verify->callback([&] {
    std::cout << header_line("verify", std::nullopt) << "\n";
    const auto report = fusswalk::run_verification(verify_max_n);
    for (const auto& check : report.checks)
      std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": "
                << check.detail << "\n";
    if (!report.all_passed()) {
      std::cout << "verification FAILED\n";
      std::exit(1);
    }
    std::cout << "verification OK\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the diagnostic
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
