#include <CLI11.hpp>

#include <chordwalk/errors.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitDisagree = 3;

struct Flags {
  int n = 100;
  std::string m = "none";
  std::string m_list;
  int start = 1;
  double t_max = -1.0;
  double dt = -1.0;
  double gamma = 1.0;
  std::string solver = "dense";
  std::string format = "csv";
  std::string out;
  std::string config;
  bool quick = false;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chordwalk::DomainError("cannot read config " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw chordwalk::DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    for (auto& c : key)
      if (c == '_') c = '-';
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

// Config values fill in every option the command line left untouched.
void apply_config(CLI::App* sub, const std::string& path) {
  for (const auto& [key, value] : read_config(path)) {
    if (key == "config") continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) throw chordwalk::DomainError("unknown config key '" + key + "' for " + sub->get_name());
    if (opt->count() > 0) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") opt->add_result("true");
    } else {
      opt->add_result(value);
    }
    opt->run_callback();
  }
}

std::optional<int> parse_m(const std::string& s) {
  if (s == "none") return std::nullopt;
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw chordwalk::DomainError("--m must be an integer or 'none', got '" + s + "'");
  return v;
}

cli::Solver parse_solver(const std::string& s) {
  if (s == "dense") return cli::Solver::Dense;
  if (s == "chebyshev") return cli::Solver::Chebyshev;
  if (s == "both") return cli::Solver::Both;
  throw chordwalk::DomainError("--solver must be dense, chebyshev or both");
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

// results.csv -> results_m21.csv
std::string sweep_path(const std::string& out, int m) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  const std::string tag = "_m" + std::to_string(m);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + tag;
  return out.substr(0, dot) + tag + out.substr(dot);
}

cli::Table run(const cli::RunRequest& req) {
  if (req.command == "spectrum") return cli::cmd_spectrum(req);
  if (req.command == "eigenstate") return cli::cmd_eigenstate(req);
  if (req.command == "evolve") return cli::cmd_evolve(req);
  if (req.command == "limiting") return cli::cmd_limiting(req);
  return cli::cmd_trap(req);
}

void emit(const cli::Table& t, const cli::RunRequest& req) {
  auto write = [&](std::ostream& os) {
    if (req.format == "json")
      cli::write_json(t, os);
    else
      cli::write_csv(t, os);
  };
  if (req.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(req.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + req.out);
  write(f);
}

void add_common(CLI::App* sub, Flags& f, bool with_time) {
  sub->add_option("--n", f.n, "Number of nodes");
  sub->add_option("--m", f.m, "Chord endpoint, or 'none' for the bare cycle");
  sub->add_option("--m-list", f.m_list, "Comma separated chord endpoints; one output file each");
  sub->add_option("--solver", f.solver, "dense | chebyshev | both");
  sub->add_option("--format", f.format, "csv | json");
  sub->add_option("--out", f.out, "Output path (stdout if omitted)");
  sub->add_option("--config", f.config, "key=value file; command line flags win");
  sub->add_option("--start", f.start, "Start node");
  if (with_time) {
    sub->add_option("--t-max", f.t_max, "Final time");
    sub->add_option("--dt", f.dt, "Time step");
    sub->add_option("--gamma", f.gamma, "Trap strength");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum walks on a cycle with one chord"};
  app.require_subcommand(1);
  Flags f;

  std::vector<CLI::App*> subs;
  for (auto [name, help, timed] :
       {std::tuple{"spectrum", "Laplacian eigenvalues", false},
        {"eigenstate", "Largest-eigenvalue eigenvector and its decay prediction", false},
        {"evolve", "Return probability pi_jj(t)", true},
        {"limiting", "Long-time averaged distribution chi_kj", false},
        {"trap", "Survival probability with a trap at node 1", true}}) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, f, timed);
    subs.push_back(sub);
  }
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_flag("--quick", f.quick, "Small sizes only");
  verify->add_option("--config", f.config, "key=value file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!f.config.empty()) apply_config(active, f.config);
    if (active == verify) return cli::cmd_verify(f.quick) == 0 ? 0 : kExitFailure;

    cli::RunRequest base;
    base.command = active->get_name();
    base.n = f.n;
    base.start = f.start;
    base.t_max = f.t_max;
    base.dt = f.dt;
    base.gamma = f.gamma;
    base.solver = parse_solver(f.solver);
    base.format = f.format;
    base.out = f.out;

    std::vector<cli::RunRequest> requests;
    if (!f.m_list.empty()) {
      if (f.out.empty()) throw chordwalk::DomainError("--m-list needs --out to name the files");
      for (const auto& item : split(f.m_list)) {
        auto r = base;
        r.m = parse_m(item);
        if (!r.m) throw chordwalk::DomainError("--m-list entries must be integers");
        r.out = sweep_path(f.out, *r.m);
        requests.push_back(r);
      }
    } else {
      base.m = parse_m(f.m);
      requests.push_back(base);
    }
    for (const auto& r : requests) cli::validate(r);

    std::vector<std::future<int>> jobs;
    for (const auto& r : requests) {
      jobs.push_back(std::async(std::launch::async, [r] {
        try {
          emit(run(r), r);
          return 0;
        } catch (const cli::SolverDisagreement& d) {
          emit(d.table, r);
          std::fprintf(stderr, "solvers disagree: max |dE| = %.3e\n", d.delta);
          return kExitDisagree;
        }
      }));
    }
    int status = 0;
    for (auto& j : jobs) status = std::max(status, j.get());
    return status;
  } catch (const chordwalk::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}
