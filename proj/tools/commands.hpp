#pragma once

#include <chordwalk/graph.hpp>

#include <optional>
#include <string>

#include "table.hpp"

namespace cli {

enum class Solver { Dense, Chebyshev, Both };

struct RunRequest {
  std::string command;
  int n = 100;
  std::optional<int> m;  // empty selects the pure cycle
  int start = 1;
  double t_max = -1.0;   // negative selects the per-command default
  double dt = -1.0;
  double gamma = 1.0;
  Solver solver = Solver::Dense;
  std::string format = "csv";
  std::string out;

  chordwalk::GraphSpec graph() const;
};

// Thrown when the two solvers disagree beyond tolerance; carries the table.
struct SolverDisagreement {
  Table table;
  double delta;
};

/// Throws chordwalk::DomainError on any invalid parameter.
void validate(const RunRequest& req);

Table cmd_spectrum(const RunRequest& req);
Table cmd_eigenstate(const RunRequest& req);
Table cmd_evolve(const RunRequest& req);
Table cmd_limiting(const RunRequest& req);
Table cmd_trap(const RunRequest& req);

/// Prints one line per check; returns the number of failures.
int cmd_verify(bool quick);

std::string solver_name(Solver s);

}  // namespace cli
