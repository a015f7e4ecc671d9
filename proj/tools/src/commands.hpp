#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "document.hpp"

namespace equispectra::cli {

/// Stable exit-code contract.
enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kInputError = 2 };

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::optional<double> tol;
  std::string out;  // output directory; documents go to stdout when empty
  std::string command_line;
};

/// What a command prints on stdout. Timings live here and never in the
/// output documents, which stay byte-identical across runs.
struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<StageTiming> timings;
  std::vector<CheckVerdict> verdicts;
  std::vector<std::string> outputs;
  Json details = Json::object();

  void add(std::string name, bool pass, std::string detail = {});
  void skip(std::string name, std::string reason);
  bool passed() const;
  Json to_json() const;
};

struct EquivariantizeArgs {
  std::string pencil;  // path or builtin name (disk, hermitian, quartic)
  std::string group;   // path or builtin name (disk-so2, hermitian-su2, quartic-o2, trivial:<n>)
  std::string shift;   // comma-separated rationals
  std::string basis;   // semicolon-separated polynomials
  bool orthonormal_view = false;
};

struct CheckArgs {
  std::string which;
  std::vector<std::string> inputs;
  std::string point;               // rigid: base point, comma-separated
  std::size_t directions = 100;    // rigid
  std::size_t instances = 100;     // kostant
  std::size_t conjugates = 5000;   // kostant
};

int run_equivariantize(const EquivariantizeArgs& args, const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int run_reduce(const std::string& family, std::size_t n, const std::string& objective, const GlobalOptions& opts,
               std::ostream& out, std::ostream& err);
int run_check(const CheckArgs& args, const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int run_examples(const std::string& name, const GlobalOptions& opts, std::ostream& out, std::ostream& err);

/// Pencil from a path, an output document, or a builtin name.
AffinePencil resolve_pencil(const std::string& source);
GroupSpec resolve_group(const std::string& source);
RationalVector parse_rational_list(const std::string& text);

}  // namespace equispectra::cli
