// Front end for the `entclone` tool: fidelity table, optimal coefficients,
// entanglement-of-formation curves and the verification suite, as CSV / JSON.
#pragma once

#include "entclone/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace entclone::cli {

enum class Command { table, optimal, eof_curve, clone_curve, verify };
enum class Format { csv, json, text };

std::string_view to_string(Command c);
std::string_view to_string(Format f);
std::optional<Command> parse_command(std::string_view name);
std::optional<Format> parse_format(std::string_view name);

struct RunConfig {
  Command command = Command::table;
  // 0 = use the command's default range
  int d_min = 0;
  int d_max = 0;
  Format format = Format::csv;
  int grid = 200;
  std::uint64_t seed = 1;
  int trials = 100;
  double tol_ppt = 1e-9;
  bool inject_broken = false;
  std::string out;  // empty = standard output
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fills in the default d-range and checks every bound; throws UsageError.
RunConfig resolve(RunConfig cfg);

/// Largest d accepted by the command (simulation-backed commands stop at 6).
int max_dimension(Command c);

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

Table cmd_table(const RunConfig& cfg);
Table cmd_optimal(const RunConfig& cfg);
Table cmd_eof_curve(const RunConfig& cfg);
Table cmd_clone_curve(const RunConfig& cfg);

struct VerifyRun {
  Table table;
  std::vector<VerifyReport> reports;
};
VerifyRun cmd_verify(const RunConfig& cfg);

/// Shortest round-trip decimal form.
std::string format_full(double x);
/// Fixed `decimals` places, ties rounded to even.
std::string format_display(double x, int decimals = 4);

std::string render_csv(const Table& t);
std::string render_json(const Table& t, const RunConfig& cfg);
std::string render_text(const Table& t);

/// Runs a resolved config; returns the process exit code (0 ok, 1 verification failure).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs.
/// Exit codes: 0 success, 1 verification failure, 2 usage error.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entclone::cli
