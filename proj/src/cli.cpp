#include "entclone/cli.hpp"

#include "entclone/formulas.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cfenv>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace entclone::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::table: return "table";
    case Command::optimal: return "optimal";
    case Command::eof_curve: return "eof-curve";
    case Command::clone_curve: return "clone-curve";
    case Command::verify: return "verify";
  }
  return "unknown";
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::text: return "text";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::table, Command::optimal, Command::eof_curve, Command::clone_curve, Command::verify}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view name) {
  for (Format f : {Format::csv, Format::json, Format::text}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

int max_dimension(Command c) {
  switch (c) {
    case Command::table:
    case Command::optimal: return 1'000'000;
    case Command::eof_curve:
    case Command::clone_curve: return 1000;
    case Command::verify: return 6;
  }
  return 0;
}

namespace {

std::pair<int, int> default_range(Command c) {
  switch (c) {
    case Command::table:
    case Command::optimal: return {2, 6};
    case Command::eof_curve: return {2, 20};
    case Command::clone_curve: return {2, 200};
    case Command::verify: return {2, 4};
  }
  return {2, 2};
}

}  // namespace

RunConfig resolve(RunConfig cfg) {
  if (cfg.d_min == 0 && cfg.d_max == 0) {
    std::tie(cfg.d_min, cfg.d_max) = default_range(cfg.command);
  } else if (cfg.d_min == 0 || cfg.d_max == 0) {
    throw UsageError("--d-min and --d-max must be given together");
  }
  if (cfg.d_min < 2) throw UsageError("d must be at least 2");
  if (cfg.d_min > cfg.d_max) throw UsageError("d-min exceeds d-max");
  if (cfg.d_max > max_dimension(cfg.command)) {
    throw UsageError(std::string(to_string(cfg.command)) + " accepts d up to " +
                     std::to_string(max_dimension(cfg.command)));
  }
  if (cfg.grid < 2) throw UsageError("--grid must be at least 2");
  if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
  if (!(cfg.tol_ppt >= 0.0)) throw UsageError("--tol-ppt must be nonnegative");
  return cfg;
}

Table cmd_table(const RunConfig& cfg) {
  Table t{{"d", "F_r", "F", "F_u", "F_loc"}, {}};
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    t.rows.push_back({std::int64_t{d}, real_fidelity(d), optimal_fidelity(d), universal_fidelity(d), local_fidelity(d)});
  }
  return t;
}

Table cmd_optimal(const RunConfig& cfg) {
  Table t{{"d", "A", "B", "F", "normalization", "F_coeffs", "Y_printed", "A_printed", "B_printed",
           "normalization_printed", "F_printed"},
          {}};
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    const ClonerCoeffs c = ClonerCoeffs::optimal(d);
    const PrintedCoefficients p = printed_optimal_coefficients(d);
    const ClonerCoeffs cp = ClonerCoeffs::symmetric(d, p.a, p.b);
    t.rows.push_back({std::int64_t{d}, c.a.real(), c.b.real(), optimal_fidelity(d), normalization_lhs(c),
                      fidelity_closed_form(c), p.y, p.a, p.b, normalization_lhs(cp), fidelity_closed_form(cp)});
  }
  return t;
}

Table cmd_eof_curve(const RunConfig& cfg) {
  Table t{{"d", "F", "E_F", "branch", "marker"}, {}};
  auto row = [&t](int d, double f, const char* marker) {
    const EofPoint p = eof_isotropic({d, f});
    t.rows.push_back({std::int64_t{d}, f, p.eof, std::string(to_string(p.branch)), std::string(marker)});
  };
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    const double lo = 1.0 / (static_cast<double>(d) * d);
    for (int k = 0; k < cfg.grid; ++k) {
      const double f = k + 1 == cfg.grid ? 1.0 : lo + (1.0 - lo) * k / (cfg.grid - 1);
      row(d, f, "");
    }
    row(d, optimal_fidelity(d), "circle");
    row(d, crossover_fidelity(d), "cross");
  }
  return t;
}

Table cmd_clone_curve(const RunConfig& cfg) {
  Table t{{"d", "E_in", "E_F_optimal", "E_F_local", "E_in/2", "E_in/4", "branch_optimal", "branch_local"}, {}};
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    const double e_in = input_entanglement(d);
    const EofPoint opt = eof_isotropic({d, optimal_fidelity(d)});
    const EofPoint loc = eof_isotropic({d, local_fidelity(d)});
    t.rows.push_back({std::int64_t{d}, e_in, opt.eof, loc.eof, e_in / 2.0, e_in / 4.0,
                      std::string(to_string(opt.branch)), std::string(to_string(loc.branch))});
  }
  return t;
}

VerifyRun cmd_verify(const RunConfig& cfg) {
  VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.trials = cfg.trials;
  opts.tol.ppt = cfg.tol_ppt;
  opts.inject_broken = cfg.inject_broken;

  VerifyRun run;
  run.table.columns = {"d",
                       "covariance_max_dev",
                       "ppt_min_eig",
                       "ppt_min_eig_local",
                       "isotropy_residual",
                       "trace_dev",
                       "oracle_gap",
                       "separability_min_weight",
                       "separability_certificate_min",
                       "product_clone_dev",
                       "pass_covariance",
                       "pass_ppt",
                       "pass_isotropy",
                       "pass_trace",
                       "pass_oracle",
                       "pass_separability",
                       "pass"};
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    const VerifyReport r = run_verification(d, opts);
    const VerifyReport::Pass p = r.pass();
    run.table.rows.push_back({std::int64_t{d}, r.covariance_max_dev, r.ppt_min_eig, r.ppt_min_eig_local,
                              r.isotropy_residual, r.trace_dev, r.oracle_gap, r.separability_min_weight,
                              r.separability_certificate_min, r.product_clone_dev, p.covariance, p.ppt, p.isotropy,
                              p.trace, p.oracle, p.separability, r.all_pass()});
    run.reports.push_back(r);
  }
  return run;
}

std::string format_full(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string format_display(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double rounded = std::nearbyint(x * scale) / scale;
  std::fesetround(saved);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  return buf;
}

namespace {

struct CellText {
  bool display;
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return display ? format_display(v) : format_full(v); }
  std::string operator()(const std::string& v) const { return v; }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
};

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

}  // namespace

std::string render_csv(const Table& t) {
  std::string s;
  for (std::size_t c = 0; c < t.columns.size(); ++c) s += (c ? "," : "") + t.columns[c];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) s += ',';
      s += std::visit(CellText{false}, row[c]);
    }
    s += '\n';
  }
  return s;
}

std::string render_json(const Table& t, const RunConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["command"] = std::string(to_string(cfg.command));
  doc["config"] = {{"d_min", cfg.d_min},       {"d_max", cfg.d_max},   {"format", std::string(to_string(cfg.format))},
                   {"grid", cfg.grid},         {"seed", cfg.seed},     {"trials", cfg.trials},
                   {"tol_ppt", cfg.tol_ppt}};
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = cell_json(row[c]);
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

std::string render_text(const Table& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows) {
    auto& out = cells.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      out.push_back(std::visit(CellText{true}, row[c]));
      width[c] = std::max(width[c], out.back().size());
    }
  }
  std::ostringstream s;
  auto line = [&](const std::vector<std::string>& v) {
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (c) s << "  ";
      s << std::string(width[c] - v[c].size(), ' ') << v[c];
    }
    s << '\n';
  };
  line(t.columns);
  for (const auto& v : cells) line(v);
  return s.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Table table;
  int code = 0;
  switch (cfg.command) {
    case Command::table: table = cmd_table(cfg); break;
    case Command::optimal: table = cmd_optimal(cfg); break;
    case Command::eof_curve: table = cmd_eof_curve(cfg); break;
    case Command::clone_curve: table = cmd_clone_curve(cfg); break;
    case Command::verify: {
      VerifyRun v = cmd_verify(cfg);
      for (const VerifyReport& r : v.reports) {
        const auto failed = r.failures();
        if (failed.empty()) {
          err << "d=" << r.d << ": all checks pass\n";
        } else {
          code = 1;
          err << "d=" << r.d << ": FAILED";
          for (const auto& name : failed) err << ' ' << name;
          err << '\n';
        }
      }
      table = std::move(v.table);
      break;
    }
  }

  std::string text;
  switch (cfg.format) {
    case Format::csv: text = render_csv(table); break;
    case Format::json: text = render_json(table, cfg); break;
    case Format::text: text = render_text(table); break;
  }
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
    file << text;
  }
  return code;
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal d x d entanglement cloner: fidelity tables, EoF curves, verification", "entclone"};
  std::string command;
  int d = 0;
  std::string format = "csv";
  RunConfig cfg;
  app.add_option("command", command, "table | optimal | eof-curve | clone-curve | verify")->required();
  auto* d_opt = app.add_option("--d", d, "single dimension");
  app.add_option("--d-min", cfg.d_min, "lower end of the d-range")->excludes(d_opt);
  app.add_option("--d-max", cfg.d_max, "upper end of the d-range")->excludes(d_opt);
  app.add_option("--format", format, "csv | json | text");
  app.add_option("--grid", cfg.grid, "F-grid size for eof-curve");
  app.add_option("--seed", cfg.seed, "master seed for verify");
  app.add_option("--trials", cfg.trials, "Haar / random-input trials per d for verify");
  app.add_option("--tol-ppt", cfg.tol_ppt, "PPT tolerance for verify");
  app.add_option("--out", cfg.out, "output path (default: standard output)");
  app.add_flag("--inject-broken", cfg.inject_broken)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    const auto cmd = parse_command(command);
    if (!cmd) throw UsageError("unknown command '" + command + "'");
    const auto fmt = parse_format(format);
    if (!fmt) throw UsageError("unknown format '" + format + "'");
    cfg.command = *cmd;
    cfg.format = *fmt;
    if (d_opt->count() > 0) {
      if (d < 2) throw UsageError("d must be at least 2");
      cfg.d_min = cfg.d_max = d;
    }
    cfg = resolve(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  return run(cfg, out, err);
}

}  // namespace entclone::cli
