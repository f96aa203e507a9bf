#include "acobs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace acobs::cli {

namespace {

std::string fmt_g(double v, int digits = 17) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fmt_e(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// left-justify by code points, not bytes
std::string pad(const std::string& s, std::size_t width) {
  std::size_t points = 0;
  for (unsigned char ch : s) points += (ch & 0xC0) != 0x80;
  return s + std::string(points < width ? width - points : 0, ' ');
}

std::pair<std::string, std::string> split_kv(const std::string& s, const char* what) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
    throw UsageError(std::string(what) + " expects NAME=VALUE, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

double to_number(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw UsageError(context + ": '" + s + "' is not a number");
  return v;
}

Format to_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "records") return Format::records;
  throw UsageError("unknown format '" + s + "' (text, csv, records)");
}

struct Options {
  std::string scenario;
  std::vector<std::string> params, identities, tols;
  int samples = 10;
  int frames = 2;
  std::uint64_t seed = 1;
  std::string format;
  std::string out;
  double curvature = std::nan("");
  unsigned threads = 0;
  std::vector<double> eps;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("scenario", o.scenario, "scenario name")->required();
  sub->add_option("--param", o.params, "scenario parameter k=v (repeatable)");
  sub->add_option("--identity", o.identities, "identity name (repeatable; default all)");
  sub->add_option("--samples", o.samples, "sample points");
  sub->add_option("--frames", o.frames, "frames per point for frame-based identities");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--tol", o.tols, "tolerance override NAME=V (repeatable)");
  sub->add_option("--format", o.format, "text | csv | records");
  sub->add_option("--out", o.out, "output path (default stdout)");
  sub->add_option("--curvature", o.curvature, "curvature constant for scenarios that declare none (witness rows)");
  sub->add_option("--threads", o.threads, "worker threads (0: all cores)");
}

std::string json_params(const Descriptor& d) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : d.params) j[k] = v;
  return j.dump();
}

void write_csv(std::ostream& os, const RunConfig& cfg, const std::vector<ResidualRecord>& rows) {
  os << "# command=" << cfg.command << " scenario=" << cfg.scenario.name << " params=" << json_params(cfg.scenario)
     << " seed=" << cfg.suite.seed << " samples=" << cfg.suite.samples << " frames=" << cfg.suite.frames << '\n';
  os << "identity,scenario,point_index,frame_index,residual,class\n";
  for (const auto& r : rows)
    os << r.identity << ',' << r.scenario << ',' << r.point_index << ',' << r.frame_index << ',' << fmt_g(r.residual)
       << ',' << to_string(r.cls) << '\n';
}

void write_records(std::ostream& os, const RunConfig& cfg, const std::vector<ResidualRecord>& rows) {
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["identity"] = r.identity;
    j["scenario"] = r.scenario;
    j["seed"] = cfg.suite.seed;
    j["point_index"] = r.point_index;
    j["frame_index"] = r.frame_index;
    j["point"] = std::vector<double>(r.point.data(), r.point.data() + r.point.size());
    if (std::isnan(r.residual))
      j["residual"] = nullptr;
    else
      j["residual"] = r.residual;
    j["class"] = to_string(r.cls);
    const Identity* id = find_identity(r.identity);
    j["hypotheses"] = describe_hypotheses(id ? id->hypotheses : hyp::none);
    if (!r.note.empty()) j["note"] = r.note;
    os << j.dump() << '\n';
  }
}

void write_text(std::ostream& os, const RunConfig& cfg, const std::string& label,
                const std::vector<IdentitySummary>& summary) {
  os << "# " << cfg.command << ' ' << label << " seed=" << cfg.suite.seed << " samples=" << cfg.suite.samples
     << " frames=" << cfg.suite.frames << '\n';
  char line[256];
  std::snprintf(line, sizeof line, "%-20s %-8s %-22s %10s %10s %9s  %s\n", "identity", "class", "hypotheses",
                "max|r|", "mean|r|", "tol", "status");
  os << line;
  int passed = 0, failed = 0, witnesses = 0, gated = 0;
  for (const auto& s : summary) {
    std::string status;
    switch (s.cls) {
      case RowClass::check:
        status = s.pass ? "ok" : "FAIL";
        (s.pass ? passed : failed)++;
        break;
      case RowClass::witness:
        status = "-";
        ++witnesses;
        break;
      case RowClass::gated:
        status = "gated: " + s.note;
        ++gated;
        break;
    }
    const bool any = s.rows > s.gated;
    std::snprintf(line, sizeof line, " %10s %10s %9.1e  ", any ? fmt_e(s.max_abs).c_str() : "-",
                  any ? fmt_e(s.mean_abs).c_str() : "-", s.tolerance);
    os << pad(s.identity, 20) << ' ' << pad(to_string(s.cls), 8) << ' ' << pad(describe_hypotheses(s.hypotheses), 22)
       << line << status << '\n';
  }
  os << "checks passed " << passed << ", failed " << failed << "; witnesses " << witnesses << "; gated " << gated
     << '\n';
}

// Writes to the configured destination; false on I/O failure.
bool emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.out_path.empty()) {
    out << text;
    out.flush();
    return static_cast<bool>(out);
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  f << text;
  f.close();
  if (!f) {
    err << "error: cannot write " << cfg.out_path << '\n';
    return false;
  }
  return true;
}

int finish(const RunConfig& cfg, const std::string& label, const std::vector<ResidualRecord>& rows,
           std::ostream& out, std::ostream& err) {
  const auto summary = summarize(rows, cfg.suite);
  std::ostringstream os;
  switch (cfg.format) {
    case Format::text: write_text(os, cfg, label, summary); break;
    case Format::csv: write_csv(os, cfg, rows); break;
    case Format::records: write_records(os, cfg, rows); break;
  }
  if (!emit(cfg, os.str(), out, err)) return kUsage;
  return all_checks_pass(summary) ? kOk : kCheckFailed;
}

Scenario build(const Descriptor& d) {
  try {
    return make_scenario(d);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

RunConfig parse(const std::vector<std::string>& args) {
  CLI::App app{"residual suites for almost-complex structure identities", "acobs"};
  app.set_config("--config", "", "TOML/INI config file; command-line flags win");
  app.require_subcommand(1);
  Options o;
  CLI::App* verify = app.add_subcommand("verify", "run every identity and report check/witness status");
  CLI::App* scan = app.add_subcommand("scan", "per-point, per-frame residual rows");
  CLI::App* obstruct = app.add_subcommand("obstruct", "the obstruction bundle for a g-orthogonal structure");
  for (auto* sub : {verify, scan, obstruct}) add_common(sub, o);
  scan->add_option("--eps", o.eps, "comma-separated eps values, one run each")->delimiter(',');

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  cfg.command = verify->parsed() ? "verify" : scan->parsed() ? "scan" : "obstruct";
  cfg.scenario.name = o.scenario;
  for (const auto& p : o.params) {
    auto [k, v] = split_kv(p, "--param");
    cfg.scenario.params[k] = to_number(v, "--param " + k);
  }
  cfg.suite.identities = o.identities;
  for (const auto& t : o.tols) {
    auto [k, v] = split_kv(t, "--tol");
    cfg.suite.tolerances[k] = to_number(v, "--tol " + k);
  }
  cfg.suite.samples = o.samples;
  cfg.suite.frames = o.frames;
  cfg.suite.seed = o.seed;
  cfg.scenario.seed = o.seed;
  cfg.suite.threads = o.threads;
  if (!std::isnan(o.curvature)) cfg.suite.curvature = o.curvature;
  cfg.format = o.format.empty() ? (cfg.command == "scan" ? Format::csv : Format::text) : to_format(o.format);
  cfg.out_path = o.out;
  cfg.eps = o.eps;

  if (cfg.command == "obstruct" && cfg.suite.identities.empty()) cfg.suite.identities = obstruction_bundle();
  if (!cfg.eps.empty() && cfg.scenario.name != "perturbed_sphere6")
    throw UsageError("--eps only applies to perturbed_sphere6");
  try {
    validate(cfg.suite);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Scenario s = build(cfg.scenario);
  return finish(cfg, scenario_label(s), run_suite(s, cfg.suite), out, err);
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.eps.empty()) return cmd_verify(cfg, out, err);
  std::vector<ResidualRecord> rows;
  std::string label;
  for (double e : cfg.eps) {
    Descriptor d = cfg.scenario;
    d.params["eps"] = e;
    const Scenario s = build(d);
    auto part = run_suite(s, cfg.suite);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    label = scenario_label(s);
  }
  return finish(cfg, label, rows, out, err);
}

int cmd_obstruct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Scenario s = build(cfg.scenario);
  if (!s.properties.orthogonal)
    throw UsageError(scenario_label(s) +
                     ": structure is not g-orthogonal, so Ω_A is undefined (perturbed_sphere6 accepts --param averaged=1)");
  return finish(cfg, scenario_label(s), run_suite(s, cfg.suite), out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = parse(args);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "scan") return cmd_scan(cfg, out, err);
    return cmd_obstruct(cfg, out, err);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace acobs::cli
