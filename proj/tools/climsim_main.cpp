#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "climsim/calibration.hpp"
#include "climsim/engine.hpp"
#include "climsim/error.hpp"
#include "climsim/levers.hpp"
#include "climsim/optimizer.hpp"
#include "climsim/run_io.hpp"
#include "climsim/scenario.hpp"
#include "climsim/service.hpp"

namespace fs = std::filesystem;
using namespace climsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct Context {
  fs::path data_dir;
  std::optional<Calibration> cal;

  const Calibration& calibration() {
    if (!cal) cal = load_calibration(data_dir);
    return *cal;
  }
};

std::string extension(OutputFormat f) { return f == OutputFormat::Csv ? ".csv" : ".json"; }

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

// A scenario file path, or the id of a bundled preset.
ScenarioSpec load_scenario_arg(const std::string& arg, const Context& ctx) {
  if (fs::is_regular_file(arg)) return parse_scenario(read_text_file(arg));
  try {
    return load_preset(arg, ctx.data_dir);
  } catch (const LookupError&) {
    throw ValidationError("scenario", "'" + arg + "' is neither a scenario file nor a preset id");
  }
}

// A run output file (CSV or JSON series document), a scenario file or a preset id.
RunResult load_run_arg(const std::string& arg, Context& ctx) {
  if (fs::is_regular_file(arg)) {
    const auto text = read_text_file(arg);
    const bool json = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                      text[text.find_first_not_of(" \t\r\n")] == '{';
    if (!json || nlohmann::json::parse(text, nullptr, false).contains("series")) return load_run(text);
    return run_simulation(parse_scenario(text), ctx.calibration());
  }
  return run_simulation(load_scenario_arg(arg, ctx), ctx.calibration());
}

void emit(const RunResult& r, OutputFormat format, const std::string& out_dir, const std::string& name) {
  const auto text = emit_run(r, format);
  if (out_dir.empty()) {
    std::cout << text;
    if (format == OutputFormat::Json) std::cout << '\n';
  } else {
    const auto path = fs::path(out_dir) / (name + extension(format));
    write_file(path, text);
    std::cerr << "wrote " << path.string() << "\n";
  }
}

std::atomic<service::HttpServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"climsim: climate-economy policy simulator"};
  app.require_subcommand(1);
  Context ctx;
  std::string data_dir = default_data_dir().string();
  app.add_option("--data", data_dir, "Data directory (calibration, presets, reference tables)");

  std::string format_name = "csv";
  std::string out_dir;

  auto* run_cmd = app.add_subcommand("run", "Run one scenario file or preset id");
  std::string scenario_arg;
  run_cmd->add_option("scenario", scenario_arg, "Scenario JSON file or preset id")->required();
  run_cmd->add_option("--out", out_dir, "Directory for the output file (default: stdout)");
  run_cmd->add_option("--format", format_name, "csv or json");

  auto* presets_cmd = app.add_subcommand("presets", "List or run the bundled presets");
  std::string presets_action = "list";
  unsigned jobs = 1;
  std::string presets_out = "presets_out";
  presets_cmd->add_option("action", presets_action, "list or run-all")->check(CLI::IsMember({"list", "run-all"}));
  presets_cmd->add_option("--out", presets_out, "Directory for run-all outputs");
  presets_cmd->add_option("--format", format_name, "csv or json");
  presets_cmd->add_option("--jobs", jobs, "Presets run in parallel")->check(CLI::PositiveNumber);

  auto* diff_cmd = app.add_subcommand("diff", "Compare two runs (output files, scenario files or preset ids)");
  std::string diff_a;
  std::string diff_b;
  std::string diff_format = "text";
  diff_cmd->add_option("a", diff_a)->required();
  diff_cmd->add_option("b", diff_b)->required();
  diff_cmd->add_option("--format", diff_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* opt_cmd = app.add_subcommand("optimize", "Search policy levers for an objective");
  std::string objective_file;
  std::optional<std::uint64_t> seed;
  std::optional<long> max_evals;
  unsigned threads = 1;
  std::string log_path;
  opt_cmd->add_option("--objective", objective_file, "Optimize request JSON (objective, bounds, base, ...)");
  opt_cmd->add_option("--seed", seed, "Random seed for restarts");
  opt_cmd->add_option("--max-evals", max_evals, "Engine evaluation budget")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--threads", threads, "Parallel evaluations per scan")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--log", log_path, "Write the evaluation log CSV here");

  auto* serve_cmd = app.add_subcommand("serve", "Serve the /api/v1 HTTP interface");
  std::optional<int> port;
  std::string host = "127.0.0.1";
  unsigned workers = 1;
  unsigned run_slots = std::max(1u, std::thread::hardware_concurrency());
  serve_cmd->add_option("--port", port, "Listen port (default: $CLIMSIM_PORT or 8080)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Listen address");
  serve_cmd->add_option("--workers", workers, "Optimizer job workers")->check(CLI::PositiveNumber);
  serve_cmd->add_option("--max-runs", run_slots, "Concurrent engine runs")->check(CLI::PositiveNumber);

  auto* levers_cmd = app.add_subcommand("levers", "Print the lever registry as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  ctx.data_dir = data_dir;

  try {
    if (*run_cmd) {
      const auto format = parse_format(format_name);
      const auto spec = load_scenario_arg(scenario_arg, ctx);
      emit(run_simulation(spec, ctx.calibration()), format, out_dir, spec.name);
    } else if (*presets_cmd) {
      const auto presets = list_presets(ctx.data_dir);
      if (presets_action == "list") {
        for (const auto& p : presets) std::cout << p.id << '\t' << p.provenance << '\t' << p.description << '\n';
        return kExitOk;
      }
      const auto format = parse_format(format_name);
      const auto& cal = ctx.calibration();
      std::atomic<std::size_t> next{0};
      std::mutex err_mutex;
      std::exception_ptr first_error;
      auto worker = [&] {
        for (std::size_t i = next++; i < presets.size(); i = next++) {
          try {
            const auto r = run_simulation(load_preset(presets[i].id, ctx.data_dir), cal);
            write_file(fs::path(presets_out) / (presets[i].id + extension(format)), emit_run(r, format));
          } catch (...) {
            std::lock_guard lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      if (first_error) std::rethrow_exception(first_error);
      std::cerr << "wrote " << presets.size() << " runs to " << presets_out << "\n";
    } else if (*diff_cmd) {
      const auto report = diff_runs(load_run_arg(diff_a, ctx), load_run_arg(diff_b, ctx));
      std::cout << (diff_format == "json" ? diff_to_json(report) + "\n" : diff_to_text(report));
    } else if (*opt_cmd) {
      auto req = opt::parse_optimize_request(objective_file.empty() ? "{}" : read_text_file(objective_file));
      if (seed) req.options.seed = *seed;
      if (max_evals) req.options.max_evals = *max_evals;
      req.options.threads = threads;
      req.options.progress = [](long evals, const opt::Metrics& best) {
        if (evals % 100 == 0) std::cerr << "evals " << evals << " best " << best.objective_value << "\n";
      };
      const auto result = opt::optimize(req.base, req.objective, req.options, ctx.calibration());
      nlohmann::ordered_json doc;
      nlohmann::ordered_json levers = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < result.lever_ids.size(); ++i) levers[result.lever_ids[i]] = result.best_values[i];
      doc["levers"] = std::move(levers);
      doc["metrics"] = nlohmann::ordered_json::parse(opt::metrics_to_json(result.best_metrics));
      doc["evals"] = result.log.size();
      std::cout << doc.dump(2) << "\n";
      if (!log_path.empty()) write_file(log_path, opt::eval_log_csv(result));
    } else if (*serve_cmd) {
      service::ServiceOptions options;
      options.data_dir = ctx.data_dir;
      options.optimizer_workers = workers;
      options.max_concurrent_runs = run_slots;
      service::Service svc(options, ctx.calibration());
      service::HttpServer server(svc);
      const int bound = server.bind(host, service::resolve_port(port));
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on http://" << host << ":" << bound << "/api/v1\n";
      server.listen();
      g_server = nullptr;
    } else if (*levers_cmd) {
      std::cout << registry_to_json(LeverRegistry::instance(), 2) << "\n";
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "validation error" << (e.field().empty() ? "" : " (" + e.field() + ")") << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure in " << e.subsystem() << ": " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
